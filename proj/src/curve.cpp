#include "dwsv/curve.hpp"

namespace dwsv {

namespace {

constexpr long kGuardBits = 64;

void require_af(const SpectralParams& p, const char* what) {
    if (p.regime() != Regime::AntiFerroelectric)
        throw ParameterDomainError(std::string(what) + ": anti-ferroelectric parameters required");
}

void require_dis(const SpectralParams& p, const char* what) {
    if (p.regime() != Regime::Disordered)
        throw ParameterDomainError(std::string(what) + ": disordered parameters required");
}

void check_xi_open(const Real& xi, const SpectralParams& p, const char* what) {
    if (!(xi > 0L) || !(xi < xi_max(p)))
        throw PoleError(std::string(what) + ": xi outside (0, xi_max)", xi.to_double());
}

Nome af_nome(const SpectralParams& p, mpfr_prec_t prec) {
    Real pi = Real::pi(prec);
    return Nome(exp(-pi * pi / (2L * p.eta().to_prec(prec))));
}

// alpha alone, cheaper than the full resolvent constants
Real alpha_of(const SpectralParams& p, mpfr_prec_t prec) {
    Real pi = Real::pi(prec);
    if (p.regime() == Regime::AntiFerroelectric) return pi / (2L * p.eta().to_prec(prec));
    Real denom = pi - 2L * p.eta().to_prec(prec);
    if (denom.is_zero())
        throw RegimeBoundaryError("alpha: eta = pi/2 (Delta = -1 boundary)");
    return pi / denom;
}

// Derivative of a jet, one order lower.
Jet shift_derivative(const Jet& j) {
    Jet r(j.order() - 1, j.prec());
    for (int k = 0; k + 1 <= j.order(); ++k) r[k] = (static_cast<long>(k) + 1) * j[k + 1];
    return r;
}

} // namespace

ResolventParams resolvent_params(const SpectralParams& p, const PrecisionContext& ctx) {
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real pi = Real::pi(prec);
    Real eta = p.eta().to_prec(prec);
    Real lambda = p.lambda().to_prec(prec);
    ResolventParams rp{p.regime(), Real(prec), Real(prec), Real(prec), Real(prec),
                       Real(prec),  Real(prec), Real(prec), Real(prec)};
    if (p.regime() == Regime::AntiFerroelectric) {
        rp.kappa_var = pi * (eta - lambda) / (4L * eta);
        rp.alpha = pi / (2L * eta);
        Nome q = af_nome(p, prec);
        rp.q = q.q;
        rp.K = elliptic_K(q, ctx);
        rp.u_inf = 2L * rp.K * rp.kappa_var / pi;
        std::vector<Real> t1 = theta_derivs(1, rp.kappa_var, q, 1, ctx);
        std::vector<Real> t4 = theta_derivs(4, rp.kappa_var, q, 1, ctx);
        if (t1[0].is_zero())
            throw PoleError("resolvent_params: theta_1(kappa) = 0", rp.kappa_var.to_double());
        rp.beta = pi * t1[1] / t1[0];
        rp.beta_prime = pi * t4[1] / t4[0];
        // sn(u_inf) = (theta3/theta2)(0) theta1(kappa)/theta4(kappa), since
        // pi u_inf / (2K) = kappa.
        Real zero(0L, prec);
        rp.sn_u_inf = (theta(3, zero, q, 0, ctx) / theta(2, zero, q, 0, ctx)) * (t1[0] / t4[0]);
    } else {
        Real denom = pi - 2L * eta;
        if (denom.is_zero())
            throw RegimeBoundaryError("resolvent_params: eta = pi/2 (Delta = -1 boundary)");
        rp.kappa_var = pi * (pi - eta - lambda) / (2L * denom);
        rp.alpha = pi / denom;
    }
    return rp;
}

Real w_forward_af(const Real& z, const SpectralParams& p, const PrecisionContext& ctx,
                  Sheet sheet) {
    require_af(p, "w_forward_af");
    ResolventParams rp = resolvent_params(p, ctx);
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real eta = p.eta().to_prec(prec);
    Real w = eta * z.to_prec(prec);
    Real den = rp.beta_prime - w;
    if (den.is_zero()) throw BranchError("w_forward_af: z at beta'/eta");
    Real s2 = (rp.beta - w) / den * rp.sn_u_inf * rp.sn_u_inf;
    Real slack = Real::pow2(-(ctx.bits / 2), prec);
    if (s2 < -slack || s2 > 1L + slack)
        throw BranchError("w_forward_af: sn^2 u = " + s2.str(8) + " outside [0,1] branch");
    s2 = max(Real(0L, prec), min(Real(1L, prec), s2));
    Real u = inverse_sn(sqrt(s2), af_nome(p, prec), ctx);
    Real xi = (sheet == Sheet::LowerXi) ? eta / rp.K * (rp.u_inf - u)
                                        : eta / rp.K * (rp.u_inf + u);
    return xi;
}

AfInverseForms w_inverse_af_forms(const Real& xi, const SpectralParams& p,
                                  const PrecisionContext& ctx) {
    require_af(p, "w_inverse_af");
    check_xi_open(xi, p, "w_inverse_af");
    ResolventParams rp = resolvent_params(p, ctx);
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Nome q = af_nome(p, prec);
    Real eta = p.eta().to_prec(prec);
    Real lambda = p.lambda().to_prec(prec);
    Real xip = xi.to_prec(prec);

    Real v1 = rp.alpha * xip;
    Real v2 = rp.alpha * (xip + lambda + eta);
    Real logdiff = rp.alpha * (log_deriv_theta1(v1, q, ctx) - log_deriv_theta1(v2, q, ctx));

    // sn quotient: z = [beta sn^2 u_inf - beta' sn^2(u_inf - K xi/eta)]
    //                  / (eta [sn^2 u_inf - sn^2(u_inf - K xi/eta)])
    Real u = rp.u_inf - rp.K * xip / eta;
    Real snu = jacobi_sn(u, q, ctx);
    Real s2 = snu * snu;
    Real si2 = rp.sn_u_inf * rp.sn_u_inf;
    Real sn_quotient = (rp.beta * si2 - rp.beta_prime * s2) / (eta * (si2 - s2));

    // two-theta form.
    Real km = rp.kappa_var - v1;
    std::vector<Real> t1k = theta_derivs(1, rp.kappa_var, q, 1, ctx);
    std::vector<Real> t4k = theta_derivs(4, rp.kappa_var, q, 1, ctx);
    Real t1m = theta(1, km, q, 0, ctx);
    Real t4m = theta(4, km, q, 0, ctx);
    Real num2 = t1k[0] * t1k[1] * t4m * t4m - t4k[0] * t4k[1] * t1m * t1m;
    Real den2 = t1k[0] * t1k[0] * t4m * t4m - t4k[0] * t4k[0] * t1m * t1m;
    Real two_theta = 2L * rp.alpha * num2 / den2;

    // middle form, th1'(2k - a xi) th1(a xi) + th1(2k - a xi) th1'(a xi) over
    // th1(2k - a xi) th1(a xi).
    Real w2 = 2L * rp.kappa_var - v1;
    std::vector<Real> ta = theta_derivs(1, w2, q, 1, ctx);
    std::vector<Real> tb = theta_derivs(1, v1, q, 1, ctx);
    Real middle = rp.alpha * (ta[1] * tb[0] + ta[0] * tb[1]) / (ta[0] * tb[0]);

    return AfInverseForms{sn_quotient, two_theta, middle, logdiff};
}

Real w_inverse_af(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx) {
    require_af(p, "w_inverse_af");
    check_xi_open(xi, p, "w_inverse_af");
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real alpha = alpha_of(p, prec);
    Nome q = af_nome(p, prec);
    Real v1 = alpha * xi.to_prec(prec);
    Real v2 = alpha * (xi.to_prec(prec) + p.lambda().to_prec(prec) + p.eta().to_prec(prec));
    return alpha * (log_deriv_theta1(v1, q, ctx) - log_deriv_theta1(v2, q, ctx));
}

Real w_forward_dis(const Real& z, const SpectralParams& p, const PrecisionContext& ctx,
                   Sheet sheet) {
    require_dis(p, "w_forward_dis");
    ResolventParams rp = resolvent_params(p, ctx);
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real zp = z.to_prec(prec);
    Real T = tan(rp.kappa_var);
    Real num = zp * T * T - 2L * rp.alpha * T;
    Real den = zp + 2L * rp.alpha * T;
    if (den <= 0L) throw BranchError("w_forward_dis: z + 2 alpha tan(kappa) <= 0");
    Real slack = Real::pow2(-(ctx.bits / 2), prec);
    if (num < -slack * den)
        throw BranchError("w_forward_dis: z inside the cut, ratio = " + (num / den).str(8));
    Real a = atan(sqrt(max(Real(0L, prec), num / den)));
    return (sheet == Sheet::LowerXi) ? (rp.kappa_var - a) / rp.alpha
                                     : (rp.kappa_var + a) / rp.alpha;
}

DisInverseForms w_inverse_dis_forms(const Real& xi, const SpectralParams& p,
                                    const PrecisionContext& ctx) {
    require_dis(p, "w_inverse_dis");
    check_xi_open(xi, p, "w_inverse_dis");
    ResolventParams rp = resolvent_params(p, ctx);
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real xip = xi.to_prec(prec);
    Real lambda = p.lambda().to_prec(prec);
    Real eta = p.eta().to_prec(prec);

    Real cotdiff = rp.alpha * (cot(rp.alpha * xip) - cot(rp.alpha * (xip + lambda - eta)));

    // z = -2 alpha tan(kappa) (tan^2(kappa - alpha xi) + 1)
    //     / (tan^2(kappa - alpha xi) - tan^2 kappa)
    Real T = tan(rp.kappa_var);
    Real S = tan(rp.kappa_var - rp.alpha * xip);
    Real tan_quotient = -2L * rp.alpha * T * (S * S + 1L) / (S * S - T * T);

    return DisInverseForms{tan_quotient, cotdiff};
}

Real w_inverse_dis(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx) {
    require_dis(p, "w_inverse_dis");
    check_xi_open(xi, p, "w_inverse_dis");
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real alpha = alpha_of(p, prec);
    Real xip = xi.to_prec(prec);
    return alpha * (cot(alpha * xip) -
                    cot(alpha * (xip + p.lambda().to_prec(prec) - p.eta().to_prec(prec))));
}

Real asymptotic_log_deriv(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx) {
    check_xi_open(xi, p, "asymptotic_log_deriv");
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real xip = xi.to_prec(prec);
    Real lambda = p.lambda().to_prec(prec);
    Real eta = p.eta().to_prec(prec);
    if (p.regime() == Regime::AntiFerroelectric)
        return coth(xip + lambda + eta) - coth(xip) + w_inverse_af(xi, p, ctx);
    return cot(xip + lambda - eta) - cot(xip) + w_inverse_dis(xi, p, ctx);
}

// Psi in the pole-cancelled form:
// AF:  coth xi - coth(xi+lambda-eta) - a th1'/th1(a xi) + a th1'/th1(a(xi+lambda+eta))
// dis: cot  xi - cot (xi+lambda+eta) - a cot(a xi)      + a cot(a(xi+lambda-eta))
Jet psi_jet(const Real& xi, int order, const SpectralParams& p, const PrecisionContext& ctx) {
    check_xi_open(xi, p, "psi");
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real alpha = alpha_of(p, prec);
    Real xip = xi.to_prec(prec);
    Real lambda = p.lambda().to_prec(prec);
    Real eta = p.eta().to_prec(prec);
    Real one(1L, prec);
    if (p.regime() == Regime::AntiFerroelectric) {
        Nome q = af_nome(p, prec);
        Jet t = jet_coth(Jet::affine(xip, one, order)) -
                jet_coth(Jet::affine(xip + lambda - eta, one, order));
        Jet l1 = log_deriv_theta1_jet(alpha * xip, alpha, order, q, ctx);
        Jet l2 = log_deriv_theta1_jet(alpha * (xip + lambda + eta), alpha, order, q, ctx);
        return t - alpha * l1 + alpha * l2;
    }
    Jet t = jet_cot(Jet::affine(xip, one, order)) -
            jet_cot(Jet::affine(xip + lambda + eta, one, order));
    Jet l1 = jet_cot(Jet::affine(alpha * xip, alpha, order));
    Jet l2 = jet_cot(Jet::affine(alpha * (xip + lambda - eta), alpha, order));
    return t - alpha * l1 + alpha * l2;
}

Real psi(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx) {
    return psi_jet(xi, 0, p, ctx).value();
}

CurvePointFull curve_point_full(const Real& xi, const SpectralParams& p,
                                const PrecisionContext& ctx) {
    check_xi_open(xi, p, "curve_point");
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real xip = xi.to_prec(prec);
    Real lambda = p.lambda().to_prec(prec);
    Real eta = p.eta().to_prec(prec);
    const int order = 2;

    Jet psi_full = psi_jet(xi, order + 1, p, ctx);
    Jet psij = psi_full.truncated(order);
    Jet psip = shift_derivative(psi_full).truncated(order);

    // x couples to phi(xi+lambda); y couples to phi(xi-eta) (AF) or
    // phi(xi+eta) (disordered).
    Real arg_y = p.regime() == Regime::AntiFerroelectric ? xip - eta : xip + eta;
    Jet phix_full = phi_jet(xip + lambda, order + 1, p, prec);
    Jet phiy_full = phi_jet(arg_y, order + 1, p, prec);
    Jet phix = phix_full.truncated(order);
    Jet phiy = phiy_full.truncated(order);
    Jet phixp = shift_derivative(phix_full).truncated(order);
    Jet phiyp = shift_derivative(phiy_full).truncated(order);

    Jet den = phix * phiyp - phiy * phixp;
    if (den[0].is_zero())
        throw DegeneratePointError("curve_point: singular linear system at xi = " + xi.str(8));
    Jet xj = (phiyp * psij - phiy * psip) / den;
    Jet yj = (phix * psip - phixp * psij) / den;

    Real f = xj[0] * phix[0] + yj[0] * phiy[0] - psij[0];
    Real fp = xj[0] * phixp[0] + yj[0] * phiyp[0] - psip[0];

    return CurvePointFull{CurvePoint{xi, xj[0], yj[0]}, xj.deriv(1), yj.deriv(1), f, fp};
}

CurvePoint curve_point(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx) {
    return curve_point_full(xi, p, ctx).pt;
}

Real richardson_limit(const std::function<Real(const Real&)>& f, const Real& eps, int steps) {
    std::vector<std::vector<Real>> t(steps + 1);
    Real h = eps;
    for (int i = 0; i <= steps; ++i) {
        t[i].push_back(f(h));
        for (int j = 1; j <= i; ++j) {
            Real p2 = Real::pow2(j, h.prec());
            t[i].push_back((p2 * t[i][j - 1] - t[i - 1][j - 1]) / (p2 - 1L));
        }
        h = h / 2L;
    }
    return t[steps][steps];
}

CurvePortion curve_portion(const SpectralParams& p, const GridSpec& grid,
                           const PrecisionContext& ctx) {
    if (grid.n_points < 2) throw ParameterDomainError("curve_portion: need at least 2 points");
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real xm = xi_max(p).to_prec(prec);
    Real pi = Real::pi(prec);

    CurvePortion portion;
    portion.points.reserve(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        Real xi(prec);
        if (grid.chebyshev) {
            Real theta = pi * (2L * i + 1L) / (2L * grid.n_points);
            xi = xm * (1L - cos(theta)) / 2L;
        } else {
            xi = xm * (2L * i + 1L) / (2L * grid.n_points);
        }
        CurvePoint cp = curve_point(xi, p, ctx);
        portion.points.push_back(std::move(cp));
    }

    // Endpoint limits by Richardson extrapolation over xi = eps 2^-k.
    Real eps = Real(1e-3, prec) * min(Real(1L, prec), xm);
    portion.contact_x = richardson_limit(
        [&](const Real& e) { return curve_point(e, p, ctx).x; }, eps, 6);
    portion.contact_y = richardson_limit(
        [&](const Real& e) { return curve_point(xm - e, p, ctx).y; }, eps, 6);
    return portion;
}

FullCurve full_curve(const SpectralParams& p, const GridSpec& grid, const PrecisionContext& ctx) {
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real one(1L, prec);
    CurvePortion p1 = curve_portion(p, grid, ctx);
    CurvePortion p1r = curve_portion(crossing_reflect(p), grid, ctx);

    // Bottom-right: horizontal reflection of the crossing-reflected arc.
    CurvePortion p2;
    p2.points.reserve(p1r.points.size());
    for (const CurvePoint& c : p1r.points) p2.points.push_back(CurvePoint{c.xi, one - c.x, c.y});
    p2.contact_x = one - p1r.contact_x;
    p2.contact_y = p1r.contact_y;

    auto central = [&](const CurvePortion& src) {
        CurvePortion dst;
        dst.points.reserve(src.points.size());
        for (const CurvePoint& c : src.points)
            dst.points.push_back(CurvePoint{c.xi, one - c.x, one - c.y});
        dst.contact_x = one - src.contact_x;
        dst.contact_y = one - src.contact_y;
        return dst;
    };

    FullCurve fc{{p1, p2, central(p1), central(p2)},
                 p1.contact_x, p1.contact_y, one - p1.contact_x, one - p1.contact_y};
    return fc;
}

} // namespace dwsv
