#include "dwsv/specfun.hpp"

namespace dwsv {

namespace {

constexpr long kGuardBits = 64;

// sin cycle: sin, cos, -sin, -cos ; cos cycle starts two steps later.
Real trig_deriv(int phase, const Real& s, const Real& c) {
    switch (phase & 3) {
        case 0: return s;
        case 1: return c;
        case 2: return -s;
        default: return -c;
    }
}

// Derivatives d^j/dv^j theta_kind(v,q) for j = 0..order by term-by-term
// differentiation of the q-series. Requires q below the modular threshold
// only for efficiency; correct for any q in (0,1).
std::vector<Real> theta_derivs_direct(int kind, const Real& v, const Real& q, int order,
                                      const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.prec() + kGuardBits;
    Real tol = ctx.series_tol().to_prec(p) / 16L;
    Real vp = v.to_prec(p), qp = q.to_prec(p);

    std::vector<Real> d;
    d.reserve(order + 1);
    for (int j = 0; j <= order; ++j) d.emplace_back(p);
    const bool half_integer = (kind == 1 || kind == 2);  // q^((m+1/2)^2) series
    const bool alternating = (kind == 1 || kind == 4);
    const int cos_shift = (kind == 1) ? 0 : 1;  // theta1 uses sin, others cos

    if (!half_integer) d[0] = Real(1L, p);  // constant term of theta3/theta4

    Real qsq = qp * qp;
    // running q-power: theta1/2: q^(1/4) * q^(m(m+1)); theta3/4: q^(m^2)
    Real qpow = half_integer ? rootn(qp, 4) : qp;
    Real qstep = half_integer ? qsq : qp * qsq;  // ratio updates, see loop
    Real s(p), c(p);
    for (int m = half_integer ? 0 : 1;; ++m) {
        long freq = half_integer ? 2L * m + 1 : 2L * m;
        Real coef = 2L * qpow;
        if (alternating && (m & 1)) coef = -coef;
        Real fr(freq, p);
        sin_cos(s, c, fr * vp);
        Real fpow(1L, p);
        for (int j = 0; j <= order; ++j) {
            d[j] += coef * fpow * trig_deriv(j + cos_shift, s, c);
            if (j < order) fpow *= fr;
        }
        // |trig| <= 1, so 2 qpow freq^order bounds every truncated term.
        if (m >= 1 && abs(coef) * fpow <= tol) break;
        if (half_integer) {
            qpow *= qstep;       // q^(m(m+1)) -> q^((m+1)(m+2))
            qstep *= qsq;
        } else {
            qpow *= qstep;       // q^(m^2) -> q^((m+1)^2)
            qstep *= qsq;
        }
        if (m > 1000000) throw PrecisionError("theta series failed to converge");
    }
    return d;
}

// Jet of eps -> theta_kind(v0 + slope*eps, q) through the imaginary modular
// transformation; used for q near 1 where the direct series is useless.
Jet theta_jet_modular(int kind, const Real& v0, const Real& slope, int order, const Real& q,
                      const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.prec() + kGuardBits;
    Real pi = Real::pi(p);
    Real t = -log(q.to_prec(p)) / pi;          // q = exp(-pi t), t > 0
    Real qq = exp(-pi / t);                    // transformed nome
    Real tol = ctx.series_tol().to_prec(p) / 16L;

    Jet V = Jet::affine(v0.to_prec(p), slope.to_prec(p), order);
    Jet G = V * V * (-1L / (pi * t));
    Jet E = exp(G) * (1L / sqrt(t));

    const bool half_integer = (kind == 1 || kind == 4);  // qq^((n+1/2)^2) series
    // theta1 -> sinh series (alternating), theta4 -> cosh series,
    // theta2 -> 1 + alternating cosh, theta3 -> 1 + cosh.
    const bool alternating = (kind == 1 || kind == 2);
    const bool use_sinh = (kind == 1);

    Jet S(order, p);
    if (!half_integer) S[0] = Real(1L, p);
    Real qqsq = qq * qq;
    Real qpow = half_integer ? rootn(qq, 4) : qq;
    Real qstep = half_integer ? qqsq : qq * qqsq;
    long below_tol = 0;
    double v0_abs = std::abs(v0.to_double());
    int n_peak = static_cast<int>(v0_abs / 3.14159) + 2;
    Jet sh(order, p), ch(order, p);
    for (int n = half_integer ? 0 : 1;; ++n) {
        long freq = half_integer ? 2L * n + 1 : 2L * n;
        Real coef = 2L * qpow;
        if (alternating && (n & 1)) coef = -coef;
        sinh_cosh(sh, ch, V * (Real(freq, p) / t));
        const Jet& trig = use_sinh ? sh : ch;
        Real term_mag(p);
        for (int k = 0; k <= order; ++k) {
            Real tk = coef * trig[k];
            S[k] += tk;
            term_mag = max(term_mag, abs(tk));
        }
        Real scale = max(Real(1L, p), abs(S[0]));
        below_tol = (term_mag <= tol * scale) ? below_tol + 1 : 0;
        if (n >= n_peak && below_tol >= 2) break;
        qpow *= qstep;
        qstep *= qqsq;
        if (n > 1000000) throw PrecisionError("modular theta series failed to converge");
    }
    return E * S;
}

Jet jet_from_derivs(const std::vector<Real>& d, const Real& slope, int order, mpfr_prec_t p) {
    Jet j(order, p);
    Real spow(1L, p);
    Real fact(1L, p);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            spow *= slope;
            fact *= static_cast<long>(k);
        }
        j[k] = d[k] * spow / fact;
    }
    return j;
}

void check_kind(int kind) {
    if (kind < 1 || kind > 4) throw ParameterDomainError("theta: kind must be 1..4");
}

} // namespace

Jet theta_jet(int kind, const Real& v0, const Real& slope, int order, const Nome& q,
              const PrecisionContext& ctx) {
    check_kind(kind);
    if (order < 0) throw ParameterDomainError("theta: negative derivative order");
    if (q.q.to_double() > ctx.modular_threshold)
        return theta_jet_modular(kind, v0, slope, order, q.q, ctx);
    std::vector<Real> d = theta_derivs_direct(kind, v0, q.q, order, ctx);
    return jet_from_derivs(d, slope, order, ctx.prec() + kGuardBits);
}

std::vector<Real> theta_derivs(int kind, const Real& v, const Nome& q, int max_order,
                               const PrecisionContext& ctx) {
    check_kind(kind);
    if (max_order < 0) throw ParameterDomainError("theta: negative derivative order");
    if (q.q.to_double() > ctx.modular_threshold) {
        mpfr_prec_t p = ctx.prec() + kGuardBits;
        Jet j = theta_jet_modular(kind, v, Real(1L, p), max_order, q.q, ctx);
        std::vector<Real> d;
        d.reserve(max_order + 1);
        for (int k = 0; k <= max_order; ++k) d.push_back(j.deriv(k));
        return d;
    }
    return theta_derivs_direct(kind, v, q.q, max_order, ctx);
}

Real theta(int kind, const Real& v, const Nome& q, int deriv_order,
           const PrecisionContext& ctx) {
    return theta_derivs(kind, v, q, deriv_order, ctx)[deriv_order];
}

Real log_deriv_theta1(const Real& v, const Nome& q, const PrecisionContext& ctx) {
    Real r = remainder(v, Real::pi(v.prec()));
    if (r.is_zero())
        throw PoleError("log_deriv_theta1: theta_1 vanishes at v = k*pi", v.to_double());
    std::vector<Real> d = theta_derivs(1, v, q, 1, ctx);
    if (d[0].is_zero())
        throw PoleError("log_deriv_theta1: theta_1 vanished", v.to_double());
    return d[1] / d[0];
}

Jet log_deriv_theta1_jet(const Real& v0, const Real& slope, int order, const Nome& q,
                         const PrecisionContext& ctx) {
    Real r = remainder(v0, Real::pi(v0.prec()));
    if (r.is_zero())
        throw PoleError("log_deriv_theta1_jet: theta_1 vanishes at v = k*pi", v0.to_double());
    std::vector<Real> d = theta_derivs(1, v0, q, order + 1, ctx);
    mpfr_prec_t p = ctx.prec() + kGuardBits;
    std::vector<Real> dnum(d.begin() + 1, d.end());
    Jet num = jet_from_derivs(dnum, slope, order, p);
    Jet den = jet_from_derivs(d, slope, order, p);
    if (den[0].is_zero())
        throw PoleError("log_deriv_theta1_jet: theta_1 vanished", v0.to_double());
    return num / den;
}

Real elliptic_K(const Nome& q, const PrecisionContext& ctx) {
    Real t3 = theta(3, Real(0L, ctx.prec()), q, 0, ctx);
    return Real::pi(ctx.prec() + kGuardBits) / 2L * t3 * t3;
}

Real modulus_from_nome(const Nome& q, const PrecisionContext& ctx) {
    Real zero(0L, ctx.prec());
    Real t2 = theta(2, zero, q, 0, ctx);
    Real t3 = theta(3, zero, q, 0, ctx);
    return (t2 * t2) / (t3 * t3);
}

Real jacobi_sn(const Real& u, const Nome& q, const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.prec() + kGuardBits;
    Real K = elliptic_K(q, ctx);
    Real v = Real::pi(p) * u.to_prec(p) / (2L * K);
    Real zero(0L, p);
    Real t2 = theta(2, zero, q, 0, ctx);
    Real t3 = theta(3, zero, q, 0, ctx);
    Real t1v = theta(1, v, q, 0, ctx);
    Real t4v = theta(4, v, q, 0, ctx);
    if (t4v.is_zero())
        throw PoleError("jacobi_sn: theta_4 vanished", u.to_double());
    return (t3 / t2) * (t1v / t4v);
}

Real carlson_rf(const Real& x0, const Real& y0, const Real& z0, const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.prec() + kGuardBits;
    Real x = x0.to_prec(p), y = y0.to_prec(p), z = z0.to_prec(p);
    if (x < 0L || y < 0L || z < 0L)
        throw ParameterDomainError("carlson_rf: negative argument");
    int zeros = (x.is_zero() ? 1 : 0) + (y.is_zero() ? 1 : 0) + (z.is_zero() ? 1 : 0);
    if (zeros > 1) throw ParameterDomainError("carlson_rf: more than one zero argument");

    // Duplication until the spread is ~2^-(bits/2); the tail series below is
    // accurate to O(spread^2) relative.
    Real cutoff = Real::pow2(-(ctx.bits / 2 + 12), p);
    Real A(p);
    for (int it = 0; it < 100000; ++it) {
        A = (x + y + z) / 3L;
        Real e = max(abs(x - A), max(abs(y - A), abs(z - A)));
        if (e <= cutoff * A) break;
        Real sx = sqrt(x), sy = sqrt(y), sz = sqrt(z);
        Real lam = sx * sy + sy * sz + sz * sx;
        x = (x + lam) / 4L;
        y = (y + lam) / 4L;
        z = (z + lam) / 4L;
    }
    Real X = 1L - x / A, Y = 1L - y / A, Z = -X - Y;
    Real E2 = X * Y - Z * Z;
    Real E3 = X * Y * Z;
    Real series = 1L - E2 / 10L + E3 / 14L + E2 * E2 / 24L - 3L * E2 * E3 / 44L;
    return series / sqrt(A);
}

Real inverse_sn(const Real& s, const Nome& q, const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.prec() + kGuardBits;
    Real sp = s.to_prec(p);
    if (sp < 0L || sp > 1L)
        throw BranchError("inverse_sn: s outside [0,1], s = " + s.str(8));
    Real k = modulus_from_nome(q, ctx);
    Real s2 = sp * sp;
    return sp * carlson_rf(1L - s2, 1L - k * k * s2, Real(1L, p), ctx);
}

} // namespace dwsv
