#include "dwsv/finite_n.hpp"

#include <functional>

namespace dwsv {

namespace {

constexpr long kGuardBits = 64;

// ---------------------------------------------------------------------------
// Pivoted LU determinant over an arbitrary ring element (Real or Jet).

Real pivot_magnitude(const Real& x) { return abs(x); }
Real pivot_magnitude(const Jet& x) { return abs(x[0]); }

template <class T>
T lu_determinant(std::vector<std::vector<T>>& m, const T& one, const T& zero) {
    const int n = static_cast<int>(m.size());
    T det = one;
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        Real best = pivot_magnitude(m[col][col]);
        for (int r = col + 1; r < n; ++r) {
            Real mag = pivot_magnitude(m[r][col]);
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (best.is_zero()) return zero;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            sign = -sign;
        }
        det = det * m[col][col];
        for (int r = col + 1; r < n; ++r) {
            T f = m[r][col] / m[col][col];
            for (int c = col + 1; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
        }
    }
    if (sign < 0) det = -det;
    return det;
}

// ---------------------------------------------------------------------------
// Adaptive precision: evaluate a scalar at p and p+64 bits, escalate by
// doubling until the two agree to the context tolerance.

struct AdaptiveResult {
    Real value;
    long bits_used = 0;
    int escalations = 0;
};

AdaptiveResult adaptive_scalar(const std::function<Real(mpfr_prec_t)>& eval, long start_bits,
                               const PrecisionContext& ctx, const char* what) {
    Real rel_tol = Real::pow2(ctx.tol_shift - ctx.bits, ctx.prec());
    long p = start_bits;
    int escalations = 0;
    Real lo = eval(static_cast<mpfr_prec_t>(p));
    while (true) {
        Real hi = eval(static_cast<mpfr_prec_t>(p + kGuardBits));
        Real scale = max(abs(lo), abs(hi));
        if (scale.is_zero() || abs(hi - lo) <= rel_tol * scale)
            return AdaptiveResult{hi, p + kGuardBits, escalations};
        p *= 2;
        ++escalations;
        if (p > ctx.max_bits)
            throw PrecisionError(std::string(what) + ": adaptive precision exceeded cap");
        lo = eval(static_cast<mpfr_prec_t>(p));
    }
}

Real factorial_product(int upto, mpfr_prec_t prec) {
    // prod_{j=1}^{upto} j!
    Real prod(1L, prec);
    Real fact(1L, prec);
    for (int j = 1; j <= upto; ++j) {
        fact *= static_cast<long>(j);
        prod *= fact;
    }
    return prod;
}

Real lattice_s(const SpectralParams& p, const Real& x) {
    return p.regime() == Regime::AntiFerroelectric ? sinh(x) : sin(x);
}

void check_lattice_size(int n) {
    if (n < 1) throw ParameterDomainError("lattice size must be >= 1");
}

// ---------------------------------------------------------------------------
// Transfer-matrix enumeration. Vertical edge bit 1 = arrow up, horizontal
// bit 1 = arrow right; domain-wall boundaries force all-up above the first
// row, all-down below the last, arrow-in (right) at the left edge and
// arrow-in (left) at the right edge. Vertex types by (W,S,E,N) edge bits:
//   a: (1,1,1,1), (0,0,0,0);  b: (1,0,1,0), (0,1,0,1);  c: (1,0,0,1), (0,1,1,0).
// Conservation: W + S == E + N.

struct VertexWeights {
    std::vector<std::vector<Weights>> w;  // w[row][col]
    mpfr_prec_t prec;
};

Weights weights_at(const SpectralParams& p, const Real& mu) {
    if (p.regime() == Regime::AntiFerroelectric)
        return Weights{sinh(p.eta() - mu), sinh(p.eta() + mu), sinh(2L * p.eta())};
    return Weights{sin(mu + p.eta()), sin(mu - p.eta()), sin(2L * p.eta())};
}

const Real& type_weight(const Weights& w, int sw, int ss, int se, int sn) {
    if (sw == ss && ss == se && se == sn) return w.a;
    if (sw == se && ss == sn) return w.b;
    return w.c;
}

// Sweep one row: states indexed by (vmask << 1) | h. Returns states with the
// row's right boundary satisfied (h == 0), re-primed with h = 1 for the next
// row by the caller.
void sweep_row(std::vector<Real>& state, int n, const std::vector<Weights>& row,
               mpfr_prec_t prec) {
    std::vector<Real> next;
    for (int col = 0; col < n; ++col) {
        next.assign(state.size(), Real(0L, prec));
        for (std::size_t idx = 0; idx < state.size(); ++idx) {
            if (state[idx].is_zero()) continue;
            int h = static_cast<int>(idx & 1);
            int vmask = static_cast<int>(idx >> 1);
            int sn = (vmask >> col) & 1;
            for (int ss = 0; ss <= 1; ++ss) {
                int se = h + ss - sn;
                if (se < 0 || se > 1) continue;
                const Real& wt = type_weight(row[col], h, ss, se, sn);
                int nmask = (vmask & ~(1 << col)) | (ss << col);
                std::size_t nidx = (static_cast<std::size_t>(nmask) << 1) | se;
                next[nidx] += state[idx] * wt;
            }
        }
        state.swap(next);
    }
    // enforce right boundary: horizontal arrow points in (h == 0)
    for (std::size_t idx = 0; idx < state.size(); ++idx)
        if (idx & 1) state[idx] = Real(0L, prec);
}

Real enumerate_rows(const VertexWeights& vw, int n, int first_row, int start_vmask,
                    mpfr_prec_t prec) {
    std::vector<Real> state(std::size_t(1) << (n + 1), Real(0L, prec));
    state[(static_cast<std::size_t>(start_vmask) << 1) | 1] = Real(1L, prec);
    for (int row = first_row; row < n; ++row) {
        sweep_row(state, n, vw.w[row], prec);
        if (row + 1 < n) {
            // re-prime left boundary for the next row
            std::vector<Real> primed(state.size(), Real(0L, prec));
            for (std::size_t idx = 0; idx < state.size(); ++idx) {
                if ((idx & 1) == 0 && !state[idx].is_zero()) primed[idx | 1] = state[idx];
            }
            state.swap(primed);
        }
    }
    return state[0];  // all vertical arrows down, horizontal satisfied
}

VertexWeights build_vertex_weights(const InhomogeneousSpec& spec, const SpectralParams& p) {
    const int n = static_cast<int>(spec.lambdas.size());
    mpfr_prec_t prec = p.prec();
    VertexWeights vw;
    vw.prec = prec;
    vw.w.resize(n);
    for (int row = 0; row < n; ++row) {
        vw.w[row].reserve(n);
        for (int col = 0; col < n; ++col) {
            Real mu = spec.lambdas[col] - spec.nus[row];
            Weights w = weights_at(p, mu);
            if (w.a <= 0L || w.b <= 0L || w.c <= 0L)
                throw ParameterDomainError(
                    "enumerate_partition: vertex weight non-positive (rapidity out of domain)");
            vw.w[row].push_back(std::move(w));
        }
    }
    return vw;
}

} // namespace

// ---------------------------------------------------------------------------

Real phi(const Real& lam, const SpectralParams& p) {
    Weights w = weights_at(p, lam);
    if (w.a.is_zero() || w.b.is_zero())
        throw PoleError("phi: evaluated at a pole", lam.to_double());
    return w.c / (w.a * w.b);
}

Jet phi_jet(const Real& lam, int order, const SpectralParams& p, mpfr_prec_t prec) {
    Real l = lam.to_prec(prec);
    Real eta = p.eta().to_prec(prec);
    Real one(1L, prec), minus_one(-1L, prec);
    if (p.regime() == Regime::AntiFerroelectric) {
        if (sinh(eta - l).is_zero() || sinh(eta + l).is_zero())
            throw PoleError("phi_jet: evaluated at a pole", lam.to_double());
        // phi = coth(eta - lam) + coth(eta + lam)
        return jet_coth(Jet::affine(eta - l, minus_one, order)) +
               jet_coth(Jet::affine(eta + l, one, order));
    }
    if (sin(l - eta).is_zero() || sin(l + eta).is_zero())
        throw PoleError("phi_jet: evaluated at a pole", lam.to_double());
    // phi = cot(lam - eta) - cot(lam + eta)
    return jet_cot(Jet::affine(l - eta, one, order)) -
           jet_cot(Jet::affine(l + eta, one, order));
}

Real weight_a(const SpectralParams& p, const Real& mu) {
    return p.regime() == Regime::AntiFerroelectric ? sinh(p.eta() - mu) : sin(mu + p.eta());
}

Real weight_b(const SpectralParams& p, const Real& mu) {
    return p.regime() == Regime::AntiFerroelectric ? sinh(p.eta() + mu) : sin(mu - p.eta());
}

Real xi_max(const SpectralParams& p) {
    if (p.regime() == Regime::AntiFerroelectric) return p.eta() - p.lambda();
    return Real::pi(p.prec()) - p.eta() - p.lambda();
}

PartitionValue partition_hankel(int n, const SpectralParams& p, const PrecisionContext& ctx) {
    check_lattice_size(n);
    auto eval = [&](mpfr_prec_t prec) {
        Jet j = phi_jet(p.lambda(), 2 * n - 2, p, prec);
        std::vector<std::vector<Real>> m(n);
        for (int r = 0; r < n; ++r) {
            m[r].reserve(n);
            for (int c = 0; c < n; ++c) m[r].push_back(j.deriv(r + c));
        }
        Real one(1L, prec), zero(0L, prec);
        return lu_determinant(m, one, zero);
    };
    long start = std::max({ctx.bits, 128L, 8L * n});
    AdaptiveResult det = adaptive_scalar(eval, start, ctx, "partition_hankel");

    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Weights w = weights_from_spectral(p);
    Real pref = pow_si(w.a.to_prec(prec) * w.b.to_prec(prec), static_cast<long>(n) * n);
    Real fp = factorial_product(n - 1, prec);
    Real z = pref * det.value / (fp * fp);
    return PartitionValue{z, n, det.bits_used, det.escalations};
}

namespace {

// Shared by the value and jet variants: determinant of the one-inhomogeneity
// matrix M(xi) (row 1 from lambda+xi, rows 2..n Hankel-shifted at lambda).
Real one_inhomogeneity_det(int n, const SpectralParams& p, const Real& xi, mpfr_prec_t prec) {
    Jet jrow = phi_jet(p.lambda() + xi, n - 1, p, prec);
    Jet jbulk = n >= 2 ? phi_jet(p.lambda(), 2 * n - 3, p, prec) : Jet(0, prec);
    std::vector<std::vector<Real>> m(n);
    for (int c = 0; c < n; ++c) m[0].push_back(jrow.deriv(c));
    for (int r = 1; r < n; ++r)
        for (int c = 0; c < n; ++c) m[r].push_back(jbulk.deriv(r + c - 1));
    Real one(1L, prec), zero(0L, prec);
    return lu_determinant(m, one, zero);
}

// Same determinant as an order-1 jet in xi; returns d/dxi log det.
Real one_inhomogeneity_det_logderiv(int n, const SpectralParams& p, const Real& xi,
                                    mpfr_prec_t prec) {
    Jet jrow = phi_jet(p.lambda() + xi, n, p, prec);
    Jet jbulk = n >= 2 ? phi_jet(p.lambda(), 2 * n - 3, p, prec) : Jet(0, prec);
    Jet one = Jet::constant(Real(1L, prec), 1);
    Jet zero(1, prec);
    std::vector<std::vector<Jet>> m;
    m.reserve(n);
    for (int r = 0; r < n; ++r) {
        std::vector<Jet> row;
        row.reserve(n);
        for (int c = 0; c < n; ++c) {
            Jet e(1, prec);
            if (r == 0) {
                e[0] = jrow.deriv(c);
                e[1] = jrow.deriv(c + 1);
            } else {
                e[0] = jbulk.deriv(r + c - 1);
            }
            row.push_back(std::move(e));
        }
        m.push_back(std::move(row));
    }
    Jet det = lu_determinant(m, one, zero);
    if (det[0].is_zero()) throw PrecisionError("one-inhomogeneity determinant vanished");
    return det[1] / det[0];
}

void check_xi_domain(const SpectralParams& p, const Real& xi) {
    if (xi < 0L || xi >= xi_max(p))
        throw PoleError("xi outside [0, xi_max)", xi.to_double());
}

} // namespace

PartitionValue partition_one_inhomogeneity(int n, const SpectralParams& p, const Real& xi,
                                           const PrecisionContext& ctx) {
    check_lattice_size(n);
    check_xi_domain(p, xi);
    if (xi.is_zero()) return partition_hankel(n, p, ctx);

    auto eval = [&](mpfr_prec_t prec) { return one_inhomogeneity_det(n, p, xi, prec); };
    long start = std::max({ctx.bits, 128L, 8L * n});
    AdaptiveResult det = adaptive_scalar(eval, start, ctx, "partition_one_inhomogeneity");

    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real lam_xi = p.lambda().to_prec(prec) + xi.to_prec(prec);
    Real ab_xi = weight_a(p, lam_xi) * weight_b(p, lam_xi);
    Weights w = weights_from_spectral(p);
    Real ab0 = w.a.to_prec(prec) * w.b.to_prec(prec);
    Real z = pow_si(ab_xi, n) * pow_si(ab0, static_cast<long>(n) * (n - 1)) * det.value /
             (pow_si(lattice_s(p, xi.to_prec(prec)), n - 1) * factorial_product(n - 1, prec) *
              factorial_product(n - 2, prec));
    if ((n - 1) & 1) z = -z;
    return PartitionValue{z, n, det.bits_used, det.escalations};
}

Real gamma_map(const Real& xi, const SpectralParams& p) {
    check_xi_domain(p, xi);
    Real mu = p.lambda() + xi;
    Real a_xi = weight_a(p, mu);
    if (a_xi.is_zero()) throw PoleError("gamma_map: pole at xi_max", xi.to_double());
    return weight_b(p, mu) * weight_a(p, p.lambda()) / (a_xi * weight_b(p, p.lambda()));
}

Jet gamma_jet(const Real& xi, int order, const SpectralParams& p) {
    check_xi_domain(p, xi);
    mpfr_prec_t prec = std::max(p.prec(), xi.prec());
    Real mu = p.lambda().to_prec(prec) + xi.to_prec(prec);
    Real eta = p.eta().to_prec(prec);
    Real one(1L, prec), minus_one(-1L, prec);
    Jet num(order, prec), den(order, prec);
    if (p.regime() == Regime::AntiFerroelectric) {
        num = sinh(Jet::affine(eta + mu, one, order));
        den = sinh(Jet::affine(eta - mu, minus_one, order));
    } else {
        num = sin(Jet::affine(mu - eta, one, order));
        den = sin(Jet::affine(mu + eta, one, order));
    }
    Real ratio = weight_a(p, p.lambda()) / weight_b(p, p.lambda());
    return num / den * ratio.to_prec(prec);
}

Real h_generating(int n, const SpectralParams& p, const Real& xi, const PrecisionContext& ctx) {
    check_lattice_size(n);
    check_xi_domain(p, xi);
    if (xi.is_zero()) return Real(1L, ctx.prec());
    PartitionValue z_xi = partition_one_inhomogeneity(n, p, xi, ctx);
    PartitionValue z0 = partition_hankel(n, p, ctx);
    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real a0 = weight_a(p, p.lambda()).to_prec(prec);
    Real a_xi = weight_a(p, p.lambda().to_prec(prec) + xi.to_prec(prec));
    return pow_si(a0 / a_xi, n - 1) * z_xi.value / z0.value;
}

BoundaryDistribution boundary_distribution(int n, const SpectralParams& p, int cap) {
    check_lattice_size(n);
    if (n > cap) throw CapacityError("boundary_distribution: n above enumeration cap");
    mpfr_prec_t prec = p.prec();
    InhomogeneousSpec spec;
    for (int i = 0; i < n; ++i) {
        spec.lambdas.push_back(p.lambda());
        spec.nus.emplace_back(0L, prec);
    }
    VertexWeights vw = build_vertex_weights(spec, p);

    // Sum over the forced structure of the first row: a-string, c, b-string;
    // the c at sweep column j leaves vertical bit j pointing down for row 2.
    std::vector<Real> contrib;
    contrib.reserve(n);
    Real total(0L, prec);
    for (int col = 0; col < n; ++col) {
        Real w_row(1L, prec);
        for (int j = 0; j < col; ++j) w_row *= vw.w[0][j].a;
        w_row *= vw.w[0][col].c;
        for (int j = col + 1; j < n; ++j) w_row *= vw.w[0][j].b;
        int vmask = ((1 << n) - 1) & ~(1 << col);
        Real rest = n == 1 ? Real(1L, prec) : enumerate_rows(vw, n, 1, vmask, prec);
        contrib.push_back(w_row * rest);
        total += contrib.back();
    }
    // h_N(gamma) pairs gamma^{r-1} with the c-vertex at sweep column n-r
    // (position r counts from the b-string end of the boundary row).
    BoundaryDistribution dist;
    dist.n = n;
    dist.probs.reserve(n);
    for (int r = 1; r <= n; ++r) dist.probs.push_back(contrib[n - r] / total);
    return dist;
}

PartitionValue enumerate_partition(const InhomogeneousSpec& spec, const SpectralParams& p,
                                   int cap) {
    const int n = static_cast<int>(spec.lambdas.size());
    check_lattice_size(n);
    if (static_cast<int>(spec.nus.size()) != n)
        throw ParameterDomainError("enumerate_partition: lambdas/nus size mismatch");
    if (n > cap) throw CapacityError("enumerate_partition: n above enumeration cap");
    VertexWeights vw = build_vertex_weights(spec, p);
    Real z = enumerate_rows(vw, n, 0, (1 << n) - 1, vw.prec);
    return PartitionValue{z, n, vw.prec, 0};
}

Real finite_log_deriv(int n, const SpectralParams& p, const Real& xi,
                      const PrecisionContext& ctx) {
    check_lattice_size(n);
    check_xi_domain(p, xi);
    if (xi.is_zero() || xi >= xi_max(p))
        throw PoleError("finite_log_deriv: xi must be interior", xi.to_double());

    auto eval = [&](mpfr_prec_t prec) { return one_inhomogeneity_det_logderiv(n, p, xi, prec); };
    long start = std::max({ctx.bits, 128L, 8L * n});
    AdaptiveResult dd = adaptive_scalar(eval, start, ctx, "finite_log_deriv");

    mpfr_prec_t prec = ctx.prec() + kGuardBits;
    Real lam_xi = p.lambda().to_prec(prec) + xi.to_prec(prec);
    Real eta = p.eta().to_prec(prec);
    Real xip = xi.to_prec(prec);
    long N = n;
    Real total(prec);
    if (p.regime() == Regime::AntiFerroelectric) {
        // (N-1) coth(eta-lam-xi) + N[-coth(eta-lam-xi)+coth(eta+lam+xi)]
        //   - (N-1) coth(xi) + dlog det
        total = (N - 1L) * coth(eta - lam_xi) +
                N * (coth(eta + lam_xi) - coth(eta - lam_xi)) -
                (N - 1L) * coth(xip) + dd.value;
    } else {
        total = -(N - 1L) * cot(lam_xi + eta) +
                N * (cot(lam_xi + eta) + cot(lam_xi - eta)) -
                (N - 1L) * cot(xip) + dd.value;
    }
    return total / N;
}

} // namespace dwsv
