#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dwsv/finite_n.hpp"

using namespace dwsv;

namespace {
const mpfr_prec_t P = 320;
const PrecisionContext ctx(256);

bool close(const Real& a, const Real& b, long bits) {
    Real tol = Real::pow2(-bits, P) * max(Real(1L, P), max(abs(a), abs(b)));
    return abs(a - b) <= tol;
}

SpectralParams af(double delta, double t) {
    return spectral_from_phase(PhasePoint{Real(delta, P), Real(t, P)});
}

InhomogeneousSpec homogeneous_spec(int n, const SpectralParams& p) {
    InhomogeneousSpec s;
    for (int i = 0; i < n; ++i) {
        s.lambdas.push_back(p.lambda());
        s.nus.emplace_back(0L, P);
    }
    return s;
}

// Test-local symbolic oracle for phi_jet, independent of the jet
// recurrences: the k-th derivative of coth (resp. cot) is a polynomial in
// c = coth(x) (resp. cot(x)), obtained by repeated differentiation of the
// coefficient vector with c' = 1 - c^2 (resp. c' = -(1 + c^2)).
std::vector<long> symbolic_deriv_poly(int order, bool hyperbolic) {
    std::vector<long> poly = {0, 1};  // c
    long constant = hyperbolic ? 1 : -1;  // c' = constant - c^2
    for (int k = 0; k < order; ++k) {
        std::vector<long> d(poly.size() + 1, 0);
        for (std::size_t j = 1; j < poly.size(); ++j) {
            long aj = poly[j] * static_cast<long>(j);
            d[j - 1] += constant * aj;
            d[j + 1] -= aj;
        }
        poly = std::move(d);
    }
    return poly;
}

Real symbolic_deriv(const Real& x, int k, bool hyperbolic) {
    std::vector<long> poly = symbolic_deriv_poly(k, hyperbolic);
    Real c = hyperbolic ? coth(x) : cot(x);
    Real acc(0L, P);
    Real cp(1L, P);
    for (long coeff : poly) {
        acc += Real(coeff, P) * cp;
        cp *= c;
    }
    return acc;
}
Real coth_deriv(const Real& x, int k) { return symbolic_deriv(x, k, true); }
Real cot_deriv(const Real& x, int k) { return symbolic_deriv(x, k, false); }
} // namespace

TEST_CASE("phi closed forms and symmetry") {
    auto p = SpectralParams::make(Regime::AntiFerroelectric, Real(0L, P), Real(0.8, P));
    CHECK(close(phi(Real(0L, P), p), 2L * coth(Real(0.8, P)), 240));

    auto p2 = SpectralParams::make(Regime::AntiFerroelectric, Real(0.2, P), Real(0.8, P));
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-0.75, 0.75);
    for (int i = 0; i < 3; ++i) {
        Real lam(0.8 * u(rng), P);
        CHECK(close(phi(lam, p2), phi(-lam, p2), 240));
        // partial fraction identity
        CHECK(close(phi(lam, p2), coth(Real(0.8, P) - lam) + coth(Real(0.8, P) + lam), 240));
    }
    // disordered partial fractions
    Real pi = Real::pi(P);
    auto d = SpectralParams::make(Regime::Disordered, pi / 2L, pi / 6L);
    for (int i = 0; i < 3; ++i) {
        Real lam = pi / 2L + Real(u(rng), P);
        CHECK(close(phi(lam, d), cot(lam - pi / 6L) - cot(lam + pi / 6L), 240));
    }
    // pole at lambda = eta
    CHECK_THROWS_AS(phi(Real(0.8, P), p), PoleError);
}

TEST_CASE("phi_jet against symbolic differentiation") {
    auto p = SpectralParams::make(Regime::AntiFerroelectric, Real(0.1, P), Real(0.9, P));
    Real lam(0.25, P);
    Jet j = phi_jet(lam, 6, p, P);
    CHECK(close(j[0], phi(lam, p), 240));
    Real eta(0.9, P);
    for (int k = 0; k <= 6; ++k) {
        // d^k/dlam^k [coth(eta - lam) + coth(eta + lam)]
        Real sym = coth_deriv(eta + lam, k);
        Real left = coth_deriv(eta - lam, k);
        if (k & 1) left = -left;
        CHECK(close(j.deriv(k), left + sym, 230));
    }
    // odd derivatives vanish at lambda = 0 (phi is even)
    Jet j0 = phi_jet(Real(0L, P), 5, p, P);
    CHECK(j0[1].is_zero());
    CHECK(abs(j0[3]) <= Real::pow2(-240, P) * abs(j0[0]));

    Real pi = Real::pi(P);
    auto d = SpectralParams::make(Regime::Disordered, pi / 2L, pi / 5L);
    Real mu = pi / 2L + Real(0.15, P);
    Jet jd = phi_jet(mu, 6, d, P);
    for (int k = 0; k <= 6; ++k)
        CHECK(close(jd.deriv(k), cot_deriv(mu - pi / 5L, k) - cot_deriv(mu + pi / 5L, k), 230));
}

TEST_CASE("partition function: N=1 and alternating-sign-matrix point") {
    auto p = af(-2.0, 1.3);
    CHECK(close(partition_hankel(1, p, ctx).value, weights_from_spectral(p).c, 240));

    // a = b = c at (eta, lambda) = (pi/6, pi/2); Z_N / s^(N^2) gives the ASM
    // numbers 1, 2, 7, 42, 429
    Real pi = Real::pi(P);
    auto asm_p = SpectralParams::make(Regime::Disordered, pi / 2L, pi / 6L);
    Real s = sqrt(Real(3L, P)) / 2L;
    const long counts[] = {1, 2, 7, 42, 429};
    for (int n = 1; n <= 5; ++n) {
        Real z = partition_hankel(n, asm_p, ctx).value;
        CHECK(close(z / pow_si(s, static_cast<long>(n) * n), Real(counts[n - 1], P), 220));
        Real ze = enumerate_partition(homogeneous_spec(n, asm_p), asm_p).value;
        CHECK(close(ze / pow_si(s, static_cast<long>(n) * n), Real(counts[n - 1], P), 220));
    }
}

TEST_CASE("oracle equivalence: Hankel determinant vs enumeration") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Real tol("1e-25", P);
    int af_points = 0, dis_points = 0;
    while (af_points < 10 || dis_points < 10) {
        bool use_af = (af_points <= dis_points);
        double delta = use_af ? -1.05 - 8.0 * u(rng) : -0.95 + 1.85 * u(rng);
        double t = 0.4 + 2.0 * u(rng);
        SpectralParams p = spectral_from_phase(PhasePoint{Real(delta, P), Real(t, P)});
        int n = 2 + static_cast<int>(u(rng) * 4.999);  // 2..6
        Real ze = enumerate_partition(homogeneous_spec(n, p), p).value;
        Real zh = partition_hankel(n, p, ctx).value;
        CHECK(abs(zh - ze) <= tol * ze);
        (use_af ? af_points : dis_points) += 1;
    }
}

TEST_CASE("Z_N invariant under crossing reflection") {
    for (double delta : {-1.7, 0.4}) {
        auto p = spectral_from_phase(PhasePoint{Real(delta, P), Real(1.8, P)});
        auto r = crossing_reflect(p);
        for (int n : {2, 4}) {
            CHECK(close(partition_hankel(n, p, ctx).value, partition_hankel(n, r, ctx).value,
                        220));
        }
    }
}

TEST_CASE("one-inhomogeneity partition function") {
    for (double delta : {-2.0, 0.3}) {
        auto p = spectral_from_phase(PhasePoint{Real(delta, P), Real(0.8, P)});
        Real xm = xi_max(p);

        // xi = 0 reduces to the homogeneous case
        CHECK(close(partition_one_inhomogeneity(3, p, Real(0L, P), ctx).value,
                    partition_hankel(3, p, ctx).value, 240));

        // n = 1: single inhomogeneous vertex carries weight c
        Real xi1 = xm * Real(0.4, P);
        CHECK(close(partition_one_inhomogeneity(1, p, xi1, ctx).value,
                    weights_from_spectral(p).c, 240));

        // n <= 4 against enumeration with lambda_1 = lambda + xi
        for (int n = 2; n <= 4; ++n) {
            for (double f : {0.15, 0.55, 0.9}) {
                Real xi = xm * Real(f, P);
                InhomogeneousSpec spec = homogeneous_spec(n, p);
                spec.lambdas[0] = p.lambda() + xi;
                Real ze = enumerate_partition(spec, p).value;
                Real z1 = partition_one_inhomogeneity(n, p, xi, ctx).value;
                CHECK(abs(z1 - ze) <= Real("1e-25", P) * ze);
            }
        }
    }
}

TEST_CASE("gamma_map properties") {
    auto p = af(-2.0, 1.5);
    Real xm = xi_max(p);
    CHECK(close(gamma_map(Real(0L, P), p), Real(1L, P), 250));
    // monotone increasing on (0, xi_max): derivative positive
    for (double f : {0.1, 0.5, 0.9}) {
        Jet g = gamma_jet(xm * Real(f, P), 1, p);
        CHECK(g.deriv(1) > 0L);
    }
    // gamma -> infinity toward the pole
    CHECK(gamma_map(xm * (1L - Real(1e-8, P)), p) > Real(1e6, P));
    CHECK_THROWS_AS(gamma_map(xm, p), PoleError);
    CHECK_THROWS_AS(gamma_map(xm + Real(0.1, P), p), PoleError);
}

TEST_CASE("boundary distribution") {
    // n = 1: H = [1]
    auto p1 = af(-1.4, 0.7);
    BoundaryDistribution b1 = boundary_distribution(1, p1);
    CHECK(b1.probs.size() == 1);
    CHECK(close(b1.probs[0], Real(1L, P), 250));

    // n = 2, a = b: H = [1/2, 1/2]; generally [a^2, b^2]/(a^2+b^2)
    auto p2 = af(-2.0, 1.0);
    BoundaryDistribution b2 = boundary_distribution(2, p2);
    CHECK(close(b2.probs[0], Real(0.5, P), 240));
    CHECK(close(b2.probs[1], Real(0.5, P), 240));

    auto p3 = af(-2.0, 1.7);
    Weights w = weights_from_spectral(p3);
    BoundaryDistribution b3 = boundary_distribution(2, p3);
    Real denom = w.a * w.a + w.b * w.b;
    CHECK(close(b3.probs[0], w.a * w.a / denom, 240));
    CHECK(close(b3.probs[1], w.b * w.b / denom, 240));

    // normalization and positivity across sizes and regimes
    for (double delta : {-3.0, 0.2}) {
        auto p = spectral_from_phase(PhasePoint{Real(delta, P), Real(1.2, P)});
        for (int n : {3, 5, 7}) {
            BoundaryDistribution b = boundary_distribution(n, p);
            Real sum(0L, P);
            for (const Real& h : b.probs) {
                CHECK(h >= 0L);
                sum += h;
            }
            CHECK(close(sum, Real(1L, P), 240));
        }
    }
    CHECK_THROWS_AS(boundary_distribution(9, p1), CapacityError);
}

TEST_CASE("h_generating equals the boundary-distribution polynomial") {
    for (double delta : {-2.4, -1.2, 0.5, -0.6}) {
        auto p = spectral_from_phase(PhasePoint{Real(delta, P), Real(1.4, P)});
        Real xm = xi_max(p);
        CHECK(close(h_generating(3, p, Real(0L, P), ctx), Real(1L, P), 250));
        for (int n : {1, 2, 4, 5}) {
            for (double f : {0.2, 0.6}) {
                Real xi = xm * Real(f, P);
                Real lhs = h_generating(n, p, xi, ctx);
                if (n == 1) {
                    CHECK(close(lhs, Real(1L, P), 240));
                    continue;
                }
                BoundaryDistribution H = boundary_distribution(n, p);
                Real g = gamma_map(xi, p);
                Real rhs(0L, P), gp(1L, P);
                for (int r = 1; r <= n; ++r) {
                    rhs += H.probs[r - 1] * gp;
                    gp *= g;
                }
                CHECK(abs(lhs - rhs) <= Real("1e-25", P) * rhs);
            }
        }
    }
}

TEST_CASE("enumeration basics and invariances") {
    auto p = af(-2.0, 1.1);
    CHECK(close(enumerate_partition(homogeneous_spec(1, p), p).value,
                weights_from_spectral(p).c, 250));
    CHECK_THROWS_AS(enumerate_partition(homogeneous_spec(9, p), p), CapacityError);

    // Z is symmetric in the lambda rapidities
    InhomogeneousSpec spec = homogeneous_spec(3, p);
    spec.lambdas[0] = p.lambda() + Real(0.05, P);
    spec.lambdas[1] = p.lambda() - Real(0.03, P);
    Real z1 = enumerate_partition(spec, p).value;
    std::swap(spec.lambdas[0], spec.lambdas[2]);
    Real z2 = enumerate_partition(spec, p).value;
    CHECK(close(z1, z2, 240));

    // out-of-domain rapidity rejected
    InhomogeneousSpec bad = homogeneous_spec(2, p);
    bad.lambdas[0] = p.eta() + Real(0.2, P);
    CHECK_THROWS_AS(enumerate_partition(bad, p), ParameterDomainError);
}

namespace {
// Test-side Izergin-Korepin evaluation for fully distinct rapidities:
//   Z = prod_{j,k} a(l_j - n_k) b(l_j - n_k)
//       / [prod_{j<k} s(l_k - l_j) s(n_j - n_k)] * det[phi(l_j - n_k)]
// with s = sinh (AF) / sin (disordered). Determinant by plain Gaussian
// elimination, independent of the library's LU.
Real ik_partition(const InhomogeneousSpec& spec, const SpectralParams& p) {
    const int n = static_cast<int>(spec.lambdas.size());
    const bool af = p.regime() == Regime::AntiFerroelectric;
    auto s = [&](const Real& x) { return af ? sinh(x) : sin(x); };
    Real pref(1L, P);
    std::vector<std::vector<Real>> m(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            Real mu = spec.lambdas[j] - spec.nus[k];
            pref *= weight_a(p, mu) * weight_b(p, mu);
            m[j].push_back(phi(mu, p));
        }
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            pref /= s(spec.lambdas[k] - spec.lambdas[j]) * s(spec.nus[j] - spec.nus[k]);
    Real det(1L, P);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (abs(m[r][col]) > abs(m[piv][col])) piv = r;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            Real f = m[r][col] / m[col][col];
            for (int c = col + 1; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return pref * det;
}
} // namespace

TEST_CASE("fully inhomogeneous determinant formula matches enumeration") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double delta : {-2.5, 0.3}) {
        auto p = spectral_from_phase(PhasePoint{Real(delta, P), Real(1.1, P)});
        // spread distinct rapidities small enough to keep all weights positive
        for (int n : {2, 3, 4, 5}) {
            InhomogeneousSpec spec = homogeneous_spec(n, p);
            double room = 0.08;
            for (int i = 0; i < n; ++i) {
                spec.lambdas[i] = p.lambda() + Real(room * u(rng), P);
                spec.nus[i] = Real(room * u(rng), P);
            }
            Real z_det = ik_partition(spec, p);
            Real z_enum = enumerate_partition(spec, p).value;
            CHECK(abs(z_det - z_enum) <= Real("1e-40", P) * abs(z_enum));
        }
    }
}

TEST_CASE("finite_log_deriv matches the enumeration oracle") {
    for (double delta : {-2.0, 0.4}) {
        auto p = spectral_from_phase(PhasePoint{Real(delta, P), Real(1.4, P)});
        Real xm = xi_max(p);
        Real xi = xm * Real(0.35, P);
        CHECK(abs(finite_log_deriv(1, p, xi, ctx)) <= Real::pow2(-230, P));
        for (int n : {2, 3, 5}) {
            Real lhs = finite_log_deriv(n, p, xi, ctx);
            BoundaryDistribution H = boundary_distribution(n, p);
            Jet g = gamma_jet(xi, 1, p);
            Jet h = Jet::constant(Real(0L, P), 1);
            Jet gp = Jet::constant(Real(1L, P), 1);
            for (int r = 1; r <= n; ++r) {
                h = h + H.probs[r - 1] * gp;
                gp = gp * g;
            }
            Real rhs = h.deriv(1) / h[0] / static_cast<long>(n);
            CHECK(abs(lhs - rhs) <= Real("1e-30", P) * max(Real(1L, P), abs(rhs)));
        }
    }
}

TEST_CASE("adaptive precision reporting") {
    auto p = af(-2.0, 1.0);
    PartitionValue z = partition_hankel(12, p, ctx);
    CHECK(z.bits_used >= 256);
    CHECK(z.value > 0L);
}
