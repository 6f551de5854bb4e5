#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <thread>

#include "dwsv/curve.hpp"

using namespace dwsv;

namespace {
const mpfr_prec_t P = 320;
const PrecisionContext ctx(256);

bool close(const Real& a, const Real& b, long bits) {
    Real tol = Real::pow2(-bits, P) * max(Real(1L, P), max(abs(a), abs(b)));
    return abs(a - b) <= tol;
}

SpectralParams from_phase(double delta, double t) {
    return spectral_from_phase(PhasePoint{Real(delta, P), Real(t, P)});
}
} // namespace

TEST_CASE("resolvent constants") {
    auto p = from_phase(-2.0, 1.5);
    ResolventParams rp = resolvent_params(p, ctx);
    Real pi = Real::pi(P);
    CHECK(rp.kappa_var > 0L);
    CHECK(rp.kappa_var < pi / 2L);
    CHECK(close(rp.alpha, pi / (2L * p.eta()), 240));
    CHECK(rp.q > 0L);
    CHECK(rp.q < 1L);
    CHECK(close(rp.u_inf, 2L * rp.K * rp.kappa_var / pi, 240));
    // sn_u_inf consistent with jacobi_sn at u_inf
    Nome q(rp.q);
    CHECK(close(rp.sn_u_inf, jacobi_sn(rp.u_inf, q, ctx), 230));
}

TEST_CASE("AF inverse resolvent: all expressions agree") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.03, 0.97);
    for (double delta : {-1.3, -4.0, -40.0}) {
        for (double t : {0.6, 1.0, 1.9}) {
            auto p = from_phase(delta, t);
            Real xm = xi_max(p);
            for (int i = 0; i < 5; ++i) {
                Real xi = xm * Real(u(rng), P);
                AfInverseForms f = w_inverse_af_forms(xi, p, ctx);
                Real scale = max(Real(1L, P), abs(f.log_deriv_diff));
                CHECK(abs(f.sn_quotient - f.log_deriv_diff) <= Real::pow2(-200, P) * scale);
                CHECK(abs(f.two_theta - f.log_deriv_diff) <= Real::pow2(-200, P) * scale);
                CHECK(abs(f.middle - f.log_deriv_diff) <= Real::pow2(-200, P) * scale);
            }
        }
    }
}

TEST_CASE("AF resolvent roundtrip and asymptotics") {
    auto p = from_phase(-2.0, 1.0);
    Real xm = xi_max(p);
    // roundtrip on a coarse grid, both sheets
    for (int i = 1; i < 20; ++i) {
        Real xi = xm * Real(i / 20.0, P);
        Real z = w_inverse_af(xi, p, ctx);
        Sheet sheet = (2 * i <= 20) ? Sheet::LowerXi : Sheet::UpperXi;
        Real back = w_forward_af(z, p, ctx, sheet);
        CHECK(abs(back - xi) <= Real(1e-10, P));
    }
    // xi W^{-1}(xi) -> 1 as xi -> 0+
    for (double e : {1e-4, 1e-6}) {
        Real xi(e, P);
        CHECK(abs(xi * w_inverse_af(xi, p, ctx) - 1L) <= Real(1e-5, P));
    }
    // W(z) ~ 1/z for large z
    for (double z : {1e3, 1e5}) {
        Real w = w_forward_af(Real(z, P), p, ctx);
        CHECK(abs(Real(z, P) * w - 1L) <= Real(10.0 / z, P));
    }
    // branch error inside the gap (z below the lower band edge)
    ResolventParams rp = resolvent_params(p, ctx);
    Real z_min = rp.beta / p.eta();
    CHECK_THROWS_AS(w_forward_af(z_min - Real(0.5, P), p, ctx), BranchError);
}

TEST_CASE("disordered inverse resolvent forms and roundtrip") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.03, 0.97);
    for (double delta : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        for (double t : {0.5, 1.0, 2.0}) {
            auto p = from_phase(delta, t);
            Real xm = xi_max(p);
            for (int i = 0; i < 5; ++i) {
                double f = u(rng);
                Real xi = xm * Real(f, P);
                DisInverseForms forms = w_inverse_dis_forms(xi, p, ctx);
                Real scale = max(Real(1L, P), abs(forms.cot_difference));
                CHECK(abs(forms.tan_quotient - forms.cot_difference) <=
                      Real::pow2(-200, P) * scale);
                Sheet sheet = (f <= 0.5) ? Sheet::LowerXi : Sheet::UpperXi;
                Real back = w_forward_dis(forms.cot_difference, p, ctx, sheet);
                CHECK(abs(back - xi) <= Real(1e-10, P));
            }
            // xi W^{-1} -> 1
            Real xi(1e-6, P);
            CHECK(abs(xi * w_inverse_dis(xi, p, ctx) - 1L) <= Real(1e-5, P));
        }
    }
}

TEST_CASE("finite-N log-derivative converges in the disordered regime too") {
    // gates the mirrored disordered formulas alongside the circle test
    auto p = from_phase(0.4, 1.3);
    Real xi = xi_max(p) * Real(0.4, P);
    Real a = asymptotic_log_deriv(xi, p, ctx);
    Real e8 = abs(finite_log_deriv(8, p, xi, ctx) - a);
    Real e16 = abs(finite_log_deriv(16, p, xi, ctx) - a);
    CHECK(e16 <= Real(0.7, P) * e8);
}

TEST_CASE("asymptotic_log_deriv is finite toward xi -> 0") {
    for (double delta : {-2.0, 0.4}) {
        auto p = from_phase(delta, 1.3);
        Real a4 = asymptotic_log_deriv(Real(1e-4, P), p, ctx);
        Real a6 = asymptotic_log_deriv(Real(1e-6, P), p, ctx);
        CHECK(a4.is_finite());
        CHECK(abs(a4 - a6) <= Real(1e-2, P) * max(Real(1L, P), abs(a4)));
    }
}

TEST_CASE("Psi: definitional identity, finiteness, and jet derivative") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (double delta : {-2.0, -15.0, 0.5, -0.8}) {
        auto p = from_phase(delta, 1.7);
        Real xm = xi_max(p);
        for (int i = 0; i < 5; ++i) {
            Real xi = xm * Real(u(rng), P);
            Real lhs = psi(xi, p, ctx);
            Real rhs = phi(p.lambda() + xi, p) - asymptotic_log_deriv(xi, p, ctx);
            CHECK(close(lhs, rhs, 200));
        }
        // finite as xi -> 0 (the 1/xi terms cancel)
        Real near = psi(xm * Real(1e-7, P), p, ctx);
        Real nearer = psi(xm * Real(1e-9, P), p, ctx);
        CHECK(near.is_finite());
        CHECK(abs(near - nearer) <= Real(1e-3, P) * max(Real(1L, P), abs(near)));
        // Psi' from jets vs central difference, tolerance 1e-10
        Real xi0 = xm * Real(0.4, P);
        Real h = xm * Real(1e-9, P);
        Jet pj = psi_jet(xi0, 1, p, ctx);
        Real fd = (psi(xi0 + h, p, ctx) - psi(xi0 - h, p, ctx)) / (2L * h);
        CHECK(abs(pj.deriv(1) - fd) <= Real(1e-10, P));
    }
}

TEST_CASE("curve points solve the linear system exactly") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    Real tol("1e-20", P);
    for (double delta : {-1.2, -2.0, -30.0, -0.5, 0.3, 0.9}) {
        for (double t : {0.5, 1.0, 2.0}) {
            auto p = from_phase(delta, t);
            Real xm = xi_max(p);
            for (int i = 0; i < 8; ++i) {
                CurvePointFull c = curve_point_full(xm * Real(u(rng), P), p, ctx);
                CHECK(abs(c.f_residual) <= tol);
                CHECK(abs(c.fp_residual) <= tol);
                CHECK(c.pt.x >= 0L);
                CHECK(c.pt.x <= 1L);
                CHECK(c.pt.y >= 0L);
                CHECK(c.pt.y <= 1L);
            }
        }
    }
    auto p = from_phase(-2.0, 1.0);
    CHECK_THROWS_AS(curve_point(Real(0L, P), p, ctx), PoleError);
    CHECK_THROWS_AS(curve_point(xi_max(p), p, ctx), PoleError);
}

TEST_CASE("free-fermion point lies on the arctic circle") {
    auto p = from_phase(0.0, 1.0);
    GridSpec g{32, true};
    CurvePortion c = curve_portion(p, g, ctx);
    Real quarter(0.25, P), half(0.5, P);
    for (const CurvePoint& pt : c.points) {
        Real r = (pt.x - half) * (pt.x - half) + (pt.y - half) * (pt.y - half) - quarter;
        CHECK(abs(r) <= Real(1e-8, P));
    }
    CHECK(close(c.contact_x, half, 60));
    CHECK(close(c.contact_y, half, 60));
}

TEST_CASE("Delta -> -infinity degenerates toward the straight segment") {
    auto p = from_phase(-1e4, 1.0);
    GridSpec g{24, true};
    CurvePortion c = curve_portion(p, g, ctx);
    for (const CurvePoint& pt : c.points)
        CHECK(abs(pt.x + pt.y - Real(0.5, P)) <= Real(1e-2, P));

    // already close at Delta = -50
    auto p50 = from_phase(-50.0, 1.0);
    for (double f : {0.1, 0.5, 0.9}) {
        CurvePoint pt = curve_point(xi_max(p50) * Real(f, P), p50, ctx);
        CHECK(abs(pt.x + pt.y - Real(0.5, P)) <= Real(5e-2, P));
    }
}

TEST_CASE("curve portion endpoints and tangency") {
    for (double delta : {-2.5, 0.4}) {
        for (double t : {1.0, 1.6}) {
            auto p = from_phase(delta, t);
            Real xm = xi_max(p);
            GridSpec g{16, true};
            CurvePortion c = curve_portion(p, g, ctx);
            // contact point strictly inside (0,1)
            CHECK(c.contact_x > 0L);
            CHECK(c.contact_x < 1L);
            // y -> 0 at xi -> 0 and x -> 0 at xi -> xi_max (extrapolated)
            Real eps = Real(1e-3, P) * min(Real(1L, P), xm);
            Real y0 = richardson_limit(
                [&](const Real& e) { return curve_point(e, p, ctx).y; }, eps, 6);
            Real x1 = richardson_limit(
                [&](const Real& e) { return curve_point(xm - e, p, ctx).x; }, eps, 6);
            CHECK(abs(y0) <= Real(1e-8, P));
            CHECK(abs(x1) <= Real(1e-8, P));
            // slope dy/dx -> 0 at the x-axis contact, diverges at the other end
            CurvePointFull c0 = curve_point_full(xm * Real(1e-5, P), p, ctx);
            CurvePointFull c1 = curve_point_full(xm * (1L - Real(1e-5, P)), p, ctx);
            CHECK(abs(c0.dy_dxi / c0.dx_dxi) <= Real(1e-4, P));
            CHECK(abs(c1.dy_dxi / c1.dx_dxi) >= Real(100L, P));
        }
    }
}

TEST_CASE("contact point matches the closed-form limit") {
    // x(0) -> Psi(0)/phi(lambda); Psi(0) has a closed form in each regime.
    auto p = from_phase(-3.0, 1.5);
    GridSpec g{8, true};
    CurvePortion c = curve_portion(p, g, ctx);
    ResolventParams rp = resolvent_params(p, ctx);
    Nome q(rp.q);
    Real psi0 = coth(p.eta() - p.lambda()) +
                rp.alpha * log_deriv_theta1(rp.alpha * (p.lambda() + p.eta()), q, ctx);
    CHECK(abs(c.contact_x - psi0 / phi(p.lambda(), p)) <= Real(1e-20, P));

    auto d = from_phase(0.3, 1.4);
    CurvePortion cd = curve_portion(d, g, ctx);
    ResolventParams rd = resolvent_params(d, ctx);
    Real psi0d = rd.alpha * cot(rd.alpha * (d.lambda() - d.eta())) - cot(d.lambda() + d.eta());
    CHECK(abs(cd.contact_x - psi0d / phi(d.lambda(), d)) <= Real(1e-20, P));
}

TEST_CASE("full curve: four portions, square domain, symmetry") {
    GridSpec g{32, true};
    for (double delta : {-2.0, 0.5}) {
        auto p = from_phase(delta, 1.0);
        FullCurve fc = full_curve(p, g, ctx);
        CHECK(fc.portions.size() == 4);
        for (const CurvePortion& por : fc.portions) {
            CHECK(por.points.size() == 32);
            for (const CurvePoint& pt : por.points) {
                CHECK(pt.x >= 0L);
                CHECK(pt.x <= 1L);
                CHECK(pt.y >= 0L);
                CHECK(pt.y <= 1L);
            }
        }
        // t = 1: the full curve is invariant under (x,y) -> (y,x);
        // Hausdorff distance of the point set from the swapped set
        std::vector<CurvePoint> all;
        for (const CurvePortion& por : fc.portions)
            for (const CurvePoint& pt : por.points) all.push_back(pt);
        Real worst(0L, P);
        for (const CurvePoint& a : all) {
            Real best("1e100", P);
            for (const CurvePoint& b : all) {
                Real dx = a.x - b.y, dy = a.y - b.x;
                best = min(best, dx * dx + dy * dy);
            }
            worst = max(worst, best);
        }
        CHECK(sqrt(worst) <= Real(1e-8, P));
        // contact points: one per side, consistent under the symmetry maps
        CHECK(close(fc.contact_top_x, 1L - fc.contact_bottom_x, 240));
        CHECK(close(fc.contact_right_y, 1L - fc.contact_left_y, 240));
    }
    // t != 1: bottom contacts of the two lower portions coincide
    auto p = from_phase(-2.0, 1.7);
    FullCurve fc = full_curve(p, g, ctx);
    CHECK(close(fc.portions[1].contact_x, fc.portions[0].contact_x, 40));
}

TEST_CASE("curve evaluation is safe to run concurrently") {
    auto p = from_phase(-2.0, 1.4);
    Real xm = xi_max(p);
    const int n = 16;
    std::vector<CurvePoint> serial;
    for (int i = 0; i < n; ++i)
        serial.push_back(curve_point(xm * Real((i + 0.5) / n, P), p, ctx));

    std::vector<CurvePoint> parallel(n, CurvePoint{Real(0L, P), Real(0L, P), Real(0L, P)});
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([&, w] {
            for (int i = w; i < n; i += 4)
                parallel[i] = curve_point(xm * Real((i + 0.5) / n, P), p, ctx);
        });
    }
    for (std::thread& t : workers) t.join();
    for (int i = 0; i < n; ++i) {
        CHECK(parallel[i].x == serial[i].x);
        CHECK(parallel[i].y == serial[i].y);
    }
}

TEST_CASE("regime guards") {
    auto af_p = from_phase(-2.0, 1.0);
    auto dis_p = from_phase(0.3, 1.0);
    CHECK_THROWS_AS(w_inverse_af(Real(0.1, P), dis_p, ctx), ParameterDomainError);
    CHECK_THROWS_AS(w_inverse_dis(Real(0.1, P), af_p, ctx), ParameterDomainError);
    CHECK_THROWS_AS(w_forward_af(Real(10L, P), dis_p, ctx), ParameterDomainError);
    CHECK_THROWS_AS(w_forward_dis(Real(10L, P), af_p, ctx), ParameterDomainError);
}
