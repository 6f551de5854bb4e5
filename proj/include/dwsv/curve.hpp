// The asymptotic layer: resolvent forward/inverse maps in both regimes, the
// function Psi, and the parametric arctic curve with symmetry completion.
//
// One portion of the curve is parametrized by xi in (0, xi_max); x and y
// solve f(xi) = 0, f'(xi) = 0 with
//   f(xi) = x phi(xi + lambda) + y phi(xi - eta) - Psi(xi)        (AF)
//   f(xi) = x phi(xi + lambda) + y phi(xi + eta) - Psi(xi)        (disordered)
// the disordered pairing being derived by mirroring the AF construction
// through the disordered weight parametrization.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dwsv/finite_n.hpp"
#include "dwsv/jet.hpp"
#include "dwsv/params.hpp"
#include "dwsv/real.hpp"
#include "dwsv/specfun.hpp"

namespace dwsv {

// Constants of the resolvent representation.
// AF: kappa = pi(eta-lambda)/(4 eta), alpha = pi/(2 eta), q = exp(-pi^2/(2 eta)),
//     K = K(q), u_inf = 2 K kappa / pi, beta = pi th1'/th1(kappa),
//     beta' = pi th4'/th4(kappa).
// Disordered: kappa = pi(pi-eta-lambda)/(2(pi-2 eta)), alpha = pi/(pi-2 eta).
struct ResolventParams {
    Regime regime;
    Real kappa_var;
    Real alpha;
    // AF-only quantities (zero-initialized in the disordered regime):
    Real q;
    Real K;
    Real beta;
    Real beta_prime;
    Real u_inf;
    Real sn_u_inf;
};

ResolventParams resolvent_params(const SpectralParams& p, const PrecisionContext& ctx);

// W^{-1}(xi) is symmetric about xi_max/2 (the resolvent is two-to-one onto
// its range), so the forward map carries an explicit sheet choice: LowerXi
// inverts onto (0, xi_max/2], UpperXi onto [xi_max/2, xi_max).
enum class Sheet { LowerXi, UpperXi };

// W(z) = -(eta/K) [u(eta z) - u_inf], sn^2 u(w) = ((beta-w)/(beta'-w)) sn^2 u_inf.
Real w_forward_af(const Real& z, const SpectralParams& p, const PrecisionContext& ctx,
                  Sheet sheet = Sheet::LowerXi);

// The algebraically equivalent expressions of the AF inverse resolvent;
// w_inverse_af returns log_deriv_diff, the others are asserted against it.
struct AfInverseForms {
    Real sn_quotient;
    Real two_theta;
    Real middle;
    Real log_deriv_diff;
};
AfInverseForms w_inverse_af_forms(const Real& xi, const SpectralParams& p,
                                  const PrecisionContext& ctx);
Real w_inverse_af(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx);

// Disordered regime: W(z) explicit log/sqrt form; inverse
// W^{-1}(xi) = alpha cot(alpha xi) - alpha cot(alpha (xi + lambda - eta)).
Real w_forward_dis(const Real& z, const SpectralParams& p, const PrecisionContext& ctx,
                   Sheet sheet = Sheet::LowerXi);
struct DisInverseForms {
    Real tan_quotient;
    Real cot_difference;
};
DisInverseForms w_inverse_dis_forms(const Real& xi, const SpectralParams& p,
                                    const PrecisionContext& ctx);
Real w_inverse_dis(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx);

// lim (1/N) d/dxi log h_N(gamma(xi)):
//   coth(xi+lambda+eta) - coth(xi) + W^{-1}(xi)   (AF)
//   cot (xi+lambda-eta) - cot (xi) + W^{-1}(xi)   (disordered)
Real asymptotic_log_deriv(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx);

// Psi(xi) = phi(xi+lambda) - asymptotic_log_deriv(xi), in the simplified
// pole-cancelled form; psi_jet propagates derivatives through the theta and
// coth/cot series (no finite differences).
Real psi(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx);
Jet psi_jet(const Real& xi, int order, const SpectralParams& p, const PrecisionContext& ctx);

struct CurvePoint {
    Real xi;
    Real x;
    Real y;
};

// Point plus parametric derivatives and the linear-system residuals.
struct CurvePointFull {
    CurvePoint pt;
    Real dx_dxi;
    Real dy_dxi;
    Real f_residual;
    Real fp_residual;
};

CurvePoint curve_point(const Real& xi, const SpectralParams& p, const PrecisionContext& ctx);
CurvePointFull curve_point_full(const Real& xi, const SpectralParams& p,
                                const PrecisionContext& ctx);

struct GridSpec {
    int n_points = 256;
    bool chebyshev = true;  // cluster toward the endpoints
};

struct CurvePortion {
    std::vector<CurvePoint> points;  // ordered by xi
    Real contact_x;  // lim_{xi->0} x (contact with the x-axis)
    Real contact_y;  // lim_{xi->xi_max} y (contact with the y-axis)
};

// The directly computed portion (contacts the x-axis at xi=0 and the y-axis
// at xi=xi_max), endpoints by Richardson extrapolation.
CurvePortion curve_portion(const SpectralParams& p, const GridSpec& grid,
                           const PrecisionContext& ctx);

// Richardson extrapolation of f(eps 2^-k), k = 0..steps, toward eps -> 0.
Real richardson_limit(const std::function<Real(const Real&)>& f, const Real& eps, int steps);

// All four portions: the computed arc (bottom-left), its horizontal
// reflection at crossing-reflected parameters (bottom-right), and the central
// images of both (top-right, top-left).
struct FullCurve {
    std::array<CurvePortion, 4> portions;
    Real contact_bottom_x;  // (x, 0)
    Real contact_left_y;    // (0, y)
    Real contact_top_x;     // (x, 1)
    Real contact_right_y;   // (1, y)
};

FullCurve full_curve(const SpectralParams& p, const GridSpec& grid, const PrecisionContext& ctx);

} // namespace dwsv
