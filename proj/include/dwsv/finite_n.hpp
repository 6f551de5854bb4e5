// Exact finite-N quantities for the domain-wall six-vertex model: the
// homogeneous partition function as a Hankel determinant of derivatives of
// phi, the one-inhomogeneity partition function, the boundary correlation
// H_N^(r) with its generating function h_N, and a brute-force transfer-matrix
// enumeration used as an oracle for all of them.
#pragma once

#include <vector>

#include "dwsv/jet.hpp"
#include "dwsv/params.hpp"
#include "dwsv/real.hpp"

namespace dwsv {

struct PartitionValue {
    Real value;
    int n = 0;
    long bits_used = 0;   // precision at which the determinant stabilized
    int escalations = 0;  // adaptive-precision escalation events
};

struct BoundaryDistribution {
    int n = 0;
    std::vector<Real> probs;  // H_N^(1..N), indexed probs[r-1]
};

struct InhomogeneousSpec {
    std::vector<Real> lambdas;
    std::vector<Real> nus;
};

inline constexpr int kEnumerationCap = 8;

// phi(lambda) = c / (a(lambda) b(lambda)) in the regime's parametrization:
// AF: sinh(2 eta) / (sinh(eta - lam) sinh(eta + lam));
// disordered: sin(2 eta) / (sin(lam + eta) sin(lam - eta)).
Real phi(const Real& lam, const SpectralParams& p);

// Taylor jet of phi about lam, exact to precision, via the partial-fraction
// forms coth(eta-lam)+coth(eta+lam) and cot(lam-eta)-cot(lam+eta).
Jet phi_jet(const Real& lam, int order, const SpectralParams& p, mpfr_prec_t prec);

// Shifted one-line weights a(mu), b(mu) used by the inhomogeneous formulas.
Real weight_a(const SpectralParams& p, const Real& mu);
Real weight_b(const SpectralParams& p, const Real& mu);

// Upper end of the xi interval: eta - lambda (AF), pi - eta - lambda
// (disordered); first pole of gamma_map.
Real xi_max(const SpectralParams& p);

// Z_N = (a b)^(N^2) / prod_{j<N} (j!)^2 * det[ d^{j+k-2} phi(lambda) ].
// The determinant is evaluated with adaptive precision (doubling escalation,
// agreement between p and p+64 bits).
PartitionValue partition_hankel(int n, const SpectralParams& p, const PrecisionContext& ctx);

// Z_N(lambda+xi, lambda, ..., lambda; 0, ..., 0) via the incomplete
// homogeneous limit:
//   Z = [a b](lambda+xi)^N [a b](lambda)^{N(N-1)} (-1)^{N-1}
//       * det M(xi) / ( s(xi)^{N-1} prod_{j<N} j! prod_{j<N-1} j! ),
// where row 1 of M is d^{k-1} phi(lambda+xi), rows j>=2 are
// d^{j+k-3} phi(lambda), and s = sinh (AF) or sin (disordered).
// Validated against enumerate_partition at small N.
PartitionValue partition_one_inhomogeneity(int n, const SpectralParams& p, const Real& xi,
                                           const PrecisionContext& ctx);

// gamma(xi) = [b(lambda+xi) a(lambda)] / [a(lambda+xi) b(lambda)],
// monotone increasing from gamma(0) = 1, pole at xi_max.
Real gamma_map(const Real& xi, const SpectralParams& p);
Jet gamma_jet(const Real& xi, int order, const SpectralParams& p);

// h_N(gamma(xi)) = [a(lambda)/a(lambda+xi)]^{N-1} Z_N(lambda+xi,...) / Z_N(...)
Real h_generating(int n, const SpectralParams& p, const Real& xi, const PrecisionContext& ctx);

// H_N^(r) by exact enumeration with the boundary-row c-vertex position
// resolved; positions are indexed so that h_N(z) = sum_r H^(r) z^{r-1}
// matches the generating-function relation above.
BoundaryDistribution boundary_distribution(int n, const SpectralParams& p,
                                           int cap = kEnumerationCap);

// Exact weighted sum over all domain-wall configurations, per-vertex weights
// from lambda_j - nu_k (j-th vertical, k-th horizontal line).
PartitionValue enumerate_partition(const InhomogeneousSpec& spec, const SpectralParams& p,
                                   int cap = kEnumerationCap);

// (1/N) d/dxi log h_N(gamma(xi)), exact in xi via order-1 jets through the
// one-inhomogeneity determinant.
Real finite_log_deriv(int n, const SpectralParams& p, const Real& xi,
                      const PrecisionContext& ctx);

} // namespace dwsv
