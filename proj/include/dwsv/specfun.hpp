// Jacobi theta functions theta_1..theta_4 (values, derivatives, jets),
// the complete elliptic integral K, Jacobi sn and its inverse, all in
// arbitrary precision controlled by a PrecisionContext.
//
// Series convention (argument not scaled by pi):
//   theta_1(v,q) = 2 sum_{n>=0} (-1)^n q^((n+1/2)^2) sin((2n+1)v)
//   theta_2(v,q) = 2 sum_{n>=0}        q^((n+1/2)^2) cos((2n+1)v)
//   theta_3(v,q) = 1 + 2 sum_{n>=1}        q^(n^2) cos(2nv)
//   theta_4(v,q) = 1 + 2 sum_{n>=1} (-1)^n q^(n^2) cos(2nv)
//
// For q above ctx.modular_threshold the Jacobi imaginary transformation is
// applied: with q = exp(-pi tau) and q~ = exp(-pi/tau),
//   theta_1(v,q) = tau^{-1/2} exp(-v^2/(pi tau)) * 2 sum (-1)^n q~^((n+1/2)^2) sinh((2n+1)v/tau)
// and cyclically (theta_2 <-> theta_4, theta_3 -> theta_3) for the others;
// direct summation loses all significance there.
#pragma once

#include <vector>

#include "dwsv/jet.hpp"
#include "dwsv/real.hpp"

namespace dwsv {

struct Nome {
    Real q;
    explicit Nome(Real value) : q(std::move(value)) {
        if (!q.is_finite() || q <= 0L || q >= 1L)
            throw ParameterDomainError("Nome: q outside (0,1)");
    }
};

// d^n/dv^n theta_kind(v, q), absolute error <= series_tol * (1 + |result|).
Real theta(int kind, const Real& v, const Nome& q, int deriv_order,
           const PrecisionContext& ctx);

// Derivatives 0..max_order in one pass.
std::vector<Real> theta_derivs(int kind, const Real& v, const Nome& q, int max_order,
                               const PrecisionContext& ctx);

// Jet of eps -> theta_kind(v0 + slope*eps) truncated at `order`.
Jet theta_jet(int kind, const Real& v0, const Real& slope, int order, const Nome& q,
              const PrecisionContext& ctx);

// theta_1'(v,q) / theta_1(v,q). Pole error at v = k*pi.
Real log_deriv_theta1(const Real& v, const Nome& q, const PrecisionContext& ctx);

// Jet of eps -> theta_1'/theta_1 (v0 + slope*eps).
Jet log_deriv_theta1_jet(const Real& v0, const Real& slope, int order, const Nome& q,
                         const PrecisionContext& ctx);

// Complete elliptic integral of the first kind for the modulus induced by q:
// K = (pi/2) theta_3(0,q)^2.
Real elliptic_K(const Nome& q, const PrecisionContext& ctx);

// Elliptic modulus k = theta_2(0,q)^2 / theta_3(0,q)^2.
Real modulus_from_nome(const Nome& q, const PrecisionContext& ctx);

// Jacobi sn(u) for the modulus induced by q, via the theta quotient
// sn(u) = (theta_3/theta_2)(0) * theta_1(pi u / 2K) / theta_4(pi u / 2K).
Real jacobi_sn(const Real& u, const Nome& q, const PrecisionContext& ctx);

// Carlson symmetric integral R_F(x,y,z), x,y,z >= 0, at most one zero.
Real carlson_rf(const Real& x, const Real& y, const Real& z, const PrecisionContext& ctx);

// u in [0, K] with sn(u) = s, for s in [0, 1]:
// u = s * R_F(1 - s^2, 1 - k^2 s^2, 1).
Real inverse_sn(const Real& s, const Nome& q, const PrecisionContext& ctx);

} // namespace dwsv
