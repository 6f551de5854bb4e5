// Regime classification, six-vertex weight parametrizations, and the map
// between phase coordinates (Delta, t) and spectral coordinates (lambda, eta).
//
// Anti-ferroelectric (Delta < -1):
//     a = sinh(eta - lambda), b = sinh(eta + lambda), c = sinh(2 eta),
//     with eta > 0, -eta <= lambda <= eta.
// Disordered (-1 <= Delta < 1):
//     a = sin(lambda + eta), b = sin(lambda - eta), c = sin(2 eta),
//     with 0 < eta <= pi/2, eta <= lambda <= pi - eta.
#pragma once

#include <string>

#include "dwsv/real.hpp"

namespace dwsv {

enum class Regime { Disordered, AntiFerroelectric };

std::string regime_name(Regime r);

struct PhasePoint {
    Real delta;
    Real t;
};

struct Weights {
    Real a;
    Real b;
    Real c;
};

class SpectralParams {
public:
    // Validates the regime's (lambda, eta) domain; boundary values lambda at
    // the interval ends are accepted (weights degenerate there).
    static SpectralParams make(Regime regime, const Real& lambda, const Real& eta);

    Regime regime() const { return regime_; }
    const Real& lambda() const { return lambda_; }
    const Real& eta() const { return eta_; }
    mpfr_prec_t prec() const { return std::max(lambda_.prec(), eta_.prec()); }

private:
    SpectralParams(Regime r, Real l, Real e)
        : regime_(r), lambda_(std::move(l)), eta_(std::move(e)) {}
    Regime regime_;
    Real lambda_;
    Real eta_;
};

Weights weights_from_spectral(const SpectralParams& p);
PhasePoint phase_from_spectral(const SpectralParams& p);

// Inverse of phase_from_spectral. Rejects Delta >= 1 (ferroelectric) and
// Delta == -1 (regime boundary); requires t > 0.
SpectralParams spectral_from_phase(const PhasePoint& q);

// a <-> b exchange: lambda -> -lambda (AF), lambda -> pi - lambda (disordered).
SpectralParams crossing_reflect(const SpectralParams& p);

} // namespace dwsv
