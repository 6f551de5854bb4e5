#include "dwsv/params.hpp"

namespace dwsv {

std::string regime_name(Regime r) {
    return r == Regime::Disordered ? "disordered" : "anti-ferroelectric";
}

SpectralParams SpectralParams::make(Regime regime, const Real& lambda, const Real& eta) {
    if (!lambda.is_finite() || !eta.is_finite())
        throw ParameterDomainError("SpectralParams: non-finite input");
    if (regime == Regime::AntiFerroelectric) {
        if (!(eta > 0L))
            throw ParameterDomainError("SpectralParams (AF): eta must be > 0");
        if (lambda < -eta || lambda > eta)
            throw ParameterDomainError("SpectralParams (AF): lambda outside [-eta, eta]");
    } else {
        Real half_pi = Real::pi(eta.prec()) / 2L;
        if (!(eta > 0L) || eta > half_pi)
            throw ParameterDomainError("SpectralParams (disordered): eta outside (0, pi/2]");
        Real pi = Real::pi(std::max(lambda.prec(), eta.prec()));
        if (lambda < eta || lambda > pi - eta)
            throw ParameterDomainError("SpectralParams (disordered): lambda outside [eta, pi-eta]");
    }
    return SpectralParams(regime, lambda, eta);
}

Weights weights_from_spectral(const SpectralParams& p) {
    if (p.regime() == Regime::AntiFerroelectric) {
        return Weights{sinh(p.eta() - p.lambda()), sinh(p.eta() + p.lambda()),
                       sinh(2L * p.eta())};
    }
    return Weights{sin(p.lambda() + p.eta()), sin(p.lambda() - p.eta()),
                   sin(2L * p.eta())};
}

PhasePoint phase_from_spectral(const SpectralParams& p) {
    Weights w = weights_from_spectral(p);
    if (w.a.is_zero() || w.b.is_zero())
        throw DegenerateWeightError("phase_from_spectral: weight a or b vanishes (domain boundary)");
    Real delta = (w.a * w.a + w.b * w.b - w.c * w.c) / (2L * w.a * w.b);
    return PhasePoint{delta, w.b / w.a};
}

SpectralParams spectral_from_phase(const PhasePoint& q) {
    const Real& delta = q.delta;
    const Real& t = q.t;
    if (!delta.is_finite() || !t.is_finite())
        throw ParameterDomainError("spectral_from_phase: non-finite input");
    if (delta >= 1L)
        throw FerroelectricError("spectral_from_phase: Delta >= 1 (ferroelectric regime unsupported)");
    if (delta == -1L)
        throw RegimeBoundaryError("spectral_from_phase: Delta == -1 (regime boundary)");
    if (!(t > 0L))
        throw ParameterDomainError("spectral_from_phase: t must be > 0");

    mpfr_prec_t prec = std::max(delta.prec(), t.prec());
    if (delta < -1L) {
        // Delta = -cosh(2 eta), tanh(lambda) = tanh(eta) (t-1)/(t+1)
        Real eta = acosh(-delta) / 2L;
        Real lambda = atanh(tanh(eta) * (t - 1L) / (t + 1L));
        return SpectralParams::make(Regime::AntiFerroelectric, lambda, eta);
    }
    // Delta = cos(2 eta), tan(lambda) = tan(eta) (1+t)/(1-t), lambda in [eta, pi-eta]
    Real eta = acos(delta) / 2L;
    Real lambda(prec);
    Real pi = Real::pi(prec);
    if (t == 1L) {
        lambda = pi / 2L;
    } else {
        Real tl = tan(eta) * (1L + t) / (1L - t);
        lambda = atan(tl);
        if (lambda.sign() < 0) lambda += pi;  // place in (pi/2, pi) for t > 1
    }
    return SpectralParams::make(Regime::Disordered, lambda, eta);
}

SpectralParams crossing_reflect(const SpectralParams& p) {
    if (p.regime() == Regime::AntiFerroelectric)
        return SpectralParams::make(p.regime(), -p.lambda(), p.eta());
    Real pi = Real::pi(p.prec());
    return SpectralParams::make(p.regime(), pi - p.lambda(), p.eta());
}

} // namespace dwsv
