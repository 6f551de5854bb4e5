// Truncated Taylor series (jets) over Real. Used to generate high-order
// derivatives exactly-to-precision: derivatives of phi through the Hankel
// determinants, xi-derivatives through one-inhomogeneity determinants, and
// Psi' for the curve formulas. Coefficient k stores the Taylor coefficient
// f^(k)(x0)/k!, not the bare derivative.
#pragma once

#include <vector>

#include "dwsv/real.hpp"

namespace dwsv {

class Jet {
public:
    Jet(int order, mpfr_prec_t prec) : prec_(prec) {
        if (order < 0) throw ParameterDomainError("Jet: negative order");
        c_.reserve(order + 1);
        for (int k = 0; k <= order; ++k) c_.emplace_back(prec);
    }

    static Jet constant(const Real& x, int order) {
        Jet j(order, x.prec());
        j.c_[0] = x;
        return j;
    }

    // x0 + epsilon
    static Jet variable(const Real& x0, int order) {
        Jet j(order, x0.prec());
        j.c_[0] = x0;
        if (order >= 1) j.c_[1] = Real(1L, x0.prec());
        return j;
    }

    // x0 + slope * epsilon
    static Jet affine(const Real& x0, const Real& slope, int order) {
        Jet j(order, std::max(x0.prec(), slope.prec()));
        j.c_[0] = x0;
        if (order >= 1) j.c_[1] = slope;
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    mpfr_prec_t prec() const { return prec_; }

    const Real& operator[](int k) const { return c_[k]; }
    Real& operator[](int k) { return c_[k]; }

    const Real& value() const { return c_[0]; }

    // k-th derivative at the expansion point: coeff[k] * k!
    Real deriv(int k) const {
        Real f(1L, prec_);
        for (int i = 2; i <= k; ++i) f *= static_cast<long>(i);
        return c_[k] * f;
    }

    Jet truncated(int new_order) const {
        Jet r(new_order, prec_);
        int n = std::min(new_order, order());
        for (int k = 0; k <= n; ++k) r.c_[k] = c_[k];
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r(common_order(a, b), std::max(a.prec_, b.prec_));
        for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r(common_order(a, b), std::max(a.prec_, b.prec_));
        for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    Jet operator-() const {
        Jet r(order(), prec_);
        for (int k = 0; k <= order(); ++k) r.c_[k] = -c_[k];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(common_order(a, b), std::max(a.prec_, b.prec_));
        for (int k = 0; k <= r.order(); ++k) {
            Real s(std::max(a.prec_, b.prec_));
            for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
            r.c_[k] = s;
        }
        return r;
    }
    friend Jet operator*(const Jet& a, const Real& s) {
        Jet r(a.order(), std::max(a.prec_, s.prec()));
        for (int k = 0; k <= a.order(); ++k) r.c_[k] = a.c_[k] * s;
        return r;
    }
    friend Jet operator*(const Real& s, const Jet& a) { return a * s; }
    friend Jet operator+(const Jet& a, const Real& s) {
        Jet r = a;
        r.c_[0] += s;
        return r;
    }
    friend Jet operator-(const Jet& a, const Real& s) {
        Jet r = a;
        r.c_[0] -= s;
        return r;
    }

    // 1/a, requires a[0] != 0.
    friend Jet reciprocal(const Jet& a) {
        if (a.c_[0].is_zero()) throw ParameterDomainError("Jet reciprocal: zero leading coefficient");
        Jet r(a.order(), a.prec_);
        r.c_[0] = 1L / a.c_[0];
        for (int k = 1; k <= a.order(); ++k) {
            Real s(a.prec_);
            for (int j = 1; j <= k; ++j) s += a.c_[j] * r.c_[k - j];
            r.c_[k] = -s / a.c_[0];
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

    // Elementary functions of a jet argument, via the standard convolution
    // recurrences (f' = g' * h form), valid for any inner jet g.
    friend Jet exp(const Jet& g) {
        Jet e(g.order(), g.prec_);
        e.c_[0] = exp(g.c_[0]);
        for (int k = 0; k < g.order(); ++k) {
            // (k+1) e_{k+1} = sum_{j=0..k} (j+1) g_{j+1} e_{k-j}
            Real s(g.prec_);
            for (int j = 0; j <= k; ++j) s += (static_cast<long>(j) + 1) * g.c_[j + 1] * e.c_[k - j];
            e.c_[k + 1] = s / (static_cast<long>(k) + 1);
        }
        return e;
    }
    friend void sin_cos(Jet& s, Jet& c, const Jet& g) {
        s = Jet(g.order(), g.prec_);
        c = Jet(g.order(), g.prec_);
        sin_cos(s.c_[0], c.c_[0], g.c_[0]);
        for (int k = 0; k < g.order(); ++k) {
            Real ss(g.prec_), cc(g.prec_);
            for (int j = 0; j <= k; ++j) {
                Real gj = (static_cast<long>(j) + 1) * g.c_[j + 1];
                ss += gj * c.c_[k - j];
                cc += gj * s.c_[k - j];
            }
            s.c_[k + 1] = ss / (static_cast<long>(k) + 1);
            c.c_[k + 1] = -cc / (static_cast<long>(k) + 1);
        }
    }
    friend void sinh_cosh(Jet& s, Jet& c, const Jet& g) {
        s = Jet(g.order(), g.prec_);
        c = Jet(g.order(), g.prec_);
        sinh_cosh(s.c_[0], c.c_[0], g.c_[0]);
        for (int k = 0; k < g.order(); ++k) {
            Real ss(g.prec_), cc(g.prec_);
            for (int j = 0; j <= k; ++j) {
                Real gj = (static_cast<long>(j) + 1) * g.c_[j + 1];
                ss += gj * c.c_[k - j];
                cc += gj * s.c_[k - j];
            }
            s.c_[k + 1] = ss / (static_cast<long>(k) + 1);
            c.c_[k + 1] = cc / (static_cast<long>(k) + 1);
        }
    }
    friend Jet sin(const Jet& g) {
        Jet s(0, g.prec_), c(0, g.prec_);
        sin_cos(s, c, g);
        return s;
    }
    friend Jet cos(const Jet& g) {
        Jet s(0, g.prec_), c(0, g.prec_);
        sin_cos(s, c, g);
        return c;
    }
    friend Jet sinh(const Jet& g) {
        Jet s(0, g.prec_), c(0, g.prec_);
        sinh_cosh(s, c, g);
        return s;
    }
    friend Jet cosh(const Jet& g) {
        Jet s(0, g.prec_), c(0, g.prec_);
        sinh_cosh(s, c, g);
        return c;
    }
    // coth via C' = (1 - C^2) g'; pole when coth(g0) undefined is the
    // caller's concern (g0 == 0).
    friend Jet jet_coth(const Jet& g) {
        Jet C(g.order(), g.prec_);
        C.c_[0] = coth(g.c_[0]);
        return ode_sq_recurrence(C, g, /*plus=*/false);
    }
    // cot via C' = -(1 + C^2) g'
    friend Jet jet_cot(const Jet& g) {
        Jet C(g.order(), g.prec_);
        C.c_[0] = cot(g.c_[0]);
        return ode_neg_sq_recurrence(C, g);
    }
    // tan via T' = (1 + T^2) g'
    friend Jet jet_tan(const Jet& g) {
        Jet C(g.order(), g.prec_);
        C.c_[0] = tan(g.c_[0]);
        return ode_sq_recurrence(C, g, /*plus=*/true);
    }

private:
    static int common_order(const Jet& a, const Jet& b) {
        if (a.order() != b.order()) throw ParameterDomainError("Jet: mixed orders");
        return a.order();
    }

    // C' = (1 +/- C^2) g' with C[0] preset.
    static Jet ode_sq_recurrence(Jet C, const Jet& g, bool plus) {
        for (int k = 0; k < g.order(); ++k) {
            Real s(g.prec_);
            for (int m = 0; m <= k; ++m) {
                Real sq(g.prec_);
                for (int i = 0; i <= m; ++i) sq += C.c_[i] * C.c_[m - i];
                Real fm = (m == 0) ? (plus ? (1L + sq) : (1L - sq)) : (plus ? sq : -sq);
                s += fm * ((static_cast<long>(k - m) + 1) * g.c_[k - m + 1]);
            }
            C.c_[k + 1] = s / (static_cast<long>(k) + 1);
        }
        return C;
    }
    // C' = -(1 + C^2) g' with C[0] preset.
    static Jet ode_neg_sq_recurrence(Jet C, const Jet& g) {
        for (int k = 0; k < g.order(); ++k) {
            Real s(g.prec_);
            for (int m = 0; m <= k; ++m) {
                Real sq(g.prec_);
                for (int i = 0; i <= m; ++i) sq += C.c_[i] * C.c_[m - i];
                Real fm = (m == 0) ? (1L + sq) : sq;
                s += fm * ((static_cast<long>(k - m) + 1) * g.c_[k - m + 1]);
            }
            C.c_[k + 1] = -s / (static_cast<long>(k) + 1);
        }
        return C;
    }

    mpfr_prec_t prec_;
    std::vector<Real> c_;
};

} // namespace dwsv
