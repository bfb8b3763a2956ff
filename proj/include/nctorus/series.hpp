#pragma once

#include <vector>

#include "nctorus/algebra.hpp"

namespace nctorus {

/// Element of C[[t]] truncated at a fixed order: coeffs()[k] multiplies t^k.
class ScalarSeries {
  public:
    ScalarSeries() : c_(1, Complex(0.0)) {}
    explicit ScalarSeries(int order) : c_(static_cast<std::size_t>(order) + 1, Complex(0.0)) {}
    explicit ScalarSeries(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(Complex(0.0));
    }
    static ScalarSeries one(int order) {
        ScalarSeries s(order);
        s.c_[0] = Complex(1.0);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex operator[](int k) const {
        return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)]
                                                         : Complex(0.0);
    }
    Complex& at(int k) { return c_[static_cast<std::size_t>(k)]; }

    ScalarSeries conjugated() const;
    ScalarSeries truncated(int order) const;
    /// Multiplication by t (coefficients shift up; top coefficient drops).
    ScalarSeries times_t() const;
    /// Division by t; requires the constant term to vanish within tol.
    ScalarSeries divided_by_t(double tol = 1e-12) const;

    friend ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b);
    friend ScalarSeries operator-(const ScalarSeries& a, const ScalarSeries& b);
    friend ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b);

    /// Multiplicative inverse; requires a nonzero constant term.
    ScalarSeries inverse() const;
    /// Formal log; requires constant term 1 (series of the form 1 + O(t)).
    ScalarSeries log() const;
    /// Formal exp; requires constant term 0.
    ScalarSeries exp() const;

    double max_abs_diff(const ScalarSeries& other) const;

  private:
    std::vector<Complex> c_;
};

/// Element of A_theta[[t]] truncated at t-order N: coeffs()[k] is the
/// AlgebraElement multiplying t^k. Products truncate at the common order;
/// nothing ever reads beyond it.
class FormalSeries {
  public:
    explicit FormalSeries(int order)
        : c_(static_cast<std::size_t>(order < 0 ? 0 : order) + 1) {}
    FormalSeries(int order, AlgebraElement constant_term) : FormalSeries(order) {
        c_[0] = std::move(constant_term);
    }

    static FormalSeries one(int order) { return FormalSeries(order, AlgebraElement::one()); }
    static FormalSeries from_scalar(const ScalarSeries& s);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const AlgebraElement& coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    AlgebraElement& coeff(int k) { return c_[static_cast<std::size_t>(k)]; }

    FormalSeries truncated(int order) const;

    friend bool operator==(const FormalSeries&, const FormalSeries&) = default;

  private:
    std::vector<AlgebraElement> c_;
};

FormalSeries series_add(const FormalSeries& x, const FormalSeries& y);
FormalSeries series_sub(const FormalSeries& x, const FormalSeries& y);

/// Cauchy product truncated at min(order x, order y).
FormalSeries series_mul(const FormalSeries& x, const FormalSeries& y, const TorusParams& params);

/// Inverse of a series whose t^0 coefficient is a nonzero scalar (every
/// use in this library has t^0 = 1). Rejects anything else.
FormalSeries series_inv(const FormalSeries& x, const TorusParams& params);

FormalSeries series_star(const FormalSeries& x);
FormalSeries series_delta(const FormalSeries& x, const TorusParams& params);
FormalSeries scalar_mul(const ScalarSeries& s, const FormalSeries& x);

ScalarSeries series_trace(const FormalSeries& x);

/// t-coefficientwise l1 norms; the residual measure used by every
/// identity check.
double series_max_coeff_l1(const FormalSeries& x);
double series_residual_l1(const FormalSeries& x, const FormalSeries& y);

/// Largest per-coefficient l1 mass away from the scalar part; small
/// values certify that the series is (numerically) scalar.
double series_nonscalar_mass(const FormalSeries& x);

/// The C[[t]]-series of coefficients sitting at one lattice mode.
ScalarSeries mode_series(const FormalSeries& x, LatticeVector v);

}  // namespace nctorus
