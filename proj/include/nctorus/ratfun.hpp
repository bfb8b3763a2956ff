#pragma once

#include <span>
#include <vector>

#include "nctorus/lattice.hpp"

namespace nctorus {

/// Dense univariate polynomial over C, coefficient k = coefficient of eps^k.
/// Degrees stay tiny (a few times n), so density is cheap and stable.
class Poly {
  public:
    Poly() : c_{Complex(0.0)} {}
    explicit Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(Complex(0.0));
    }
    static Poly constant(Complex c) { return Poly({c}); }
    static Poly linear(Complex c0, Complex c1) { return Poly({c0, c1}); }

    const std::vector<Complex>& coeffs() const { return c_; }
    std::size_t degree_bound() const { return c_.size() - 1; }
    Complex at(std::size_t k) const { return k < c_.size() ? c_[k] : Complex(0.0); }

    double max_abs() const;

    /// Index of the first coefficient with |c| > rel_tol * max_abs();
    /// returns size() when every coefficient is negligible.
    std::size_t order(double rel_tol) const;

    Poly& operator*=(Complex s);
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);

  private:
    std::vector<Complex> c_;
};

/// R_n(x_1..x_n) = (x_1 ... x_n) / (x_1 (x_1+x_2) ... (x_1+...+x_n)).
/// R_0 = 1. Throws PoleError when a denominator partial sum is exactly
/// zero; degenerate points must go through the regularized fiber sums
/// where vanishing is decided by exact lattice arithmetic, never by a
/// float threshold.
Complex R_n_eval(std::span<const Complex> xs);

/// Power series inverse of q to the requested order; q(0) must be nonzero.
std::vector<Complex> series_inverse(const Poly& q, std::size_t order);

/// Sum of terms that are Laurent expansions around eps = 0 with exactly
/// known pole orders (each term's vanishing eps-factors are cancelled
/// analytically before it is added). The value at eps = 0 is the eps^0
/// coefficient; every negative power must cancel across terms.
class LaurentSum {
  public:
    /// series[j] multiplies eps^{j - pole_order}.
    void add(std::span<const Complex> series, std::size_t pole_order);

    /// The eps^0 coefficient. Throws DegeneracyError when a negative power
    /// survives above rel_tol times the largest contribution at that power.
    Complex value_at_zero(double rel_tol = 1e-12) const;

  private:
    std::vector<Complex> sums_;    // index p = coefficient of eps^{-1-p}
    std::vector<double> weights_;  // largest |contribution| per negative power
    Complex constant_term_{0.0};
};

}  // namespace nctorus
