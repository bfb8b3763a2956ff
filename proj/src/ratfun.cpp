#include "nctorus/ratfun.hpp"

#include <algorithm>
#include <cmath>

#include "nctorus/errors.hpp"

namespace nctorus {

double Poly::max_abs() const {
    double m = 0.0;
    for (const Complex& x : c_) m = std::max(m, std::abs(x));
    return m;
}

std::size_t Poly::order(double rel_tol) const {
    const double cutoff = rel_tol * max_abs();
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (std::abs(c_[k]) > cutoff) return k;
    return c_.size();
}

Poly& Poly::operator*=(Complex s) {
    for (Complex& x : c_) x *= s;
    return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Complex> out(std::max(a.c_.size(), b.c_.size()), Complex(0.0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] += b.c_[k];
    return Poly(std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
    std::vector<Complex> out(a.c_.size() + b.c_.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == Complex(0.0)) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
}

Complex R_n_eval(std::span<const Complex> xs) {
    Complex num(1.0);
    Complex den(1.0);
    Complex partial(0.0);
    for (const Complex& x : xs) {
        num *= x;
        partial += x;
        if (partial == Complex(0.0))
            throw PoleError("R_n_eval: denominator partial sum is exactly zero");
        den *= partial;
    }
    return num / den;
}

std::vector<Complex> series_inverse(const Poly& q, std::size_t order) {
    const Complex q0 = q.at(0);
    if (q0 == Complex(0.0)) throw PoleError("series_inverse: constant term is zero");
    std::vector<Complex> inv(order + 1, Complex(0.0));
    inv[0] = Complex(1.0) / q0;
    for (std::size_t k = 1; k <= order; ++k) {
        Complex s(0.0);
        for (std::size_t j = 1; j <= k; ++j) s += q.at(j) * inv[k - j];
        inv[k] = -s / q0;
    }
    return inv;
}

void LaurentSum::add(std::span<const Complex> series, std::size_t pole_order) {
    if (sums_.size() < pole_order) {
        sums_.resize(pole_order, Complex(0.0));
        weights_.resize(pole_order, 0.0);
    }
    for (std::size_t j = 0; j < series.size(); ++j) {
        const std::ptrdiff_t power = static_cast<std::ptrdiff_t>(j) -
                                     static_cast<std::ptrdiff_t>(pole_order);
        if (power > 0) break;  // callers expand exactly to eps^0
        if (power == 0) {
            constant_term_ += series[j];
        } else {
            const std::size_t p = static_cast<std::size_t>(-power) - 1;
            sums_[p] += series[j];
            weights_[p] = std::max(weights_[p], std::abs(series[j]));
        }
    }
}

Complex LaurentSum::value_at_zero(double rel_tol) const {
    for (std::size_t p = 0; p < sums_.size(); ++p) {
        if (std::abs(sums_[p]) > rel_tol * std::max(1.0, weights_[p]))
            throw DegeneracyError("fiber sum keeps a pole of order " + std::to_string(p + 1) +
                                  " at eps = 0: residual " + std::to_string(std::abs(sums_[p])));
    }
    return constant_term_;
}

}  // namespace nctorus
