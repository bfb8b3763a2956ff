#include "nctorus/series.hpp"

#include <algorithm>
#include <cmath>

#include "nctorus/errors.hpp"

namespace nctorus {

ScalarSeries ScalarSeries::conjugated() const {
    ScalarSeries out(order());
    for (int k = 0; k <= order(); ++k) out.at(k) = std::conj((*this)[k]);
    return out;
}

ScalarSeries ScalarSeries::truncated(int order) const {
    ScalarSeries out(order);
    for (int k = 0; k <= order; ++k) out.at(k) = (*this)[k];
    return out;
}

ScalarSeries ScalarSeries::times_t() const {
    ScalarSeries out(order());
    for (int k = 1; k <= order(); ++k) out.at(k) = (*this)[k - 1];
    return out;
}

ScalarSeries ScalarSeries::divided_by_t(double tol) const {
    if (std::abs((*this)[0]) > tol)
        throw InvalidInputError("divided_by_t: constant term is not zero");
    ScalarSeries out(order() - 1 < 0 ? 0 : order() - 1);
    for (int k = 0; k < order(); ++k) out.at(k) = (*this)[k + 1];
    return out;
}

ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b) {
    const int ord = std::min(a.order(), b.order());
    ScalarSeries out(ord);
    for (int k = 0; k <= ord; ++k) out.at(k) = a[k] + b[k];
    return out;
}

ScalarSeries operator-(const ScalarSeries& a, const ScalarSeries& b) {
    const int ord = std::min(a.order(), b.order());
    ScalarSeries out(ord);
    for (int k = 0; k <= ord; ++k) out.at(k) = a[k] - b[k];
    return out;
}

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
    const int ord = std::min(a.order(), b.order());
    ScalarSeries out(ord);
    for (int k = 0; k <= ord; ++k) {
        Complex s(0.0);
        for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
        out.at(k) = s;
    }
    return out;
}

ScalarSeries ScalarSeries::inverse() const {
    if ((*this)[0] == Complex(0.0))
        throw InvalidInputError("ScalarSeries::inverse: constant term is zero");
    ScalarSeries out(order());
    out.at(0) = Complex(1.0) / (*this)[0];
    for (int k = 1; k <= order(); ++k) {
        Complex s(0.0);
        for (int j = 1; j <= k; ++j) s += (*this)[j] * out[k - j];
        out.at(k) = -s / (*this)[0];
    }
    return out;
}

ScalarSeries ScalarSeries::log() const {
    if (std::abs((*this)[0] - Complex(1.0)) > 1e-9)
        throw InvalidInputError("ScalarSeries::log: series must start at 1");
    // f = exp(l)  =>  k f_k = sum_{j=1..k} j l_j f_{k-j}.
    ScalarSeries l(order());
    for (int k = 1; k <= order(); ++k) {
        Complex s(0.0);
        for (int j = 1; j < k; ++j) s += static_cast<double>(j) * l[j] * (*this)[k - j];
        l.at(k) = (*this)[k] - s / static_cast<double>(k);
    }
    return l;
}

ScalarSeries ScalarSeries::exp() const {
    if ((*this)[0] != Complex(0.0))
        throw InvalidInputError("ScalarSeries::exp: constant term must be zero");
    ScalarSeries f(order());
    f.at(0) = Complex(1.0);
    for (int k = 1; k <= order(); ++k) {
        Complex s(0.0);
        for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * (*this)[j] * f[k - j];
        f.at(k) = s / static_cast<double>(k);
    }
    return f;
}

double ScalarSeries::max_abs_diff(const ScalarSeries& other) const {
    double m = 0.0;
    const int ord = std::min(order(), other.order());
    for (int k = 0; k <= ord; ++k) m = std::max(m, std::abs((*this)[k] - other[k]));
    return m;
}

FormalSeries FormalSeries::from_scalar(const ScalarSeries& s) {
    FormalSeries out(s.order());
    for (int k = 0; k <= s.order(); ++k) out.coeff(k) = AlgebraElement::scalar(s[k]);
    return out;
}

FormalSeries FormalSeries::truncated(int order) const {
    FormalSeries out(order);
    const int upto = std::min(order, this->order());
    for (int k = 0; k <= upto; ++k) out.coeff(k) = c_[static_cast<std::size_t>(k)];
    return out;
}

FormalSeries series_add(const FormalSeries& x, const FormalSeries& y) {
    const int ord = std::min(x.order(), y.order());
    FormalSeries out(ord);
    for (int k = 0; k <= ord; ++k) out.coeff(k) = x.coeff(k) + y.coeff(k);
    return out;
}

FormalSeries series_sub(const FormalSeries& x, const FormalSeries& y) {
    const int ord = std::min(x.order(), y.order());
    FormalSeries out(ord);
    for (int k = 0; k <= ord; ++k) out.coeff(k) = x.coeff(k) - y.coeff(k);
    return out;
}

FormalSeries series_mul(const FormalSeries& x, const FormalSeries& y, const TorusParams& params) {
    const int ord = std::min(x.order(), y.order());
    FormalSeries out(ord);
    for (int i = 0; i <= ord; ++i) {
        if (x.coeff(i).is_zero()) continue;
        for (int j = 0; i + j <= ord; ++j) {
            if (y.coeff(j).is_zero()) continue;
            out.coeff(i + j) = out.coeff(i + j) + mul(x.coeff(i), y.coeff(j), params);
        }
    }
    return out;
}

FormalSeries series_inv(const FormalSeries& x, const TorusParams& params) {
    const AlgebraElement& head = x.coeff(0);
    const Complex z0 = trace(head);
    if (z0 == Complex(0.0) || head.support_size() != (z0 == Complex(0.0) ? 0u : 1u) ||
        !head.coefficients().begin()->first.is_zero())
        throw InvalidInputError("series_inv: t^0 coefficient must be a nonzero scalar");
    const Complex z0_inv = Complex(1.0) / z0;
    FormalSeries out(x.order());
    out.coeff(0) = AlgebraElement::scalar(z0_inv);
    for (int k = 1; k <= x.order(); ++k) {
        AlgebraElement s;
        for (int j = 1; j <= k; ++j) s = s + mul(x.coeff(j), out.coeff(k - j), params);
        out.coeff(k) = -z0_inv * s;
    }
    return out;
}

FormalSeries series_star(const FormalSeries& x) {
    FormalSeries out(x.order());
    for (int k = 0; k <= x.order(); ++k) out.coeff(k) = star(x.coeff(k));
    return out;
}

FormalSeries series_delta(const FormalSeries& x, const TorusParams& params) {
    FormalSeries out(x.order());
    for (int k = 0; k <= x.order(); ++k) out.coeff(k) = delta(x.coeff(k), params);
    return out;
}

FormalSeries scalar_mul(const ScalarSeries& s, const FormalSeries& x) {
    const int ord = std::min(s.order(), x.order());
    FormalSeries out(ord);
    for (int k = 0; k <= ord; ++k) {
        for (int j = 0; j <= k; ++j) {
            if (s[j] == Complex(0.0)) continue;
            out.coeff(k) = out.coeff(k) + s[j] * x.coeff(k - j);
        }
    }
    return out;
}

ScalarSeries series_trace(const FormalSeries& x) {
    ScalarSeries out(x.order());
    for (int k = 0; k <= x.order(); ++k) out.at(k) = trace(x.coeff(k));
    return out;
}

double series_max_coeff_l1(const FormalSeries& x) {
    double m = 0.0;
    for (int k = 0; k <= x.order(); ++k) m = std::max(m, norm_l1(x.coeff(k)));
    return m;
}

double series_residual_l1(const FormalSeries& x, const FormalSeries& y) {
    return series_max_coeff_l1(series_sub(x, y));
}

double series_nonscalar_mass(const FormalSeries& x) {
    double m = 0.0;
    for (int k = 0; k <= x.order(); ++k) {
        const AlgebraElement& c = x.coeff(k);
        m = std::max(m, norm_l1(c - AlgebraElement::scalar(trace(c))));
    }
    return m;
}

ScalarSeries mode_series(const FormalSeries& x, LatticeVector v) {
    ScalarSeries out(x.order());
    for (int k = 0; k <= x.order(); ++k) out.at(k) = x.coeff(k).coeff(v);
    return out;
}

}  // namespace nctorus
