#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>

#include "nctorus/errors.hpp"

namespace nctorus {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A point of the lattice Z^2. Compared lexicographically by (m, n).
struct LatticeVector {
    std::int64_t m = 0;
    std::int64_t n = 0;

    friend constexpr LatticeVector operator+(LatticeVector a, LatticeVector b) {
        return {a.m + b.m, a.n + b.n};
    }
    friend constexpr LatticeVector operator-(LatticeVector a, LatticeVector b) {
        return {a.m - b.m, a.n - b.n};
    }
    constexpr LatticeVector operator-() const { return {-m, -n}; }
    friend constexpr LatticeVector operator*(std::int64_t k, LatticeVector v) {
        return {k * v.m, k * v.n};
    }
    LatticeVector& operator+=(LatticeVector o) {
        m += o.m;
        n += o.n;
        return *this;
    }
    friend constexpr auto operator<=>(LatticeVector, LatticeVector) = default;

    constexpr bool is_zero() const { return m == 0 && n == 0; }
    std::int64_t box_radius() const { return std::max(std::llabs(m), std::llabs(n)); }
};

/// m n' - m' n, exact in 64-bit.
inline constexpr std::int64_t cross(LatticeVector v, LatticeVector w) {
    return v.m * w.n - v.n * w.m;
}

/// <v,w>_theta = theta/2 * (m n' - m' n). Antisymmetric.
inline double pairing(LatticeVector v, LatticeVector w, double theta) {
    return 0.5 * theta * static_cast<double>(cross(v, w));
}

/// exp(2 pi i x) with x the exact pairing value, computed fresh per call.
inline Complex phase(double x) { return std::polar(1.0, kTwoPi * x); }

/// Parameters of the complex noncommutative torus: theta fixes the algebra
/// A_theta, tau the complex structure. Construction enforces Im(tau) < 0.
/// theta may be any finite real; guarantees relying on irrationality cannot
/// be checked in floating point and are not enforced.
class TorusParams {
  public:
    TorusParams(double theta, Complex tau) : theta_(theta), tau_(tau) {
        if (!std::isfinite(theta)) throw InvalidInputError("theta must be finite");
        if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
            throw InvalidInputError("tau must be finite");
        if (tau.imag() >= 0.0) throw InvalidInputError("Im(tau) must be strictly negative");
    }

    double theta() const { return theta_; }
    Complex tau() const { return tau_; }

    /// Same algebra, opposite pairing sign. Used by the right exponentials.
    TorusParams with_negated_theta() const { return TorusParams(unchecked{}, -theta_, tau_); }

    /// Parameters at conj(tau). Im(conj tau) > 0, so this deliberately
    /// bypasses the half-plane check: the formal layer needs both
    /// half-planes to state the star identities, while user-facing
    /// construction keeps the Im(tau) < 0 convention.
    TorusParams conjugate() const { return TorusParams(unchecked{}, theta_, std::conj(tau_)); }

    /// Alternate constructor for Moebius-transformed tau values that are
    /// already known to be in the lower half-plane.
    static TorusParams checked(double theta, Complex tau) { return TorusParams(theta, tau); }

  private:
    struct unchecked {};
    TorusParams(unchecked, double theta, Complex tau) : theta_(theta), tau_(tau) {}

    double theta_;
    Complex tau_;
};

/// iota(v) = 2 pi i (m tau + n). Additive in v; injective when Im(tau) != 0.
inline Complex iota(LatticeVector v, Complex tau) {
    const Complex mtau_n = static_cast<double>(v.m) * tau + static_cast<double>(v.n);
    return Complex(0.0, kTwoPi) * mtau_n;
}

inline Complex iota(LatticeVector v, const TorusParams& params) { return iota(v, params.tau()); }

/// An element of SL_2(Z), row-major [[a, b], [c, d]].
struct Sl2Matrix {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const { return a * d - b * c; }

    LatticeVector apply(LatticeVector v) const { return {a * v.m + b * v.n, c * v.m + d * v.n}; }

    Sl2Matrix inverse() const { return {d, -b, -c, a}; }
    Sl2Matrix transposed() const { return {a, c, b, d}; }
    /// g' = (g^T)^{-1}; the partner matrix in every equivariance identity.
    Sl2Matrix transpose_inverse() const { return {d, -c, -b, a}; }

    /// g.tau = (a tau + b) / (c tau + d). Preserves the lower half-plane.
    Complex moebius(Complex tau) const {
        const Complex num = static_cast<double>(a) * tau + static_cast<double>(b);
        const Complex den = static_cast<double>(c) * tau + static_cast<double>(d);
        return num / den;
    }

    friend bool operator==(const Sl2Matrix&, const Sl2Matrix&) = default;
};

}  // namespace nctorus

template <>
struct std::hash<nctorus::LatticeVector> {
    std::size_t operator()(const nctorus::LatticeVector& v) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(v.m) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(v.n) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};
