#pragma once

#include <map>
#include <vector>

#include "nctorus/lattice.hpp"

namespace nctorus {

/// Finitely supported element of A_theta, stored as a sparse map
/// v -> coefficient in canonical form: no stored coefficient is exactly
/// zero. Immutable in spirit; all operations return new values.
class AlgebraElement {
  public:
    using CoeffMap = std::map<LatticeVector, Complex>;

    AlgebraElement() = default;

    static AlgebraElement zero() { return {}; }
    static AlgebraElement one() { return scalar(1.0); }
    static AlgebraElement scalar(Complex c) { return monomial(c, {0, 0}); }
    static AlgebraElement monomial(Complex c, LatticeVector v) {
        AlgebraElement a;
        a.set(v, c);
        return a;
    }

    const CoeffMap& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t support_size() const { return coeffs_.size(); }

    Complex coeff(LatticeVector v) const {
        auto it = coeffs_.find(v);
        return it == coeffs_.end() ? Complex(0.0) : it->second;
    }

    /// Canonical insertion: exact zeros are never stored.
    void set(LatticeVector v, Complex c) {
        if (c == Complex(0.0))
            coeffs_.erase(v);
        else
            coeffs_[v] = c;
    }

    void add_to(LatticeVector v, Complex c) {
        auto [it, inserted] = coeffs_.try_emplace(v, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex(0.0)) coeffs_.erase(it);
        }
    }

    /// Drop coefficients with |c| <= eps. The default arithmetic keeps
    /// everything; pruning is always an explicit, separate step.
    AlgebraElement pruned(double eps) const {
        AlgebraElement out;
        for (const auto& [v, c] : coeffs_)
            if (std::abs(c) > eps) out.coeffs_.emplace(v, c);
        return out;
    }

    std::int64_t support_box_radius() const {
        std::int64_t r = 0;
        for (const auto& [v, c] : coeffs_) r = std::max(r, v.box_radius());
        return r;
    }

    bool supported_away_from_zero() const { return coeffs_.find({0, 0}) == coeffs_.end(); }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
        AlgebraElement out = a;
        for (const auto& [v, c] : b.coeffs_) out.add_to(v, c);
        return out;
    }
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
        AlgebraElement out = a;
        for (const auto& [v, c] : b.coeffs_) out.add_to(v, -c);
        return out;
    }
    friend AlgebraElement operator*(Complex s, const AlgebraElement& a) {
        AlgebraElement out;
        if (s == Complex(0.0)) return out;
        for (const auto& [v, c] : a.coeffs_) out.coeffs_.emplace(v, s * c);
        return out;
    }
    AlgebraElement operator-() const { return Complex(-1.0) * *this; }

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

  private:
    CoeffMap coeffs_;
};

/// Twisted product: U_v U_w = exp(2 pi i <v,w>) U_{v+w}, extended
/// bilinearly. The phase is computed from the exact pairing value per
/// term, never accumulated across terms.
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b, const TorusParams& params);

/// (a*)_v = conj(a_{-v}); antilinear antiautomorphism.
AlgebraElement star(const AlgebraElement& a);

/// tr(a) = a_{(0,0)}.
Complex trace(const AlgebraElement& a);

/// delta_tau: coefficientwise multiplication by iota(v).
AlgebraElement delta(const AlgebraElement& a, const TorusParams& params);

/// Inverse of delta_tau on the trace-zero hyperplane H:
/// sum_{v != 0} (a_v / iota(v)) U_v. Rejects |tr(a)| > trace_tol; a
/// nonzero trace means the right-hand side is not integrable.
AlgebraElement delta_inv(const AlgebraElement& a, const TorusParams& params,
                         double trace_tol = 1e-10);

double norm_l1(const AlgebraElement& a);
double norm_l2(const AlgebraElement& a);

struct NormReport {
    double l2 = 0.0;
    double l1 = 0.0;
    std::vector<double> sobolev;  // ||a||_s for s = 0..s_max
    double op_upper = 0.0;        // ||a||_{l1}, a certified operator-norm upper bound
};

/// All four norm families in one pass. sobolev[s]^2 = sum_{i<=s} ||delta^i a||_0^2.
NormReport norms(const AlgebraElement& a, const TorusParams& params, int s_max);

/// alpha_g: U_v -> U_{gv}. Requires det(g) = 1, which is exactly the
/// condition making the relabeling an algebra automorphism.
AlgebraElement sl2_act(const Sl2Matrix& g, const AlgebraElement& a);

}  // namespace nctorus
