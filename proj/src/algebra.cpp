#include "nctorus/algebra.hpp"

#include <cmath>

namespace nctorus {

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b, const TorusParams& params) {
    AlgebraElement out;
    const double theta = params.theta();
    for (const auto& [v, av] : a.coefficients()) {
        for (const auto& [w, bw] : b.coefficients()) {
            out.add_to(v + w, av * bw * phase(pairing(v, w, theta)));
        }
    }
    return out;
}

AlgebraElement star(const AlgebraElement& a) {
    AlgebraElement out;
    for (const auto& [v, c] : a.coefficients()) out.set(-v, std::conj(c));
    return out;
}

Complex trace(const AlgebraElement& a) { return a.coeff({0, 0}); }

AlgebraElement delta(const AlgebraElement& a, const TorusParams& params) {
    AlgebraElement out;
    for (const auto& [v, c] : a.coefficients()) out.set(v, iota(v, params) * c);
    return out;
}

AlgebraElement delta_inv(const AlgebraElement& a, const TorusParams& params, double trace_tol) {
    const double tr = std::abs(trace(a));
    if (tr > trace_tol)
        throw InvalidInputError("delta_inv: |trace| = " + std::to_string(tr) +
                                " exceeds tolerance; right-hand side is not in the image of delta");
    AlgebraElement out;
    for (const auto& [v, c] : a.coefficients()) {
        if (v.is_zero()) continue;
        out.set(v, c / iota(v, params));
    }
    return out;
}

double norm_l1(const AlgebraElement& a) {
    double s = 0.0;
    for (const auto& [v, c] : a.coefficients()) s += std::abs(c);
    return s;
}

double norm_l2(const AlgebraElement& a) {
    double s = 0.0;
    for (const auto& [v, c] : a.coefficients()) s += std::norm(c);
    return std::sqrt(s);
}

NormReport norms(const AlgebraElement& a, const TorusParams& params, int s_max) {
    if (s_max < 0) throw InvalidInputError("norms: s_max must be >= 0");
    NormReport r;
    r.l1 = norm_l1(a);
    r.l2 = norm_l2(a);
    r.op_upper = r.l1;
    r.sobolev.reserve(static_cast<std::size_t>(s_max) + 1);
    AlgebraElement dk = a;
    double acc = r.l2 * r.l2;
    r.sobolev.push_back(std::sqrt(acc));
    for (int s = 1; s <= s_max; ++s) {
        dk = delta(dk, params);
        const double l2 = norm_l2(dk);
        acc += l2 * l2;
        r.sobolev.push_back(std::sqrt(acc));
    }
    return r;
}

AlgebraElement sl2_act(const Sl2Matrix& g, const AlgebraElement& a) {
    if (g.det() != 1)
        throw InvalidInputError("sl2_act: matrix must have determinant 1, got " +
                                std::to_string(g.det()));
    AlgebraElement out;
    for (const auto& [v, c] : a.coefficients()) out.set(g.apply(v), c);
    return out;
}

}  // namespace nctorus
