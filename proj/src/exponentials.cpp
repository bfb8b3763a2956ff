#include "nctorus/exponentials.hpp"

#include <algorithm>
#include <cmath>

#include "nctorus/errors.hpp"

namespace nctorus {

namespace {

std::vector<LatticeVector> support_of(const AlgebraElement& a) {
    std::vector<LatticeVector> s;
    s.reserve(a.support_size());
    for (const auto& [v, c] : a.coefficients()) s.push_back(v);
    return s;
}

void require_trace_free(const AlgebraElement& a, const char* who) {
    if (!a.supported_away_from_zero())
        throw InvalidInputError(std::string(who) + ": input must have zero trace");
}

}  // namespace

ExpContext::ExpContext(const TorusParams& params, int max_n)
    : params_(params),
      engine_(std::make_unique<CoefficientEngine>(params, max_n)),
      engine_neg_(std::make_unique<CoefficientEngine>(params.with_negated_theta(), max_n)) {}

FormalSeries E_l_recursive(const AlgebraElement& a, const TorusParams& params, int N) {
    FormalSeries out = FormalSeries::one(N);
    if (N == 0) return out;
    const AlgebraElement da = delta(a, params);
    AlgebraElement prev = a - AlgebraElement::scalar(trace(a));
    out.coeff(1) = prev;
    for (int k = 2; k <= N; ++k) {
        prev = delta_inv(mul(prev, da, params), params);
        out.coeff(k) = prev;
    }
    return out;
}

namespace {

/// Shared divisor-sum skeleton for the four exponentials: the coefficient
/// function is the only moving part.
template <typename CoeffFn>
FormalSeries divisor_series(const AlgebraElement& a, int N, CoeffFn&& coeff_of) {
    FormalSeries out = FormalSeries::one(N);
    for_each_divisor(support_of(a), N, [&](const Divisor& d) {
        const Complex c = coeff_of(d.as_tuple());
        if (c == Complex(0.0)) return;
        Complex a_d(1.0);
        for (const auto& [v, mult] : d.entries())
            for (int k = 0; k < mult; ++k) a_d *= a.coeff(v);
        out.coeff(d.degree()).add_to(d.weighted_sum(), c * a_d / d.factorial());
    });
    return out;
}

}  // namespace

FormalSeries E_l_divisor(const AlgebraElement& a, ExpContext& ctx, int N) {
    require_trace_free(a, "E_l_divisor");
    return divisor_series(a, N, [&](std::vector<LatticeVector> vs) {
        return ctx.engine().f_n(std::move(vs));
    });
}

FormalSeries E_l_divisor(const AlgebraElement& a, const TorusParams& params, int N) {
    ExpContext ctx(params);
    return E_l_divisor(a, ctx, N);
}

FormalSeries E_r(const AlgebraElement& a, ExpContext& ctx, int N) {
    require_trace_free(a, "E_r");
    return divisor_series(a, N, [&](std::vector<LatticeVector> vs) {
        return ctx.engine_neg_theta().f_n(std::move(vs));
    });
}

FormalSeries E_r(const AlgebraElement& a, const TorusParams& params, int N) {
    ExpContext ctx(params);
    return E_r(a, ctx, N);
}

SSeriesResult s_series(const AlgebraElement& a, ExpContext& ctx, int N, double tol) {
    const FormalSeries el = E_l_divisor(a, ctx, N);
    const FormalSeries er = E_r(-a, ctx, N);
    const FormalSeries lr = series_mul(el, er, ctx.params());
    const FormalSeries rl = series_mul(er, el, ctx.params());
    SSeriesResult res;
    res.nonscalar_mass = std::max(series_nonscalar_mass(lr), series_nonscalar_mass(rl));
    res.order_mismatch = series_residual_l1(lr, rl);
    if (res.nonscalar_mass > tol)
        throw IdentityViolationError("s_series: product is not scalar, non-scalar mass " +
                                     std::to_string(res.nonscalar_mass));
    if (res.order_mismatch > tol)
        throw IdentityViolationError("s_series: the two product orders disagree by " +
                                     std::to_string(res.order_mismatch));
    res.s = series_trace(lr);
    return res;
}

SSeriesResult s_series(const AlgebraElement& a, const TorusParams& params, int N, double tol) {
    ExpContext ctx(params);
    return s_series(a, ctx, N, tol);
}

FormalSeries Exp_l(const AlgebraElement& a, ExpContext& ctx, int N) {
    return divisor_series(a, N, [&](std::vector<LatticeVector> vs) {
        return ctx.engine().f_star_n(std::move(vs));
    });
}

FormalSeries Exp_l(const AlgebraElement& a, const TorusParams& params, int N) {
    ExpContext ctx(params);
    return Exp_l(a, ctx, N);
}

FormalSeries Exp_l_series(const FormalSeries& x, ExpContext& ctx, int N) {
    // Union of the supports of all t-coefficients; each mode carries a
    // scalar series a_v(t).
    AlgebraElement merged;
    for (int k = 0; k <= x.order(); ++k)
        for (const auto& [v, c] : x.coeff(k).coefficients()) merged.set(v, 1.0);

    FormalSeries out = FormalSeries::one(N);
    for_each_divisor(support_of(merged), N, [&](const Divisor& d) {
        const Complex c = ctx.engine().f_star_n(d.as_tuple());
        if (c == Complex(0.0)) return;
        const int deg = d.degree();
        ScalarSeries a_d = ScalarSeries::one(N - deg);
        for (const auto& [v, mult] : d.entries()) {
            const ScalarSeries mode = mode_series(x, v).truncated(N - deg);
            for (int k = 0; k < mult; ++k) a_d = a_d * mode;
        }
        const Complex scale = c / d.factorial();
        const LatticeVector s = d.weighted_sum();
        for (int j = 0; j <= a_d.order(); ++j) {
            if (a_d[j] == Complex(0.0)) continue;
            out.coeff(deg + j).add_to(s, scale * a_d[j]);
        }
    });
    return out;
}

FormalSeries Exp_r(const AlgebraElement& a, ExpContext& ctx, int N, double check_tol) {
    // Route 1: the -theta divisor formula.
    const FormalSeries via_divisor = divisor_series(a, N, [&](std::vector<LatticeVector> vs) {
        return ctx.engine_neg_theta().f_star_n(std::move(vs));
    });
    // Route 2: Exp_l(conj tau, a*)*.
    ExpContext conj_ctx(ctx.params().conjugate());
    const FormalSeries via_star = series_star(Exp_l(star(a), conj_ctx, N));
    const double mismatch = series_residual_l1(via_divisor, via_star);
    if (mismatch > check_tol)
        throw IdentityViolationError(
            "Exp_r: star-conjugation and -theta divisor definitions disagree by " +
            std::to_string(mismatch));
    return via_divisor;
}

FormalSeries Exp_r(const AlgebraElement& a, const TorusParams& params, int N, double check_tol) {
    ExpContext ctx(params);
    return Exp_r(a, ctx, N, check_tol);
}

PhiResult phi_product_law(const AlgebraElement& a, const AlgebraElement& b,
                          const TorusParams& params, int N, double tol) {
    // Work one order higher internally so phi comes out at full order N.
    const int M = N + 1;
    ExpContext ctx(params);
    const FormalSeries exp_a = Exp_l(a, ctx, M);
    const FormalSeries exp_b = Exp_l(b, ctx, M);
    const FormalSeries exp_b_inv = series_inv(exp_b, params);

    const FormalSeries da = FormalSeries(M, delta(a, params));
    const FormalSeries conj_da = series_mul(series_mul(exp_b_inv, da, params), exp_b, params);

    PhiResult res{FormalSeries(N), 0.0, 0.0};
    FormalSeries phi_prime(M);
    for (int k = 0; k <= M; ++k) {
        res.trace_residual = std::max(res.trace_residual, std::abs(trace(conj_da.coeff(k))));
        phi_prime.coeff(k) = delta_inv(conj_da.coeff(k), params);
    }
    if (res.trace_residual > 1e-10)
        throw IdentityViolationError(
            "phi_product_law: conjugated delta(a) has non-zero trace residual " +
            std::to_string(res.trace_residual));

    const FormalSeries shifted = series_add(phi_prime, FormalSeries(M, b));
    const FormalSeries exp_shifted = Exp_l_series(shifted, ctx, M);
    const FormalSeries product = series_mul(exp_a, exp_b, params);
    const FormalSeries f = series_mul(product, series_inv(exp_shifted, params), params);
    const double f_nonscalar = series_nonscalar_mass(f);
    if (f_nonscalar > tol)
        throw IdentityViolationError("phi_product_law: correction factor is not scalar, mass " +
                                     std::to_string(f_nonscalar));
    const ScalarSeries z = series_trace(f).log().divided_by_t(1e-9);

    FormalSeries phi = series_add(FormalSeries::from_scalar(z), phi_prime.truncated(N));
    res.phi = phi;

    const FormalSeries verify =
        Exp_l_series(series_add(phi, FormalSeries(N, b)), ctx, N);
    res.verification_residual = series_residual_l1(verify, product.truncated(N));
    if (res.verification_residual > tol)
        throw IdentityViolationError("phi_product_law: Exp_l(phi + b) misses the product by " +
                                     std::to_string(res.verification_residual));
    return res;
}

std::vector<DivisorCoefficient> coefficient_table(const AlgebraElement& a, ExpContext& ctx,
                                                  int N) {
    std::vector<DivisorCoefficient> rows;
    for_each_divisor(support_of(a), N, [&](const Divisor& d) {
        DivisorCoefficient row;
        row.divisor = d;
        row.degree = d.degree();
        row.weighted_sum = d.weighted_sum();
        row.c = ctx.engine().f_n(d.as_tuple());
        row.c_star = ctx.engine().f_star_n(d.as_tuple());
        rows.push_back(std::move(row));
    });
    return rows;
}

}  // namespace nctorus
