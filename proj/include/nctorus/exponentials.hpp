#pragma once

#include <memory>

#include "nctorus/coefficients.hpp"
#include "nctorus/divisors.hpp"
#include "nctorus/series.hpp"

namespace nctorus {

/// Shared coefficient caches for one (theta, tau). Exponentials evaluated
/// through the same context reuse memoized f_n / f*_n values.
class ExpContext {
  public:
    explicit ExpContext(const TorusParams& params, int max_n = 8);

    const TorusParams& params() const { return params_; }
    CoefficientEngine& engine() { return *engine_; }
    CoefficientEngine& engine_neg_theta() { return *engine_neg_; }

  private:
    TorusParams params_;
    std::unique_ptr<CoefficientEngine> engine_;
    std::unique_ptr<CoefficientEngine> engine_neg_;
};

/// E_l(tau, a) to order N via the proof's recursion: a_1 = a - tr(a),
/// delta(a_k) = a_{k-1} delta(a), tr(a_k) = 0. Accepts any trace.
FormalSeries E_l_recursive(const AlgebraElement& a, const TorusParams& params, int N);

/// E_l via the divisor formula sum_D t^{deg D}/D! f_d(D) a_D U_{s(D)}.
/// Requires trace(a) = 0 (no (0,0) mode present).
FormalSeries E_l_divisor(const AlgebraElement& a, ExpContext& ctx, int N);
FormalSeries E_l_divisor(const AlgebraElement& a, const TorusParams& params, int N);

/// E_r via the divisor formula with coefficients at -theta. Requires
/// trace(a) = 0.
FormalSeries E_r(const AlgebraElement& a, ExpContext& ctx, int N);
FormalSeries E_r(const AlgebraElement& a, const TorusParams& params, int N);

struct SSeriesResult {
    ScalarSeries s;
    double nonscalar_mass = 0.0;  // largest non-scalar l1 mass seen in either product
    double order_mismatch = 0.0;  // residual between the two product orders
};

/// s(tau, a) = E_l(a) E_r(-a) = E_r(-a) E_l(a), a scalar series. Both
/// orders are computed; scalar-ness and their agreement are asserted to
/// `tol` before the scalar part is returned.
SSeriesResult s_series(const AlgebraElement& a, ExpContext& ctx, int N, double tol = 1e-10);
SSeriesResult s_series(const AlgebraElement& a, const TorusParams& params, int N,
                       double tol = 1e-10);

/// Exp_l: divisor sum with c*(D) = f*_d. Any trace; the (0,0) mode rides
/// along through property (iii).
FormalSeries Exp_l(const AlgebraElement& a, ExpContext& ctx, int N);
FormalSeries Exp_l(const AlgebraElement& a, const TorusParams& params, int N);

/// Exp_l of a series argument x in A_theta[[t]]; coefficient products
/// become truncated scalar-series products. Needed by the product law.
FormalSeries Exp_l_series(const FormalSeries& x, ExpContext& ctx, int N);

/// Exp_r by both of the paper's definitions: star-conjugation
/// Exp_l(conj tau, a*)* and the -theta divisor formula. They are computed
/// independently and must agree to `check_tol`.
FormalSeries Exp_r(const AlgebraElement& a, ExpContext& ctx, int N, double check_tol = 1e-10);
FormalSeries Exp_r(const AlgebraElement& a, const TorusParams& params, int N,
                   double check_tol = 1e-10);

struct PhiResult {
    FormalSeries phi;             // phi(a, b)
    double trace_residual = 0.0;  // largest |tr| among coefficients of Exp_l(b)^{-1} delta(a) Exp_l(b)
    double verification_residual = 0.0;  // Exp_l(phi + b) vs Exp_l(a) Exp_l(b)
};

/// The product law: Exp_l(a) Exp_l(b) = Exp_l(phi(a,b) + b) with
/// delta(phi) = Exp_l(b)^{-1} delta(a) Exp_l(b). phi is returned at order
/// N; the reproduction is verified to `tol`.
PhiResult phi_product_law(const AlgebraElement& a, const AlgebraElement& b,
                          const TorusParams& params, int N, double tol = 1e-9);

/// Coefficient-table row for CLI export.
struct DivisorCoefficient {
    Divisor divisor;
    int degree = 0;
    LatticeVector weighted_sum;
    Complex c;       // f_d
    Complex c_star;  // f*_d
};

std::vector<DivisorCoefficient> coefficient_table(const AlgebraElement& a, ExpContext& ctx,
                                                  int N);

}  // namespace nctorus
