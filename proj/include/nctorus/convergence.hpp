#pragma once

#include <optional>

#include "nctorus/algebra.hpp"

namespace nctorus {

/// Everything a caller needs to audit a converged evaluation: the lattice
/// gap, the contraction ratio, the certified tail, and the measured
/// residual of the defining equation. Bounds are always reported, never
/// just booleans.
struct ConvergenceCertificate {
    double gap_d = 0.0;         // min |m tau + n| over nonzero lattice points
    double ratio = 0.0;         // r = ||delta(a)||_l1 / (2 pi d)
    bool invertible = false;    // set only when ||delta(a)||_l1 < pi d, i.e. r < 1/2
    int terms_used = 0;
    double tail_bound_l2 = 0.0; // r^{terms+1} / (1 - r)
    double residual = 0.0;      // ||delta(x) - x delta(a)||_0 of the returned x
};

/// d = min_{(m,n) != 0} |m tau + n|, exact: the search box is grown until
/// |m| |Im tau| and the per-m distance structure certify that nothing
/// outside can be smaller. `search_radius` only seeds the initial box.
double lattice_gap(Complex tau, int search_radius = 1);

struct ConvergedElement {
    AlgebraElement value;
    ConvergenceCertificate certificate;
};

/// Sums the recursion a_k = delta_inv(a_{k-1} delta(a)) at t = 1 while the
/// geometric l1 tail certifies the truncation. Requires trace(a) = 0 and
/// contraction ratio r < 1; rejecting r >= 1 is not a divergence claim,
/// only the absence of a certificate.
ConvergedElement e_l_converge(const AlgebraElement& a, const TorusParams& params,
                              double tol = 1e-10, int max_terms = 10000);

/// Integer linear form h(v) = p m + q n used for the half-plane criterion.
/// Rational forms scale to this without changing positivity.
struct HalfPlaneForm {
    std::int64_t p = 0;
    std::int64_t q = 0;
    double operator()(LatticeVector v) const {
        return static_cast<double>(p * v.m + q * v.n);
    }
    std::int64_t eval(LatticeVector v) const { return p * v.m + q * v.n; }
};

struct HalfPlaneCertificate {
    HalfPlaneForm form;
    double epsilon = 0.0;       // min h over supp(a)
    int terms_used = 0;
    double tail_bound_l2 = 0.0;
    double residual = 0.0;
    std::vector<double> gap_sequence;  // d_n for the levels actually used
};

struct HalfPlaneConverged {
    AlgebraElement value;
    HalfPlaneCertificate certificate;
};

/// Half-plane criterion: h > 0 on supp(a) makes the series converge with
/// no smallness condition; the per-level gaps d_n grow linearly and the
/// bound ||a_n||_0 <= ||delta(a)||_l1 / (2 pi d_n) ||a_{n-1}||_0 certifies
/// termination. Requires trace(a) = 0.
HalfPlaneConverged halfplane_converge(const AlgebraElement& a, HalfPlaneForm h,
                                      const TorusParams& params, double tol = 1e-10,
                                      int max_terms = 10000);

/// Searches small integer forms for one with h > 0 on all of `support`.
std::optional<HalfPlaneForm> find_separating_halfplane(const std::vector<LatticeVector>& support,
                                                       std::int64_t max_coeff = 64);

struct NeumannResult {
    AlgebraElement inverse;
    double opening = 0.0;   // q = ||x - 1||_l1, must be < 1
    int terms_used = 0;
    double tail_bound = 0.0;
    double residual_l1 = 0.0;  // ||x x^{-1} - 1||_l1
};

/// Geometric series for x^{-1} when ||x - 1||_l1 < 1, with the l1 tail
/// bound as the stopping rule.
NeumannResult neumann_invert(const AlgebraElement& x, const TorusParams& params,
                             double tol = 1e-10, int max_terms = 10000);

}  // namespace nctorus
