#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nctorus/algebra.hpp"
#include "nctorus/convergence.hpp"

namespace nctorus {

using MatrixXcd = Eigen::MatrixXcd;

/// Finite model of the trace-zero subspace: the square box of radius N
/// with the origin removed, basis ordered lexicographically.
class TruncationBox {
  public:
    explicit TruncationBox(int radius);

    int radius() const { return radius_; }
    const std::vector<LatticeVector>& basis() const { return basis_; }
    int dimension() const { return static_cast<int>(basis_.size()); }

    /// Index of v in the basis, or nullopt when v is outside the box (or 0).
    std::optional<int> index_of(LatticeVector v) const;

  private:
    int radius_;
    std::vector<LatticeVector> basis_;
};

struct TruncatedOperator {
    MatrixXcd matrix;
    /// l2 mass of the images that fell outside the box and were projected
    /// away, per-column maximum and Frobenius total.
    double leak_max_column = 0.0;
    double leak_frobenius = 0.0;
    int boundary_margin = 0;  // box radius minus support radius of a
};

/// Matrix of d_a = delta + ad(a) on the box basis, images projected back
/// into the box. Requires trace(a) = 0 and supp(a) inside the box.
TruncatedOperator build_d_a(const AlgebraElement& a, const TorusParams& params,
                            const TruncationBox& box);

/// Matrix of ad(a) alone on the box basis (same projection bookkeeping).
TruncatedOperator build_ad(const AlgebraElement& a, const TorusParams& params,
                           const TruncationBox& box);

struct KernelReport {
    int dim = 0;
    std::vector<double> smallest_svs;  // ascending, a handful for judgement
    bool confident = false;            // 10x spectral gap around sv_tol
    double gap_factor = 0.0;           // smallest sv above tol / largest below
    double leak_frobenius = 0.0;
};

/// Counts singular values of the truncated d_a below sv_tol. A kernel
/// count without a factor-10 gap around sv_tol is reported with
/// confident = false: "undetermined" is a first-class answer.
KernelReport kernel_dim(const AlgebraElement& a, const TorusParams& params,
                        const TruncationBox& box, double sv_tol = 1e-8);

struct ThetaHit {
    Complex t;       // candidate intersection parameter, t = -1/lambda
    Complex lambda;  // the eigenvalue it came from
    double drift = -1.0;  // relative drift vs the previous radius; negative = no data
    bool stable = false;
};

struct SpectralScan {
    AlgebraElement direction;
    std::vector<int> radii;
    std::vector<std::vector<Complex>> eigenvalues;  // per radius
    std::vector<std::vector<ThetaHit>> hits;        // per radius
    double lambda_cutoff = 0.0;
    double stability_threshold = 0.0;
    std::optional<HalfPlaneForm> nilpotency_halfplane;  // set when supp(a) sits in a half-plane
};

struct ScanOptions {
    double lambda_cutoff = 1e-8;        // |lambda| below this is treated as nilpotent zero
    double stability_threshold = 1e-3;  // relative drift across consecutive radii
};

/// Eigenvalues of K = delta^{-1} ad(a) truncated to each radius; each
/// nonzero lambda flags t = -1/lambda as a candidate point of Theta on
/// the line C a. Hits are marked stable only when they persist across
/// consecutive radii within the drift threshold.
SpectralScan theta_line_scan(const AlgebraElement& a, const TorusParams& params,
                             const std::vector<int>& radii, const ScanOptions& opts = {});

/// Invertible element presented as scale * U_v * y with y Neumann-
/// invertible; the form every certified-invertible element here takes.
struct FactoredElement {
    Complex scale{1.0, 0.0};
    LatticeVector v{0, 0};
    AlgebraElement rest = AlgebraElement::one();

    static FactoredElement plain(AlgebraElement x) {
        FactoredElement f;
        f.rest = std::move(x);
        return f;
    }
};

struct LogDerivativeResult {
    AlgebraElement value;       // x^{-1} delta(x)
    double inverse_residual = 0.0;  // ||x x^{-1} - 1||_l1 from the Neumann certificate
};

/// L(x) = x^{-1} delta(x) with the inverse certified through the Neumann
/// series; the U_v factor contributes iota(v) exactly.
LogDerivativeResult log_derivative(const FactoredElement& x, const TorusParams& params,
                                   double tol = 1e-10);

struct ChiReport {
    Complex value;              // tr(L(x))
    LatticeVector lattice_point;  // nearest (m, n) with 2 pi i (m tau + n)
    double residual = 0.0;      // distance to that lattice point
    bool quantized = false;     // residual < tol
};

/// chi(x) = tr(L(x)), quantized against the lattice 2 pi i (Z + Z tau).
ChiReport chi(const FactoredElement& x, const TorusParams& params, double tol = 1e-8);

}  // namespace nctorus
