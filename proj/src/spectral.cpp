#include "nctorus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nctorus/errors.hpp"

namespace nctorus {

TruncationBox::TruncationBox(int radius) : radius_(radius) {
    if (radius < 1) throw InvalidInputError("TruncationBox: radius must be >= 1");
    basis_.reserve(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1) - 1));
    for (std::int64_t m = -radius; m <= radius; ++m)
        for (std::int64_t n = -radius; n <= radius; ++n)
            if (!(m == 0 && n == 0)) basis_.push_back({m, n});
}

std::optional<int> TruncationBox::index_of(LatticeVector v) const {
    if (v.is_zero() || v.box_radius() > radius_) return std::nullopt;
    const std::int64_t side = 2 * radius_ + 1;
    std::int64_t idx = (v.m + radius_) * side + (v.n + radius_);
    // Account for the removed origin, which sits at linear index
    // radius * side + radius in the full grid.
    const std::int64_t origin = static_cast<std::int64_t>(radius_) * side + radius_;
    if (idx > origin) --idx;
    return static_cast<int>(idx);
}

namespace {

TruncatedOperator build_operator(const AlgebraElement& a, const TorusParams& params,
                                 const TruncationBox& box, bool include_delta) {
    if (!a.supported_away_from_zero())
        throw InvalidInputError("truncated operator: direction must have zero trace");
    const std::int64_t ra = a.support_box_radius();
    if (ra > box.radius())
        throw InvalidInputError("truncated operator: supp(a) must lie inside the box");

    TruncatedOperator out;
    out.boundary_margin = box.radius() - static_cast<int>(ra);
    const int dim = box.dimension();
    out.matrix = MatrixXcd::Zero(dim, dim);
    const double theta = params.theta();

    double leak_total_sq = 0.0;
    for (int col = 0; col < dim; ++col) {
        const LatticeVector v = box.basis()[static_cast<std::size_t>(col)];
        if (include_delta) out.matrix(col, col) += iota(v, params);
        double leak_sq = 0.0;
        for (const auto& [w, c] : a.coefficients()) {
            // ad(a) U_v picks up a_w (e^{2 pi i <w,v>} - e^{2 pi i <v,w>}) U_{v+w}.
            const Complex entry =
                c * (phase(pairing(w, v, theta)) - phase(pairing(v, w, theta)));
            if (entry == Complex(0.0)) continue;
            const LatticeVector target = v + w;
            if (auto row = box.index_of(target); row.has_value()) {
                out.matrix(*row, col) += entry;
            } else if (!target.is_zero()) {
                // tr(ad(a) x) = 0 analytically, so a (0,0) target is the
                // H-projection, not a truncation loss.
                leak_sq += std::norm(entry);
            }
        }
        out.leak_max_column = std::max(out.leak_max_column, std::sqrt(leak_sq));
        leak_total_sq += leak_sq;
    }
    out.leak_frobenius = std::sqrt(leak_total_sq);
    return out;
}

}  // namespace

TruncatedOperator build_d_a(const AlgebraElement& a, const TorusParams& params,
                            const TruncationBox& box) {
    return build_operator(a, params, box, /*include_delta=*/true);
}

TruncatedOperator build_ad(const AlgebraElement& a, const TorusParams& params,
                           const TruncationBox& box) {
    return build_operator(a, params, box, /*include_delta=*/false);
}

KernelReport kernel_dim(const AlgebraElement& a, const TorusParams& params,
                        const TruncationBox& box, double sv_tol) {
    const TruncatedOperator op = build_d_a(a, params, box);
    Eigen::BDCSVD<MatrixXcd> svd(op.matrix);
    const Eigen::VectorXd& svs = svd.singularValues();

    KernelReport report;
    report.leak_frobenius = op.leak_frobenius;
    const int dim = static_cast<int>(svs.size());
    for (int i = dim - 1; i >= 0 && static_cast<int>(report.smallest_svs.size()) < 8; --i)
        report.smallest_svs.push_back(svs(i));  // BDCSVD sorts descending

    double below = 0.0;
    double above = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim; ++i) {
        const double s = svs(i);
        if (s < sv_tol) {
            ++report.dim;
            below = std::max(below, s);
        } else {
            above = std::min(above, s);
        }
    }
    report.gap_factor = (below > 0.0) ? above / below : above / sv_tol;
    report.confident = report.gap_factor >= 10.0;
    return report;
}

SpectralScan theta_line_scan(const AlgebraElement& a, const TorusParams& params,
                             const std::vector<int>& radii, const ScanOptions& opts) {
    if (a.is_zero()) throw InvalidInputError("theta_line_scan: direction must be nonzero");
    if (!a.supported_away_from_zero())
        throw InvalidInputError("theta_line_scan: direction must have zero trace");

    SpectralScan scan;
    scan.direction = a;
    scan.radii = radii;
    scan.lambda_cutoff = opts.lambda_cutoff;
    scan.stability_threshold = opts.stability_threshold;
    std::vector<LatticeVector> supp;
    for (const auto& [v, c] : a.coefficients()) supp.push_back(v);
    scan.nilpotency_halfplane = find_separating_halfplane(supp);

    if (scan.nilpotency_halfplane.has_value()) {
        // supp(a) in an open half-plane makes the truncated K strictly
        // triangular when the basis is ordered by h, so its spectrum is
        // exactly zero. A dense eigensolver on such a defective matrix
        // returns noise of size ~eps^(1/depth); the structural answer is
        // the honest one, so the eigensolve is skipped entirely.
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            scan.eigenvalues.emplace_back();
            scan.hits.emplace_back();
        }
        return scan;
    }

    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        const TruncationBox box(radii[ri]);
        const TruncatedOperator ad_op = build_ad(a, params, box);
        // K = diag(iota(v))^{-1} ad(a): scale each row.
        MatrixXcd K = ad_op.matrix;
        for (int row = 0; row < box.dimension(); ++row)
            K.row(row) /= iota(box.basis()[static_cast<std::size_t>(row)], params);

        Eigen::ComplexEigenSolver<MatrixXcd> solver(K, /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("theta_line_scan: eigensolver failed to converge");

        std::vector<Complex> eigs(solver.eigenvalues().data(),
                                  solver.eigenvalues().data() + solver.eigenvalues().size());
        std::sort(eigs.begin(), eigs.end(), [](Complex x, Complex y) {
            return std::abs(x) > std::abs(y) ||
                   (std::abs(x) == std::abs(y) && std::arg(x) < std::arg(y));
        });

        std::vector<ThetaHit> hits;
        for (const Complex& lambda : eigs) {
            if (std::abs(lambda) < opts.lambda_cutoff) continue;
            ThetaHit hit;
            hit.lambda = lambda;
            hit.t = Complex(-1.0) / lambda;
            if (ri > 0) {
                double best = std::numeric_limits<double>::infinity();
                for (const ThetaHit& prev : scan.hits[ri - 1])
                    best = std::min(best, std::abs(hit.t - prev.t) / std::abs(hit.t));
                if (std::isfinite(best)) hit.drift = best;
                hit.stable = hit.drift >= 0.0 && hit.drift < opts.stability_threshold;
            }
            hits.push_back(hit);
        }
        scan.eigenvalues.push_back(std::move(eigs));
        scan.hits.push_back(std::move(hits));
    }
    return scan;
}

LogDerivativeResult log_derivative(const FactoredElement& x, const TorusParams& params,
                                   double tol) {
    if (x.scale == Complex(0.0))
        throw InvalidInputError("log_derivative: zero scale is not invertible");
    // L(c U_v y) = iota(v) + y^{-1} delta(y); the scale and monomial parts
    // contribute exactly.
    const NeumannResult inv = neumann_invert(x.rest, params, tol);
    LogDerivativeResult out;
    out.inverse_residual = inv.residual_l1;
    out.value = AlgebraElement::scalar(iota(x.v, params)) +
                mul(inv.inverse, delta(x.rest, params), params);
    return out;
}

ChiReport chi(const FactoredElement& x, const TorusParams& params, double tol) {
    const LogDerivativeResult L = log_derivative(x, params, tol);
    ChiReport report;
    report.value = trace(L.value);
    // chi / (2 pi i) = m tau + n; solve in the (tau, 1) basis of C over R.
    const Complex w = report.value / Complex(0.0, kTwoPi);
    const double m_real = w.imag() / params.tau().imag();
    const double n_real = w.real() - m_real * params.tau().real();
    report.lattice_point = {std::llround(m_real), std::llround(n_real)};
    report.residual = std::abs(report.value - iota(report.lattice_point, params));
    report.quantized = report.residual < tol;
    return report;
}

}  // namespace nctorus
