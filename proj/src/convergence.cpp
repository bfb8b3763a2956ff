#include "nctorus/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nctorus/errors.hpp"

namespace nctorus {

double lattice_gap(Complex tau, int search_radius) {
    if (tau.imag() >= 0.0) throw InvalidInputError("lattice_gap: Im(tau) must be negative");
    if (search_radius < 1) throw InvalidInputError("lattice_gap: search_radius must be >= 1");
    const double im = std::abs(tau.imag());
    const double re = tau.real();

    // (0, 1) gives d <= 1. For row m, |m tau + n|^2 = (m re + n)^2 + (m im)^2
    // is minimized at n = -round(m re), and |m tau + n| >= |m| im excludes
    // every row with |m| im >= current minimum; rows are scanned until that
    // exclusion (plus the user's minimum radius) is certified.
    double best = 1.0;
    std::int64_t m = 1;
    while (static_cast<double>(m) * im <= best || m <= search_radius) {
        const double shift = static_cast<double>(m) * re;
        const std::int64_t n0 = std::llround(-shift);
        for (std::int64_t n = n0 - 1; n <= n0 + 1; ++n) {
            if (m == 0 && n == 0) continue;
            const double frac = shift + static_cast<double>(n);
            best = std::min(best, std::hypot(frac, static_cast<double>(m) * im));
        }
        ++m;
        if (m > (1 << 26)) break;  // unreachable for finite im; hard safety stop
    }
    return best;
}

ConvergedElement e_l_converge(const AlgebraElement& a, const TorusParams& params, double tol,
                              int max_terms) {
    if (!a.supported_away_from_zero())
        throw InvalidInputError("e_l_converge: input must have zero trace");

    ConvergedElement out;
    ConvergenceCertificate& cert = out.certificate;
    cert.gap_d = lattice_gap(params.tau());
    const AlgebraElement da = delta(a, params);
    const double L = norm_l1(da);
    const double r = L / (kTwoPi * cert.gap_d);
    cert.ratio = r;
    if (r >= 1.0)
        throw CertificateError(
            "e_l_converge: contraction ratio " + std::to_string(r) +
            " >= 1; the l1 certificate is unavailable (this does not prove divergence)");
    cert.invertible = (L < 0.5 * kTwoPi * cert.gap_d);  // ||delta(a)||_l1 < pi d

    AlgebraElement x = AlgebraElement::one();
    AlgebraElement term = a;  // a_k, starting at a_1 = a
    int k = 1;
    while (true) {
        x = x + term;
        const double tail = std::pow(r, k + 1) / (1.0 - r);
        if (tail < tol) {
            cert.tail_bound_l2 = tail;
            break;
        }
        if (k >= max_terms)
            throw CertificateError("e_l_converge: term cap " + std::to_string(max_terms) +
                                   " reached before the tail bound met tol");
        term = delta_inv(mul(term, da, params), params);
        ++k;
    }
    cert.terms_used = k;
    cert.residual = norm_l2(delta(x, params) - mul(x, da, params));
    out.value = std::move(x);
    return out;
}

namespace {

/// d_n = min |m tau + n'| over the half-plane h(v) > c; exact enumeration
/// over a box certified to contain the minimizer.
double strip_gap(const HalfPlaneForm& h, double c, Complex tau) {
    // A feasible point along the form direction gives an upper bound u;
    // any better point must then have |m| <= u / |Im tau| and
    // |m Re tau + n| <= u, a finite box.
    const double norm_sq = static_cast<double>(h.p * h.p + h.q * h.q);
    std::int64_t k = 1;
    while (static_cast<double>(k) * norm_sq <= c) ++k;
    const LatticeVector seed{k * h.p, k * h.q};
    double best = std::abs(iota(seed, tau)) / kTwoPi;

    const double im = std::abs(tau.imag());
    const std::int64_t m_max = static_cast<std::int64_t>(std::floor(best / im)) + 1;
    for (std::int64_t m = -m_max; m <= m_max; ++m) {
        const double shift = static_cast<double>(m) * tau.real();
        const std::int64_t n_lo = std::llround(-shift - best) - 1;
        const std::int64_t n_hi = std::llround(-shift + best) + 1;
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            const LatticeVector v{m, n};
            if (static_cast<double>(h.eval(v)) <= c) continue;
            best = std::min(best, std::hypot(shift + static_cast<double>(n),
                                             static_cast<double>(m) * im));
        }
    }
    return best;
}

}  // namespace

HalfPlaneConverged halfplane_converge(const AlgebraElement& a, HalfPlaneForm h,
                                      const TorusParams& params, double tol, int max_terms) {
    if (!a.supported_away_from_zero())
        throw InvalidInputError("halfplane_converge: input must have zero trace");
    if (a.is_zero()) {
        HalfPlaneConverged out;
        out.value = AlgebraElement::one();
        out.certificate.form = h;
        return out;
    }
    std::int64_t eps_int = 0;
    for (const auto& [v, c] : a.coefficients()) {
        const std::int64_t hv = h.eval(v);
        if (hv <= 0)
            throw InvalidInputError("halfplane_converge: h is not strictly positive on supp(a)");
        eps_int = (eps_int == 0) ? hv : std::min(eps_int, hv);
    }

    HalfPlaneConverged out;
    HalfPlaneCertificate& cert = out.certificate;
    cert.form = h;
    cert.epsilon = static_cast<double>(eps_int);
    const AlgebraElement da = delta(a, params);
    const double L = norm_l1(da);

    // supp(a_n) satisfies h >= n * eps exactly (integer form), so the
    // sound per-level strip is {h > n*eps - 1/2}. Gaps are cached: they
    // are reused by every tail evaluation.
    std::vector<double> gap_cache;  // gap_cache[j] = d_{j+1}
    auto level_gap = [&](int j) {
        while (static_cast<int>(gap_cache.size()) < j)
            gap_cache.push_back(strip_gap(
                h, static_cast<double>(gap_cache.size() + 1) * cert.epsilon - 0.5, params.tau()));
        return gap_cache[static_cast<std::size_t>(j) - 1];
    };

    AlgebraElement x = AlgebraElement::one();
    AlgebraElement term = a;  // a_k, starting at a_1 = a
    int k = 1;
    while (true) {
        x = x + term;
        // Tail from level k+1 on, seeded by the actual norm of the last
        // term. The d_n are non-decreasing, so once the per-level ratio
        // drops below 1/2 a geometric closure is sound.
        double tail = 0.0;
        double p = norm_l2(term);
        int j = k + 1;
        while (true) {
            const double rho = L / (kTwoPi * level_gap(j));
            p *= rho;
            tail += p;
            if (rho <= 0.5) {
                tail += p * rho / (1.0 - rho);
                break;
            }
            ++j;
            if (j - k > max_terms)
                throw CertificateError("halfplane_converge: gap growth too slow to certify");
        }
        // The truncation residual is exactly -a_k delta(a), so drive its
        // bound below tol as well before stopping.
        if (tail < tol && norm_l2(term) * L < tol) {
            cert.tail_bound_l2 = tail;
            break;
        }
        if (k >= max_terms)
            throw CertificateError("halfplane_converge: term cap " + std::to_string(max_terms) +
                                   " reached before the tail bound met tol");
        term = delta_inv(mul(term, da, params), params);
        ++k;
    }
    cert.terms_used = k;
    cert.gap_sequence.assign(gap_cache.begin(),
                             gap_cache.begin() + std::min<std::size_t>(gap_cache.size(),
                                                                       static_cast<std::size_t>(k)));
    cert.residual = norm_l2(delta(x, params) - mul(x, da, params));
    out.value = std::move(x);
    return out;
}

std::optional<HalfPlaneForm> find_separating_halfplane(const std::vector<LatticeVector>& support,
                                                       std::int64_t max_coeff) {
    for (std::int64_t radius = 1; radius <= max_coeff; radius *= 2) {
        for (std::int64_t p = -radius; p <= radius; ++p) {
            for (std::int64_t q = -radius; q <= radius; ++q) {
                if (p == 0 && q == 0) continue;
                if (std::gcd(p, q) != 1) continue;
                const HalfPlaneForm h{p, q};
                bool ok = true;
                for (const LatticeVector& v : support)
                    if (h.eval(v) <= 0) {
                        ok = false;
                        break;
                    }
                if (ok) return h;
            }
        }
    }
    return std::nullopt;
}

NeumannResult neumann_invert(const AlgebraElement& x, const TorusParams& params, double tol,
                             int max_terms) {
    NeumannResult out;
    const AlgebraElement e = AlgebraElement::one() - x;
    out.opening = norm_l1(e);
    if (out.opening >= 1.0)
        throw CertificateError("neumann_invert: ||x - 1||_l1 = " + std::to_string(out.opening) +
                               " >= 1; the Neumann certificate is unavailable");
    AlgebraElement sum = AlgebraElement::one();
    AlgebraElement power = e;
    int k = 0;
    const double q = out.opening;
    double tail = (q > 0.0) ? q / (1.0 - q) : 0.0;
    while (tail >= tol) {
        sum = sum + power;
        ++k;
        if (k > max_terms)
            throw CertificateError("neumann_invert: term cap reached before tol");
        power = mul(power, e, params);
        tail = std::pow(q, k + 1) / (1.0 - q);
    }
    out.terms_used = k;
    out.tail_bound = tail;
    out.residual_l1 = norm_l1(mul(x, sum, params) - AlgebraElement::one());
    out.inverse = std::move(sum);
    return out;
}

}  // namespace nctorus
