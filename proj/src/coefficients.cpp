#include "nctorus/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nctorus/errors.hpp"

namespace nctorus {

namespace {

constexpr std::array<int, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

/// Deformation direction, assigned per distinct value so that equal
/// vectors share a coordinate and value-sequence classes stay collapsed.
std::map<LatticeVector, double> default_direction(const std::vector<LatticeVector>& tuple) {
    std::map<LatticeVector, double> h;
    std::size_t k = 0;
    for (const LatticeVector& v : tuple) h.emplace(v, 0.0);
    for (auto& [v, hv] : h) hv = static_cast<double>(kPrimes[k++ % kPrimes.size()]);
    return h;
}

std::map<LatticeVector, double> random_direction(const std::vector<LatticeVector>& tuple,
                                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(1, 997);
    std::map<LatticeVector, double> h;
    for (const LatticeVector& v : tuple) h.emplace(v, 0.0);
    for (auto& [v, hv] : h) hv = static_cast<double>(dist(rng));
    return h;
}

/// Every lattice-degenerate partial sum must move first order in eps,
/// otherwise the direction cannot separate the pole.
bool direction_admissible(const Fiber& fiber, const std::map<LatticeVector, double>& h) {
    for (const auto& seq : fiber.sequences) {
        LatticeVector w{0, 0};
        double hsum = 0.0;
        for (const LatticeVector& v : seq) {
            w += v;
            hsum += h.at(v);
            if (w.is_zero() && hsum == 0.0) return false;
        }
    }
    return true;
}

std::uint64_t factorial_u64(std::uint64_t k) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= k; ++i) f *= i;
    return f;
}

Complex exact_fiber_value(const Fiber& fiber, const TorusParams& params,
                          const std::map<LatticeVector, double>& h, double rel_tol) {
    // R_n is homogeneous of degree 0, so one common scale on all linear
    // factors keeps coefficients near unit magnitude.
    double scale = 0.0;
    for (const auto& [v, hv] : h) scale = std::max({scale, std::abs(iota(v, params)), hv});
    const double inv_scale = 1.0 / scale;

    const std::vector<LatticeVector>& tuple = fiber.sequences.front();
    Poly numerator = Poly::constant(Complex(1.0));
    for (const LatticeVector& v : tuple)
        numerator = numerator * Poly::linear(iota(v, params) * inv_scale, h.at(v) * inv_scale);

    // Per sequence, split the denominator into its exactly vanishing
    // factors eps * H_k (lattice partial sum zero: an exact test) and a
    // regular part Q with Q(0) != 0 bounded below by the lattice gap. The
    // term is then eps^{-d} * N / (prefactor * Q): a Laurent series whose
    // negative powers must cancel across the fiber.
    LaurentSum acc;
    for (const auto& seq : fiber.sequences) {
        std::size_t pole_order = 0;
        Complex prefactor(1.0);
        Poly regular = Poly::constant(Complex(1.0));
        LatticeVector w{0, 0};
        Complex iota_sum(0.0);
        double hsum = 0.0;
        for (const LatticeVector& v : seq) {
            w += v;
            iota_sum += iota(v, params);
            hsum += h.at(v);
            if (w.is_zero()) {
                ++pole_order;
                prefactor *= hsum * inv_scale;
            } else {
                regular = regular * Poly::linear(iota_sum * inv_scale, hsum * inv_scale);
            }
        }
        const std::vector<Complex> inv_regular = series_inverse(regular, pole_order);
        std::vector<Complex> term(pole_order + 1, Complex(0.0));
        for (std::size_t j = 0; j <= pole_order; ++j) {
            Complex s(0.0);
            for (std::size_t i = 0; i <= j; ++i) s += numerator.at(i) * inv_regular[j - i];
            term[j] = s / prefactor;
        }
        acc.add(term, pole_order);
    }
    return acc.value_at_zero(rel_tol) * static_cast<double>(fiber.class_multiplicity);
}

}  // namespace

TensorLabel tensor_of_sequence(const std::vector<LatticeVector>& seq) {
    TensorLabel label;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            label.t[0] += seq[i].m * seq[j].m;
            label.t[1] += seq[i].m * seq[j].n;
            label.t[2] += seq[i].n * seq[j].m;
            label.t[3] += seq[i].n * seq[j].n;
        }
    }
    return label;
}

bool Fiber::is_degenerate() const {
    for (const auto& seq : sequences) {
        LatticeVector w{0, 0};
        for (const LatticeVector& v : seq) {
            w += v;
            if (w.is_zero()) return true;
        }
    }
    return false;
}

std::uint64_t FiberPartition::total_size() const {
    std::uint64_t s = 0;
    for (const Fiber& f : fibers) s += f.size();
    return s;
}

FiberPartition fiber_partition(std::vector<LatticeVector> vs, int max_n) {
    const int n = static_cast<int>(vs.size());
    if (n > max_n)
        throw InvalidInputError("fiber_partition: tuple length " + std::to_string(n) +
                                " exceeds the permutation cap " + std::to_string(max_n));
    std::sort(vs.begin(), vs.end());

    std::uint64_t multiplicity = 1;
    for (std::size_t i = 0; i < vs.size();) {
        std::size_t j = i;
        while (j < vs.size() && vs[j] == vs[i]) ++j;
        multiplicity *= factorial_u64(j - i);
        i = j;
    }

    FiberPartition part;
    part.tuple = vs;
    std::map<TensorLabel, std::size_t> index;
    std::vector<LatticeVector> seq = vs;
    // next_permutation over the sorted multiset visits each distinct
    // value-sequence exactly once.
    do {
        const TensorLabel label = tensor_of_sequence(seq);
        auto [it, inserted] = index.try_emplace(label, part.fibers.size());
        if (inserted) {
            Fiber f;
            f.tensor = label;
            f.class_multiplicity = multiplicity;
            part.fibers.push_back(std::move(f));
        }
        part.fibers[it->second].sequences.push_back(seq);
    } while (std::next_permutation(seq.begin(), seq.end()));
    return part;
}

Complex fiber_sum_regularized(const Fiber& fiber, const TorusParams& params,
                              const FiberSumOptions& opts) {
    if (fiber.sequences.empty()) return Complex(0.0);
    if (!fiber.is_degenerate()) {
        Complex sum(0.0);
        std::vector<Complex> xs(fiber.sequences.front().size());
        for (const auto& seq : fiber.sequences) {
            for (std::size_t i = 0; i < seq.size(); ++i) xs[i] = iota(seq[i], params);
            sum += R_n_eval(xs);
        }
        return sum * static_cast<double>(fiber.class_multiplicity);
    }

    const std::vector<LatticeVector>& tuple = fiber.sequences.front();
    auto h = default_direction(tuple);
    std::string last_error;
    for (int attempt = 0; attempt <= opts.retries; ++attempt) {
        if (attempt > 0) h = random_direction(tuple, opts.retry_seed + attempt);
        if (!direction_admissible(fiber, h)) continue;
        try {
            return exact_fiber_value(fiber, params, h, opts.cancel_rel_tol);
        } catch (const DegeneracyError& e) {
            last_error = e.what();
        }
    }
    throw DegeneracyError("fiber_sum_regularized: all deformation directions failed: " +
                          last_error);
}

Complex fiber_sum_at_epsilon(const Fiber& fiber, const TorusParams& params, double eps) {
    const auto h = default_direction(fiber.sequences.front());
    Complex sum(0.0);
    std::vector<Complex> xs;
    for (const auto& seq : fiber.sequences) {
        xs.clear();
        for (const LatticeVector& v : seq) xs.push_back(iota(v, params) + eps * h.at(v));
        sum += R_n_eval(xs);
    }
    return sum * static_cast<double>(fiber.class_multiplicity);
}

Complex CoefficientEngine::f_n(std::vector<LatticeVector> vs) {
    std::sort(vs.begin(), vs.end());
    return f_n_sorted(vs);
}

Complex CoefficientEngine::f_n_sorted(const Key& sorted) {
    const std::size_t n = sorted.size();
    if (n <= 1) return Complex(1.0);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_f_.find(sorted);
        if (it != memo_f_.end()) return it->second;
    }

    LatticeVector total{0, 0};
    for (const LatticeVector& v : sorted) total += v;
    Complex value(0.0);
    if (!total.is_zero()) {
        Complex sum(0.0);
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j < n && sorted[j] == sorted[i]) ++j;
            const LatticeVector v = sorted[i];
            Key rest;
            rest.reserve(n - 1);
            rest.insert(rest.end(), sorted.begin(), sorted.begin() + i);
            rest.insert(rest.end(), sorted.begin() + i + 1, sorted.end());
            const double mult = static_cast<double>(j - i);
            sum += mult * iota(v, params_) * f_n_sorted(rest) *
                   phase(pairing(total - v, v, params_.theta()));
            i = j;
        }
        value = sum / iota(total, params_);
    }

    std::lock_guard<std::mutex> lock(mutex_);
    memo_f_.emplace(sorted, value);
    return value;
}

Complex CoefficientEngine::f_n_permutation(std::vector<LatticeVector> vs) const {
    const std::size_t n = vs.size();
    if (n <= 1) return Complex(1.0);
    if (static_cast<int>(n) > max_n_)
        throw InvalidInputError("f_n_permutation: tuple length exceeds the permutation cap");
    std::sort(vs.begin(), vs.end());

    std::uint64_t multiplicity = 1;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && vs[j] == vs[i]) ++j;
        multiplicity *= factorial_u64(j - i);
        i = j;
    }

    Complex sum(0.0);
    std::vector<Complex> xs(n);
    std::vector<LatticeVector> seq = vs;
    do {
        LatticeVector w{0, 0};
        bool admissible = true;
        for (const LatticeVector& v : seq) {
            w += v;
            if (w.is_zero()) {
                admissible = false;
                break;
            }
        }
        if (!admissible) continue;
        for (std::size_t i = 0; i < n; ++i) xs[i] = iota(seq[i], params_);
        sum += R_n_eval(xs) * phase(tensor_of_sequence(seq).pairing_value(params_.theta()));
    } while (std::next_permutation(seq.begin(), seq.end()));
    return sum * static_cast<double>(multiplicity);
}

double CoefficientEngine::fncor_check(const std::vector<LatticeVector>& vs) {
    LatticeVector total{0, 0};
    for (const LatticeVector& v : vs) total += v;
    if (!total.is_zero()) throw InvalidInputError("fncor_check: tuple must sum to zero");
    Complex sum(0.0);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::vector<LatticeVector> rest;
        rest.reserve(vs.size() - 1);
        for (std::size_t j = 0; j < vs.size(); ++j)
            if (j != i) rest.push_back(vs[j]);
        sum += iota(vs[i], params_) * f_n(std::move(rest));
    }
    return std::abs(sum);
}

Complex CoefficientEngine::f_star_n(std::vector<LatticeVector> vs) {
    const std::size_t n = vs.size();
    if (n <= 1) return Complex(1.0);
    std::sort(vs.begin(), vs.end());
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_f_star_.find(vs);
        if (it != memo_f_star_.end()) return it->second;
    }

    const FiberPartition part = fiber_partition(vs, max_n_);
    Complex value(0.0);
    for (const Fiber& fiber : part.fibers) {
        value += fiber_sum_regularized(fiber, params_, fiber_opts_) *
                 phase(fiber.tensor.pairing_value(params_.theta()));
    }

    std::lock_guard<std::mutex> lock(mutex_);
    memo_f_star_.emplace(vs, value);
    return value;
}

}  // namespace nctorus
