#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "nctorus/algebra.hpp"
#include "nctorus/ratfun.hpp"

namespace nctorus {

/// Integer 2x2 tensor sum_{i<j} v_i (x) v_j over an ordered tuple; the
/// exact label that cuts S_n into fibers.
struct TensorLabel {
    std::array<std::int64_t, 4> t{0, 0, 0, 0};  // row-major [mm, mn, nm, nn]

    friend auto operator<=>(const TensorLabel&, const TensorLabel&) = default;

    /// <.,.>_theta is linear in the tensor: theta/2 * (t_mn - t_nm).
    double pairing_value(double theta) const {
        return 0.5 * theta * static_cast<double>(t[1] - t[2]);
    }
};

TensorLabel tensor_of_sequence(const std::vector<LatticeVector>& seq);

/// One fiber of t_vbar: all permutations sharing a tensor value. Stored as
/// the distinct value-sequences it contains; each sequence stands for
/// class_multiplicity index permutations (repeats in the tuple act on it
/// freely and never change the tensor).
struct Fiber {
    TensorLabel tensor;
    std::vector<std::vector<LatticeVector>> sequences;
    std::uint64_t class_multiplicity = 1;

    std::uint64_t size() const { return sequences.size() * class_multiplicity; }

    /// Exact test: some sequence has a vanishing lattice partial sum, so
    /// direct evaluation of R_n hits a pole and regularization is needed.
    bool is_degenerate() const;
};

struct FiberPartition {
    std::vector<LatticeVector> tuple;  // the sorted input multiset
    std::vector<Fiber> fibers;

    std::uint64_t total_size() const;
};

/// Groups all n! permutations of the tuple by the exact integer tensor.
/// n is capped (default 8) because enumeration is factorial.
FiberPartition fiber_partition(std::vector<LatticeVector> vs, int max_n = 8);

struct FiberSumOptions {
    double cancel_rel_tol = 1e-12;  // zero-coefficient threshold for eps-power cancellation
    int retries = 4;                // randomized rational directions tried after the primes fail
    std::uint64_t retry_seed = 0x9e3779b9u;
};

/// Sum over one fiber of R_n(iota(vbar)^sigma), evaluated at the possibly
/// degenerate point. Regular fibers are summed directly; degenerate ones
/// go through the exact eps-deformation described in ratfun.hpp.
Complex fiber_sum_regularized(const Fiber& fiber, const TorusParams& params,
                              const FiberSumOptions& opts = {});

/// Direct numeric evaluation of the deformed fiber sum at one eps along the
/// default direction. Test oracle for Richardson extrapolation; not used by
/// the exact path.
Complex fiber_sum_at_epsilon(const Fiber& fiber, const TorusParams& params, double eps);

/// Symmetric coefficient functions f_n and f*_n of tuples of lattice
/// vectors. Values are memoized per engine over the sorted multiset; an
/// engine is bound to one (theta, tau), which completes the memo key. The
/// memo is mutex-guarded, so one engine may be shared across threads.
class CoefficientEngine {
  public:
    explicit CoefficientEngine(const TorusParams& params, int max_n = 8)
        : params_(params), max_n_(max_n) {}

    const TorusParams& params() const { return params_; }
    int max_n() const { return max_n_; }

    /// f_n by the recursion: f_0 = f_1 = 1, zero on zero-sum tuples,
    /// otherwise iota(sum)^{-1} sum_i iota(v_i) f_{n-1}(...) phase(...).
    Complex f_n(std::vector<LatticeVector> vs);

    /// f_n by the closed permutation formula, summing only over
    /// permutations whose lattice partial sums never vanish (exact test).
    /// Agrees with the recursion on tuples of nonzero vectors, the domain
    /// where the divisor coefficients live; a zero vector rides through
    /// the recursion but is silently dropped by the closed formula.
    Complex f_n_permutation(std::vector<LatticeVector> vs) const;

    /// |sum_i iota(v_i) f_{n-1}(tuple minus v_i)|, which must vanish for
    /// zero-sum tuples. Rejects tuples that do not sum to zero.
    double fncor_check(const std::vector<LatticeVector>& vs);

    /// f*_n: phase-weighted sum of regularized fiber sums. f*_0 = f*_1 = 1.
    Complex f_star_n(std::vector<LatticeVector> vs);

  private:
    using Key = std::vector<LatticeVector>;

    Complex f_n_sorted(const Key& sorted);

    TorusParams params_;
    int max_n_;
    FiberSumOptions fiber_opts_;
    std::map<Key, Complex> memo_f_;
    std::map<Key, Complex> memo_f_star_;
    mutable std::mutex mutex_;
};

}  // namespace nctorus
