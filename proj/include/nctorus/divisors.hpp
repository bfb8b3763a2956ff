#pragma once

#include <functional>
#include <map>
#include <vector>

#include "nctorus/lattice.hpp"

namespace nctorus {

/// Effective divisor on Z^2: a finite multiset of lattice vectors with
/// multiplicities >= 1.
class Divisor {
  public:
    using EntryMap = std::map<LatticeVector, int>;

    Divisor() = default;
    explicit Divisor(EntryMap entries);

    const EntryMap& entries() const { return entries_; }

    int degree() const;
    LatticeVector weighted_sum() const;  // s(D) = sum n_i v_i
    double factorial() const;            // D! = prod n_i!
    std::vector<LatticeVector> support() const;

    /// The divisor written out as deg(D) vectors, repeats included, in
    /// sorted order (the canonical multiset key).
    std::vector<LatticeVector> as_tuple() const;

  private:
    EntryMap entries_;
};

/// Visit every effective divisor with supp(D) within `support` and
/// 1 <= deg(D) <= max_degree, each exactly once, in a deterministic order
/// (by degree, then lexicographic in multiplicity vectors).
void for_each_divisor(const std::vector<LatticeVector>& support, int max_degree,
                      const std::function<void(const Divisor&)>& fn);

std::vector<Divisor> enumerate_divisors(const std::vector<LatticeVector>& support, int max_degree);

}  // namespace nctorus
