#pragma once

#include <random>

#include "nctorus/algebra.hpp"

namespace nctorus {

/// Seeded random elements for suites: support drawn from a box,
/// coefficients complex Gaussian, then rescaled to an exact target l1
/// norm (convergence-sensitive suites need norm control).
struct RandomElementSpec {
    int box_radius = 2;
    int modes = 3;
    double target_l1 = 1.0;
    bool trace_free = true;  // exclude the (0,0) mode
};

AlgebraElement random_element(std::mt19937_64& rng, const RandomElementSpec& spec);

/// Random tuple of lattice vectors summing to zero (last vector balances).
std::vector<LatticeVector> random_zero_sum_tuple(std::mt19937_64& rng, int n, int box_radius);

/// Random SL2(Z) matrix with entries bounded by max_entry.
Sl2Matrix random_sl2(std::mt19937_64& rng, std::int64_t max_entry = 3);

}  // namespace nctorus
