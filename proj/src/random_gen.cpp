#include "nctorus/random_gen.hpp"

#include "nctorus/errors.hpp"

namespace nctorus {

AlgebraElement random_element(std::mt19937_64& rng, const RandomElementSpec& spec) {
    std::uniform_int_distribution<std::int64_t> coord(-spec.box_radius, spec.box_radius);
    std::normal_distribution<double> gauss(0.0, 1.0);
    AlgebraElement a;
    int placed = 0;
    int guard = 0;
    while (placed < spec.modes) {
        if (++guard > 10000)
            throw InvalidInputError("random_element: box too small for the requested mode count");
        const LatticeVector v{coord(rng), coord(rng)};
        if (spec.trace_free && v.is_zero()) continue;
        if (a.coeff(v) != Complex(0.0)) continue;
        a.set(v, Complex(gauss(rng), gauss(rng)));
        ++placed;
    }
    const double l1 = norm_l1(a);
    if (l1 > 0.0 && spec.target_l1 > 0.0) a = Complex(spec.target_l1 / l1) * a;
    return a;
}

std::vector<LatticeVector> random_zero_sum_tuple(std::mt19937_64& rng, int n, int box_radius) {
    if (n < 2) throw InvalidInputError("random_zero_sum_tuple: need n >= 2");
    std::uniform_int_distribution<std::int64_t> coord(-box_radius, box_radius);
    std::vector<LatticeVector> vs;
    while (true) {
        vs.clear();
        LatticeVector sum{0, 0};
        for (int i = 0; i + 1 < n; ++i) {
            const LatticeVector v{coord(rng), coord(rng)};
            vs.push_back(v);
            sum += v;
        }
        vs.push_back(-sum);
        // Keep the balancing vector inside the box so tuples stay desk-sized.
        if (vs.back().box_radius() <= 2 * box_radius) return vs;
    }
}

Sl2Matrix random_sl2(std::mt19937_64& rng, std::int64_t max_entry) {
    std::uniform_int_distribution<std::int64_t> entry(-max_entry, max_entry);
    while (true) {
        const Sl2Matrix g{entry(rng), entry(rng), entry(rng), entry(rng)};
        if (g.det() == 1) return g;
    }
}

}  // namespace nctorus
