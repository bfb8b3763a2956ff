#include "nctorus/divisors.hpp"

#include <algorithm>

#include "nctorus/errors.hpp"

namespace nctorus {

Divisor::Divisor(EntryMap entries) : entries_(std::move(entries)) {
    for (const auto& [v, mult] : entries_)
        if (mult < 1) throw InvalidInputError("Divisor: multiplicities must be >= 1");
}

int Divisor::degree() const {
    int d = 0;
    for (const auto& [v, mult] : entries_) d += mult;
    return d;
}

LatticeVector Divisor::weighted_sum() const {
    LatticeVector s{0, 0};
    for (const auto& [v, mult] : entries_) s += mult * v;
    return s;
}

double Divisor::factorial() const {
    double f = 1.0;
    for (const auto& [v, mult] : entries_)
        for (int k = 2; k <= mult; ++k) f *= k;
    return f;
}

std::vector<LatticeVector> Divisor::support() const {
    std::vector<LatticeVector> s;
    s.reserve(entries_.size());
    for (const auto& [v, mult] : entries_) s.push_back(v);
    return s;
}

std::vector<LatticeVector> Divisor::as_tuple() const {
    std::vector<LatticeVector> t;
    t.reserve(static_cast<std::size_t>(degree()));
    for (const auto& [v, mult] : entries_)
        for (int k = 0; k < mult; ++k) t.push_back(v);
    return t;
}

void for_each_divisor(const std::vector<LatticeVector>& support, int max_degree,
                      const std::function<void(const Divisor&)>& fn) {
    if (max_degree < 0) throw InvalidInputError("for_each_divisor: max_degree must be >= 0");
    std::vector<LatticeVector> supp = support;
    std::sort(supp.begin(), supp.end());
    supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
    if (supp.empty()) return;

    const std::size_t k = supp.size();
    std::vector<int> mult(k, 0);
    // Compositions of `deg` into k nonnegative parts, lexicographic.
    for (int deg = 1; deg <= max_degree; ++deg) {
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
            if (i + 1 == k) {
                mult[i] = remaining;
                Divisor::EntryMap entries;
                for (std::size_t j = 0; j < k; ++j)
                    if (mult[j] > 0) entries.emplace(supp[j], mult[j]);
                fn(Divisor(std::move(entries)));
                return;
            }
            for (int take = 0; take <= remaining; ++take) {
                mult[i] = take;
                rec(i + 1, remaining - take);
            }
        };
        rec(0, deg);
    }
}

std::vector<Divisor> enumerate_divisors(const std::vector<LatticeVector>& support,
                                        int max_degree) {
    std::vector<Divisor> out;
    for_each_divisor(support, max_degree, [&](const Divisor& d) { out.push_back(d); });
    return out;
}

}  // namespace nctorus
