#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "nctorus/divisors.hpp"
#include "nctorus/errors.hpp"

using namespace nctorus;

namespace {

// Independent stars-and-bars oracle: number of multisets of size d over k
// symbols is C(k + d - 1, d).
long long binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Brute-force enumeration oracle for small supports: count multisets by
// explicit multi-loops over multiplicities.
long long brute_count(int support_size, int degree) {
    long long count = 0;
    std::function<void(int, int)> rec = [&](int slot, int remaining) {
        if (slot + 1 == support_size) {
            ++count;
            return;
        }
        for (int take = 0; take <= remaining; ++take) rec(slot + 1, remaining - take);
    };
    if (support_size > 0) rec(0, degree);
    return count;
}

}  // namespace

TEST_CASE("divisor derived quantities") {
    Divisor d(Divisor::EntryMap{{{1, 0}, 2}, {{0, 1}, 3}});
    CHECK(d.degree() == 5);
    CHECK(d.weighted_sum() == LatticeVector{2, 3});
    CHECK(d.factorial() == doctest::Approx(12.0));  // 2! 3!
    CHECK(d.as_tuple().size() == 5);
    CHECK_THROWS_AS(Divisor(Divisor::EntryMap{{{1, 0}, 0}}), InvalidInputError);
}

TEST_CASE("single-vector support enumerates powers") {
    const auto ds = enumerate_divisors({{2, -1}}, 3);
    REQUIRE(ds.size() == 3);
    for (int k = 1; k <= 3; ++k) {
        CHECK(ds[static_cast<std::size_t>(k - 1)].degree() == k);
        CHECK(ds[static_cast<std::size_t>(k - 1)].weighted_sum() == LatticeVector{2 * k, -k});
    }
}

TEST_CASE("two-vector support, degree 2: five divisors") {
    const auto ds = enumerate_divisors({{1, 0}, {0, 1}}, 2);
    CHECK(ds.size() == 5);  // C(2,1) + C(3,2) = 2 + 3
}

TEST_CASE("counts match stars-and-bars and brute force") {
    for (int s = 1; s <= 3; ++s) {
        std::vector<LatticeVector> support;
        for (int i = 0; i < s; ++i) support.push_back({i + 1, -i});
        for (int d = 1; d <= 4; ++d) {
            long long at_degree = 0;
            for_each_divisor(support, d, [&](const Divisor& div) {
                if (div.degree() == d) ++at_degree;
            });
            CHECK(at_degree == binom(s + d - 1, d));
            CHECK(at_degree == brute_count(s, d));
        }
    }
}

TEST_CASE("each divisor appears exactly once and respects the support") {
    const std::vector<LatticeVector> support{{1, 0}, {0, 1}, {-1, -1}};
    std::set<std::vector<std::pair<LatticeVector, int>>> seen;
    for_each_divisor(support, 4, [&](const Divisor& d) {
        std::vector<std::pair<LatticeVector, int>> key(d.entries().begin(), d.entries().end());
        CHECK(seen.insert(key).second);
        CHECK(d.degree() >= 1);
        CHECK(d.degree() <= 4);
        for (const auto& [v, mult] : d.entries()) {
            CHECK(mult >= 1);
            CHECK(std::find(support.begin(), support.end(), v) != support.end());
        }
    });
    // Total = sum_d C(3+d-1, d) for d = 1..4
    CHECK(seen.size() == 3u + 6u + 10u + 15u);
}

TEST_CASE("duplicate support entries are deduplicated") {
    const auto ds = enumerate_divisors({{1, 0}, {1, 0}}, 2);
    CHECK(ds.size() == 2);
}
