#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "nctorus/coefficients.hpp"
#include "nctorus/random_gen.hpp"

using namespace nctorus;

namespace {

const TorusParams kParams(0.7071067811865476, Complex(-0.35, -0.8));

// Polynomial extrapolation to eps = 0 through three samples (Neville).
Complex richardson3(const std::array<double, 3>& eps, const std::array<Complex, 3>& f) {
    std::array<Complex, 3> p = f;
    for (int level = 1; level < 3; ++level)
        for (int i = 0; i < 3 - level; ++i)
            p[i] = p[i + 1] + (p[i] - p[i + 1]) * (0.0 - eps[i + level]) / (eps[i] - eps[i + level]);
    return p[0];
}

// Independent oracle for f*_n: the raw sum over all n! index permutations,
// valid whenever no permutation is degenerate.
Complex f_star_direct(const std::vector<LatticeVector>& vs, const TorusParams& params) {
    std::vector<std::size_t> idx(vs.size());
    std::iota(idx.begin(), idx.end(), 0u);
    Complex sum(0.0);
    do {
        std::vector<LatticeVector> seq;
        std::vector<Complex> xs;
        for (std::size_t i : idx) {
            seq.push_back(vs[i]);
            xs.push_back(iota(vs[i], params));
        }
        sum += R_n_eval(xs) * phase(tensor_of_sequence(seq).pairing_value(params.theta()));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return sum;
}

bool has_degenerate_perm(std::vector<LatticeVector> seq) {
    std::sort(seq.begin(), seq.end());
    do {
        LatticeVector w{0, 0};
        for (const LatticeVector& v : seq) {
            w += v;
            if (w.is_zero()) return true;
        }
    } while (std::next_permutation(seq.begin(), seq.end()));
    return false;
}

}  // namespace

TEST_CASE("R_n instances") {
    CHECK(R_n_eval(std::vector<Complex>{}) == Complex(1.0));
    CHECK(R_n_eval(std::vector<Complex>{Complex(2.3, 1.0)}) == Complex(1.0));
    const Complex x1(1.5, 0.2), x2(-0.7, 1.1);
    CHECK(std::abs(R_n_eval(std::vector<Complex>{x1, x2}) - x2 / (x1 + x2)) < 1e-15);
    // Cyclic n = 2 sum is the constant 1 (no pole along x1 + x2 = 0).
    CHECK(std::abs(R_n_eval(std::vector<Complex>{x1, x2}) +
                   R_n_eval(std::vector<Complex>{x2, x1}) - Complex(1.0)) < 1e-14);
    CHECK_THROWS_AS(R_n_eval(std::vector<Complex>{x1, -x1}), PoleError);
}

TEST_CASE("R_n is homogeneous of degree zero") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> xs;
        for (int i = 0; i < 5; ++i) xs.emplace_back(g(rng), g(rng));
        const Complex c(g(rng), g(rng));
        std::vector<Complex> scaled;
        for (const Complex& x : xs) scaled.push_back(c * x);
        CHECK(std::abs(R_n_eval(xs) - R_n_eval(scaled)) < 1e-12);
    }
}

TEST_CASE("alternating convolution of R vanishes") {
    // sum_{r=0..n} (-1)^{n-r} R_r(x_1..x_r) R_{n-r}(x_n..x_{r+1}) = 0.
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Complex> xs;
            for (int i = 0; i < n; ++i) xs.emplace_back(g(rng), g(rng));
            Complex sum(0.0);
            double scale = 0.0;
            for (int r = 0; r <= n; ++r) {
                std::vector<Complex> head(xs.begin(), xs.begin() + r);
                std::vector<Complex> tail(xs.begin() + r, xs.end());
                std::reverse(tail.begin(), tail.end());
                const Complex term = ((n - r) % 2 ? -1.0 : 1.0) * R_n_eval(head) * R_n_eval(tail);
                sum += term;
                scale = std::max(scale, std::abs(term));
            }
            CHECK(std::abs(sum) <= 1e-10 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("f_n base cases and frozen values") {
    CoefficientEngine eng(kParams);
    CHECK(eng.f_n({}) == Complex(1.0));
    CHECK(eng.f_n({{3, -2}}) == Complex(1.0));
    CHECK(eng.f_n({{1, 0}, {-1, 0}}) == Complex(0.0));

    // Repeated single vector: the recursion telescopes to 1 for every k.
    for (int k = 1; k <= 6; ++k) {
        std::vector<LatticeVector> vs(static_cast<std::size_t>(k), LatticeVector{1, -1});
        CHECK(std::abs(eng.f_n(vs) - Complex(1.0)) < 1e-12);
    }

    // f_2((1,0),(0,1)) at tau = -i: iota values 2 pi and 2 pi i give
    // (1+i)^{-1} (e^{-pi i theta} + i e^{pi i theta}).
    const TorusParams p2(kParams.theta(), Complex(0.0, -1.0));
    CoefficientEngine eng2(p2);
    const Complex ipi(0.0, 3.14159265358979323846 * p2.theta());
    const Complex expected = (std::exp(-ipi) + Complex(0.0, 1.0) * std::exp(ipi)) /
                             Complex(1.0, 1.0);
    CHECK(std::abs(eng2.f_n({{1, 0}, {0, 1}}) - expected) < 1e-14);
    CHECK(std::abs(eng2.f_n_permutation({{1, 0}, {0, 1}}) - expected) < 1e-14);
}

TEST_CASE("permutation formula agrees with the recursion") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(-3, 3);
    CoefficientEngine eng(kParams);
    int checked = 0;
    while (checked < 60) {
        const int n = 2 + static_cast<int>(rng() % 4);  // 2..5
        std::vector<LatticeVector> vs;
        for (int i = 0; i < n; ++i) vs.push_back({d(rng), d(rng)});
        const Complex rec = eng.f_n(vs);
        const Complex perm = eng.f_n_permutation(vs);
        const double scale = std::max(1.0, std::abs(rec));
        CHECK(std::abs(rec - perm) / scale < 1e-10);
        ++checked;
    }
}

TEST_CASE("f_n and f*_n are symmetric in their arguments") {
    CoefficientEngine eng(kParams);
    std::vector<LatticeVector> vs{{1, 0}, {0, 1}, {-1, 2}, {2, -1}};
    const Complex f0 = eng.f_n(vs);
    const Complex fs0 = eng.f_star_n(vs);
    std::sort(vs.begin(), vs.end());
    do {
        CHECK(std::abs(eng.f_n(vs) - f0) < 1e-13);
        CHECK(std::abs(eng.f_star_n(vs) - fs0) < 1e-13);
    } while (std::next_permutation(vs.begin(), vs.end()));
}

TEST_CASE("fncor: weighted sum of punctured f vanishes on zero-sum tuples") {
    CoefficientEngine eng(kParams);
    CHECK(eng.fncor_check({{2, -3}, {-2, 3}}) == 0.0);
    CHECK(eng.fncor_check({{1, 0}, {0, 1}, {-1, -1}}) < 1e-10);
    CHECK_THROWS_AS(eng.fncor_check({{1, 0}, {0, 1}}), InvalidInputError);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const auto vs = random_zero_sum_tuple(rng, 4, 3);
        CHECK(eng.fncor_check(vs) < 1e-9);
    }
}

TEST_CASE("fiber partition structure") {
    // All equal: the tensor is independent of sigma, one fiber of size n!.
    const std::vector<LatticeVector> same(4, LatticeVector{1, 2});
    const auto part_same = fiber_partition(same);
    REQUIRE(part_same.fibers.size() == 1);
    CHECK(part_same.fibers[0].size() == 24);
    CHECK(part_same.total_size() == 24);

    // Generic n = 3: sizes total 3!.
    const auto part3 = fiber_partition({{1, 0}, {0, 1}, {2, -1}});
    CHECK(part3.total_size() == 6);

    // Zero-sum: every fiber is closed under cyclic rotation of sequences.
    const auto part0 = fiber_partition({{1, 0}, {0, 1}, {-1, 2}, {0, -3}});
    CHECK(part0.total_size() == 24);
    for (const Fiber& f : part0.fibers) {
        for (const auto& seq : f.sequences) {
            std::vector<LatticeVector> rotated(seq.begin() + 1, seq.end());
            rotated.push_back(seq.front());
            CHECK(std::find(f.sequences.begin(), f.sequences.end(), rotated) !=
                  f.sequences.end());
        }
    }

    CHECK_THROWS_AS(fiber_partition(std::vector<LatticeVector>(9, LatticeVector{1, 0})),
                    InvalidInputError);
}

TEST_CASE("regular fibers sum directly") {
    const auto part = fiber_partition({{1, 0}, {0, 1}, {2, 1}});
    for (const Fiber& f : part.fibers) {
        REQUIRE(!f.is_degenerate());
        Complex direct(0.0);
        for (const auto& seq : f.sequences) {
            std::vector<Complex> xs;
            for (const LatticeVector& v : seq) xs.push_back(iota(v, kParams));
            direct += R_n_eval(xs);
        }
        CHECK(std::abs(fiber_sum_regularized(f, kParams) - direct) < 1e-13);
    }
}

TEST_CASE("the (v, -v) fiber sums to exactly 1") {
    // Hand oracle: R_2(x1, x2) + R_2(x2, x1) = 1 identically, so the value
    // at the degenerate point x2 = -x1 is 1.
    const auto part = fiber_partition({{2, -1}, {-2, 1}});
    REQUIRE(part.fibers.size() == 1);
    REQUIRE(part.fibers[0].is_degenerate());
    CHECK(std::abs(fiber_sum_regularized(part.fibers[0], kParams) - Complex(1.0)) < 1e-12);
}

TEST_CASE("degenerate fiber sums match Richardson extrapolation") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 3);  // 3..5
        const auto vs = random_zero_sum_tuple(rng, n, 2);
        const auto part = fiber_partition(vs);
        for (const Fiber& f : part.fibers) {
            const Complex exact = fiber_sum_regularized(f, kParams);
            const std::array<double, 3> eps{1e-2, 1e-3, 1e-4};
            std::array<Complex, 3> samples{};
            for (std::size_t i = 0; i < 3; ++i)
                samples[i] = fiber_sum_at_epsilon(f, kParams, eps[i]);
            const Complex extrap = richardson3(eps, samples);
            CHECK(std::abs(exact - extrap) <= 1e-6 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("f* base cases, commutative collapse, generic agreement") {
    CoefficientEngine eng(kParams);
    CHECK(eng.f_star_n({}) == Complex(1.0));
    CHECK(eng.f_star_n({{5, -7}}) == Complex(1.0));

    // theta = 0: R_vbar is the full constant-1 sum for every tuple.
    const TorusParams flat(0.0, kParams.tau());
    CoefficientEngine eng0(flat);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> d(-2, 2);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        std::vector<LatticeVector> vs;
        for (int i = 0; i < n; ++i) vs.push_back({d(rng), d(rng)});
        CHECK(std::abs(eng0.f_star_n(vs) - Complex(1.0)) < 1e-10);
    }

    // Without degenerate permutations f* is the raw S_n sum, and matches
    // f_n because S(vbar) = S_n.
    int found = 0;
    while (found < 15) {
        std::vector<LatticeVector> vs;
        const int n = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) vs.push_back({d(rng), d(rng)});
        if (has_degenerate_perm(vs)) continue;
        ++found;
        const Complex direct = f_star_direct(vs, kParams);
        CHECK(std::abs(eng.f_star_n(vs) - direct) < 1e-11);
        CHECK(std::abs(eng.f_n(vs) - direct) < 1e-10);
    }
}

TEST_CASE("f* analogue of fncor vanishes on zero-sum tuples") {
    CoefficientEngine eng(kParams);
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 3);  // 3..5
        const auto vs = random_zero_sum_tuple(rng, n, 2);
        Complex sum(0.0);
        for (std::size_t i = 0; i < vs.size(); ++i) {
            std::vector<LatticeVector> rest;
            for (std::size_t j = 0; j < vs.size(); ++j)
                if (j != i) rest.push_back(vs[j]);
            sum += iota(vs[i], kParams) * eng.f_star_n(rest);
        }
        CHECK(std::abs(sum) < 1e-9);
    }
}

TEST_CASE("f and f* are invariant under scaling every iota value") {
    // Degree-0 homogeneity realized through tau: iota scales by j when tau
    // is replaced along the modular orbit; here we check the raw R-sums.
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::vector<LatticeVector> vs{{1, 0}, {0, 1}, {1, 1}};
    const auto part = fiber_partition(vs);
    const Complex c(1.7, -0.4);
    for (const Fiber& f : part.fibers) {
        Complex plain(0.0), scaled(0.0);
        for (const auto& seq : f.sequences) {
            std::vector<Complex> xs, cxs;
            for (const LatticeVector& v : seq) {
                xs.push_back(iota(v, kParams));
                cxs.push_back(c * iota(v, kParams));
            }
            plain += R_n_eval(xs);
            scaled += R_n_eval(cxs);
        }
        CHECK(std::abs(plain - scaled) < 1e-12);
    }
    (void)g;
    (void)rng;
}
