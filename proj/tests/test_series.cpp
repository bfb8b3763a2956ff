#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nctorus/random_gen.hpp"
#include "nctorus/series.hpp"

using namespace nctorus;

namespace {

const TorusParams kParams(0.7071067811865476, Complex(-0.35, -0.8));

FormalSeries random_series(std::mt19937_64& rng, int order) {
    RandomElementSpec spec;
    spec.modes = 2;
    spec.trace_free = false;
    FormalSeries s(order);
    s.coeff(0) = AlgebraElement::one();
    for (int k = 1; k <= order; ++k) s.coeff(k) = random_element(rng, spec);
    return s;
}

}  // namespace

TEST_CASE("scalar series arithmetic round trips") {
    ScalarSeries f(std::vector<Complex>{1.0, Complex(0.3, -0.2), Complex(-1.1, 0.4),
                                        Complex(0.05, 0.9), Complex(0.0, -0.3)});
    const ScalarSeries finv = f.inverse();
    const ScalarSeries prod = f * finv;
    CHECK(std::abs(prod[0] - Complex(1.0)) < 1e-14);
    for (int k = 1; k <= prod.order(); ++k) CHECK(std::abs(prod[k]) < 1e-13);

    const ScalarSeries l = f.log();
    CHECK(l.exp().max_abs_diff(f) < 1e-13);

    const ScalarSeries shifted = f.times_t();
    CHECK(shifted[0] == Complex(0.0));
    CHECK(shifted[1] == f[0]);
    CHECK(shifted.divided_by_t().max_abs_diff(f.truncated(f.order() - 1)) == 0.0);
}

TEST_CASE("series product truncates and has 1 as unit") {
    std::mt19937_64 rng(3);
    const FormalSeries x = random_series(rng, 5);
    CHECK(series_mul(x, FormalSeries::one(5), kParams) == x);
    CHECK(series_mul(FormalSeries::one(5), x, kParams) == x);
}

TEST_CASE("(1 + t a) inverse is the geometric series") {
    RandomElementSpec spec;
    spec.modes = 1;
    std::mt19937_64 rng(5);
    const AlgebraElement a = random_element(rng, spec);
    const int N = 6;
    FormalSeries x(N, AlgebraElement::one());
    x.coeff(1) = a;
    const FormalSeries inv = series_inv(x, kParams);
    AlgebraElement pow = AlgebraElement::one();
    for (int k = 0; k <= N; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        CHECK(norm_l1(inv.coeff(k) - sign * pow) < 1e-12);
        pow = mul(pow, a, kParams);
    }
}

TEST_CASE("x times inverse is 1 to order N") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const FormalSeries x = random_series(rng, 5);
        const FormalSeries prod = series_mul(x, series_inv(x, kParams), kParams);
        CHECK(norm_l1(prod.coeff(0) - AlgebraElement::one()) < 1e-13);
        for (int k = 1; k <= 5; ++k) CHECK(norm_l1(prod.coeff(k)) < 1e-10);
    }
}

TEST_CASE("series_inv rejects non-scalar heads") {
    FormalSeries bad(3, AlgebraElement::monomial(1.0, {1, 0}));
    CHECK_THROWS_AS(series_inv(bad, kParams), InvalidInputError);
    FormalSeries zero_head(3);
    CHECK_THROWS_AS(series_inv(zero_head, kParams), InvalidInputError);
    FormalSeries mixed(3, AlgebraElement::one() + AlgebraElement::monomial(0.5, {0, 1}));
    CHECK_THROWS_AS(series_inv(mixed, kParams), InvalidInputError);
}

TEST_CASE("nonscalar mass and mode series") {
    FormalSeries s(2, AlgebraElement::one());
    s.coeff(1) = AlgebraElement::scalar(2.0) + AlgebraElement::monomial(Complex(0.0, 0.25), {1, 1});
    CHECK(series_nonscalar_mass(s) == doctest::Approx(0.25));
    const ScalarSeries at_mode = mode_series(s, {1, 1});
    CHECK(at_mode[1] == Complex(0.0, 0.25));
    CHECK(series_trace(s)[1] == Complex(2.0));
}
