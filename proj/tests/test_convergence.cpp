#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nctorus/convergence.hpp"
#include "nctorus/exponentials.hpp"
#include "nctorus/random_gen.hpp"

using namespace nctorus;

namespace {

const TorusParams kParams(0.7071067811865476, Complex(-0.35, -0.8));

// Brute-force oracle: min |m tau + n| over a box.
double brute_gap(Complex tau, int radius) {
    double best = std::numeric_limits<double>::infinity();
    for (int m = -radius; m <= radius; ++m)
        for (int n = -radius; n <= radius; ++n) {
            if (m == 0 && n == 0) continue;
            best = std::min(best, std::abs(static_cast<double>(m) * tau +
                                           static_cast<double>(n)));
        }
    return best;
}

}  // namespace

TEST_CASE("lattice gap instances and brute-force cross-check") {
    CHECK(lattice_gap(Complex(0.0, -1.0)) == doctest::Approx(1.0));
    CHECK(lattice_gap(Complex(0.0, -2.0)) == doctest::Approx(1.0));  // attained at (0,1)
    const Complex tau(-0.5, -0.5);
    const double g = lattice_gap(tau);
    CHECK(g == doctest::Approx(brute_gap(tau, 8)));
    CHECK(g == doctest::Approx(brute_gap(tau, 16)));  // two radii agree

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(-2.0, -0.05);
    for (int trial = 0; trial < 25; ++trial) {
        const Complex t(re(rng), im(rng));
        CHECK(lattice_gap(t) == doctest::Approx(brute_gap(t, 40)));
    }
    CHECK_THROWS_AS(lattice_gap(Complex(0.0, 1.0)), InvalidInputError);
}

TEST_CASE("e_l_converge: trivial, commutative, and residual checks") {
    const auto trivial = e_l_converge(AlgebraElement::zero(), kParams);
    CHECK(norm_l1(trivial.value - AlgebraElement::one()) == 0.0);
    CHECK(trivial.certificate.ratio == 0.0);
    CHECK(trivial.certificate.invertible);

    // Single mode at tau = -i: r = |c| 2 pi / (2 pi d), result ~ exp(c U_v).
    const TorusParams pi_params(kParams.theta(), Complex(0.0, -1.0));
    const Complex c(0.21, -0.13);
    const AlgebraElement a = AlgebraElement::monomial(c, {0, 1});
    const double tol = 1e-10;
    const auto res = e_l_converge(a, pi_params, tol);
    CHECK(res.certificate.ratio == doctest::Approx(std::abs(c)));
    // Commutative oracle: exp(c U_v) = sum c^k/k! U_{kv}.
    Complex ck(1.0);
    double kfact = 1.0;
    for (int k = 1; k <= 6; ++k) {
        ck *= c;
        kfact *= k;
        CHECK(std::abs(res.value.coeff({0, static_cast<std::int64_t>(k)}) - ck / kfact) <
              10 * tol);
    }
    CHECK(res.certificate.residual < 10 * tol);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        RandomElementSpec spec;
        spec.modes = 2;
        spec.trace_free = true;
        spec.target_l1 = 0.05;
        const AlgebraElement small = random_element(rng, spec);
        const auto r = e_l_converge(small, kParams, tol);
        CHECK(r.certificate.residual < 10 * tol);
        CHECK(r.certificate.tail_bound_l2 < tol);
    }
}

TEST_CASE("e_l_converge rejections") {
    // Nonzero trace.
    CHECK_THROWS_AS(e_l_converge(AlgebraElement::scalar(0.1), kParams), InvalidInputError);
    // Ratio >= 1: large coefficient far from the origin.
    const AlgebraElement big = AlgebraElement::monomial(Complex(50.0, 0.0), {3, 4});
    CHECK_THROWS_AS(e_l_converge(big, kParams), CertificateError);
}

TEST_CASE("agreement with E_l_recursive at t = 1, truncated at the same depth") {
    std::mt19937_64 rng(11);
    RandomElementSpec spec;
    spec.modes = 2;
    spec.trace_free = true;
    spec.target_l1 = 0.03;
    const AlgebraElement a = random_element(rng, spec);
    const auto conv = e_l_converge(a, kParams, 1e-8);
    const FormalSeries formal = E_l_recursive(a, kParams, conv.certificate.terms_used);
    AlgebraElement summed;
    for (int k = 0; k <= formal.order(); ++k) summed = summed + formal.coeff(k);
    CHECK(norm_l1(summed - conv.value) == 0.0);  // same recursion, same floats
}

TEST_CASE("invertibility certificate and Neumann round trip") {
    std::mt19937_64 rng(13);
    RandomElementSpec spec;
    spec.modes = 3;
    spec.trace_free = true;
    spec.target_l1 = 0.04;
    const double tol = 1e-10;
    for (int trial = 0; trial < 6; ++trial) {
        const AlgebraElement a = random_element(rng, spec);
        const auto res = e_l_converge(a, kParams, tol);
        REQUIRE(res.certificate.invertible);
        // ||x - 1||_l1 <= r/(1-r) < 1, so Neumann applies.
        const double r = res.certificate.ratio;
        CHECK(norm_l1(res.value - AlgebraElement::one()) <= r / (1.0 - r) + tol);
        const auto inv = neumann_invert(res.value, kParams, tol);
        CHECK(inv.residual_l1 < 10 * tol);
        // Logarithmic-derivative round trip: x^{-1} delta(x) = delta(a).
        const AlgebraElement log_deriv =
            mul(inv.inverse, delta(res.value, kParams), kParams);
        CHECK(norm_l2(log_deriv - delta(a, kParams)) < 10 * tol);
    }
}

TEST_CASE("monotone refinement: halving tol preserves certified coefficients") {
    std::mt19937_64 rng(17);
    RandomElementSpec spec;
    spec.modes = 2;
    spec.trace_free = true;
    spec.target_l1 = 0.15;
    const AlgebraElement a = random_element(rng, spec);
    const auto coarse = e_l_converge(a, kParams, 1e-6);
    const auto fine = e_l_converge(a, kParams, 5e-7);
    CHECK(norm_l2(coarse.value - fine.value) < 1e-6);
}

TEST_CASE("neumann_invert basics") {
    const auto id = neumann_invert(AlgebraElement::one(), kParams);
    CHECK(norm_l1(id.inverse - AlgebraElement::one()) == 0.0);
    CHECK(id.terms_used == 0);

    // x = 1 + c U_v: inverse is the alternating geometric series.
    const Complex c(0.3, -0.2);
    const LatticeVector v{1, 1};
    const auto geo = neumann_invert(AlgebraElement::one() + AlgebraElement::monomial(c, v),
                                    kParams, 1e-12);
    Complex ck(1.0);
    for (int k = 0; k <= 4; ++k) {
        CHECK(std::abs(geo.inverse.coeff(k * v) - ck) < 1e-11);
        ck *= -c;
    }
    CHECK(geo.residual_l1 < 1e-11);

    CHECK_THROWS_AS(
        neumann_invert(AlgebraElement::one() + AlgebraElement::monomial(1.5, {1, 0}), kParams),
        CertificateError);
}

TEST_CASE("halfplane_converge handles large coefficients") {
    // Single mode with |c| too big for the gap certificate.
    const Complex c(3.7, -1.2);
    const LatticeVector v{1, 0};
    const AlgebraElement a = AlgebraElement::monomial(c, v);
    CHECK_THROWS_AS(e_l_converge(a, kParams), CertificateError);

    const double tol = 1e-10;
    const auto res = halfplane_converge(a, HalfPlaneForm{1, 0}, kParams, tol);
    // Commutative oracle: exp(c U_v).
    Complex ck(1.0);
    double kfact = 1.0;
    for (int k = 1; k <= 8; ++k) {
        ck *= c;
        kfact *= k;
        CHECK(std::abs(res.value.coeff({static_cast<std::int64_t>(k), 0}) - ck / kfact) <
              1e-6 * std::abs(ck / kfact) + 10 * tol);
    }
    CHECK(res.certificate.residual < 10 * tol);
}

TEST_CASE("halfplane_converge: multi-mode support and rejections") {
    const AlgebraElement a = AlgebraElement::monomial(Complex(1.4, 0.3), {1, 0}) +
                             AlgebraElement::monomial(Complex(-0.8, 0.9), {1, 1}) +
                             AlgebraElement::monomial(Complex(0.5, -1.1), {2, 1});
    const double tol = 1e-10;
    const auto res = halfplane_converge(a, HalfPlaneForm{1, 0}, kParams, tol);
    CHECK(res.certificate.residual < 10 * tol);
    CHECK(res.certificate.epsilon == 1.0);

    // h vanishing somewhere on the support is rejected.
    const AlgebraElement bad = a + AlgebraElement::monomial(Complex(0.1, 0.0), {0, 1});
    CHECK_THROWS_AS(halfplane_converge(bad, HalfPlaneForm{1, 0}, kParams), InvalidInputError);
    CHECK_THROWS_AS(halfplane_converge(AlgebraElement::scalar(1.0), HalfPlaneForm{1, 0}, kParams),
                    InvalidInputError);
}

TEST_CASE("find_separating_halfplane") {
    const auto h = find_separating_halfplane({{1, 0}, {1, 1}, {2, 1}});
    REQUIRE(h.has_value());
    CHECK(h->eval({1, 0}) > 0);
    CHECK(h->eval({1, 1}) > 0);
    CHECK(h->eval({2, 1}) > 0);
    // Zero-sum triangle admits no separating half-plane.
    CHECK(!find_separating_halfplane({{1, 0}, {0, 1}, {-1, -1}}).has_value());
}
