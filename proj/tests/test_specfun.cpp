#include "wavetail/specfun.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace wavetail;

TEST_CASE("falling factorial") {
    CHECK(falling_factorial(7.5, 0) == 1.0);
    CHECK(falling_factorial(7.5, 3) == doctest::Approx(268.125).epsilon(1e-15));
    CHECK(falling_factorial(3.0, 4) == 0.0);  // passes through zero
    CHECK(falling_factorial(-2.0, 2) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("odd double factorial") {
    CHECK(double_factorial_odd(0) == 1);
    CHECK(double_factorial_odd(1) == 3);
    CHECK(double_factorial_odd(2) == 15);
    CHECK(double_factorial_odd(3) == 105);
    CHECK(double_factorial_odd(4) == 945);
    CHECK(double_factorial_odd(10) == 13749310575LL);
    CHECK_THROWS_AS((void)double_factorial_odd(40), std::overflow_error);
}

TEST_CASE("Legendre polynomials and derivative") {
    // P_3(x) = (5x^3 - 3x)/2, P_3'(x) = (15x^2 - 3)/2
    CHECK(legendre_p(3, 0.5) == doctest::Approx(-0.4375).epsilon(1e-15));
    CHECK(legendre_p_derivative(3, 0.5) ==
          doctest::Approx(0.375).epsilon(1e-15));
    CHECK(legendre_p(0, 0.3) == 1.0);
    CHECK(legendre_p(1, 0.3) == 0.3);
    // endpoint normalisation P_l(1) = 1, P_l(-1) = (-1)^l
    for (int l = 0; l <= 12; ++l) {
        CHECK(legendre_p(l, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(legendre_p(l, -1.0) ==
              doctest::Approx(l % 2 ? -1.0 : 1.0).epsilon(1e-14));
    }
    // slight clamping is tolerated, hard excursions are not
    CHECK(legendre_p(4, 1.0 + 5e-13) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK_THROWS_AS((void)legendre_p(4, 1.01), std::domain_error);
}

TEST_CASE("power expansion in the Legendre basis") {
    // mu^2 = (2 P_2 + P_0)/3, mu^3 = (2 P_3 + 3 P_1)/5
    std::vector<double> c2 = legendre_power_expansion(2);
    REQUIRE(c2.size() == 3);
    CHECK(c2[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(c2[1] == 0.0);
    CHECK(c2[2] == doctest::Approx(2.0 / 3).epsilon(1e-15));
    std::vector<double> c3 = legendre_power_expansion(3);
    REQUIRE(c3.size() == 4);
    CHECK(c3[1] == doctest::Approx(3.0 / 5).epsilon(1e-15));
    CHECK(c3[3] == doctest::Approx(2.0 / 5).epsilon(1e-15));
    // resummation check at a generic point, higher power
    std::vector<double> c7 = legendre_power_expansion(7);
    double mu = 0.37, sum = 0.0;
    for (std::size_t j = 0; j < c7.size(); ++j)
        sum += c7[j] * legendre_p(static_cast<int>(j), mu);
    CHECK(sum == doctest::Approx(std::pow(mu, 7)).epsilon(1e-13));
}

TEST_CASE("terminating hypergeometric series") {
    // 2F1(-2, 1/2; 5/2; 3/10) = 3107/3500 exactly
    CHECK(hyp2f1_terminating(-2.0, 0.5, 2.5, 0.3) ==
          doctest::Approx(3107.0 / 3500.0).epsilon(1e-15));
    CHECK(hyp2f1_terminating(0.0, 3.7, 1.2, 0.9) == 1.0);
    // symmetric in a, b
    CHECK(hyp2f1_terminating(0.5, -3.0, 4.0, 0.7) ==
          doctest::Approx(hyp2f1_terminating(-3.0, 0.5, 4.0, 0.7))
              .epsilon(1e-15));
    CHECK_THROWS_AS((void)hyp2f1_terminating(0.5, 0.7, 1.0, 0.1),
                    std::invalid_argument);
}

TEST_CASE("Gauss-Legendre rules") {
    // an n-point rule integrates degree 2n-1 exactly
    const QuadratureRule& rule = gauss_legendre(12);
    REQUIRE(rule.nodes.size() == 12);
    double s22 = 0.0, s23 = 0.0, w = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        s22 += rule.weights[i] * std::pow(rule.nodes[i], 22);
        s23 += rule.weights[i] * std::pow(rule.nodes[i], 23);
        w += rule.weights[i];
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s22 == doctest::Approx(2.0 / 23.0).epsilon(1e-13));
    CHECK(s23 == doctest::Approx(0.0).epsilon(1e-14));
    // affine panel map
    double cubic = gauss_panel([](double x) { return x * x * x; }, 0.0, 2.0,
                               gauss_legendre(6));
    CHECK(cubic == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("adaptive integration honours breakpoints") {
    // |x - 1/2| has a kink; splitting there makes each panel polynomial
    IntegralResult r = integrate_adaptive(
        [](double x) { return std::abs(x - 0.5); }, {0.0, 0.5, 1.0});
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(r.abs_mass == doctest::Approx(0.25).epsilon(1e-13));
    // cancelling integrand: value ~ 0, mass stays O(1)
    IntegralResult c = integrate_adaptive(
        [](double x) { return std::sin(8.0 * x); },
        {0.0, 3.14159265358979323846 / 4.0});
    CHECK(std::abs(c.value) <= 1e-12);
    CHECK(c.abs_mass > 0.2);
    IntegralResult e =
        integrate_adaptive([](double x) { return std::exp(x); }, {0.0, 1.0});
    CHECK(e.value ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("whole-grid refinement") {
    RefineResult r = integrate_refine(
        [](double x) { return std::cos(3.0 * x); }, {0.0, 1.0, 2.0}, 1e-12);
    CHECK(r.value == doctest::Approx(std::sin(6.0) / 3.0).epsilon(1e-12));
    CHECK(r.level >= 0);
}

TEST_CASE("dense linear solve") {
    std::vector<double> x =
        solve_linear_system({2.0, 1.0, 1.0, 3.0}, {5.0, 10.0});
    REQUIRE(x.size() == 2);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(3.0).epsilon(1e-14));
    // pivoting: leading zero must not break the elimination
    std::vector<double> y =
        solve_linear_system({0.0, 1.0, 1.0, 0.0}, {2.0, 3.0});
    CHECK(y[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(
        (void)solve_linear_system({1.0, 2.0, 2.0, 4.0}, {1.0, 2.0}),
        std::runtime_error);
}
