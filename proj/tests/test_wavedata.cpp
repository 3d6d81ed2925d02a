#include "wavetail/wavedata.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>

using namespace wavetail;

namespace {

// the standard asymmetric two-bump profile used across the test suite
GeneratingFunction standard_profile() {
    return GeneratingFunction{
        {{1.0, 1.0, 0.8, 8}, {-0.6, 1.9, 0.9, 8}}};
}

}  // namespace

TEST_CASE("bump derivatives against exact rational references") {
    // all parameters and evaluation points are exactly representable in
    // binary, so the references (computed with exact rational arithmetic)
    // are the correctly rounded true values
    BumpComponent b{1.25, 1.0, 0.5, 8};
    struct Ref {
        double x;
        int k;
        double value;
    };
    const Ref refs[] = {
        {1.0, 0, 1.25},
        {1.0, 1, 0.0},
        {1.0, 2, -80.0},
        {1.0, 6, -3225600.0},
        {0.75, 0, 0.12514114379882812},
        {0.75, 1, 2.669677734375},
        {0.75, 2, 39.1552734375},
        {0.75, 3, 199.3359375},
        {0.75, 5, -120487.5},
        {0.75, 6, 992250.0},
        // 0.0078125 inside the support edge: the factored evaluation must
        // not lose the tiny values to cancellation
        {1.4921875, 0, 1.0677269308882834e-12},
        {1.4921875, 1, -1.0847433033931486e-09},
        {1.4921875, 2, 9.620730848134026e-07},
        {1.4921875, 3, -0.0007288560255333822},
        {1.4921875, 5, -227.54780520360418},
        {1.4921875, 6, 83148.43738267892},
    };
    for (const Ref& r : refs) {
        CAPTURE(r.x);
        CAPTURE(r.k);
        CHECK(bump_derivative(b, r.k, r.x) ==
              doctest::Approx(r.value).epsilon(5e-13));
    }
    // outside the support everything vanishes
    CHECK(bump_derivative(b, 0, 1.5) == 0.0);
    CHECK(bump_derivative(b, 3, 0.49) == 0.0);
    // beyond the polynomial degree the derivative is identically zero
    CHECK(bump_derivative(b, 17, 1.1) == 0.0);

    BumpComponent low{1.0, 1.0, 0.5, 3};
    CHECK(bump_derivative(low, 0, 0.75) ==
          doctest::Approx(0.421875).epsilon(1e-14));
    CHECK(bump_derivative(low, 2, 0.75) ==
          doctest::Approx(4.5).epsilon(1e-14));
    CHECK(bump_derivative(low, 5, 0.75) ==
          doctest::Approx(11520.0).epsilon(1e-14));
    CHECK(bump_derivative(low, 6, 0.75) ==
          doctest::Approx(-46080.0).epsilon(1e-14));
    CHECK(bump_derivative(low, 7, 0.75) == 0.0);
}

TEST_CASE("bump derivatives against finite differences") {
    BumpComponent b{0.7, 2.0, 1.3, 6};
    const double h = 1e-3;
    for (int k = 0; k <= 4; ++k) {
        for (double x : {1.3, 2.0, 2.4, 2.9}) {
            // 4th-order central difference of the (k)-th derivative
            double fd = (-bump_derivative(b, k, x + 2 * h) +
                         8 * bump_derivative(b, k, x + h) -
                         8 * bump_derivative(b, k, x - h) +
                         bump_derivative(b, k, x - 2 * h)) /
                        (12 * h);
            double ex = bump_derivative(b, k + 1, x);
            CAPTURE(k);
            CAPTURE(x);
            CHECK(fd == doctest::Approx(ex).epsilon(1e-8).scale(
                            std::max(1.0, std::abs(ex))));
        }
    }
}

TEST_CASE("generating function assembles its bumps") {
    GeneratingFunction a = standard_profile();
    CHECK(a.support().first == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(a.support().second == doctest::Approx(2.8).epsilon(1e-14));
    CHECK(a.support_radius() == doctest::Approx(2.8).epsilon(1e-14));
    CHECK(a.min_smoothness() == 8);
    REQUIRE(a.breakpoints().size() == 4);  // 0.2, 1.0, 1.8, 2.8 (sorted)
    CHECK(a.breakpoints().front() == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(a.breakpoints().back() == doctest::Approx(2.8).epsilon(1e-14));

    // the profile is the plain sum of its bumps
    double x = 1.45;
    double direct = bump_derivative(a.bumps()[0], 2, x) +
                    bump_derivative(a.bumps()[1], 2, x);
    CHECK(a.derivative(2, x) == doctest::Approx(direct).epsilon(1e-15));
    CHECK(a(x) == a.derivative(0, x));

    GeneratingFunction s = a.scaled(-2.5);
    CHECK(s.derivative(3, x) ==
          doctest::Approx(-2.5 * a.derivative(3, x)).epsilon(1e-15));
    CHECK(s.support_radius() == a.support_radius());

    CHECK_THROWS_AS((void)GeneratingFunction{}.support(), std::exception);
}

TEST_CASE("derivatives are continuous through order m-1") {
    BumpComponent b{1.0, 0.0, 1.0, 5};
    const double eps = 1e-9;
    for (int k = 0; k <= 4; ++k) {
        double inside = bump_derivative(b, k, 1.0 - eps);
        // the k-th derivative vanishes like eps^(m-k); the slowest case
        // (k = 4) has slope 2^m m! = 3840
        CHECK(std::abs(inside) <= 5000.0 * eps);
        CHECK(bump_derivative(b, k, 1.0 + eps) == 0.0);
    }
    // order m jumps: just inside the edge it approaches a nonzero limit
    CHECK(std::abs(bump_derivative(b, 5, 1.0 - eps)) > 1.0);
}

TEST_CASE("term validation") {
    CHECK_NOTHROW(validate_term({1.0, 2, 0, 0.0, 0.0}));
    CHECK_NOTHROW(validate_term({1.0, 0, 2, 1.0, -1.0}));
    CHECK_THROWS_AS(validate_term({1.0, 1, 0, 0.0, 0.0}),
                    std::invalid_argument);  // p + q < 2
    CHECK_THROWS_AS(validate_term({1.0, -1, 3, 0.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("config validation") {
    SimulationConfig cfg;
    cfg.dim.l = 1;
    cfg.profile = standard_profile();
    cfg.grid.dr = 1.0 / 32;
    cfg.grid.r_out = 20.0;
    cfg.grid.t_max = 30.0;
    cfg.observers = {3.0};
    cfg.epsilons = {0.05};
    CHECK_NOTHROW((void)validate_config(cfg));

    // the field vanishes beyond r = t + R, so the outer edge stays silent
    // until t = r_out - R and its echo needs r_out - r_obs to come back:
    // clean through t_max iff 2 r_out > t_max + r_obs + R
    SimulationConfig echo = cfg;
    echo.grid.t_max = 2.0 * echo.grid.r_out - 3.0 - 2.8 + 0.5;  // just over
    CHECK_THROWS_AS((void)validate_config(echo), std::invalid_argument);
    echo.grid.t_max = 2.0 * echo.grid.r_out - 3.0 - 2.8 - 0.5;  // just under
    CHECK_NOTHROW((void)validate_config(echo));

    SimulationConfig bad = cfg;
    bad.dim.l = 0;
    CHECK_THROWS_AS((void)validate_config(bad), std::invalid_argument);

    // profile smoothness must support l+3 classical derivatives
    SimulationConfig rough = cfg;
    rough.profile = GeneratingFunction{{{1.0, 1.0, 0.8, 3}}};
    CHECK_THROWS_AS((void)validate_config(rough), std::invalid_argument);

    SimulationConfig big = cfg;
    big.epsilons = {0.5};
    std::vector<std::string> warn = validate_config(big);
    CHECK(!warn.empty());
}
