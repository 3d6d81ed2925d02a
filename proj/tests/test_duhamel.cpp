#include "wavetail/duhamel.hpp"

#include "wavetail/freewave.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace wavetail;

namespace {

GeneratingFunction standard_profile() {
    return GeneratingFunction{
        {{1.0, 1.0, 0.8, 8}, {-0.6, 1.9, 0.9, 8}}};
}

NonlinearityTerm make_term(int p, int q, double alpha = 0.0,
                           double beta = 0.0, double c = 1.0) {
    NonlinearityTerm t;
    t.p = p;
    t.q = q;
    t.alpha = alpha;
    t.beta = beta;
    t.c = c;
    return t;
}

}  // namespace

TEST_CASE("kernel moment closed form") {
    // independently derived rational value
    CHECK(kernel_moment_closed(1, 3, 5.0, 2.0, 0.0) ==
          doctest::Approx(-8.0 / 1323.0).epsilon(1e-14));
    CHECK(kernel_moment_quadrature(1, 3, 5.0, 2.0, 0.0) ==
          doctest::Approx(-8.0 / 1323.0).epsilon(1e-10));

    // closed form against direct quadrature across l, n, and geometry
    struct Point {
        double t, r, eta;
    };
    for (int l : {1, 2, 3})
        for (int n : {l + 2, l + 4})
            for (Point pt : {Point{7.5, 2.0, 1.1}, Point{12.0, 3.5, -0.7}}) {
                double closed = kernel_moment_closed(l, n, pt.t, pt.r, pt.eta);
                double quad =
                    kernel_moment_quadrature(l, n, pt.t, pt.r, pt.eta);
                CAPTURE(l);
                CAPTURE(n);
                CAPTURE(pt.t);
                CHECK(quad == doctest::Approx(closed).epsilon(1e-9));
            }
}

TEST_CASE("kernel moments vanish for low powers") {
    for (int l : {2, 3, 4})
        for (int n = 2; n <= l + 1; ++n) {
            CAPTURE(l);
            CAPTURE(n);
            CHECK(kernel_moment_closed(l, n, 6.0, 1.5, 0.3) == 0.0);
        }
    // the quadrature sees the same cancellation, to its own accuracy
    CHECK(std::abs(kernel_moment_quadrature(2, 2, 6.0, 1.5, 0.0)) <= 1e-8);
}

TEST_CASE("kernel moment large-t expansion") {
    double c2 = kernel_moment_closed(1, 3, 1e2, 2.0, 0.4);
    double c4 = kernel_moment_closed(1, 3, 1e4, 2.0, 0.4);
    CHECK(kernel_moment_large_t(1, 3, 1e2, 2.0, 0.4) ==
          doctest::Approx(c2).epsilon(1e-2));
    CHECK(kernel_moment_large_t(1, 3, 1e4, 2.0, 0.4) ==
          doctest::Approx(c4).epsilon(1e-6));
}

TEST_CASE("iterate is independent of the integration order") {
    GeneratingFunction a = standard_profile();
    NonlinearityTerm cubic = make_term(3, 0);
    IterateResult fwd = first_order_iterate(a, 1, cubic, 40.0, 3.0);
    IterateResult swp = first_order_iterate_swapped(a, 1, cubic, 40.0, 3.0);
    CHECK(swp.value == doctest::Approx(fwd.value).epsilon(5e-8));

    // quadratic source: both orders resolve the identical cancellation
    NonlinearityTerm quad = make_term(2, 0);
    IterateResult f2 = first_order_iterate(a, 1, quad, 40.0, 3.0);
    IterateResult s2 = first_order_iterate_swapped(a, 1, quad, 40.0, 3.0);
    CHECK(std::abs(f2.value) <= 1e-9 * f2.abs_mass);
    CHECK(std::abs(s2.value) <= 1e-9 * s2.abs_mass);
}

TEST_CASE("restricted and full iterates agree past the light cone") {
    GeneratingFunction a = standard_profile();
    NonlinearityTerm cubic = make_term(3, 0);
    // u = 6 is beyond the data support, so the advanced part of the source
    // cannot contribute and the restricted form is exact
    IterateResult full = full_source_iterate(a, 1, cubic, 9.0, 3.0, 1e-10);
    IterateResult rest = first_order_iterate(a, 1, cubic, 9.0, 3.0, 1e-10);
    CHECK(full.value == doctest::Approx(rest.value).epsilon(1e-7));
}

TEST_CASE("quadratic first iterate vanishes beyond the light cone") {
    GeneratingFunction a = standard_profile();
    NonlinearityTerm quad = make_term(2, 0);
    IterateResult full = full_source_iterate(a, 1, quad, 9.0, 3.0, 1e-10);
    CHECK(std::abs(full.value) <= 1e-11 * full.abs_mass);
}

TEST_CASE("null expansion isolates the slow remnant") {
    GeneratingFunction a = standard_profile();
    NonlinearityTerm quad = make_term(2, 0);
    std::vector<double> v_samples{200.0, 400.0, 800.0, 1600.0};
    NullExpansion ex = phi1_null_expansion(a, 1, 1.3, v_samples, 1e-8);
    REQUIRE(ex.exponents.size() == 4);
    CHECK(ex.exponents[0] == 2);
    CHECK(ex.exponents[1] == 3);
    CHECK(ex.coefficients[1] == ex.remnant);
    // the remnant equals the integrated-flux coefficient relative to its
    // saturated value (the u-independent advanced-half contribution)
    double ref = null_tail_coefficient(a, 1, 1.3) -
                 null_tail_coefficient(a, 1, 3.0);
    CHECK(ex.remnant == doctest::Approx(ref).epsilon(1e-4));
    CHECK(ex.remnant == doctest::Approx(9.01871723777).epsilon(1e-4));
}

TEST_CASE("iterate input validation") {
    GeneratingFunction a = standard_profile();
    CHECK_THROWS_AS(
        (void)first_order_iterate(a, 0, make_term(3, 0), 10.0, 2.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)first_order_iterate(a, 1, make_term(3, 0), 10.0, 0.0),
        std::invalid_argument);
    GeneratingFunction rough{{{1.0, 0.0, 1.0, 3}}};
    CHECK_THROWS_AS(
        (void)first_order_iterate(rough, 1, make_term(3, 0), 10.0, 2.0),
        std::invalid_argument);
}
