#include "wavetail/duhamel.hpp"

#include "wavetail/freewave.hpp"
#include "wavetail/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace wavetail {
namespace {

double ipow(double x, int n) {
    double acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= x;
    return acc;
}

// mu is analytically confined to [-1, 1] on the integration domain; the
// clamp only removes roundoff spill at the endpoints
double kernel_mu(double t, double r, double eta, double xi) {
    double mu = (r * r + (xi - t) * (t - eta)) / (r * (xi - eta));
    return std::clamp(mu, -1.0, 1.0);
}

double source_value(const GeneratingFunction& a, int l,
                    const NonlinearityTerm& term, double tau, double rho,
                    Phi0Part part) {
    double s = term.c;
    if (term.p > 0) s *= ipow(eval_phi0(a, l, tau, rho, part), term.p);
    if (term.q > 0) {
        Phi0Gradient g = eval_phi0_gradient(a, l, tau, rho, part);
        s *= ipow(term.alpha * g.dt + term.beta * g.dr, term.q);
    }
    return s;
}

// kernel * source at null-coordinate point (eta, xi)
double cell_integrand(const GeneratingFunction& a, int l,
                      const NonlinearityTerm& term, double t, double r,
                      double eta, double xi, Phi0Part part) {
    double tau = 0.5 * (eta + xi);
    double rho = 0.5 * (xi - eta);
    return ipow(xi - eta, l + 1) * legendre_p(l, kernel_mu(t, r, eta, xi)) *
           source_value(a, l, term, tau, rho, part);
}

void check_iterate_args(const GeneratingFunction& a, int l,
                        const NonlinearityTerm& term, double r) {
    if (l < 1) throw std::invalid_argument("iterate: l must be >= 1");
    if (!(r > 0.0)) throw std::invalid_argument("iterate: r must be positive");
    validate_term(term);
    if (a.min_smoothness() < l + 3)
        throw std::invalid_argument("iterate: profile smoothness must be >= "
                                    "l + 3");
}

std::vector<double> clipped_breakpoints(const std::vector<double>& bps,
                                        double lo, double hi) {
    std::vector<double> out;
    out.push_back(lo);
    for (double b : bps)
        if (b > lo && b < hi) out.push_back(b);
    out.push_back(hi);
    return out;
}

double iterate_prefactor(int l, double r) {
    return 1.0 / (std::ldexp(1.0, l + 3) * ipow(r, l + 1));
}

// Run a nested integration twice: a loose pilot pass fixes the global
// scale, then the final pass accepts panels whose error is negligible
// against that scale.  Without the absolute floor the adaptive would chase
// relative accuracy in regions that are absolutely irrelevant (high powers
// of the profile underflow near the support edge) and in the jitter the
// inner quadrature leaves on the outer integrand.
IntegralResult two_pass_nested(
    const std::function<IntegralResult(const AdaptiveOptions&,
                                       const AdaptiveOptions&)>& run,
    double rel_tol) {
    AdaptiveOptions pilot_inner, pilot_outer;
    pilot_inner.rel_tol = 1e-5;
    pilot_outer.rel_tol = 1e-3;
    IntegralResult pilot = run(pilot_inner, pilot_outer);
    double scale = std::max(std::abs(pilot.value), 0.01 * pilot.abs_mass);

    AdaptiveOptions inner_opts, outer_opts;
    inner_opts.rel_tol = 0.1 * rel_tol;
    inner_opts.abs_floor = scale;
    outer_opts.rel_tol = rel_tol;
    outer_opts.abs_floor = scale;
    return run(inner_opts, outer_opts);
}

}  // namespace

IterateResult first_order_iterate(const GeneratingFunction& a, int l,
                                  const NonlinearityTerm& term, double t,
                                  double r, double rel_tol) {
    check_iterate_args(a, l, term, r);
    if (a.empty()) return {};
    const double hi = a.support().second;
    const double u = t - r, v = t + r;
    if (!(u > hi))
        throw std::domain_error(
            "first_order_iterate: t - r must lie above the support edge "
            "(the retarded restriction is only exact there); use "
            "full_source_iterate for earlier points");

    // the xi integrand is smooth: the retarded source depends on xi only
    // through powers of xi - eta and the Legendre kernel
    IntegralResult res = two_pass_nested(
        [&](const AdaptiveOptions& inner_opts,
            const AdaptiveOptions& outer_opts) {
            auto inner = [&](double eta) {
                auto f = [&](double xi) {
                    return cell_integrand(a, l, term, t, r, eta, xi,
                                          Phi0Part::retarded);
                };
                return integrate_adaptive(f, {u, v}, inner_opts).value;
            };
            return integrate_adaptive(inner, a.breakpoints(), outer_opts);
        },
        rel_tol);
    double pref = iterate_prefactor(l, r);
    return {pref * res.value, pref * res.abs_mass};
}

IterateResult first_order_iterate_swapped(const GeneratingFunction& a, int l,
                                          const NonlinearityTerm& term,
                                          double t, double r,
                                          double rel_tol) {
    check_iterate_args(a, l, term, r);
    if (a.empty()) return {};
    const double hi = a.support().second;
    const double u = t - r, v = t + r;
    if (!(u > hi))
        throw std::domain_error(
            "first_order_iterate_swapped: t - r must lie above the support "
            "edge; use full_source_iterate for earlier points");

    IntegralResult res = two_pass_nested(
        [&](const AdaptiveOptions& inner_opts,
            const AdaptiveOptions& outer_opts) {
            auto inner = [&](double xi) {
                auto f = [&](double eta) {
                    return cell_integrand(a, l, term, t, r, eta, xi,
                                          Phi0Part::retarded);
                };
                return integrate_adaptive(f, a.breakpoints(), inner_opts)
                    .value;
            };
            return integrate_adaptive(inner, {u, v}, outer_opts);
        },
        rel_tol);
    double pref = iterate_prefactor(l, r);
    return {pref * res.value, pref * res.abs_mass};
}

double kernel_moment_closed(int l, int n, double t, double r, double eta) {
    if (l < 0 || n < 2)
        throw std::invalid_argument("kernel_moment_closed: need l >= 0 and "
                                    "n >= 2");
    const double T = t - eta;
    if (!(r > 0.0) || !(T > r))
        throw std::invalid_argument("kernel_moment_closed: need "
                                    "t - eta > r > 0");
    double ff = falling_factorial(n - 2.0, l);
    if (ff == 0.0) return 0.0;  // moments with 2 <= n <= l+1 vanish
    double sgn = (l % 2 == 0) ? 1.0 : -1.0;
    double z = (r / T) * (r / T);
    double F = hyp2f1_terminating(0.5 * (l + 2 - n), 0.5 * (l + 3 - n),
                                  l + 1.5, z);
    return sgn * 2.0 * ff / double(double_factorial_odd(l)) * ipow(r, l + 1) *
           std::pow(T, double(n - l - 2)) /
           std::pow(T * T - r * r, double(n - 1)) * F;
}

double kernel_moment_large_t(int l, int n, double t, double r, double eta) {
    if (l < 0 || n < 2)
        throw std::invalid_argument("kernel_moment_large_t: need l >= 0 and "
                                    "n >= 2");
    if (!(r > 0.0) || !(t - eta > r))
        throw std::invalid_argument("kernel_moment_large_t: need "
                                    "t - eta > r > 0");
    double ff = falling_factorial(n - 2.0, l);
    if (ff == 0.0) return 0.0;
    double sgn = (l % 2 == 0) ? 1.0 : -1.0;
    return sgn * 2.0 * ff / double(double_factorial_odd(l)) * ipow(r, l + 1) *
           std::pow(t, double(-(l + n))) * (1.0 + (l + n) * eta / t);
}

double kernel_moment_quadrature(int l, int n, double t, double r, double eta,
                                double rel_tol) {
    if (l < 0 || n < 2)
        throw std::invalid_argument("kernel_moment_quadrature: need l >= 0 "
                                    "and n >= 2");
    if (!(r > 0.0) || !(t - eta > r))
        throw std::invalid_argument("kernel_moment_quadrature: need "
                                    "t - eta > r > 0");
    auto f = [&](double xi) {
        return legendre_p(l, kernel_mu(t, r, eta, xi)) /
               std::pow(xi - eta, double(n));
    };
    return integrate_refine(f, {t - r, t + r}, rel_tol).value;
}

IterateResult full_source_iterate(const GeneratingFunction& a, int l,
                                  const NonlinearityTerm& term, double t,
                                  double r, double rel_tol) {
    check_iterate_args(a, l, term, r);
    if (a.empty()) return {};
    auto [lo, hi] = a.support();
    const double u = t - r, v = t + r;
    if (u > lo && u < hi)
        for (double b : a.breakpoints())
            if (std::abs(u - b) <= 1e-10 * std::max(1.0, std::abs(b)))
                throw std::invalid_argument(
                    "full_source_iterate: t - r coincides with a profile "
                    "breakpoint; the integrand corner would sit on a kink");

    IntegralResult res = two_pass_nested(
        [&, lo, hi](const AdaptiveOptions& inner_opts,
                    const AdaptiveOptions& outer_opts) {
            IntegralResult acc;

            // strip where the source point's outgoing null coordinate eta
            // lies in the support: the full field (both halves) contributes
            const double strip1_top = std::min(u, hi);
            if (strip1_top > lo) {
                std::vector<double> ebps =
                    clipped_breakpoints(a.breakpoints(), lo, strip1_top);
                std::vector<double> xbps =
                    clipped_breakpoints(a.breakpoints(), u, v);
                auto inner = [&](double eta) {
                    auto f = [&](double xi) {
                        return cell_integrand(a, l, term, t, r, eta, xi,
                                              Phi0Part::both);
                    };
                    return integrate_adaptive(f, xbps, inner_opts).value;
                };
                IntegralResult res1 =
                    integrate_adaptive(inner, ebps, outer_opts);
                acc.value += res1.value;
                acc.abs_mass += res1.abs_mass;
            }

            // strip where only the ingoing coordinate xi lies in the
            // support: the advanced half alone contributes, from
            // arbitrarily early times; the substitution eta = xi - 1/sigma
            // compactifies that history, and the transformed integrand
            // extends smoothly to sigma = 0
            const double strip2_top = std::min(u, lo);
            const double x_lo = std::max(u, lo), x_hi = std::min(v, hi);
            if (x_hi > x_lo) {
                std::vector<double> xbps =
                    clipped_breakpoints(a.breakpoints(), x_lo, x_hi);
                auto inner = [&](double xi) {
                    double sigma_max = 1.0 / (xi - strip2_top);
                    auto f = [&](double sigma) {
                        double eta = xi - 1.0 / sigma;
                        return cell_integrand(a, l, term, t, r, eta, xi,
                                              Phi0Part::advanced) /
                               (sigma * sigma);
                    };
                    return integrate_adaptive(f, {0.0, sigma_max},
                                              inner_opts)
                        .value;
                };
                IntegralResult res2 =
                    integrate_adaptive(inner, xbps, outer_opts);
                acc.value += res2.value;
                acc.abs_mass += res2.abs_mass;
            }
            return acc;
        },
        rel_tol);

    double pref = iterate_prefactor(l, r);
    return {pref * res.value, pref * res.abs_mass};
}

NullExpansion phi1_null_expansion(const GeneratingFunction& a, int l,
                                  double u,
                                  const std::vector<double>& v_samples,
                                  double rel_tol) {
    const int n = static_cast<int>(v_samples.size());
    if (l < 1) throw std::invalid_argument("phi1_null_expansion: l >= 1");
    if (n < l + 1)
        throw std::invalid_argument(
            "phi1_null_expansion: need at least l+1 samples to reach the "
            "v^-(2l+1) remnant");
    double v_min = v_samples.front();
    for (double v : v_samples) {
        if (!(v > u))
            throw std::invalid_argument("phi1_null_expansion: samples must "
                                        "satisfy v > u");
        v_min = std::min(v_min, v);
    }

    NonlinearityTerm term;
    term.c = 1.0;
    term.p = 2;
    term.q = 0;

    // the expansion variable is the null separation s = v - u = 2r: that is
    // the basis in which the slow remnant sits in a single coefficient.
    // Expanding in v instead leaks the lower radiation orders into it
    // (1/(v-u)^k = 1/v^k + k u/v^(k+1) + ...).
    //
    // row i: phi1(v_i) * s_i^(l+1) = sum_j chat_j * (s_min / s_i)^j,
    // with coefficients[j] = chat_j * s_min^j; the normalisation keeps the
    // Vandermonde columns comparably scaled
    const double s_min = v_min - u;
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
    std::vector<double> b(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double v = v_samples[i];
        double s = v - u;
        double rr = 0.5 * s, tt = 0.5 * (v + u);
        double phi1 = full_source_iterate(a, l, term, tt, rr, rel_tol).value;
        b[i] = phi1 * ipow(s, l + 1);
        double x = s_min / s, xp = 1.0;
        for (int j = 0; j < n; ++j) {
            m[static_cast<size_t>(i) * n + j] = xp;
            xp *= x;
        }
    }
    std::vector<double> chat = solve_linear_system(std::move(m), std::move(b));

    NullExpansion out;
    out.exponents.resize(n);
    out.coefficients.resize(n);
    double scale = 1.0;
    for (int j = 0; j < n; ++j) {
        out.exponents[j] = l + 1 + j;
        out.coefficients[j] = chat[j] * scale;
        scale *= s_min;
    }
    out.remnant = out.coefficients[l];
    return out;
}

}  // namespace wavetail
