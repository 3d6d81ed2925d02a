#ifndef WAVETAIL_DUHAMEL_HPP
#define WAVETAIL_DUHAMEL_HPP

#include "wavetail/wavedata.hpp"

#include <vector>

namespace wavetail {

/// Value of a nested quadrature together with the absolute mass of the
/// outer integrand (used to recognise integrals that vanish by
/// cancellation rather than by smallness).
struct IterateResult {
    double value = 0.0;
    double abs_mass = 0.0;
};

/// First Duhamel iterate for the source c phi0^p (alpha d_t phi0 +
/// beta d_r phi0)^q built from the retarded half of the free wave:
///
///   phi1(t,r) = 1/(2^(l+3) r^(l+1)) * int deta int_{t-r}^{t+r} dxi
///               (xi-eta)^(l+1) P_l(mu) S(eta,xi)
///
/// with mu = (r^2 + (xi-t)(t-eta)) / (r (xi-eta)) and the source evaluated
/// at tau = (eta+xi)/2, rho = (xi-eta)/2.  The eta integral runs over the
/// support of the profile because the retarded field at (tau,rho) depends
/// only on tau-rho = eta.
///
/// Requires t - r strictly above the upper support edge: there the advanced
/// half of phi0 vanishes on the whole integration domain, so the retarded
/// restriction is exact, and the integrand is smooth (rho is bounded away
/// from zero).  Earlier observation points need full_source_iterate.
IterateResult first_order_iterate(const GeneratingFunction& a, int l,
                                  const NonlinearityTerm& term, double t,
                                  double r, double rel_tol = 1e-9);

/// Same double integral with the nesting order of the two variables
/// exchanged (xi outermost).  Agreement with first_order_iterate is a
/// nontrivial consistency check of the quadrature, since the two orders
/// refine along entirely different panel hierarchies.
IterateResult first_order_iterate_swapped(const GeneratingFunction& a, int l,
                                          const NonlinearityTerm& term,
                                          double t, double r,
                                          double rel_tol = 1e-9);

/// Moments of the Legendre kernel against inverse powers of the null
/// separation,
///
///   L(l,n; t,r,eta) = int_{t-r}^{t+r} P_l(mu(xi)) (xi-eta)^(-n) dxi,
///
/// which make the xi integral of the iterate explicit for monomial
/// sources.  Closed form (exact, a terminating hypergeometric series):
///
///   L = (-1)^l * 2 ff(n-2,l)/(2l+1)!! * r^(l+1) (t-eta)^(n-l-2) /
///       ((t-eta)^2 - r^2)^(n-1) *
///       F((l+2-n)/2, (l+3-n)/2; l+3/2; (r/(t-eta))^2)
///
/// where ff is the falling factorial; for 2 <= n <= l+1 the moment
/// vanishes identically.  Requires n >= 2 and t - eta > r > 0.
double kernel_moment_closed(int l, int n, double t, double r, double eta);

/// Two leading orders of L for t -> infinity at fixed r, eta:
///   (-1)^l 2 ff(n-2,l)/(2l+1)!! * r^(l+1) t^-(l+n) (1 + (l+n) eta / t).
double kernel_moment_large_t(int l, int n, double t, double r, double eta);

/// L evaluated by direct adaptive quadrature (independent of the closed
/// form; used to validate it).
double kernel_moment_quadrature(int l, int n, double t, double r, double eta,
                                double rel_tol = 1e-12);

/// First Duhamel iterate with the source built from the FULL free wave
/// (retarded plus advanced halves), valid at any observation point with
/// r > 0.  For t - r above the upper support edge it coincides with
/// first_order_iterate; for t - r inside the support it remains finite
/// (the full field is regular on the axis, unlike its retarded half,
/// whose iterate diverges there).  The integration splits into the strip
/// where tau - rho lies in the support (full field) and the strip where
/// only tau + rho does (advanced field squared, reaching tau -> -infinity
/// through a compactifying change of variable).
///
/// t - r must not coincide with a profile breakpoint.
IterateResult full_source_iterate(const GeneratingFunction& a, int l,
                                  const NonlinearityTerm& term, double t,
                                  double r, double rel_tol = 1e-9);

/// Expansion of the full-source iterate of the phi0^2 source along an
/// outgoing null ray u = t - r fixed, v = t + r large, in powers of the
/// null separation v - u = 2r:
///
///   phi1 ~ sum_j coefficients[j] * (v - u)^-exponents[j],
///
/// exponents = {l+1, ..., l+n} with n = v_samples.size(), coefficients
/// solved exactly from the n sampled values.  The coefficient of
/// (v-u)^-(2l+1) tends, as the samples move out, to the slow null remnant
/// h(u) returned by null_tail_coefficient; that remnant is what feeds
/// the second-order late-time tail when the first-order one cancels.
struct NullExpansion {
    std::vector<int> exponents;
    std::vector<double> coefficients;
    double remnant = 0.0;  ///< fitted coefficient of v^-(2l+1)
};
NullExpansion phi1_null_expansion(const GeneratingFunction& a, int l,
                                  double u,
                                  const std::vector<double>& v_samples,
                                  double rel_tol = 1e-9);

}  // namespace wavetail

#endif
