#ifndef WAVETAIL_FREEWAVE_HPP
#define WAVETAIL_FREEWAVE_HPP

#include "wavetail/wavedata.hpp"

#include <utility>

namespace wavetail {

/// Which half of the multipole solution to evaluate.
enum class Phi0Part { retarded, advanced, both };

/// Exact solution of the free radial wave equation in d = 2l+3 spatial
/// dimensions generated by the profile a:
///
///   phi0_ret(t,r) = r^-(l+1) * sum_k  c_k a^(k)(t-r) / (2r)^(l-k)
///   phi0_adv(t,r) = r^-(l+1) * sum_k (-1)^(k+1) c_k a^(k)(t+r) / (2r)^(l-k)
///
/// with c_k = (2l-k)! / (k! (l-k)!).  The sum of the two parts is regular at
/// the origin; single parts require r > 0.  Near the origin the combined
/// field is evaluated through an exact even power series in r (valid while
/// no support edge lies between t-r and t+r), which avoids the catastrophic
/// cancellation of the 1/r^(l+1) representation.
double eval_phi0(const GeneratingFunction& a, int l, double t, double r,
                 Phi0Part part = Phi0Part::both);

struct Phi0Gradient {
    double dt = 0.0;
    double dr = 0.0;
};

/// (d/dt, d/dr) of eval_phi0, same conventions and stability policy.
Phi0Gradient eval_phi0_gradient(const GeneratingFunction& a, int l, double t,
                                double r, Phi0Part part = Phi0Part::both);

/// Cauchy data (f, g) = (phi0, d_t phi0) at t = 0.  Accepts r = 0.
std::pair<double, double> initial_data(const GeneratingFunction& a, int l,
                                       double r);

/// I_l(p,q) = integral of (a^(l))^p (a^(l+1))^q over the support, refined
/// until two successive panel refinements agree to 1e-12 relative.
double tail_integral(const GeneratingFunction& a, int l, int p, int q);

/// tail_integral together with its cancellation mass (integral of the
/// absolute integrand): used to decide whether a value is degenerately zero.
struct TailIntegralResult {
    double value = 0.0;
    double abs_mass = 0.0;
};
TailIntegralResult tail_integral_detail(const GeneratingFunction& a, int l,
                                        int p, int q);

/// Coefficient h(u) = -(2^(2l)/l) * integral_{-inf}^{u} (a^(l))^2 dx of the
/// slowest 1/(v-u)^(2l+1) term in the outgoing null expansion of the first
/// iterate of the phi^2 source.  Nonincreasing in u; zero below the support.
double null_tail_coefficient(const GeneratingFunction& a, int l, double u);

}  // namespace wavetail

#endif
