#ifndef WAVETAIL_EVOLVER_HPP
#define WAVETAIL_EVOLVER_HPP

#include "wavetail/wavedata.hpp"

#include <vector>

namespace wavetail {

/// Time series of the field and its time derivative at one (interpolated)
/// observation radius.
struct ObserverSeries {
    double r_obs = 0.0;
    std::vector<double> t;
    std::vector<double> phi;
    std::vector<double> dphi_dt;
};

struct EvolveOptions {
    bool linear_only = false;   ///< drop every source term (free evolution)
    bool track_energy = false;  ///< sample the energy functional
};

struct EvolveResult {
    double eps = 0.0;
    double dt = 0.0;
    long long steps = 0;
    std::vector<ObserverSeries> observers;
    std::vector<double> energy_t;  ///< non-empty only with track_energy
    std::vector<double> energy;
};

/// Method-of-lines evolution of
///
///   phi_tt = phi_rr + (2l+2)/r phi_r + sum_k c_k phi^p_k
///            (alpha_k phi_t + beta_k phi_r)^q_k
///
/// from data eps * (phi0, d_t phi0)|_{t=0} on a uniform radial grid:
/// fourth-order centred differences with even reflection through the
/// origin, the regularised operator (2l+3) phi_rr at r = 0, a frozen
/// outer band (legitimate because validated configs keep the light cone
/// away from it), and the classic fourth-order Runge-Kutta step with
/// dt = cfl * dr.  Observer series are read off by quintic Lagrange
/// interpolation in radius every round(sample_dt/dt) steps.
///
/// The energy functional (with track_energy)
///
///   E = int_0^r_out [ (phi_t^2 + phi_r^2)/2
///       - sum_{k: q_k = 0} c_k phi^(p_k+1)/(p_k+1) ] r^(2l+2) dr
///
/// is exactly conserved by the continuum flow when every term has q = 0;
/// its drift measures the integrator, with phi_r taken at sixth order so
/// the measurement error stays below the drift being measured.
///
/// Throws std::invalid_argument on invalid configs and std::runtime_error
/// if the state stops being finite.
EvolveResult evolve(const SimulationConfig& config, double eps,
                    const EvolveOptions& options = {});

/// (plus - minus)/2 - eps * lin, pointwise: removes every even power of
/// eps and the order-eps free wave, leaving eps^3 A3 + eps^5 A5 + ...
/// The inputs must share the sampling grid and observation radius.
ObserverSeries isolate_odd_nonlinear(const ObserverSeries& plus,
                                     const ObserverSeries& minus,
                                     const ObserverSeries& lin, double eps);

/// (plus + minus)/2, pointwise: even powers eps^2 A2 + eps^4 A4 + ...
ObserverSeries isolate_even(const ObserverSeries& plus,
                            const ObserverSeries& minus);

}  // namespace wavetail

#endif
