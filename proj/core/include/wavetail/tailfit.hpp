#ifndef WAVETAIL_TAILFIT_HPP
#define WAVETAIL_TAILFIT_HPP

#include <vector>

namespace wavetail {

/// Local decay exponent gamma(t) = -d ln|phi| / d ln t, least-squares over a
/// short moving window.
struct SlopeSample {
    double t = 0.0;
    double gamma = 0.0;
};

/// Moving-window slopes of ln|phi| against ln t.  window must be odd and
/// >= 3; windows containing zeros of phi are skipped.
std::vector<SlopeSample> local_slopes(const std::vector<double>& t,
                                      const std::vector<double>& phi,
                                      int window = 9);

/// Decay exponent extrapolated to t = infinity: the local slopes of a clean
/// power tail approach their limit like gamma(t) = gamma + drift/t, so a
/// straight-line fit in 1/t removes the leading finite-time correction.
struct GammaFit {
    double gamma = 0.0;
    double drift = 0.0;
    int points = 0;
    double rms = 0.0;  ///< residual scatter of the slope samples
};
GammaFit fit_gamma(const std::vector<double>& t,
                   const std::vector<double>& phi, double t_lo, double t_hi,
                   int window = 9);

/// Amplitude of phi ~ A t^-gamma: least squares of t^gamma phi = A + B/t
/// over the window, again extrapolating the leading correction away.
/// split_disagreement compares A refitted on each half of the window --
/// an honest error bar for the extrapolation.
struct AmplitudeFit {
    double amplitude = 0.0;
    double drift = 0.0;
    int points = 0;
    double split_disagreement = 0.0;
};
AmplitudeFit fit_amplitude(const std::vector<double>& t,
                           const std::vector<double>& phi, double gamma,
                           double t_lo, double t_hi);

/// log2 of the ratio of two amplitudes measured at eps and eps/2: equals
/// the power of eps carried by the tail.  Throws std::domain_error when
/// the amplitudes differ in sign or vanish.
double amplitude_order(double amp_full, double amp_half);

/// Fit window for an observer: starts past the light-cone transient,
/// t_lo = max(2 (r_obs + support_radius), 20), ends at the last sample.
/// Throws std::invalid_argument if that leaves less than half a decade.
struct FitWindow {
    double t_lo = 0.0;
    double t_hi = 0.0;
};
FitWindow choose_window(double r_obs, double support_radius, double t_last);

/// Verdict of measured-against-predicted tail parameters.  The amplitude
/// test is signed: a correct magnitude with the wrong sign fails.
struct TailCheck {
    double gamma_measured = 0.0, gamma_predicted = 0.0, gamma_rel_err = 0.0;
    double amp_measured = 0.0, amp_predicted = 0.0, amp_rel_err = 0.0;
    bool gamma_ok = false, amp_ok = false, ok = false;
};
TailCheck compare_tail(double gamma_measured, double amp_measured,
                       double gamma_predicted, double amp_predicted,
                       double tol_gamma = 0.02, double tol_amp = 0.10);

/// Local decay exponent on the most recent window whose samples all stay
/// above 10x the given floor; +infinity when the signal never re-emerges
/// (the reading for a series with no tail at all).
double latest_decay_slope(const std::vector<double>& t,
                          const std::vector<double>& phi, double floor,
                          int window = 9);

}  // namespace wavetail

#endif
