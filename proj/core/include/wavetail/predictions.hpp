#ifndef WAVETAIL_PREDICTIONS_HPP
#define WAVETAIL_PREDICTIONS_HPP

#include "wavetail/wavedata.hpp"

#include <string>
#include <vector>

namespace wavetail {

/// One power-law tail contribution phi ~ amplitude * eps^eps_order * t^-gamma
/// at fixed r, for t well past the light cone of the data.
struct TailTerm {
    int eps_order = 0;
    double gamma = 0.0;
    double amplitude = 0.0;    ///< coefficient * I_value (and powers of c)
    double coefficient = 0.0;  ///< closed-form prefactor
    double I_value = 0.0;      ///< profile integral entering the amplitude
    std::string case_label;
};

/// Full prediction for a single source term: every implemented tail
/// contribution, ordered by eps_order, plus advisory warnings (vanishing
/// coefficients, degenerate profile integrals, ...).
struct TailPrediction {
    int l = 1;
    NonlinearityTerm term;
    std::vector<TailTerm> terms;
    std::vector<std::string> warnings;
};

/// Leading coefficient of the first iterate of a pure phi^p source.
/// Identically zero at p = 2 for every l >= 1.
double coeff_C(int l, int p);

/// Leading coefficient for sources phi^p (alpha phi_t + beta phi_r), p >= 1.
double coeff_D(int l, int p, double alpha, double beta);

/// Leading coefficient for alpha = beta derivative sources,
/// phi^p (alpha (phi_t + phi_r))^q, q >= 1.
double coeff_E(int l, int p, int q, double alpha);

/// Predicted late-time tails of the term's first surviving perturbative
/// orders for the given profile.  Requires l >= 1, smoothness >= l+3, and
/// (alpha, beta) != (0, 0) whenever q >= 1.
TailPrediction predict_tail(const GeneratingFunction& a, int l,
                            const NonlinearityTerm& term);

}  // namespace wavetail

#endif
