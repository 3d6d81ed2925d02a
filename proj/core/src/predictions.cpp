#include "wavetail/predictions.hpp"

#include "wavetail/freewave.hpp"
#include "wavetail/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace wavetail {
namespace {

double parity(int l) { return (l % 2 == 0) ? 1.0 : -1.0; }

double dfact(int l) { return double(double_factorial_odd(l)); }

// attach the profile integral for (index, ip, iq) to a term, flagging
// degenerate values
TailTerm make_term(const GeneratingFunction& a, int index, int ip, int iq,
                   double coefficient, int eps_order, double gamma,
                   const char* label, std::vector<std::string>& warnings) {
    TailIntegralResult I = tail_integral_detail(a, index, ip, iq);
    TailTerm term;
    term.eps_order = eps_order;
    term.gamma = gamma;
    term.coefficient = coefficient;
    term.I_value = I.value;
    term.amplitude = coefficient * I.value;
    term.case_label = label;
    if (std::abs(I.value) < std::max(1e-12, 1e-12 * I.abs_mass))
        warnings.push_back(std::string(label) +
                           ": profile integral is degenerately small; the "
                           "predicted tail has no measurable amplitude");
    return term;
}

}  // namespace

double coeff_C(int l, int p) {
    if (l < 1 || p < 2) throw std::invalid_argument("coeff_C: need l>=1, p>=2");
    int e = (l + 1) * (p - 1) - 1;
    return parity(l) * std::ldexp(1.0, e) / dfact(l) *
           falling_factorial((l + 1) * (p - 1) - 2, l);
}

double coeff_D(int l, int p, double alpha, double beta) {
    if (l < 1 || p < 1) throw std::invalid_argument("coeff_D: need l>=1, p>=1");
    double lp1 = l + 1;
    double bracket = (beta - alpha) * (p - 1) / double(p + 1) *
                         (lp1 * (p + 1) - 1) / (lp1 * p - 1) -
                     2.0 * beta;
    return parity(l) * std::ldexp(1.0, (l + 1) * p - 1) / dfact(l) * lp1 *
           falling_factorial(lp1 * p - 1, l) * bracket;
}

double coeff_E(int l, int p, int q, double alpha) {
    if (l < 1 || q < 1 || p < 0)
        throw std::invalid_argument("coeff_E: need l>=1, q>=1, p>=0");
    double sgn = ((l + q) % 2 == 0) ? 1.0 : -1.0;
    int e = (l + 1) * (p + q - 1) + q - 1;
    return sgn * std::pow(alpha, q) * std::ldexp(1.0, e) / dfact(l) *
           std::pow(double(l + 1), q) *
           falling_factorial((l + 1) * (p + q - 1) + q - 2, l);
}

TailPrediction predict_tail(const GeneratingFunction& a, int l,
                            const NonlinearityTerm& term) {
    if (l < 1) throw std::invalid_argument("predict_tail: l must be >= 1");
    validate_term(term);
    if (a.min_smoothness() < l + 3)
        throw std::invalid_argument("predict_tail: profile smoothness must "
                                    "be >= l + 3");
    if (term.q >= 1 && term.alpha == 0.0 && term.beta == 0.0)
        throw std::invalid_argument(
            "predict_tail: q >= 1 with alpha = beta = 0 makes the source "
            "identically zero");

    const int p = term.p, q = term.q;
    const double alpha = term.alpha, beta = term.beta, c = term.c;

    TailPrediction out;
    out.l = l;
    out.term = term;

    if (q == 0 && p == 2) {
        // the first iterate has no tail at all (the coefficient of the
        // quadratic source vanishes for every l); the leading tail appears
        // one order higher, fed by the 1/(v-u)^(2l+1) null remnant of the
        // first iterate
        out.warnings.push_back(
            "p2-second-order: first-order tail vanishes identically; "
            "leading tail enters at eps^3");
        double K = parity(l) * std::ldexp(1.0, 3 * l) /
                   (2.0 * l * (2.0 * l + 1.0)) * c * c;
        out.terms.push_back(make_term(a, l - 1, 1, 2, K, 3, 3.0 * l + 1.0,
                                      "p2-second-order", out.warnings));
    } else if (q == 0) {
        double K = c * coeff_C(l, p);
        out.terms.push_back(make_term(a, l, p, 0, K, p, (l + 1.0) * p - 1.0,
                                      "generic", out.warnings));
    } else if (q == 1 && p == 1 && beta == 0.0) {
        // leading coefficient D vanishes; the surviving tail is second order
        out.warnings.push_back(
            "q1-p1-beta0-second-order: first-order tail vanishes; leading "
            "tail enters at eps^3");
        double K = parity(l) * alpha * alpha * std::ldexp(1.0, 3 * l - 2) *
                   (3.0 * l + 1.0) / (2.0 * l * (2.0 * l + 1.0)) * c * c;
        out.terms.push_back(make_term(a, l, 3, 0, K, 3, 3.0 * l + 2.0,
                                      "q1-p1-beta0-second-order",
                                      out.warnings));
    } else if (q == 1) {
        double K = c * coeff_D(l, p, alpha, beta);
        if (K == 0.0)
            out.warnings.push_back(
                "q1: leading coefficient vanishes for this (alpha, beta); "
                "the true tail is below the implemented order");
        out.terms.push_back(make_term(a, l, p + 1, 0, K, p + 1,
                                      (l + 1.0) * (p + 1.0), "q1",
                                      out.warnings));
    } else if (q == 2 && p == 0) {
        double lfact = 1.0;
        for (int i = 2; i <= l; ++i) lfact *= i;
        double K1 = parity(l) * alpha * beta * std::ldexp(1.0, l + 2) * lfact *
                    std::pow(l + 1.0, 3) / dfact(l) * c;
        if (alpha * beta == 0.0)
            out.warnings.push_back(
                "q2p0-first: first-order coefficient vanishes (alpha*beta = "
                "0)");
        out.terms.push_back(make_term(a, l, 2, 0, K1, 2, 2.0 * l + 3.0,
                                      "q2p0-first", out.warnings));

        double d = alpha - beta;
        double K2 = -parity(l) * d * d * d * d * std::ldexp(1.0, 3 * l) /
                    (2.0 * l * (2.0 * l + 1.0)) * c * c;
        if (d == 0.0)
            out.warnings.push_back(
                "q2p0-second: second-order coefficient vanishes (alpha = "
                "beta)");
        out.terms.push_back(make_term(a, l, 0, 3, K2, 3, 3.0 * l + 1.0,
                                      "q2p0-second", out.warnings));
    } else if (alpha == beta) {
        // q >= 2 with equal derivative weights: the source degenerates to
        // powers of the outgoing null derivative and the tail steepens
        double K = c * coeff_E(l, p, q, alpha);
        out.terms.push_back(make_term(a, l, p + q, 0, K, p + q,
                                      (l + 1.0) * (p + q) + q - 1.0,
                                      "alpha-eq-beta", out.warnings));
    } else {
        double K = c * std::pow(alpha - beta, q) * coeff_C(l, p + q);
        out.terms.push_back(make_term(a, l, p, q, K, p + q,
                                      (l + 1.0) * (p + q) - 1.0, "generic",
                                      out.warnings));
    }
    return out;
}

}  // namespace wavetail
