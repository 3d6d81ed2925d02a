#include "wavetail/freewave.hpp"

#include "wavetail/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wavetail {
namespace {

// c_k = (2l-k)! / (k! (l-k)!)
double multipole_weight(int l, int k) {
    double num = 1.0;
    for (int i = 2; i <= 2 * l - k; ++i) num *= i;
    double den = 1.0;
    for (int i = 2; i <= k; ++i) den *= i;
    for (int i = 2; i <= l - k; ++i) den *= i;
    return num / den;
}

double ipow(double x, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= x;
    return p;
}

// The combined field is even in r; with no support edge between t-r and t+r
// both characteristic feet sit on one polynomial piece and the Taylor series
// of a(t-r) - a(t+r) around r = 0 is finite and exact.
bool series_applicable(const GeneratingFunction& a, double t, double r) {
    const auto& bps = a.breakpoints();
    auto it = std::upper_bound(bps.begin(), bps.end(), t - r);
    return it == bps.end() || *it >= t + r;
}

// phi0(t,r) = (-1)^(l+1) 2 sum_{j>=l} [2^l j! / ((j-l)! (2j+1)!)]
//                                     * a^(2j+1+extra)(t) * r^(2(j-l))
// where extra = 1 evaluates d_t phi0.  Setting dr_mode replaces each power
// r^(2(j-l)) by its r-derivative.
double series_phi0(const GeneratingFunction& a, int l, double t, double r,
                   int extra, bool dr_mode) {
    int max_deg = 0;
    for (const auto& b : a.bumps())
        max_deg = std::max(max_deg, 2 * b.smoothness);

    double sign = (l % 2 == 0) ? -2.0 : 2.0;  // (-1)^(l+1) * 2
    // w_l = 2^l l! / (2l+1)!
    double w = std::ldexp(1.0, l);
    for (int i = 2; i <= l; ++i) w *= i;
    for (int i = 2; i <= 2 * l + 1; ++i) w /= i;

    double sum = 0.0, rpow = 1.0;
    for (int j = l; 2 * j + 1 + extra <= max_deg; ++j) {
        if (j > l) {
            w *= double(j) / (double(j - l) * (2.0 * j) * (2.0 * j + 1.0));
            rpow *= r * r;
        }
        double deriv = a.derivative(2 * j + 1 + extra, t);
        if (dr_mode) {
            if (j > l)
                sum += w * deriv * 2.0 * (j - l) * rpow / r;
        } else {
            sum += w * deriv * rpow;
        }
    }
    return sign * sum;
}

}  // namespace

double eval_phi0(const GeneratingFunction& a, int l, double t, double r,
                 Phi0Part part) {
    if (l < 1) throw std::invalid_argument("eval_phi0: l must be >= 1");
    if (part == Phi0Part::both && series_applicable(a, t, r))
        return series_phi0(a, l, t, r, 0, false);
    if (!(r > 0.0))
        throw std::domain_error("eval_phi0: r must be > 0 away from the "
                                "series-evaluable region");

    double u = t - r, v = t + r;
    double rp = ipow(1.0 / r, l + 1);
    double inv2r = 1.0 / (2.0 * r);
    double sum = 0.0;
    for (int k = 0; k <= l; ++k) {
        double ck = multipole_weight(l, k) * ipow(inv2r, l - k);
        if (part != Phi0Part::advanced) sum += ck * a.derivative(k, u);
        if (part != Phi0Part::retarded)
            sum += ((k % 2 == 0) ? -1.0 : 1.0) * ck * a.derivative(k, v);
    }
    return rp * sum;
}

Phi0Gradient eval_phi0_gradient(const GeneratingFunction& a, int l, double t,
                                double r, Phi0Part part) {
    if (l < 1)
        throw std::invalid_argument("eval_phi0_gradient: l must be >= 1");
    if (part == Phi0Part::both && series_applicable(a, t, r)) {
        Phi0Gradient g;
        g.dt = series_phi0(a, l, t, r, 1, false);
        g.dr = series_phi0(a, l, t, r, 0, true);
        return g;
    }
    if (!(r > 0.0))
        throw std::domain_error("eval_phi0_gradient: r must be > 0 away from "
                                "the series-evaluable region");

    double u = t - r, v = t + r;
    double rp = ipow(1.0 / r, l + 1);
    double inv2r = 1.0 / (2.0 * r);
    Phi0Gradient g;
    for (int k = 0; k <= l; ++k) {
        // each term is c_k 2^(k-l) a^(k) r^(k-2l-1); d/dr acts on both factors
        double base = multipole_weight(l, k) * ipow(inv2r, l - k) * rp;
        double power = k - 2 * l - 1;
        if (part != Phi0Part::advanced) {
            g.dt += base * a.derivative(k + 1, u);
            g.dr += base * (-a.derivative(k + 1, u) +
                            power * a.derivative(k, u) / r);
        }
        if (part != Phi0Part::retarded) {
            double s = (k % 2 == 0) ? -1.0 : 1.0;
            g.dt += s * base * a.derivative(k + 1, v);
            g.dr += s * base * (a.derivative(k + 1, v) +
                                power * a.derivative(k, v) / r);
        }
    }
    return g;
}

std::pair<double, double> initial_data(const GeneratingFunction& a, int l,
                                       double r) {
    double f = eval_phi0(a, l, 0.0, r, Phi0Part::both);
    double g = eval_phi0_gradient(a, l, 0.0, r, Phi0Part::both).dt;
    return {f, g};
}

TailIntegralResult tail_integral_detail(const GeneratingFunction& a, int l,
                                        int p, int q) {
    if (l < 0) throw std::invalid_argument("tail_integral: l must be >= 0");
    if (p < 0 || q < 0 || p + q < 1)
        throw std::invalid_argument("tail_integral: need p, q >= 0, p+q >= 1");
    auto f = [&](double x) {
        return ipow(a.derivative(l, x), p) * ipow(a.derivative(l + 1, x), q);
    };
    RefineResult res = integrate_refine(f, a.breakpoints(), 1e-12);
    return TailIntegralResult{res.value, res.abs_mass};
}

double tail_integral(const GeneratingFunction& a, int l, int p, int q) {
    return tail_integral_detail(a, l, p, q).value;
}

double null_tail_coefficient(const GeneratingFunction& a, int l, double u) {
    if (l < 1)
        throw std::invalid_argument("null_tail_coefficient: l must be >= 1");
    auto [lo, hi] = a.support();
    if (u <= lo) return 0.0;
    double cap = std::min(u, hi);
    std::vector<double> pts;
    for (double b : a.breakpoints())
        if (b < cap) pts.push_back(b);
    pts.push_back(cap);
    if (pts.size() < 2) return 0.0;
    auto f = [&](double x) {
        double d = a.derivative(l, x);
        return d * d;
    };
    RefineResult res = integrate_refine(f, pts, 1e-12);
    return -std::ldexp(1.0, 2 * l) / double(l) * res.value;
}

}  // namespace wavetail
