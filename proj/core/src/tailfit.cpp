#include "wavetail/tailfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavetail {
namespace {

// least squares y = intercept + slope * x
struct Line {
    double intercept = 0.0;
    double slope = 0.0;
};

Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate x");
    Line ln;
    ln.slope = sxy / sxx;
    ln.intercept = my - ln.slope * mx;
    return ln;
}

void check_series(const std::vector<double>& t, const std::vector<double>& phi,
                  int window) {
    if (t.size() != phi.size())
        throw std::invalid_argument("tailfit: t and phi sizes differ");
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("tailfit: window must be odd and >= 3");
}

Line amplitude_line(const std::vector<double>& t,
                    const std::vector<double>& phi, double gamma, size_t b,
                    size_t e) {
    std::vector<double> x, y;
    x.reserve(e - b);
    y.reserve(e - b);
    for (size_t i = b; i < e; ++i) {
        x.push_back(1.0 / t[i]);
        y.push_back(std::pow(t[i], gamma) * phi[i]);
    }
    return fit_line(x, y);
}

}  // namespace

std::vector<SlopeSample> local_slopes(const std::vector<double>& t,
                                      const std::vector<double>& phi,
                                      int window) {
    check_series(t, phi, window);
    std::vector<SlopeSample> out;
    const int h = window / 2;
    const int n = static_cast<int>(t.size());
    std::vector<double> x(window), y(window);
    for (int c = h; c + h < n; ++c) {
        bool ok = true;
        for (int j = -h; j <= h; ++j) {
            double tv = t[c + j], fv = phi[c + j];
            if (!(tv > 0.0) || fv == 0.0 || !std::isfinite(fv)) {
                ok = false;
                break;
            }
            x[j + h] = std::log(tv);
            y[j + h] = std::log(std::abs(fv));
        }
        if (!ok) continue;
        out.push_back({t[c], -fit_line(x, y).slope});
    }
    return out;
}

GammaFit fit_gamma(const std::vector<double>& t,
                   const std::vector<double>& phi, double t_lo, double t_hi,
                   int window) {
    std::vector<SlopeSample> slopes = local_slopes(t, phi, window);
    std::vector<double> x, y;
    for (const SlopeSample& s : slopes)
        if (s.t >= t_lo && s.t <= t_hi) {
            x.push_back(1.0 / s.t);
            y.push_back(s.gamma);
        }
    if (x.size() < 4)
        throw std::runtime_error(
            "fit_gamma: fewer than 4 usable slope samples in the window");
    Line ln = fit_line(x, y);
    GammaFit out;
    out.gamma = ln.intercept;
    out.drift = ln.slope;
    out.points = static_cast<int>(x.size());
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double res = y[i] - (ln.intercept + ln.slope * x[i]);
        ss += res * res;
    }
    out.rms = std::sqrt(ss / double(x.size()));
    return out;
}

AmplitudeFit fit_amplitude(const std::vector<double>& t,
                           const std::vector<double>& phi, double gamma,
                           double t_lo, double t_hi) {
    check_series(t, phi, 3);
    size_t b = 0, e = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo) b = i + 1;
        if (t[i] <= t_hi) e = i + 1;
    }
    if (e < b + 6)
        throw std::runtime_error(
            "fit_amplitude: fewer than 6 samples in the window");
    Line full = amplitude_line(t, phi, gamma, b, e);
    size_t mid = b + (e - b) / 2;
    Line first = amplitude_line(t, phi, gamma, b, mid);
    Line second = amplitude_line(t, phi, gamma, mid, e);

    AmplitudeFit out;
    out.amplitude = full.intercept;
    out.drift = full.slope;
    out.points = static_cast<int>(e - b);
    double scale = std::max(std::abs(full.intercept),
                            std::numeric_limits<double>::min());
    out.split_disagreement =
        std::abs(first.intercept - second.intercept) / scale;
    return out;
}

double amplitude_order(double amp_full, double amp_half) {
    if (amp_full == 0.0 || amp_half == 0.0)
        throw std::domain_error("amplitude_order: vanishing amplitude");
    double ratio = amp_full / amp_half;
    if (ratio <= 0.0)
        throw std::domain_error("amplitude_order: amplitudes differ in sign");
    return std::log2(ratio);
}

FitWindow choose_window(double r_obs, double support_radius, double t_last) {
    FitWindow w;
    w.t_lo = std::max(2.0 * (r_obs + support_radius), 20.0);
    w.t_hi = t_last;
    if (w.t_hi < w.t_lo * std::sqrt(10.0))
        throw std::invalid_argument(
            "choose_window: series too short for half a decade past the "
            "transient");
    return w;
}

TailCheck compare_tail(double gamma_measured, double amp_measured,
                       double gamma_predicted, double amp_predicted,
                       double tol_gamma, double tol_amp) {
    TailCheck out;
    out.gamma_measured = gamma_measured;
    out.gamma_predicted = gamma_predicted;
    out.amp_measured = amp_measured;
    out.amp_predicted = amp_predicted;
    double gscale = std::max(std::abs(gamma_predicted), 1e-300);
    out.gamma_rel_err = std::abs(gamma_measured - gamma_predicted) / gscale;
    double ascale = std::max(std::abs(amp_predicted), 1e-300);
    // signed comparison: |m - p| / |p| punishes a sign flip with ~200%
    out.amp_rel_err = std::abs(amp_measured - amp_predicted) / ascale;
    out.gamma_ok = out.gamma_rel_err <= tol_gamma;
    out.amp_ok = out.amp_rel_err <= tol_amp;
    out.ok = out.gamma_ok && out.amp_ok;
    return out;
}

double latest_decay_slope(const std::vector<double>& t,
                          const std::vector<double>& phi, double floor,
                          int window) {
    check_series(t, phi, window);
    if (!(floor >= 0.0))
        throw std::invalid_argument("latest_decay_slope: floor must be >= 0");
    const int h = window / 2;
    const int n = static_cast<int>(t.size());
    std::vector<double> x(window), y(window);
    for (int c = n - 1 - h; c >= h; --c) {
        bool live = true;
        for (int j = -h; j <= h; ++j) {
            double fv = phi[c + j];
            if (!(t[c + j] > 0.0) || !std::isfinite(fv) ||
                std::abs(fv) <= 10.0 * floor) {
                live = false;
                break;
            }
            x[j + h] = std::log(t[c + j]);
            y[j + h] = std::log(std::abs(fv));
        }
        if (live) return -fit_line(x, y).slope;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace wavetail
