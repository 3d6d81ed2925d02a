#include "wavetail/wavedata.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wavetail {

GeneratingFunction::GeneratingFunction(std::vector<BumpComponent> bumps)
    : bumps_(std::move(bumps)) {
    for (const auto& b : bumps_) {
        if (!(b.width > 0.0))
            throw std::invalid_argument("GeneratingFunction: width must be > 0");
        if (b.smoothness < 2)
            throw std::invalid_argument(
                "GeneratingFunction: smoothness must be >= 2");
        breakpoints_.push_back(b.center - b.width);
        breakpoints_.push_back(b.center + b.width);
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end(),
                                   [](double a, double b) {
                                       return std::abs(a - b) <=
                                              1e-13 * (1.0 + std::abs(a));
                                   }),
                       breakpoints_.end());
}

double bump_derivative(const BumpComponent& bump, int k, double x) {
    if (k < 0) throw std::invalid_argument("bump_derivative: k < 0");
    double s = (x - bump.center) / bump.width;
    if (std::abs(s) > 1.0) return 0.0;
    const int m = bump.smoothness;
    if (k > 2 * m) return 0.0;

    // Factored evaluation: d^k/ds^k (1-s^2)^m = (1-s^2)^e Q_k(s) with
    // e = max(m-k, 0) and the polynomial recurrence
    //   Q_{j+1} = (1-s^2) Q_j' - 2 e_j s Q_j   while e_j = m-j > 0,
    //   Q_{j+1} = Q_j'                         afterwards.
    // Keeping the vanishing edge factor explicit preserves full relative
    // accuracy near |s| = 1, where the expanded monomial sum would cancel
    // catastrophically and return noise instead of clean tiny values.
    constexpr int kMaxDegree = 64;
    if (2 * m > kMaxDegree)
        throw std::invalid_argument("bump_derivative: smoothness too large");
    double cur[kMaxDegree + 2] = {0.0};
    double nxt[kMaxDegree + 2] = {0.0};
    cur[0] = 1.0;
    int deg = 0;
    for (int j = 0; j < k; ++j) {
        int e = std::max(m - j, 0);
        int ndeg = (e > 0) ? deg + 1 : deg - 1;
        for (int i = 0; i <= ndeg; ++i) {
            double val = (i + 1 <= deg) ? (i + 1) * cur[i + 1] : 0.0;
            if (e > 0 && i >= 1) val -= (i - 1 + 2.0 * e) * cur[i - 1];
            nxt[i] = val;
        }
        for (int i = 0; i <= std::max(deg, ndeg); ++i)
            cur[i] = (i <= ndeg) ? nxt[i] : 0.0;
        deg = ndeg;
    }
    double q = 0.0;
    for (int i = deg; i >= 0; --i) q = q * s + cur[i];
    double edge = (1.0 - s) * (1.0 + s);
    double val = q;
    for (int i = 0; i < std::max(m - k, 0); ++i) val *= edge;
    // chain rule for x = x0 + w*s
    return bump.amplitude * val / std::pow(bump.width, k);
}

double GeneratingFunction::derivative(int k, double x) const {
    double sum = 0.0;
    for (const auto& b : bumps_) sum += bump_derivative(b, k, x);
    return sum;
}

std::pair<double, double> GeneratingFunction::support() const {
    if (bumps_.empty())
        throw std::logic_error("GeneratingFunction: no bumps");
    return {breakpoints_.front(), breakpoints_.back()};
}

double GeneratingFunction::support_radius() const {
    auto [lo, hi] = support();
    return std::max(std::abs(lo), std::abs(hi));
}

int GeneratingFunction::min_smoothness() const {
    if (bumps_.empty())
        throw std::logic_error("GeneratingFunction: no bumps");
    int m = bumps_.front().smoothness;
    for (const auto& b : bumps_) m = std::min(m, b.smoothness);
    return m;
}

GeneratingFunction GeneratingFunction::scaled(double lambda) const {
    auto bumps = bumps_;
    for (auto& b : bumps) b.amplitude *= lambda;
    return GeneratingFunction(bumps);
}

void validate_term(const NonlinearityTerm& term) {
    if (term.p < 0 || term.q < 0)
        throw std::invalid_argument("NonlinearityTerm: p and q must be >= 0");
    if (term.p + term.q < 2)
        throw std::invalid_argument("NonlinearityTerm: p + q must be >= 2");
}

std::vector<std::string> validate_config(const SimulationConfig& config) {
    std::vector<std::string> warnings;
    if (config.dim.l < 1)
        throw std::invalid_argument("config: l must be >= 1");
    if (config.profile.empty())
        throw std::invalid_argument("config: profile needs at least one bump");
    if (config.profile.min_smoothness() < config.dim.l + 3)
        throw std::invalid_argument(
            "config: bump smoothness must be >= l + 3 = " +
            std::to_string(config.dim.l + 3));
    for (const auto& term : config.terms) validate_term(term);

    const GridConfig& g = config.grid;
    if (!(g.dr > 0.0)) throw std::invalid_argument("config: grid.dr must be > 0");
    if (!(g.t_max > 0.0))
        throw std::invalid_argument("config: grid.t_max must be > 0");
    if (!(g.cfl > 0.0 && g.cfl <= 1.0))
        throw std::invalid_argument("config: grid.cfl must be in (0, 1]");
    if (g.fd_order != 4)
        throw std::invalid_argument("config: only fd_order = 4 is implemented");
    if (!(g.sample_dt > 0.0))
        throw std::invalid_argument("config: grid.sample_dt must be > 0");

    double R = config.profile.support_radius();
    double max_obs = 0.0;
    for (double r : config.observers) {
        if (!(r > 0.0))
            throw std::invalid_argument("config: observers must be at r > 0");
        max_obs = std::max(max_obs, r);
    }
    // causal cleanliness: the field vanishes beyond r = t + R, so the outer
    // edge stays silent until the front arrives at t = r_out - R; whatever
    // the edge does afterwards needs another r_out - r_obs to travel back.
    // An observer is clean through t_max iff 2 r_out > t_max + r_obs + R.
    double needed = 0.5 * (max_obs + g.t_max + R);
    if (!config.observers.empty() && g.r_out < needed)
        throw std::invalid_argument(
            "config: r_out = " + std::to_string(g.r_out) +
            " too small for causally clean observers; need >= " +
            std::to_string(needed));
    if (g.r_out <= R)
        throw std::invalid_argument("config: r_out must exceed the support");

    for (double eps : config.epsilons) {
        if (eps == 0.0)
            throw std::invalid_argument("config: epsilon must be nonzero");
        if (std::abs(eps) > 0.3)
            warnings.push_back("epsilon = " + std::to_string(eps) +
                               " is outside the small-amplitude regime");
    }
    return warnings;
}

}  // namespace wavetail
