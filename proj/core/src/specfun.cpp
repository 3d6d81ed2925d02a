#include "wavetail/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace wavetail {

double falling_factorial(double x, int k) {
    if (k < 0) throw std::invalid_argument("falling_factorial: k < 0");
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= x - i;
    return p;
}

std::int64_t double_factorial_odd(int l) {
    if (l < 0) throw std::invalid_argument("double_factorial_odd: l < 0");
    std::int64_t p = 1;
    for (int m = 3; m <= 2 * l + 1; m += 2) {
        if (p > std::numeric_limits<std::int64_t>::max() / m)
            throw std::overflow_error("double_factorial_odd: int64 overflow");
        p *= m;
    }
    return p;
}

namespace {

double clamp_mu(double mu) {
    if (std::abs(mu) > 1.0 + 1e-12)
        throw std::domain_error("legendre: |mu| > 1 + 1e-12, mu = " +
                                std::to_string(mu));
    return std::clamp(mu, -1.0, 1.0);
}

}  // namespace

double legendre_p(int l, double mu) {
    if (l < 0) throw std::invalid_argument("legendre_p: l < 0");
    mu = clamp_mu(mu);
    if (l == 0) return 1.0;
    double pm1 = 1.0, p = mu;
    for (int n = 1; n < l; ++n) {
        double pn1 = ((2 * n + 1) * mu * p - n * pm1) / (n + 1);
        pm1 = p;
        p = pn1;
    }
    return p;
}

double legendre_p_derivative(int l, double mu) {
    if (l < 0) throw std::invalid_argument("legendre_p_derivative: l < 0");
    mu = clamp_mu(mu);
    if (l == 0) return 0.0;
    double omm = (1.0 - mu) * (1.0 + mu);
    if (omm < 1e-14) {
        // P'_l(+-1) = (+-1)^(l+1) * l(l+1)/2
        double v = 0.5 * l * (l + 1);
        return (mu > 0 || l % 2 == 1) ? v : -v;
    }
    return l * (legendre_p(l - 1, mu) - mu * legendre_p(l, mu)) / omm;
}

std::vector<double> legendre_power_expansion(int k) {
    if (k < 0) throw std::invalid_argument("legendre_power_expansion: k < 0");
    std::vector<double> c(k + 1, 0.0);
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    for (int j = k; j >= 0; j -= 2) {
        int m = (k - j) / 2;
        double denom = std::ldexp(1.0, m);  // 2^m
        for (int i = 2; i <= m; ++i) denom *= i;
        for (int i = k + j + 1; i >= 3; i -= 2) denom *= i;
        c[j] = (2 * j + 1) * kfact / denom;
    }
    return c;
}

double hyp2f1_terminating(double a, double b, double c, double z) {
    auto terminating_order = [](double x) -> int {
        double r = std::round(x);
        if (r <= 0.0 && std::abs(x - r) <= 1e-9) return static_cast<int>(-r);
        return -1;
    };
    int na = terminating_order(a), nb = terminating_order(b);
    int nterms;
    if (na >= 0 && nb >= 0)
        nterms = std::min(na, nb);
    else if (na >= 0)
        nterms = na;
    else if (nb >= 0)
        nterms = nb;
    else
        throw std::invalid_argument(
            "hyp2f1_terminating: neither a nor b is a nonpositive integer");

    double sum = 1.0, comp = 0.0, term = 1.0;
    for (int k = 0; k < nterms; ++k) {
        double ck = c + k;
        if (std::abs(ck) < 1e-14)
            throw std::invalid_argument("hyp2f1_terminating: c hits a pole");
        term *= (a + k) * (b + k) / (ck * (k + 1)) * z;
        // Kahan step
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

namespace {

QuadratureRule build_gauss(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p = legendre_p(n, x);
            dp = legendre_p_derivative(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -std::abs(x);  // ascending from the left end
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = std::abs(x);
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    static std::map<int, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
    return it->second;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b,
                   const QuadratureRule& rule) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

namespace {

std::vector<double> clean_breakpoints(std::vector<double> pts) {
    if (pts.size() < 2)
        throw std::invalid_argument("integration: need at least 2 breakpoints");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) {
                              return std::abs(a - b) <=
                                     1e-14 * (1.0 + std::abs(a));
                          }),
              pts.end());
    return pts;
}

void adapt_recurse(const std::function<double(double)>& f, double a, double b,
                   double whole, const QuadratureRule& rule,
                   const AdaptiveOptions& opts, int depth, IntegralResult& acc) {
    double mid = 0.5 * (a + b);
    double left = gauss_panel(f, a, mid, rule);
    double right = gauss_panel(f, mid, b, rule);
    double better = left + right;
    // Accept relative to the larger of: the panel value, the caller's scale
    // floor, or 1% of the panel's cancellation mass.  The last keeps exactly
    // cancelling integrals from refining forever while still bounding the
    // absolute error by rel_tol/100 of the mass.
    double scale = std::max({std::abs(better), opts.abs_floor,
                             0.01 * (std::abs(left) + std::abs(right))});
    if (std::abs(whole - better) <= opts.rel_tol * scale) {
        acc.value += better;
        acc.abs_mass += std::abs(left) + std::abs(right);
        return;
    }
    if (depth >= opts.max_depth)
        throw std::runtime_error("integrate_adaptive: max depth exceeded");
    adapt_recurse(f, a, mid, left, rule, opts, depth + 1, acc);
    adapt_recurse(f, mid, b, right, rule, opts, depth + 1, acc);
}

}  // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  std::vector<double> breakpoints,
                                  const AdaptiveOptions& opts) {
    auto pts = clean_breakpoints(std::move(breakpoints));
    const QuadratureRule& rule = gauss_legendre(opts.nodes);
    IntegralResult acc;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double whole = gauss_panel(f, pts[i], pts[i + 1], rule);
        adapt_recurse(f, pts[i], pts[i + 1], whole, rule, opts, 0, acc);
    }
    return acc;
}

RefineResult integrate_refine(const std::function<double(double)>& f,
                              std::vector<double> breakpoints, double rel_tol,
                              double abs_floor, int nodes, int max_level) {
    auto pts = clean_breakpoints(std::move(breakpoints));
    const QuadratureRule& rule = gauss_legendre(nodes);

    auto level_value = [&](int level, double& mass) {
        int pieces = 1 << level;
        double sum = 0.0;
        mass = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double a = pts[i], h = (pts[i + 1] - pts[i]) / pieces;
            for (int j = 0; j < pieces; ++j) {
                double v = gauss_panel(f, a + j * h, a + (j + 1) * h, rule);
                sum += v;
                mass += std::abs(v);
            }
        }
        return sum;
    };

    double mass0 = 0.0;
    double prev = level_value(0, mass0);
    for (int level = 1; level <= max_level; ++level) {
        double mass = 0.0;
        double cur = level_value(level, mass);
        // same scale policy as integrate_adaptive: exact cancellations are
        // accepted once the change is tiny against the mass
        double scale = std::max({std::abs(cur), abs_floor, 0.01 * mass});
        if (std::abs(cur - prev) <= rel_tol * scale)
            return RefineResult{cur, mass, level};
        prev = cur;
    }
    throw std::runtime_error("integrate_refine: no convergence at max level");
}

std::vector<double> solve_linear_system(std::vector<double> m,
                                        std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    if (m.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("solve_linear_system: shape mismatch");
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(m[row * n + col]) > std::abs(m[piv * n + col]))
                piv = row;
        if (m[piv * n + col] == 0.0)
            throw std::runtime_error("solve_linear_system: singular system");
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m[piv * n + j], m[col * n + j]);
            std::swap(b[piv], b[col]);
        }
        for (int row = col + 1; row < n; ++row) {
            double f = m[row * n + col] / m[col * n + col];
            for (int j = col; j < n; ++j) m[row * n + j] -= f * m[col * n + j];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (int row = n - 1; row >= 0; --row) {
        double s = b[row];
        for (int j = row + 1; j < n; ++j) s -= m[row * n + j] * x[j];
        x[row] = s / m[row * n + row];
    }
    return x;
}

}  // namespace wavetail
