#include "wavetail/evolver.hpp"

#include "wavetail/freewave.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wavetail {
namespace {

double ipow(double x, int n) {
    double acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= x;
    return acc;
}

struct Scheme {
    int l = 1;
    int n = 0;  ///< last grid index; r_i = i * dr, i = 0..n
    double dr = 0.0;
    double inv12dr = 0.0;
    double inv12dr2 = 0.0;
    const std::vector<NonlinearityTerm>* terms = nullptr;
    bool linear_only = false;
};

double source_at(const Scheme& s, double f, double ft, double fr) {
    if (s.linear_only) return 0.0;
    double acc = 0.0;
    for (const NonlinearityTerm& tm : *s.terms) {
        double w = tm.c;
        for (int k = 0; k < tm.p; ++k) w *= f;
        if (tm.q > 0) {
            double g = tm.alpha * ft + tm.beta * fr;
            for (int k = 0; k < tm.q; ++k) w *= g;
        }
        acc += w;
    }
    return acc;
}

// dphi = psi, dpsi = phi_rr + (2l+2)/r phi_r + source; fourth-order
// stencils, even reflection at the origin, frozen outer band {n-1, n}
void rhs(const Scheme& s, const double* phi, const double* psi, double* dphi,
         double* dpsi, double* phir) {
    const int n = s.n;
    const double two_lp2 = 2.0 * s.l + 2.0;

    for (int i = 0; i <= n - 2; ++i) dphi[i] = psi[i];

    phir[0] = 0.0;
    phir[1] = (phi[1] - 8.0 * phi[0] + 8.0 * phi[2] - phi[3]) * s.inv12dr;
    for (int i = 2; i <= n - 2; ++i)
        phir[i] = (phi[i - 2] - 8.0 * phi[i - 1] + 8.0 * phi[i + 1] -
                   phi[i + 2]) *
                  s.inv12dr;

    // r = 0: phi_r vanishes and the radial operator regularises to
    // (2l+3) phi_rr, with phi_rr from the even five-point stencil
    {
        double phirr0 = (-30.0 * phi[0] + 32.0 * phi[1] - 2.0 * phi[2]) *
                        s.inv12dr2;
        dpsi[0] = (2.0 * s.l + 3.0) * phirr0 +
                  source_at(s, phi[0], psi[0], 0.0);
    }
    {
        double phirr1 = (16.0 * phi[0] - 31.0 * phi[1] + 16.0 * phi[2] -
                         phi[3]) *
                        s.inv12dr2;
        dpsi[1] = phirr1 + two_lp2 / s.dr * phir[1] +
                  source_at(s, phi[1], psi[1], phir[1]);
    }
    for (int i = 2; i <= n - 2; ++i) {
        double phirr = (-phi[i - 2] + 16.0 * phi[i - 1] - 30.0 * phi[i] +
                        16.0 * phi[i + 1] - phi[i + 2]) *
                       s.inv12dr2;
        dpsi[i] = phirr + two_lp2 / (i * s.dr) * phir[i] +
                  source_at(s, phi[i], psi[i], phir[i]);
    }

    dphi[n - 1] = dphi[n] = 0.0;
    dpsi[n - 1] = dpsi[n] = 0.0;
}

// sixth-order first derivative used only by the energy diagnostic, so the
// measurement error sits well below the integrator drift it reports
void gradient6(const Scheme& s, const double* phi, double* phir) {
    const int n = s.n;
    auto ref = [&](int j) { return phi[j < 0 ? -j : j]; };
    const double inv60dr = 1.0 / (60.0 * s.dr);
    phir[0] = 0.0;
    for (int i = 1; i <= std::min(2, n - 3); ++i)
        phir[i] = (-ref(i - 3) + 9.0 * ref(i - 2) - 45.0 * ref(i - 1) +
                   45.0 * ref(i + 1) - 9.0 * ref(i + 2) + ref(i + 3)) *
                  inv60dr;
    for (int i = 3; i <= n - 3; ++i)
        phir[i] = (-phi[i - 3] + 9.0 * phi[i - 2] - 45.0 * phi[i - 1] +
                   45.0 * phi[i + 1] - 9.0 * phi[i + 2] + phi[i + 3]) *
                  inv60dr;
    for (int i = std::max(3, n - 2); i <= n; ++i) phir[i] = 0.0;
}

double measure_energy(const Scheme& s, const double* phi, const double* psi,
                      double* phir) {
    gradient6(s, phi, phir);
    double sum = 0.0;
    for (int i = 1; i <= s.n; ++i) {
        double dens = 0.5 * (psi[i] * psi[i] + phir[i] * phir[i]);
        if (!s.linear_only)
            for (const NonlinearityTerm& tm : *s.terms)
                if (tm.q == 0)
                    dens -= tm.c * ipow(phi[i], tm.p + 1) / (tm.p + 1.0);
        double w = (i == s.n) ? 0.5 : 1.0;  // r^(2l+2) kills the i = 0 end
        sum += w * dens * ipow(i * s.dr, 2 * s.l + 2);
    }
    return sum * s.dr;
}

struct Observer {
    double r_obs = 0.0;
    int base = 0;               ///< stencil covers base .. base+4
    double weight[5] = {0.0};
};

}  // namespace

EvolveResult evolve(const SimulationConfig& config, double eps,
                    const EvolveOptions& options) {
    validate_config(config);
    if (eps == 0.0)
        throw std::invalid_argument("evolve: eps must be nonzero");

    const int l = config.dim.l;
    const GridConfig& g = config.grid;
    const int n = static_cast<int>(std::ceil(g.r_out / g.dr - 1e-9));
    if (n < 8) throw std::invalid_argument("evolve: grid too small");

    Scheme s;
    s.l = l;
    s.n = n;
    s.dr = g.dr;
    s.inv12dr = 1.0 / (12.0 * g.dr);
    s.inv12dr2 = 1.0 / (12.0 * g.dr * g.dr);
    s.terms = &config.terms;
    s.linear_only = options.linear_only || config.terms.empty();

    const double dt = g.cfl * g.dr;
    const long long n_steps =
        static_cast<long long>(std::ceil(g.t_max / dt - 1e-9));
    const long long stride =
        std::max<long long>(1, std::llround(g.sample_dt / dt));

    // quintic Lagrange read-out stencils, one per observer
    std::vector<Observer> obs;
    for (double r_obs : config.observers) {
        Observer o;
        o.r_obs = r_obs;
        int center = static_cast<int>(std::lround(r_obs / g.dr));
        o.base = std::clamp(center - 2, 0, n - 6);
        for (int m = 0; m < 5; ++m) {
            double w = 1.0;
            double xm = (o.base + m) * g.dr;
            for (int j = 0; j < 5; ++j) {
                if (j == m) continue;
                double xj = (o.base + j) * g.dr;
                w *= (r_obs - xj) / (xm - xj);
            }
            o.weight[m] = w;
        }
        obs.push_back(o);
    }

    std::vector<double> phi(n + 1), psi(n + 1);
    for (int i = 0; i <= n; ++i) {
        auto [f, ft] = initial_data(config.profile, l, i * g.dr);
        phi[i] = eps * f;
        psi[i] = eps * ft;
    }

    std::vector<double> k1p(n + 1), k1s(n + 1), k2p(n + 1), k2s(n + 1),
        k3p(n + 1), k3s(n + 1), k4p(n + 1), k4s(n + 1), yp(n + 1), ys(n + 1),
        phir(n + 1);

    EvolveResult out;
    out.eps = eps;
    out.dt = dt;
    out.steps = n_steps;
    out.observers.resize(obs.size());
    for (size_t k = 0; k < obs.size(); ++k)
        out.observers[k].r_obs = obs[k].r_obs;

    auto sample = [&](long long step) {
        double t = step * dt;
        for (size_t k = 0; k < obs.size(); ++k) {
            const Observer& o = obs[k];
            double f = 0.0, ft = 0.0;
            for (int m = 0; m < 5; ++m) {
                f += o.weight[m] * phi[o.base + m];
                ft += o.weight[m] * psi[o.base + m];
            }
            if (!std::isfinite(f))
                throw std::runtime_error(
                    "evolve: non-finite field at t = " + std::to_string(t) +
                    " (amplitude too large for this grid?)");
            ObserverSeries& series = out.observers[k];
            series.t.push_back(t);
            series.phi.push_back(f);
            series.dphi_dt.push_back(ft);
        }
        if (options.track_energy) {
            out.energy_t.push_back(t);
            out.energy.push_back(
                measure_energy(s, phi.data(), psi.data(), phir.data()));
        }
    };

    const double half_dt = 0.5 * dt, dt6 = dt / 6.0;
    sample(0);
    for (long long step = 1; step <= n_steps; ++step) {
        rhs(s, phi.data(), psi.data(), k1p.data(), k1s.data(), phir.data());
        for (int i = 0; i <= n; ++i) {
            yp[i] = phi[i] + half_dt * k1p[i];
            ys[i] = psi[i] + half_dt * k1s[i];
        }
        rhs(s, yp.data(), ys.data(), k2p.data(), k2s.data(), phir.data());
        for (int i = 0; i <= n; ++i) {
            yp[i] = phi[i] + half_dt * k2p[i];
            ys[i] = psi[i] + half_dt * k2s[i];
        }
        rhs(s, yp.data(), ys.data(), k3p.data(), k3s.data(), phir.data());
        for (int i = 0; i <= n; ++i) {
            yp[i] = phi[i] + dt * k3p[i];
            ys[i] = psi[i] + dt * k3s[i];
        }
        rhs(s, yp.data(), ys.data(), k4p.data(), k4s.data(), phir.data());
        for (int i = 0; i <= n; ++i) {
            phi[i] += dt6 * (k1p[i] + 2.0 * (k2p[i] + k3p[i]) + k4p[i]);
            psi[i] += dt6 * (k1s[i] + 2.0 * (k2s[i] + k3s[i]) + k4s[i]);
        }
        if (step % stride == 0 || step == n_steps) sample(step);
        if (step % 1024 == 0 && !std::isfinite(phi[n / 2]))
            throw std::runtime_error(
                "evolve: non-finite field at t = " + std::to_string(step * dt) +
                " (amplitude too large for this grid?)");
    }
    return out;
}

namespace {

void require_aligned(const ObserverSeries& x, const ObserverSeries& y,
                     const char* who) {
    if (x.r_obs != y.r_obs || x.t.size() != y.t.size())
        throw std::invalid_argument(std::string(who) +
                                    ": series are not aligned");
}

}  // namespace

ObserverSeries isolate_odd_nonlinear(const ObserverSeries& plus,
                                     const ObserverSeries& minus,
                                     const ObserverSeries& lin, double eps) {
    require_aligned(plus, minus, "isolate_odd_nonlinear");
    require_aligned(plus, lin, "isolate_odd_nonlinear");
    ObserverSeries out;
    out.r_obs = plus.r_obs;
    out.t = plus.t;
    out.phi.resize(plus.phi.size());
    out.dphi_dt.resize(plus.phi.size());
    for (size_t i = 0; i < plus.phi.size(); ++i) {
        out.phi[i] = 0.5 * (plus.phi[i] - minus.phi[i]) - eps * lin.phi[i];
        out.dphi_dt[i] =
            0.5 * (plus.dphi_dt[i] - minus.dphi_dt[i]) - eps * lin.dphi_dt[i];
    }
    return out;
}

ObserverSeries isolate_even(const ObserverSeries& plus,
                            const ObserverSeries& minus) {
    require_aligned(plus, minus, "isolate_even");
    ObserverSeries out;
    out.r_obs = plus.r_obs;
    out.t = plus.t;
    out.phi.resize(plus.phi.size());
    out.dphi_dt.resize(plus.phi.size());
    for (size_t i = 0; i < plus.phi.size(); ++i) {
        out.phi[i] = 0.5 * (plus.phi[i] + minus.phi[i]);
        out.dphi_dt[i] = 0.5 * (plus.dphi_dt[i] + minus.dphi_dt[i]);
    }
    return out;
}

}  // namespace wavetail
