#ifndef WAVETAIL_WAVEDATA_HPP
#define WAVETAIL_WAVEDATA_HPP

#include <string>
#include <utility>
#include <vector>

namespace wavetail {

/// One polynomial bump A * (1 - ((x-x0)/w)^2)^m on [x0-w, x0+w], zero
/// outside.  The bump is C^(m-1) across its support edges.
struct BumpComponent {
    double amplitude = 1.0;
    double center = 0.0;
    double width = 1.0;
    int smoothness = 8;  ///< exponent m
};

/// Compactly supported generating profile: a sum of polynomial bumps.
/// Derivatives of any order are evaluated exactly (piecewise polynomial);
/// they are continuous through order min(m_i) - 1.
class GeneratingFunction {
public:
    GeneratingFunction() = default;
    explicit GeneratingFunction(std::vector<BumpComponent> bumps);

    /// k-th derivative at x (k = 0 is the value itself).
    double derivative(int k, double x) const;

    double operator()(double x) const { return derivative(0, x); }

    /// Convex hull [lo, hi] of the support.  Throws if there are no bumps.
    std::pair<double, double> support() const;

    /// sup |supp(a)|: radius of the support as seen from the origin.
    double support_radius() const;

    /// Sorted, deduplicated support-edge locations of all bumps.  These are
    /// the only points where high derivatives may jump, and they double as
    /// quadrature panel boundaries.
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    /// Smallest smoothness exponent among the bumps.
    int min_smoothness() const;

    const std::vector<BumpComponent>& bumps() const { return bumps_; }
    bool empty() const { return bumps_.empty(); }

    /// Profile with every amplitude multiplied by lambda.
    GeneratingFunction scaled(double lambda) const;

private:
    std::vector<BumpComponent> bumps_;
    std::vector<double> breakpoints_;
};

/// k-th derivative of a single bump at x.  Exact (the bump restricted to its
/// support is a polynomial).
double bump_derivative(const BumpComponent& bump, int k, double x);

/// Spatial dimension d = 2l + 3, l >= 1.
struct DimensionIndex {
    int l = 1;
    int spatial_dim() const { return 2 * l + 3; }
};

/// One source monomial c * phi^p * (alpha phi_t + beta phi_r)^q on the
/// right-hand side of the field equation.
struct NonlinearityTerm {
    double c = 1.0;
    int p = 2;
    int q = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Throws std::invalid_argument unless p, q >= 0 and p + q >= 2.
void validate_term(const NonlinearityTerm& term);

/// Uniform radial grid and integrator controls for the evolver.
struct GridConfig {
    double dr = 1.0 / 32.0;
    double r_out = 0.0;
    double cfl = 0.25;       ///< dt = cfl * dr
    double t_max = 0.0;
    int fd_order = 4;        ///< only 4 is implemented
    double sample_dt = 0.25; ///< observer sampling cadence (time units)
};

/// Complete description of one study: dimension, profile, sources, grid,
/// amplitudes and observer radii.
struct SimulationConfig {
    DimensionIndex dim;
    GeneratingFunction profile;
    std::vector<NonlinearityTerm> terms;
    GridConfig grid;
    std::vector<double> epsilons;
    std::vector<double> observers;
    std::string label;
};

/// Full validation of a config.  Throws std::invalid_argument on hard errors
/// (l < 1, smoothness below l+3, nonpositive grid steps, observers outside
/// the causally clean region, ...), returns human-readable warnings for the
/// soft ones (|eps| > 0.3, ...).
std::vector<std::string> validate_config(const SimulationConfig& config);

}  // namespace wavetail

#endif
