#ifndef WAVETAIL_SPECFUN_HPP
#define WAVETAIL_SPECFUN_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace wavetail {

/// Falling factorial x*(x-1)*...*(x-k+1); k = 0 gives 1.
double falling_factorial(double x, int k);

/// (2l+1)!! for l >= 0.  Throws std::overflow_error once the product leaves
/// the exact int64 range.
std::int64_t double_factorial_odd(int l);

/// Legendre polynomial P_l(mu).  |mu| may exceed 1 by at most 1e-12 (values
/// are clamped); beyond that std::domain_error is thrown.
double legendre_p(int l, double mu);

/// dP_l/dmu, same domain policy as legendre_p.
double legendre_p_derivative(int l, double mu);

/// Coefficients c_j of mu^k = sum_j c_j P_j(mu).  Returned vector has size
/// k+1 with c_j at index j; entries with k-j odd are identically zero.
std::vector<double> legendre_power_expansion(int k);

/// Gauss hypergeometric 2F1(a,b;c;z) restricted to terminating series:
/// a or b must be a nonpositive integer within 1e-9, otherwise
/// std::invalid_argument.  Terms are summed left to right with compensated
/// addition.
double hyp2f1_terminating(double a, double b, double c, double z);

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule built by Newton iteration on P_n from
/// Chebyshev-type initial guesses.  Rules are cached per n; thread-safe.
const QuadratureRule& gauss_legendre(int n);

/// Integral of f over [a, b] with a fixed rule (affine map of the reference
/// nodes, summed in node order).
double gauss_panel(const std::function<double(double)>& f, double a, double b,
                   const QuadratureRule& rule);

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_floor = 0.0;  ///< scale below which refinement stops caring
    int nodes = 15;
    int max_depth = 32;
};

struct IntegralResult {
    double value = 0.0;
    double abs_mass = 0.0;  ///< sum of |leaf panel| values: cancellation scale
};

/// Adaptive composite Gauss-Legendre integration over the panels defined by
/// consecutive breakpoints.  Panels are bisected deterministically (left to
/// right) until the bisected estimate changes by no more than
/// rel_tol * (|panel| + abs_floor).  Throws std::runtime_error when
/// max_depth is exceeded.
IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  std::vector<double> breakpoints,
                                  const AdaptiveOptions& opts = {});

/// Composite Gauss integration with whole-grid refinement: every base panel
/// is split into 2^level pieces, and the level is raised until two successive
/// levels agree to rel_tol relative to max(|I|, abs_floor).  Throws
/// std::runtime_error if max_level is reached without convergence.
struct RefineResult {
    double value = 0.0;
    double abs_mass = 0.0;
    int level = 0;
};
RefineResult integrate_refine(const std::function<double(double)>& f,
                              std::vector<double> breakpoints, double rel_tol,
                              double abs_floor = 0.0, int nodes = 16,
                              int max_level = 14);

/// Solve the dense n x n system m x = b (row-major m, n = b.size()) by
/// Gaussian elimination with partial pivoting.  Meant for the tiny systems
/// of the fitting code; throws std::runtime_error on a singular matrix.
std::vector<double> solve_linear_system(std::vector<double> m,
                                        std::vector<double> b);

}  // namespace wavetail

#endif
