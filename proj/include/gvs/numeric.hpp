#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gvs {

/// Pairwise (cascade) summation. Deterministic for a fixed input order.
double pairwise_sum(std::span<const double> values);

/// Runs body(i) for i in [0, n). Each index is owned by exactly one worker,
/// so results written per index do not depend on the thread count. The first
/// exception thrown by a worker is rethrown after all workers join.
/// Runs serially when n < min_parallel.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned max_threads = 0, std::size_t min_parallel = 64);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

struct AdaptiveOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  unsigned max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (31 points) over [a, b]: the interval
/// with the largest error estimate is bisected until the summed estimate is
/// below max(rel_tol*|I|, abs_tol). Throws ConvergenceError when the
/// interval budget runs out first.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opts = {});

/// Same as integrate_adaptive but splits [a, b] at the given interior points.
double integrate_adaptive_split(const std::function<double(double)>& f, double a, double b,
                                std::span<const double> breaks,
                                const AdaptiveOptions& opts = {});

/// k-th derivative of f at x from central differences at h0, h0/2, ...,
/// combined in a Richardson tableau in h^2. Returns the tableau entry with
/// the smallest estimated error (written to *err when given).
double richardson_derivative(const std::function<double(double)>& f, double x, int k, double h0,
                             double* err = nullptr);

/// Tail of a half-line integral in u = ln t. The log-integrand G is known at
/// three nodes ordered from the truncation point U inwards; it is fitted as
/// c + s u + b e^{u} (left end) or c + s u + b e^{-u} (right end), which is
/// exact for t^s e^{bt} and t^s e^{b/t}. When the curvature term is too large
/// for the series below it is dropped and s comes from the two outer nodes.
struct TailFit {
  double slope = 0.0;                 ///< s; the integrand decays outward iff s > 0 (left) or s < 0 (right)
  double offset = 0.0;                ///< c
  double curvature = 0.0;             ///< b
  double log_integral = 0.0;          ///< ln int_{-inf}^U e^G du (left) or ln int_U^inf e^G du (right)
  bool decays = false;
};
TailFit fit_log_tail(const double (&u)[3], const double (&G)[3], double U, bool left, double min_slope);

/// Reads GVS_GRID_SCALE (default 1). Non-positive or malformed values fall back to 1.
double grid_scale();

/// max(min_value, round(base * grid_scale())).
int scaled_count(int base, int min_value = 1);

}  // namespace gvs
