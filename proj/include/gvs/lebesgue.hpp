#pragma once

// Modulars and Luxemburg norms on L^{p(.)}(gamma_d) and L^{q(.)}((0, inf), dt/t).
//
// Functions are represented by their values at the nodes of a
// DiscreteMeasure. On half-line measures the truncated ends may be closed
// by an exponential-in-ln(t) tail fitted to the two outermost nodes, used
// only when the integrand decays outward there (log-slope >= kMinTailSlope);
// otherwise the integral is truncated.

#include <functional>
#include <span>
#include <vector>

#include "gvs/exponent.hpp"
#include "gvs/hermite.hpp"
#include "gvs/quadrature.hpp"

namespace gvs {

inline constexpr double kMinTailSlope = 0.05;

struct NormResult {
  double value = 0.0;
  double modular_at_value = 0.0;  ///< rho(f / value); 1 up to tolerance when value > 0
  int iterations = 0;
};

struct NormOptions {
  double rel_tol = 1e-10;
  int max_iterations = 200;
};

/// rho(f) = int |f|^{p} dm for node values f and exponent values p.
/// Throws DomainError on NaN input or size mismatch.
double modular(std::span<const double> f, std::span<const double> p, const DiscreteMeasure& m);
double modular(std::span<const double> f, const ExponentFunction& p, const DiscreteMeasure& m);
double modular(const PointFunction& f, const ExponentFunction& p, const DiscreteMeasure& m);

/// inf{lambda > 0 : rho(f / lambda) <= 1}. lambda -> rho(f/lambda) is a sum
/// of terms c_i lambda^{-p_i}, so ln rho is convex and decreasing in
/// ln lambda; the root is found by Newton from the left inside a bracket,
/// with bisection as the fallback.
NormResult luxemburg_norm(std::span<const double> f, std::span<const double> p,
                          const DiscreteMeasure& m, const NormOptions& opts = {});
NormResult luxemburg_norm(std::span<const double> f, const ExponentFunction& p,
                          const DiscreteMeasure& m, const NormOptions& opts = {});
NormResult luxemburg_norm(const PointFunction& f, const ExponentFunction& p,
                          const DiscreteMeasure& m, const NormOptions& opts = {});

using HalfLineFunction = std::function<double(double)>;

struct ConvergedNorm {
  NormResult norm;
  LogGridSpec spec;   ///< resolution at which the change fell below tolerance
  double last_change = 0.0;
};

/// ||f||_{q(.), dt/t}, doubling the panel count until the relative change is
/// below rel_change. Throws ConvergenceError after max_doublings.
ConvergedNorm logtime_norm_converged(const HalfLineFunction& f, const ExponentFunction& q,
                                     LogGridSpec spec = LogGridSpec::defaults(),
                                     double rel_change = 1e-6, int max_doublings = 6);

struct NormPair {
  double logtime = 0.0;   ///< ||f||_{q(.), dt/t}
  double lebesgue = 0.0;  ///< ||t^{-1/q(.)} f||_{q(.), dt}
};

/// Both sides of ||f||_{q,dt/t} = ||t^{-1/q} f||_{q,dt}; the right side uses
/// Gauss-Legendre in t on the same panels.
NormPair logtime_norm_identity_check(const HalfLineFunction& f, const ExponentFunction& q,
                                     const LogGrid& grid);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  ///< lhs / rhs, 0 when both vanish
  bool holds = true;   ///< lhs <= rhs + tol
};

/// ||fg||_{p} <= 2 ||f||_{q} ||g||_{r} with 1/p = 1/q + 1/r. Throws
/// DomainError when the derived p drops below 1 at some node.
InequalityReport holder_check(std::span<const double> f, std::span<const double> g,
                              const ExponentFunction& q, const ExponentFunction& r,
                              const DiscreteMeasure& m, double tol = 1e-9);

/// Kernel F(x, y) on outer x inner nodes.
using ProductFunction = std::function<double(std::span<const double>, std::span<const double>)>;

/// ||int F(., y) dnu(y)||_{p, outer} <= 4 int ||F(., y)||_{p, outer} dnu(y).
/// The inner integral is the plain weighted node sum of `inner`.
InequalityReport minkowski_check(const ProductFunction& F, const ExponentFunction& p,
                                 const DiscreteMeasure& outer, const DiscreteMeasure& inner,
                                 double tol = 1e-9);

struct ConjugateBound {
  double lower_bound = 0.0;  ///< max over candidates of int |f||g| with ||g||_{p'} = 1
  double norm = 0.0;         ///< ||f||_{p}
  double ratio = 0.0;        ///< lower_bound / norm
  bool holds = true;         ///< lower_bound <= 2 ||f|| + tol
};

/// Sampled lower bound for the associate norm. Candidates are rescaled to
/// unit p'-norm. Throws DomainError for no candidates or p_minus == 1.
ConjugateBound conjugate_lower_bound(std::span<const double> f, const ExponentFunction& p,
                                     const DiscreteMeasure& m,
                                     const std::vector<std::vector<double>>& candidates,
                                     double tol = 1e-9);

}  // namespace gvs
