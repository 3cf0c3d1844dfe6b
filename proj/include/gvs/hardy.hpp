#pragma once

// Hardy-type operators on (0, inf) and checks of the weighted inequalities
//   || t^{-r} int_0^t g ||_{q(.),dt/t} <= C || y^{1-r} g ||_{q(.),dt/t}
//   || t^{r} int_t^inf g ||_{q(.),dt/t} <= C || y^{1+r} g ||_{q(.),dt/t}
// Constants are reported, never asserted.

#include <string>
#include <vector>

#include "gvs/exponent.hpp"
#include "gvs/lebesgue.hpp"
#include "gvs/quadrature.hpp"

namespace gvs {

enum class HardySide { lower, upper };

std::string to_string(HardySide side);
HardySide parse_hardy_side(const std::string& text);

struct HardyOptions {
  LogGridSpec spec = LogGridSpec::defaults();
  /// Jump points of g; merged into the panel edges.
  std::vector<double> breakpoints;
  /// Allows an exponential-fit tail beyond t_max for int_t^inf g.
  bool exp_decaying = false;
};

/// Cumulative integrals of g on a log grid: int_0^t g and int_t^inf g at
/// any t in [t_min, t_max]. Panel sums are exact Gauss-Legendre in ln t;
/// a point inside a panel adds a Gauss-Legendre sub-integral.
class HardyIntegrator {
 public:
  HardyIntegrator(HalfLineFunction g, const HardyOptions& opts, std::vector<double> extra_breaks = {});

  const LogGrid& grid() const { return grid_; }
  /// Throws ConvergenceError when g t grows towards 0 (non-integrable).
  double integral_to(double t) const;
  double integral_from(double t) const;
  /// Mass left out beyond t_max when no tail fit was used (power-law estimate,
  /// infinity when g does not decay faster than 1/y; 0 when g(t_max) = 0).
  double truncation_bound() const { return truncation_bound_; }

 private:
  double partial(std::size_t panel, double ua, double ub) const;
  std::size_t panel_of(double u) const;

  HalfLineFunction g_;
  LogGrid grid_;
  std::vector<double> edges_;
  std::vector<double> from_left_;   // int_0^{edge_p} g
  std::vector<double> from_right_;  // int_{edge_p}^inf g
  double truncation_bound_ = 0.0;
  bool left_divergent_ = false;
};

/// t^{-r} int_0^t g. Throws ConvergenceError when the integral diverges at 0.
double hardy_lower(const HalfLineFunction& g, double r, double t, const HardyOptions& opts = {});
/// t^{r} int_t^inf g.
double hardy_upper(const HalfLineFunction& g, double r, double t, const HardyOptions& opts = {});

struct HardyReport {
  double lhs_norm = 0.0;
  double rhs_norm = 0.0;
  double ratio = 0.0;
  double r = 0.0;
  std::string q_desc;
  double truncation_bound = 0.0;
};

/// Both q(.)-norms of the chosen inequality on the logtime grid. Requires
/// q in P_{0,inf} with q(0) > 1 and q(inf) > 1 (HypothesisError otherwise).
/// g = 0 reports ratio 0; rhs = 0 with lhs > 0 throws ConvergenceError.
HardyReport hardy_inequality_check(const HalfLineFunction& g, double r, const ExponentFunction& q,
                                   HardySide side, const HardyOptions& opts = {});

struct HardyFamilyMember {
  std::string name;
  HalfLineFunction g;
  std::vector<double> breakpoints;
  bool exp_decaying = false;
};

/// Twelve test functions: indicators, cut-off powers and exponential types.
const std::vector<HardyFamilyMember>& hardy_test_family();

struct HardyConstant {
  double sup_ratio = 0.0;
  std::string argmax;
  std::vector<HardyReport> reports;
};

/// sup of the ratio over the test family.
HardyConstant hardy_empirical_constant(double r, const ExponentFunction& q, HardySide side,
                                       const LogGridSpec& spec = LogGridSpec::defaults());

}  // namespace gvs
