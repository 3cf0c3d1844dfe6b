#pragma once

// Discretizations shared by every module: Gauss-Hermite tensor grids for
// gamma_d and log-spaced Gauss-Legendre panels for the half-line.

#include <functional>
#include <span>
#include <vector>

#include "gvs/numeric.hpp"

namespace gvs {

inline constexpr int kDefaultHermiteNodes = 64;

/// kDefaultHermiteNodes scaled by GVS_GRID_SCALE.
int default_hermite_nodes();

/// Gauss-Hermite nodes and weights for gamma_1, i.e. the e^{-x^2} rule with
/// weights rescaled by pi^{-1/2}. Weights sum to one.
GaussRule gauss_hermite_rule(int n);

/// Tensor-product Gauss-Hermite rule for gamma_d, d in [1, 3].
class GaussianGrid {
 public:
  explicit GaussianGrid(int dim = 1, int nodes_per_axis = kDefaultHermiteNodes);

  int dim() const { return dim_; }
  int nodes_per_axis() const { return static_cast<int>(rule_.nodes.size()); }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(points_).subspan(i * dim_, dim_);
  }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  const GaussRule& axis_rule() const { return rule_; }

 private:
  int dim_;
  GaussRule rule_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

struct LogGridSpec {
  double t_min = 1e-4;
  double t_max = 1e3;
  int panels = 400;
  int order = 4;
  /// Extra panel edges, e.g. jump points of indicator functions.
  std::vector<double> breakpoints;
  /// Close the truncated ends with a fitted exponential-in-log-t tail when
  /// the integrand decays outward there.
  bool tail_closure = true;

  /// The default spec with panel count scaled by GVS_GRID_SCALE.
  static LogGridSpec defaults();
  LogGridSpec doubled_resolution() const;
  /// ln t_min and ln t_max doubled (1e-4 -> 1e-8, 1e3 -> 1e6); panel count
  /// grows with the log-range so the panel width is unchanged.
  LogGridSpec doubled_truncation() const;
};

/// Composite Gauss-Legendre panels in u = ln t on [t_min, t_max].
class LogGrid {
 public:
  explicit LogGrid(const LogGridSpec& spec = LogGridSpec::defaults());

  const LogGridSpec& spec() const { return spec_; }
  std::size_t size() const { return t_.size(); }
  std::span<const double> t() const { return t_; }
  std::span<const double> u() const { return u_; }
  /// Weights for dt/t (= du).
  std::span<const double> log_weights() const { return w_; }
  std::span<const double> panel_edges() const { return edges_; }
  int order() const { return spec_.order; }
  double u_lo() const { return edges_.front(); }
  double u_hi() const { return edges_.back(); }

 private:
  LogGridSpec spec_;
  std::vector<double> edges_;
  std::vector<double> t_, u_, w_;
};

enum class MeasureKind { gaussian, logtime, lebesgue };

/// A measure discretized as weighted nodes: gamma_d on a Gauss-Hermite grid,
/// dt/t on log panels, or dt on the same panels with Gauss-Legendre in t.
/// Half-line kinds also carry u = ln t per node and the end-closure data.
class DiscreteMeasure {
 public:
  static DiscreteMeasure gaussian(const GaussianGrid& grid);
  static DiscreteMeasure logtime(const LogGrid& grid);
  static DiscreteMeasure lebesgue(const LogGrid& grid);

  MeasureKind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(points_).subspan(i * dim_, dim_);
  }
  std::span<const double> weights() const { return weights_; }
  bool half_line() const { return kind_ != MeasureKind::gaussian; }

  // Half-line only.
  std::span<const double> log_coord() const { return u_; }
  /// Density of the measure per unit u at each node: 1 for dt/t, t for dt.
  std::span<const double> u_density() const { return jac_; }
  double u_lo() const { return u_lo_; }
  double u_hi() const { return u_hi_; }
  bool tail_closure() const { return closure_; }

  /// Values of f at the nodes.
  std::vector<double> sample(const std::function<double(std::span<const double>)>& f) const;
  std::vector<double> sample_t(const std::function<double(double)>& f) const;

 private:
  MeasureKind kind_ = MeasureKind::gaussian;
  int dim_ = 1;
  std::vector<double> points_, weights_;
  std::vector<double> u_, jac_;
  double u_lo_ = 0.0, u_hi_ = 0.0;
  bool closure_ = false;
};

struct QuadratureContext {
  GaussianGrid space;
  LogGrid time;

  /// hermite_nodes <= 0 selects default_hermite_nodes().
  static QuadratureContext make(int dim = 1, int hermite_nodes = 0,
                                const LogGridSpec& spec = LogGridSpec::defaults());
};

}  // namespace gvs
