#include "gvs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gvs/errors.hpp"
#include "gvs/hermite.hpp"

namespace gvs {

int default_hermite_nodes() { return scaled_count(kDefaultHermiteNodes, 8); }

GaussRule gauss_hermite_rule(int n) {
  require(n >= 1, "gauss_hermite_rule: n must be positive");
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = 1.0;
    return rule;
  }
  // Newton on h_n with the classical asymptotic starting values for the
  // largest roots; h_n' = sqrt(2n) h_{n-1}.
  const int m = (n + 1) / 2;
  std::vector<double> roots(m);
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    else if (i == 1)
      z -= 1.14 * std::pow(double(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * roots[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * roots[1];
    else
      z = 2.0 * z - roots[i - 2];
    double hn1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      double prev = 0.0, cur = 1.0;
      for (int k = 0; k < n; ++k) {
        const double next = z * std::sqrt(2.0 / (k + 1)) * cur - std::sqrt(double(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
      }
      hn1 = prev;
      const double dz = cur / (std::sqrt(2.0 * n) * hn1);
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    roots[i] = z;
    hn1 = hermite_1d(n - 1, z);
    // Christoffel weight for the probability measure gamma_1.
    const double w = 1.0 / (n * hn1 * hn1);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[m - 1] = 0.0;
  return rule;
}

GaussianGrid::GaussianGrid(int dim, int nodes_per_axis)
    : dim_(dim), rule_(gauss_hermite_rule(nodes_per_axis)) {
  require(dim >= 1 && dim <= kMaxDimension, "GaussianGrid: dimension must be in [1, 3]");
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= rule_.nodes.size();
  points_.resize(total * dim);
  weights_.resize(total);
  const std::size_t n = rule_.nodes.size();
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    double w = 1.0;
    for (int a = dim - 1; a >= 0; --a) {
      const std::size_t j = rem % n;
      rem /= n;
      points_[i * dim + a] = rule_.nodes[j];
      w *= rule_.weights[j];
    }
    weights_[i] = w;
  }
}

LogGridSpec LogGridSpec::defaults() {
  LogGridSpec s;
  s.panels = scaled_count(s.panels, 8);
  return s;
}

LogGridSpec LogGridSpec::doubled_resolution() const {
  LogGridSpec s = *this;
  s.panels *= 2;
  return s;
}

LogGridSpec LogGridSpec::doubled_truncation() const {
  LogGridSpec s = *this;
  const double lo = std::log(t_min), hi = std::log(t_max);
  const double new_lo = lo < 0 ? 2.0 * lo : lo - (hi - lo) / 2;
  const double new_hi = hi > 0 ? 2.0 * hi : hi + (hi - lo) / 2;
  s.t_min = std::exp(new_lo);
  s.t_max = std::exp(new_hi);
  s.panels = static_cast<int>(std::ceil(panels * (new_hi - new_lo) / (hi - lo)));
  return s;
}

LogGrid::LogGrid(const LogGridSpec& spec) : spec_(spec) {
  require(spec.t_min > 0 && spec.t_max > spec.t_min, "LogGrid: need 0 < t_min < t_max");
  require(spec.panels >= 1 && spec.order >= 1, "LogGrid: panels and order must be positive");
  const double lo = std::log(spec.t_min), hi = std::log(spec.t_max);
  for (int i = 0; i <= spec.panels; ++i) edges_.push_back(lo + (hi - lo) * i / spec.panels);
  edges_.back() = hi;
  for (double b : spec.breakpoints) {
    if (!(b > spec.t_min && b < spec.t_max)) continue;
    edges_.push_back(std::log(b));
  }
  std::sort(edges_.begin(), edges_.end());
  // Merge edges closer than a tiny fraction of the panel width.
  const double min_gap = 1e-9 * (hi - lo) / spec.panels;
  std::vector<double> merged{edges_.front()};
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] - merged.back() > min_gap) merged.push_back(edges_[i]);
  merged.back() = hi;
  edges_ = std::move(merged);

  const GaussRule gl = gauss_legendre(spec.order);
  for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
    const double a = edges_[p], b = edges_[p + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int q = 0; q < spec.order; ++q) {
      const double u = mid + half * gl.nodes[q];
      u_.push_back(u);
      t_.push_back(std::exp(u));
      w_.push_back(half * gl.weights[q]);
    }
  }
}

DiscreteMeasure DiscreteMeasure::gaussian(const GaussianGrid& grid) {
  DiscreteMeasure m;
  m.kind_ = MeasureKind::gaussian;
  m.dim_ = grid.dim();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto p = grid.point(i);
    m.points_.insert(m.points_.end(), p.begin(), p.end());
  }
  m.weights_.assign(grid.weights().begin(), grid.weights().end());
  return m;
}

DiscreteMeasure DiscreteMeasure::logtime(const LogGrid& grid) {
  DiscreteMeasure m;
  m.kind_ = MeasureKind::logtime;
  m.points_.assign(grid.t().begin(), grid.t().end());
  m.weights_.assign(grid.log_weights().begin(), grid.log_weights().end());
  m.u_.assign(grid.u().begin(), grid.u().end());
  m.jac_.assign(grid.size(), 1.0);
  m.u_lo_ = grid.u_lo();
  m.u_hi_ = grid.u_hi();
  m.closure_ = grid.spec().tail_closure;
  return m;
}

DiscreteMeasure DiscreteMeasure::lebesgue(const LogGrid& grid) {
  DiscreteMeasure m;
  m.kind_ = MeasureKind::lebesgue;
  const GaussRule gl = gauss_legendre(grid.order());
  auto edges = grid.panel_edges();
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = std::exp(edges[p]), b = std::exp(edges[p + 1]);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = mid + half * gl.nodes[q];
      m.points_.push_back(t);
      m.weights_.push_back(half * gl.weights[q]);
      m.u_.push_back(std::log(t));
      m.jac_.push_back(t);
    }
  }
  m.u_lo_ = grid.u_lo();
  m.u_hi_ = grid.u_hi();
  m.closure_ = grid.spec().tail_closure;
  return m;
}

std::vector<double> DiscreteMeasure::sample(
    const std::function<double(std::span<const double>)>& f) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = f(point(i));
  return out;
}

std::vector<double> DiscreteMeasure::sample_t(const std::function<double(double)>& f) const {
  require(dim_ == 1, "DiscreteMeasure::sample_t: measure is not one-dimensional");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = f(points_[i]);
  return out;
}

QuadratureContext QuadratureContext::make(int dim, int hermite_nodes, const LogGridSpec& spec) {
  if (hermite_nodes <= 0) hermite_nodes = default_hermite_nodes();
  return QuadratureContext{GaussianGrid(dim, hermite_nodes), LogGrid(spec)};
}

}  // namespace gvs
