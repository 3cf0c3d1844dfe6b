#include "gvs/semigroups.hpp"

#include <algorithm>
#include <cmath>

#include "gvs/errors.hpp"
#include "gvs/numeric.hpp"
#include "gvs/stable.hpp"

namespace gvs {

HermiteExpansion ou_apply(const HermiteExpansion& f, double t) {
  require(t >= 0, "ou_apply: t must be non-negative");
  return f.map_by_order([t](int n) { return std::exp(-t * n); });
}

double mehler_kernel(double t, std::span<const double> x, std::span<const double> y) {
  require(t > 0, "mehler_kernel: t must be positive");
  require(x.size() == y.size(), "mehler_kernel: dimension mismatch");
  const double one_minus = -std::expm1(-2.0 * t);
  const double e1 = std::exp(-t), e2 = std::exp(-2.0 * t);
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx += x[i] * x[i];
    yy += y[i] * y[i];
    xy += x[i] * y[i];
  }
  const double expo = (-e2 * (xx + yy) + 2.0 * e1 * xy) / one_minus;
  return std::exp(expo) / std::pow(one_minus, 0.5 * x.size());
}

double ou_apply_kernel(const PointFunction& f, double t, std::span<const double> x,
                       const GaussianGrid& grid, MehlerForm form) {
  require(t > 0, "ou_apply_kernel: t must be positive");
  require(static_cast<int>(x.size()) == grid.dim(), "ou_apply_kernel: dimension mismatch");
  const double one_minus = -std::expm1(-2.0 * t);
  if (form == MehlerForm::automatic) form = one_minus >= 0.5 ? MehlerForm::direct : MehlerForm::shifted;
  const std::size_t n = grid.size();
  const int d = grid.dim();
  std::vector<double> terms(n);
  if (form == MehlerForm::direct) {
    for (std::size_t i = 0; i < n; ++i) {
      auto y = grid.point(i);
      terms[i] = grid.weight(i) * mehler_kernel(t, x, y) * f(y);
    }
  } else {
    const double a = std::exp(-t), b = std::sqrt(one_minus);
    std::vector<double> y(d);
    for (std::size_t i = 0; i < n; ++i) {
      auto z = grid.point(i);
      for (int k = 0; k < d; ++k) y[k] = a * x[k] + b * z[k];
      terms[i] = grid.weight(i) * f(y);
    }
  }
  return pairwise_sum(terms);
}

HermiteExpansion ph_derivative(const HermiteExpansion& f, double t, int k) {
  require(k >= 0, "ph_derivative: negative order");
  require(k == 0 ? t >= 0 : t > 0, "ph_derivative: t must be positive for k >= 1");
  return f.map_by_order([t, k](int n) {
    const double root = std::sqrt(double(n));
    return std::pow(-root, k) * std::exp(-t * root);
  });
}

namespace {

double subordinate(const PointFunction& f, double t, int k, std::span<const double> x,
                   const GaussianGrid& grid) {
  require(t > 0, "Poisson-Hermite quadrature: t must be positive");
  require(k >= 0, "Poisson-Hermite quadrature: negative order");
  const StableDerivative& d = stable_derivative_terms(k);
  auto integrand = [&](double u) {
    const double s = std::exp(u);
    const double g = stable_density(t, s);
    if (g == 0.0) return 0.0;
    return ou_apply_kernel(f, s, x, grid, MehlerForm::shifted) * d.factor(t, s) * g * s;
  };
  // mu_t concentrates around s ~ t^2 / 6; the tail in s decays like s^{-1/2}
  // while T_s f converges to its mean.
  const double peak = std::log(t * t / 6.0);
  const double breaks[] = {peak - 4.0, peak, peak + 4.0, 0.0};
  return integrate_adaptive_split(integrand, -40.0, 40.0, breaks,
                                  {.rel_tol = 1e-10, .abs_tol = 1e-14});
}

}  // namespace

double ph_apply_subordination(const PointFunction& f, double t, std::span<const double> x,
                              const GaussianGrid& grid) {
  return subordinate(f, t, 0, x, grid);
}

double ph_derivative_subordination(const PointFunction& f, double t, int k,
                                   std::span<const double> x, const GaussianGrid& grid) {
  return subordinate(f, t, k, x, grid);
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  require(lo > 0 && hi > lo && count >= 2, "log_spaced: need 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_t_grid() { return log_spaced(1e-3, 50.0, scaled_count(60, 2)); }

double ou_maximal(const HermiteExpansion& f, std::span<const double> x, std::span<const double> t_grid) {
  require(!t_grid.empty(), "ou_maximal: empty time grid");
  double best = 0.0;
  for (double t : t_grid) {
    require(t >= 0, "ou_maximal: negative time");
    best = std::max(best, std::abs(ou_apply(f, t)(x)));
  }
  return best;
}

double ph_derivative_bound_check(const HermiteExpansion& f, std::span<const double> x, int k,
                                 std::span<const double> t_grid) {
  require(k >= 1, "ph_derivative_bound_check: k must be positive");
  require(!t_grid.empty(), "ph_derivative_bound_check: empty time grid");
  double sup_scaled = 0.0;
  for (double t : t_grid) {
    require(t > 0, "ph_derivative_bound_check: times must be positive");
    sup_scaled = std::max(sup_scaled, std::abs(ph_derivative(f, t, k)(x)) * std::pow(t, k));
  }
  if (sup_scaled == 0.0) return 0.0;
  const double tstar = ou_maximal(f, x, t_grid);
  if (tstar == 0.0)
    throw DomainError("ph_derivative_bound_check: maximal function vanishes at x");
  return sup_scaled / tstar;
}

}  // namespace gvs
