#pragma once

// Ornstein-Uhlenbeck semigroup T_t and Poisson-Hermite semigroup P_t, by
// eigenexpansion on Hermite expansions and by quadrature on callables.

#include <span>
#include <vector>

#include "gvs/hermite.hpp"
#include "gvs/quadrature.hpp"

namespace gvs {

/// T_t on an expansion: c_nu -> e^{-t|nu|} c_nu. Requires t >= 0.
HermiteExpansion ou_apply(const HermiteExpansion& f, double t);

/// How the Mehler integral is discretized.
enum class MehlerForm {
  /// Kernel values at the Gauss-Hermite nodes y_i against gamma_d(dy).
  direct,
  /// Same integral after y = e^{-t} x + sqrt(1 - e^{-2t}) z, which moves the
  /// kernel peak onto the Gauss-Hermite nodes in z.
  shifted,
  /// direct when 1 - e^{-2t} >= 0.5, shifted otherwise.
  automatic,
};

/// Mehler kernel of T_t at (x, y) with respect to gamma_d(dy). The exponent
/// is formed with -expm1(-2t) for 1 - e^{-2t}.
double mehler_kernel(double t, std::span<const double> x, std::span<const double> y);

/// T_t f(x) by quadrature. Throws DomainError for t <= 0.
double ou_apply_kernel(const PointFunction& f, double t, std::span<const double> x,
                       const GaussianGrid& grid, MehlerForm form = MehlerForm::automatic);

/// d^k/dt^k P_t on an expansion: c_nu -> (-sqrt|nu|)^k e^{-t sqrt|nu|} c_nu.
/// Requires t > 0 when k >= 1 and t >= 0 when k = 0.
HermiteExpansion ph_derivative(const HermiteExpansion& f, double t, int k = 0);

/// P_t f(x) = int T_s f(x) mu_t(ds), outer quadrature in u = ln s. The inner
/// T_s uses the shifted Mehler form, since mu_t puts mass at s near 0.
double ph_apply_subordination(const PointFunction& f, double t, std::span<const double> x,
                              const GaussianGrid& grid);

/// d^k/dt^k P_t f(x) = int T_s f(x) d^k mu_t/dt^k(ds), same quadrature.
double ph_derivative_subordination(const PointFunction& f, double t, int k,
                                   std::span<const double> x, const GaussianGrid& grid);

/// 60 log-spaced times on [1e-3, 50] (count scaled by GVS_GRID_SCALE).
std::vector<double> default_t_grid();
std::vector<double> log_spaced(double lo, double hi, int count);

/// max over the grid of |T_t f(x)|: a lower bound for T*f(x).
/// Throws DomainError for an empty grid.
double ou_maximal(const HermiteExpansion& f, std::span<const double> x, std::span<const double> t_grid);

/// sup over the grid of |d^k P_t f(x)| t^k / T*f(x). Returns 0 when the
/// derivative vanishes on the grid; throws DomainError when T*f(x) = 0 but
/// the derivative does not.
double ph_derivative_bound_check(const HermiteExpansion& f, std::span<const double> x, int k,
                                 std::span<const double> t_grid);

}  // namespace gvs
