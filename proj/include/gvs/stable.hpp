#pragma once

// One-sided stable measure of order 1/2:
//   mu_t(ds) = g(t, s) ds,  g(t, s) = t / (2 sqrt(pi)) exp(-t^2 / (4 s)) s^{-3/2}.

#include <cstdint>
#include <map>
#include <utility>

#include <boost/rational.hpp>

namespace gvs {

using Rational = boost::rational<std::int64_t>;

/// g(t, s). Throws DomainError unless t > 0 and s > 0.
double stable_density(double t, double s);

/// d^k g / dt^k = (sum a_ij t^i s^{-j}) g with 2j - i = k for every term.
class StableDerivative {
 public:
  using Key = std::pair<int, int>;  // (i, j)

  int order() const { return order_; }
  const std::map<Key, Rational>& terms() const { return terms_; }

  /// sum a_ij t^i s^{-j}.
  double factor(double t, double s) const;
  /// factor(t, s) * g(t, s).
  double evaluate(double t, double s) const;
  /// With z = t^2/s every term is t^{-k} a_ij z^j; returns sum a_ij z^j.
  double reduced_polynomial(double z) const;

  /// Next derivative via the product rule and dg/dt = (1/t - t/(2s)) g.
  StableDerivative differentiate() const;

  static StableDerivative identity();

 private:
  int order_ = 0;
  std::map<Key, Rational> terms_;
};

/// Exact coefficient table for order k; memoized, safe for concurrent readers.
const StableDerivative& stable_derivative_terms(int k);

/// moment_C_k = 2^{2k} Gamma(k + 1/2) / sqrt(pi).
double moment_constant(int k);

/// int_0^inf s^{-k} mu_t(ds) = moment_C_k / t^{2k}; k = 0 gives 1.
double stable_moment(int k, double t);

/// Same integral by adaptive quadrature in u = ln s over [-40, 40].
double stable_moment_quadrature(int k, double t);

/// int_0^inf g(t, s) ds by the same quadrature (should be 1).
double stable_mass_quadrature(double t);

/// int_0^inf |d^k g/dt^k|(t, s) ds by quadrature in u = ln s, split at the
/// sign changes of the coefficient polynomial. k = 0 gives the mass.
/// Throws ConvergenceError when adaptive refinement fails.
double stable_tv_derivative(int k, double t);

}  // namespace gvs
