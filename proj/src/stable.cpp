#include "gvs/stable.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <vector>

#include "gvs/errors.hpp"
#include "gvs/numeric.hpp"

namespace gvs {

namespace {

constexpr double kULo = -40.0;
constexpr double kUHi = 40.0;

double log_density(double t, double s) {
  return std::log(t / (2.0 * std::sqrt(std::numbers::pi))) - t * t / (4.0 * s) - 1.5 * std::log(s);
}

// int_{e^kUHi}^inf s^-k g(t, s) ds to leading order in t^2/s, times `scale`.
double right_tail(int k, double t, double scale) {
  const double S = std::exp(kUHi);
  return scale * t / (2.0 * std::sqrt(std::numbers::pi)) * std::pow(S, -(k + 0.5)) / (k + 0.5);
}

double to_double(const Rational& r) { return double(r.numerator()) / double(r.denominator()); }

}  // namespace

double stable_density(double t, double s) {
  require(t > 0 && s > 0, "stable_density: t and s must be positive");
  return std::exp(log_density(t, s));
}

StableDerivative StableDerivative::identity() {
  StableDerivative d;
  d.terms_[{0, 0}] = Rational(1);
  return d;
}

StableDerivative StableDerivative::differentiate() const {
  StableDerivative next;
  next.order_ = order_ + 1;
  for (const auto& [key, a] : terms_) {
    const auto [i, j] = key;
    // d/dt (a t^i s^-j g) = a (i + 1) t^{i-1} s^-j g - (a/2) t^{i+1} s^{-j-1} g
    next.terms_[{i - 1, j}] += a * Rational(i + 1);
    next.terms_[{i + 1, j + 1}] -= a / Rational(2);
  }
  std::erase_if(next.terms_, [](const auto& kv) { return kv.second == Rational(0); });
  return next;
}

double StableDerivative::factor(double t, double s) const {
  // Every term has 2j - i = k, so t^i s^-j = t^-k (t^2/s)^j.
  return std::pow(t, -order_) * reduced_polynomial(t * t / s);
}

double StableDerivative::evaluate(double t, double s) const {
  return factor(t, s) * stable_density(t, s);
}

double StableDerivative::reduced_polynomial(double z) const {
  double v = 0.0;
  for (const auto& [key, a] : terms_) v += to_double(a) * std::pow(z, key.second);
  return v;
}

const StableDerivative& stable_derivative_terms(int k) {
  require(k >= 0, "stable_derivative_terms: negative order");
  static std::shared_mutex mutex;
  static std::vector<std::unique_ptr<StableDerivative>> cache;
  {
    std::shared_lock lock(mutex);
    if (static_cast<std::size_t>(k) < cache.size()) return *cache[k];
  }
  std::unique_lock lock(mutex);
  if (cache.empty()) cache.push_back(std::make_unique<StableDerivative>(StableDerivative::identity()));
  while (cache.size() <= static_cast<std::size_t>(k))
    cache.push_back(std::make_unique<StableDerivative>(cache.back()->differentiate()));
  return *cache[k];
}

double moment_constant(int k) {
  require(k >= 0, "moment_constant: negative order");
  // 4^k Gamma(k + 1/2) / sqrt(pi) = 2^k (2k - 1)!!, exact in double for small k
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c *= 2.0 * (2 * i - 1);
  return c;
}

double stable_moment(int k, double t) {
  require(k >= 0 && t > 0, "stable_moment: need k >= 0 and t > 0");
  if (k == 0) return 1.0;
  return moment_constant(k) / std::pow(t, 2 * k);
}

double stable_moment_quadrature(int k, double t) {
  require(k >= 0 && t > 0, "stable_moment_quadrature: need k >= 0 and t > 0");
  // s^{-k} g(t, s) ds = exp(log g - k u + u) du
  auto f = [k, t](double u) { return std::exp(log_density(t, std::exp(u)) - (k - 1.0) * u); };
  // The integrand peaks at s = t^2 / (4k + 2); split there.
  const double peak = std::log(t * t / (4.0 * k + 2.0));
  const double breaks[] = {peak - 3.0, peak, peak + 3.0};
  return integrate_adaptive_split(f, kULo, kUHi, breaks, {.rel_tol = 1e-13}) + right_tail(k, t, 1.0);
}

double stable_mass_quadrature(double t) { return stable_moment_quadrature(0, t); }

double stable_tv_derivative(int k, double t) {
  require(k >= 0 && t > 0, "stable_tv_derivative: need k >= 0 and t > 0");
  if (k == 0) return stable_mass_quadrature(t);
  const StableDerivative& d = stable_derivative_terms(k);
  // Sign changes of the factor sit at s = t^2/z for roots z of the reduced
  // polynomial. Bracket them on a log grid in z, then bisect.
  std::vector<double> breaks;
  const int samples = 2000;
  double z_prev = 1e-8, p_prev = d.reduced_polynomial(z_prev);
  for (int i = 1; i <= samples; ++i) {
    const double z = 1e-8 * std::pow(1e14, double(i) / samples);
    const double pz = d.reduced_polynomial(z);
    if ((pz > 0) != (p_prev > 0)) {
      double lo = z_prev, hi = z;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((d.reduced_polynomial(mid) > 0) == (p_prev > 0))
          lo = mid;
        else
          hi = mid;
      }
      breaks.push_back(std::log(t * t / (0.5 * (lo + hi))));
    }
    z_prev = z;
    p_prev = pz;
  }
  const double peak = std::log(t * t / 6.0);
  breaks.push_back(peak);
  auto f = [&d, t](double u) {
    const double s = std::exp(u);
    return std::abs(d.factor(t, s)) * std::exp(log_density(t, s) + u);
  };
  // For large s the factor tends to P(0) t^-k.
  const double tail = right_tail(0, t, std::abs(d.reduced_polynomial(0.0)) * std::pow(t, -k));
  return integrate_adaptive_split(f, kULo, kUHi, breaks, {.rel_tol = 1e-11, .abs_tol = 0.0}) + tail;
}

}  // namespace gvs
