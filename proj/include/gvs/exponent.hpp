#pragma once

// Variable exponents p(.) on R^d and q(.) on R^+.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gvs {

enum class ExponentDomain { space, time };

/// Regularity classes an exponent can be certified for.
enum class ExponentClass : unsigned {
  none = 0,
  LH0 = 1u << 0,        ///< locally log-Hoelder
  LHinf = 1u << 1,      ///< log-Hoelder at infinity (base point 0)
  PgammaInf = 1u << 2,  ///< |p(x) - p_inf| <= C / |x|^2
  P0inf = 1u << 3,      ///< log-rate limits at 0 and infinity, p_- >= 1
  all = 15u,
};

constexpr ExponentClass operator|(ExponentClass a, ExponentClass b) {
  return static_cast<ExponentClass>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}
constexpr ExponentClass operator&(ExponentClass a, ExponentClass b) {
  return static_cast<ExponentClass>(static_cast<unsigned>(a) & static_cast<unsigned>(b));
}
/// True when every class in `wanted` is present in `have`.
constexpr bool contains(ExponentClass have, ExponentClass wanted) {
  return (have & wanted) == wanted;
}

std::string to_string(ExponentClass tags);

/// Evaluable exponent with declared bounds, limits and certified classes.
/// Immutable; copies share the evaluation closure.
class ExponentFunction {
 public:
  using Eval = std::function<double(std::span<const double>)>;

  /// p == c everywhere, every class tag set. Throws DomainError for c < 1.
  static ExponentFunction constant(double c);

  /// p(x) = p_inf + c / (1 + |x|^2) on R^d.
  /// |p(x) - p_inf| = c/(1+|x|^2) <= c/|x|^2 certifies PgammaInf with
  /// C = c; p is smooth with bounded gradient, which gives LH0, and
  /// c/(1+r^2) <= C'/log(e+r) gives LHinf.
  static ExponentFunction gaussian_family(double p_inf, double c);

  /// q(t) = q_inf + (q0 - q_inf) / (1 + t) on (0, inf).
  /// |q(t) - q0| = |q0 - q_inf| t/(1+t), and t ln(1/t) is bounded on
  /// (0, 1/2]; |q(t) - q_inf| = |q0 - q_inf|/(1+t), and ln t/(1+t) is
  /// bounded on (2, inf). Both rates certify P0inf.
  static ExponentFunction time_family(double q0, double q_inf);

  /// User exponent. No class tags; use with_tags() as an explicit override.
  static ExponentFunction custom(ExponentDomain domain, Eval eval, double p_minus, double p_plus,
                                 double limit_infty, std::optional<double> limit_zero = {},
                                 std::string descriptor = "custom");

  /// Copy with the given class tags (explicit user override).
  ExponentFunction with_tags(ExponentClass tags) const;

  double operator()(std::span<const double> x) const { return eval_(x); }
  double at(double t) const { return eval_(std::span<const double>(&t, 1)); }

  ExponentDomain domain() const { return domain_; }
  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  double limit_infty() const { return limit_infty_; }
  std::optional<double> limit_zero() const { return limit_zero_; }
  ExponentClass tags() const { return tags_; }
  bool has(ExponentClass c) const { return contains(tags_, c); }
  bool is_constant() const { return p_minus_ == p_plus_; }
  const std::string& descriptor() const { return descriptor_; }

  /// Values at the nodes of a point set stored row-major with `dim` columns.
  std::vector<double> sample(std::span<const double> points, int dim) const;

 private:
  ExponentFunction() = default;

  ExponentDomain domain_ = ExponentDomain::space;
  Eval eval_;
  double p_minus_ = 1.0, p_plus_ = 1.0, limit_infty_ = 1.0;
  std::optional<double> limit_zero_;
  ExponentClass tags_ = ExponentClass::none;
  std::string descriptor_;

  friend ExponentFunction harmonic_combination(const ExponentFunction&, double,
                                               const ExponentFunction&, double);
  friend ExponentFunction scaled(const ExponentFunction&, double);
  friend ExponentFunction conjugate(const ExponentFunction&);
};

/// 1/p = a/p0 + b/p1 with a, b >= 0. Bounds and limits follow pointwise;
/// class tags are the intersection of both inputs' tags (1/p is a bounded
/// Lipschitz function of 1/p0, 1/p1, which preserves each rate condition).
/// Throws DomainError when the resulting lower bound falls below 1.
ExponentFunction harmonic_combination(const ExponentFunction& p0, double a,
                                      const ExponentFunction& p1, double b);

/// Hoelder exponent: 1/p = 1/q + 1/r.
inline ExponentFunction holder_exponent(const ExponentFunction& q, const ExponentFunction& r) {
  return harmonic_combination(q, 1.0, r, 1.0);
}

/// Interpolated exponent: 1/p = (1 - theta)/p0 + theta/p1.
inline ExponentFunction interpolate(const ExponentFunction& p0, const ExponentFunction& p1,
                                    double theta) {
  return harmonic_combination(p0, 1.0 - theta, p1, theta);
}

/// s * p(.). Requires s * p_minus >= 1.
ExponentFunction scaled(const ExponentFunction& p, double s);

/// p'(.) = p/(p - 1). Requires p_minus > 1.
ExponentFunction conjugate(const ExponentFunction& p);

struct ClassConstants {
  double C_lh0 = 0.0;    ///< sup |p(x)-p(y)| log(e + 1/|x-y|)
  double C_lhinf = 0.0;  ///< sup |p(x)-p_inf| log(e + |x|)
  double C_gamma = 0.0;  ///< sup |p(x)-p_inf| |x|^2
  double A0 = 0.0;       ///< sup_{0<t<=1/2} |q(t)-q(0)| ln(1/t)   (time domain)
  double Ainf = 0.0;     ///< sup_{t>2} |q(t)-q(inf)| ln t        (time domain)
};

/// Empirical suprema over the samples (row-major, p.domain() decides the
/// dimension: time exponents take 1-d samples). Each value is a lower bound
/// on the true constant. Throws DomainError on an empty sample set.
ClassConstants estimate_class_constants(const ExponentFunction& p, std::span<const double> samples,
                                        int dim);

/// Parses "const:c", "gaussian:p_inf:c", "time:q0:q_inf".
ExponentFunction parse_exponent(const std::string& text);

}  // namespace gvs
