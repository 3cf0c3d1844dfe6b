#include "gvs/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gvs/errors.hpp"

namespace gvs {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

std::string to_string(ExponentClass tags) {
  std::string out;
  auto add = [&](ExponentClass c, const char* name) {
    if (contains(tags, c)) out += (out.empty() ? "" : "|") + std::string(name);
  };
  add(ExponentClass::LH0, "LH0");
  add(ExponentClass::LHinf, "LHinf");
  add(ExponentClass::PgammaInf, "PgammaInf");
  add(ExponentClass::P0inf, "P0inf");
  return out.empty() ? "none" : out;
}

ExponentFunction ExponentFunction::constant(double c) {
  require(std::isfinite(c) && c >= 1.0, "exponent must satisfy 1 <= c < inf, got " + fmt(c));
  ExponentFunction p;
  p.domain_ = ExponentDomain::space;
  p.eval_ = [c](std::span<const double>) { return c; };
  p.p_minus_ = p.p_plus_ = p.limit_infty_ = c;
  p.limit_zero_ = c;
  p.tags_ = ExponentClass::all;
  p.descriptor_ = "const:" + fmt(c);
  return p;
}

ExponentFunction ExponentFunction::gaussian_family(double p_inf, double c) {
  require(std::isfinite(p_inf) && p_inf >= 1.0, "gaussian family: p_inf must be >= 1");
  require(std::isfinite(c) && c >= 0.0, "gaussian family: c must be >= 0");
  if (c == 0.0) return constant(p_inf);
  ExponentFunction p;
  p.domain_ = ExponentDomain::space;
  p.eval_ = [p_inf, c](std::span<const double> x) { return p_inf + c / (1.0 + norm2(x)); };
  p.p_minus_ = p_inf;
  p.p_plus_ = p_inf + c;
  p.limit_infty_ = p_inf;
  p.limit_zero_ = p_inf + c;
  p.tags_ = ExponentClass::PgammaInf | ExponentClass::LH0 | ExponentClass::LHinf;
  p.descriptor_ = "gaussian:" + fmt(p_inf) + ":" + fmt(c);
  return p;
}

ExponentFunction ExponentFunction::time_family(double q0, double q_inf) {
  require(std::isfinite(q0) && q0 >= 1.0, "time family: q0 must be >= 1");
  require(std::isfinite(q_inf) && q_inf >= 1.0, "time family: q_inf must be >= 1");
  if (q0 == q_inf) return constant(q0);
  ExponentFunction p;
  p.domain_ = ExponentDomain::time;
  p.eval_ = [q0, q_inf](std::span<const double> x) { return q_inf + (q0 - q_inf) / (1.0 + x[0]); };
  p.p_minus_ = std::min(q0, q_inf);
  p.p_plus_ = std::max(q0, q_inf);
  p.limit_infty_ = q_inf;
  p.limit_zero_ = q0;
  p.tags_ = ExponentClass::P0inf;
  p.descriptor_ = "time:" + fmt(q0) + ":" + fmt(q_inf);
  return p;
}

ExponentFunction ExponentFunction::custom(ExponentDomain domain, Eval eval, double p_minus,
                                          double p_plus, double limit_infty,
                                          std::optional<double> limit_zero, std::string descriptor) {
  require(static_cast<bool>(eval), "custom exponent: empty evaluator");
  require(p_minus >= 1.0 && p_plus >= p_minus && std::isfinite(p_plus),
          "custom exponent: need 1 <= p_minus <= p_plus < inf");
  require(limit_infty >= p_minus && limit_infty <= p_plus, "custom exponent: limit outside bounds");
  ExponentFunction p;
  p.domain_ = domain;
  p.eval_ = std::move(eval);
  p.p_minus_ = p_minus;
  p.p_plus_ = p_plus;
  p.limit_infty_ = limit_infty;
  p.limit_zero_ = limit_zero;
  p.descriptor_ = std::move(descriptor);
  return p;
}

ExponentFunction ExponentFunction::with_tags(ExponentClass tags) const {
  ExponentFunction p = *this;
  p.tags_ = tags;
  return p;
}

std::vector<double> ExponentFunction::sample(std::span<const double> points, int dim) const {
  require(dim >= 1 && points.size() % dim == 0, "ExponentFunction::sample: bad point layout");
  std::vector<double> out(points.size() / dim);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval_(points.subspan(i * dim, dim));
  return out;
}

ExponentFunction harmonic_combination(const ExponentFunction& p0, double a,
                                      const ExponentFunction& p1, double b) {
  require(a >= 0 && b >= 0 && a + b > 0, "harmonic_combination: weights must be non-negative");
  auto inv = [a, b](double x, double y) { return 1.0 / (a / x + b / y); };
  ExponentFunction p;
  p.domain_ = (p0.domain_ == ExponentDomain::time || p1.domain_ == ExponentDomain::time)
                  ? ExponentDomain::time
                  : ExponentDomain::space;
  p.eval_ = [e0 = p0.eval_, e1 = p1.eval_, a, b](std::span<const double> x) {
    return 1.0 / (a / e0(x) + b / e1(x));
  };
  // Monotone in each argument, so the bounds are attained at the extremes.
  p.p_minus_ = inv(p0.p_minus_, p1.p_minus_);
  p.p_plus_ = inv(p0.p_plus_, p1.p_plus_);
  if (p.p_minus_ < 1.0 - 1e-12)
    throw DomainError("derived exponent falls below 1 (p_minus = " + fmt(p.p_minus_) + ")");
  p.p_minus_ = std::max(p.p_minus_, 1.0);
  p.p_plus_ = std::max(p.p_plus_, p.p_minus_);
  p.limit_infty_ = inv(p0.limit_infty_, p1.limit_infty_);
  if (p0.limit_zero_ && p1.limit_zero_) p.limit_zero_ = inv(*p0.limit_zero_, *p1.limit_zero_);
  p.tags_ = p0.tags_ & p1.tags_;
  if (p0.is_constant() && p1.is_constant()) p.tags_ = ExponentClass::all;
  p.descriptor_ = "harm(" + fmt(a) + "/" + p0.descriptor_ + "+" + fmt(b) + "/" + p1.descriptor_ + ")";
  return p;
}

ExponentFunction scaled(const ExponentFunction& p, double s) {
  require(s > 0 && s * p.p_minus_ >= 1.0, "scaled exponent requires s * p_minus >= 1");
  ExponentFunction out = p;
  out.eval_ = [e = p.eval_, s](std::span<const double> x) { return s * e(x); };
  out.p_minus_ = s * p.p_minus_;
  out.p_plus_ = s * p.p_plus_;
  out.limit_infty_ = s * p.limit_infty_;
  if (p.limit_zero_) out.limit_zero_ = s * *p.limit_zero_;
  out.descriptor_ = fmt(s) + "*" + p.descriptor_;
  return out;
}

ExponentFunction conjugate(const ExponentFunction& p) {
  require(p.p_minus_ > 1.0, "conjugate exponent requires p_minus > 1");
  auto conj = [](double v) { return v / (v - 1.0); };
  ExponentFunction out = p;
  out.eval_ = [e = p.eval_, conj](std::span<const double> x) { return conj(e(x)); };
  out.p_minus_ = conj(p.p_plus_);
  out.p_plus_ = conj(p.p_minus_);
  out.limit_infty_ = conj(p.limit_infty_);
  if (p.limit_zero_) out.limit_zero_ = *p.limit_zero_ > 1.0 ? std::optional(conj(*p.limit_zero_)) : std::nullopt;
  out.descriptor_ = "conj(" + p.descriptor_ + ")";
  return out;
}

ClassConstants estimate_class_constants(const ExponentFunction& p, std::span<const double> samples,
                                        int dim) {
  if (p.domain() == ExponentDomain::time) dim = 1;
  require(dim >= 1, "estimate_class_constants: bad dimension");
  require(!samples.empty() && samples.size() % dim == 0,
          "estimate_class_constants: empty or malformed sample set");
  const std::size_t n = samples.size() / dim;
  std::vector<double> vals(n), radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = samples.subspan(i * dim, dim);
    vals[i] = p(x);
    radius[i] = std::sqrt(norm2(x));
  }
  ClassConstants c;
  const double e = std::numbers::e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double diff = samples[i * dim + a] - samples[j * dim + a];
        d2 += diff * diff;
      }
      if (d2 == 0.0) continue;
      c.C_lh0 = std::max(c.C_lh0, std::abs(vals[i] - vals[j]) * std::log(e + 1.0 / std::sqrt(d2)));
    }
    const double dev = std::abs(vals[i] - p.limit_infty());
    c.C_lhinf = std::max(c.C_lhinf, dev * std::log(e + radius[i]));
    if (radius[i] > 0) c.C_gamma = std::max(c.C_gamma, dev * radius[i] * radius[i]);
  }
  if (p.domain() == ExponentDomain::time) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = samples[i];
      if (t > 0 && t <= 0.5 && p.limit_zero())
        c.A0 = std::max(c.A0, std::abs(vals[i] - *p.limit_zero()) * std::log(1.0 / t));
      if (t > 2.0) c.Ainf = std::max(c.Ainf, std::abs(vals[i] - p.limit_infty()) * std::log(t));
    }
  }
  return c;
}

ExponentFunction parse_exponent(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  auto num = [&](std::size_t i) {
    try {
      std::size_t used = 0;
      const double v = std::stod(parts.at(i), &used);
      if (used != parts[i].size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw DomainError("malformed exponent descriptor '" + text + "'");
    }
  };
  if (parts.empty()) throw DomainError("empty exponent descriptor");
  const std::string& kind = parts[0];
  if ((kind == "const" || kind == "constant") && parts.size() == 2) return ExponentFunction::constant(num(1));
  if (kind == "gaussian" && parts.size() == 3) return ExponentFunction::gaussian_family(num(1), num(2));
  if (kind == "time" && parts.size() == 3) return ExponentFunction::time_family(num(1), num(2));
  throw DomainError("unknown exponent descriptor '" + text + "'");
}

}  // namespace gvs
