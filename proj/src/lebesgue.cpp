#include "gvs/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gvs/errors.hpp"
#include "gvs/numeric.hpp"

namespace gvs {

namespace {

// rho(f / lambda) = sum_i exp(log_coef_i - power_i * ln(lambda)).
struct ModularTerms {
  std::vector<double> log_coef;
  std::vector<double> power;

  void add(double lc, double p) {
    log_coef.push_back(lc);
    power.push_back(p);
  }
  bool empty() const { return log_coef.empty(); }

  // ln rho at v = ln lambda, and d/dv of it.
  std::pair<double, double> log_value(double v) const {
    double mx = -std::numeric_limits<double>::infinity();
    std::vector<double> e(log_coef.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = log_coef[i] - power[i] * v;
      mx = std::max(mx, e[i]);
    }
    std::vector<double> w(e.size()), pw(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      w[i] = std::exp(e[i] - mx);
      pw[i] = power[i] * w[i];
    }
    const double s = pairwise_sum(w);
    return {mx + std::log(s), -pairwise_sum(pw) / s};
  }
};

// Closure of one truncated end from the three outermost nodes. The
// exponent is frozen at its edge value so the fit does not depend on lambda.
void add_tail(ModularTerms& terms, std::span<const double> f, std::span<const double> p,
              const DiscreteMeasure& m, bool left) {
  const std::size_t n = m.size();
  const std::size_t idx[3] = {left ? 0 : n - 1, left ? 1 : n - 2, left ? 2 : n - 3};
  auto u = m.log_coord();
  auto jac = m.u_density();
  const double pe = p[idx[0]];
  double G[3], uu[3];
  for (int r = 0; r < 3; ++r) {
    const double fv = std::abs(f[idx[r]]);
    if (fv == 0.0) return;
    G[r] = pe * std::log(fv) + std::log(jac[idx[r]]);
    uu[r] = u[idx[r]];
  }
  const double U = left ? m.u_lo() : m.u_hi();
  const TailFit fit = fit_log_tail(uu, G, U, left, kMinTailSlope);
  if (!fit.decays) return;
  auto phi = [left](double x) { return left ? std::exp(x) : std::exp(-x); };
  // Exponent beyond the edge: p = a + d phi(u) through the two outer nodes.
  const double dphi = phi(uu[1]) - phi(uu[0]);
  const double d = dphi != 0.0 ? (p[idx[1]] - pe) / dphi : 0.0;
  if (d == 0.0 || !std::isfinite(d)) {
    terms.add(fit.log_integral, pe);
    return;
  }
  const double a = pe - d * phi(uu[0]);
  // ln|f| = (c + s u + b phi - j u) / pe with j = 1 for dt and 0 for dt/t.
  const double j = m.kind() == MeasureKind::lebesgue ? 1.0 : 0.0;
  auto log_f = [&](double x) { return (fit.offset + fit.slope * x + fit.curvature * phi(x) - j * x) / pe; };
  const double sgn = left ? 1.0 : -1.0;
  const double rate_edge = sgn * fit.slope;
  const double rate_inf = sgn * (a * (fit.slope - j) / pe + j);
  if (!(rate_inf >= kMinTailSlope) || a < 1.0) {
    terms.add(fit.log_integral, pe);
    return;
  }
  // Virtual nodes: v = |u - U| = -ln(1 - y) / sigma with Gauss-Legendre in
  // y on [0, 1], so a tail decaying like e^{-sigma v} has a bounded integrand.
  static const GaussRule rule = gauss_legendre(32);
  const double sigma = std::min(rate_edge, rate_inf);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double y = 0.5 * (rule.nodes[i] + 1.0), wy = 0.5 * rule.weights[i];
    const double v = -std::log1p(-y) / sigma;
    const double x = U - sgn * v;
    const double px = a + d * phi(x);
    terms.add(std::log(wy / (sigma * (1.0 - y))) + px * log_f(x) + j * x, px);
  }
}

ModularTerms build_terms(std::span<const double> f, std::span<const double> p,
                         const DiscreteMeasure& m) {
  require(f.size() == m.size() && p.size() == m.size(), "modular: sample count mismatch");
  ModularTerms terms;
  auto w = m.weights();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::isnan(f[i])) throw DomainError("modular: NaN in function samples");
    if (std::isnan(p[i]) || p[i] < 1.0 - 1e-12) throw DomainError("modular: exponent below 1 or NaN");
    if (std::isinf(f[i])) throw ConvergenceError("modular: infinite function sample");
    if (f[i] == 0.0 || w[i] <= 0.0) continue;
    terms.add(std::log(w[i]) + p[i] * std::log(std::abs(f[i])), p[i]);
  }
  if (m.half_line() && m.tail_closure() && m.size() >= 3) {
    add_tail(terms, f, p, m, true);
    add_tail(terms, f, p, m, false);
  }
  return terms;
}

}  // namespace

double modular(std::span<const double> f, std::span<const double> p, const DiscreteMeasure& m) {
  const ModularTerms terms = build_terms(f, p, m);
  if (terms.empty()) return 0.0;
  return std::exp(terms.log_value(0.0).first);
}

double modular(std::span<const double> f, const ExponentFunction& p, const DiscreteMeasure& m) {
  std::vector<double> pvals(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) pvals[i] = p(m.point(i));
  return modular(f, pvals, m);
}

double modular(const PointFunction& f, const ExponentFunction& p, const DiscreteMeasure& m) {
  const auto fv = m.sample(f);
  return modular(fv, p, m);
}

NormResult luxemburg_norm(std::span<const double> f, std::span<const double> p,
                          const DiscreteMeasure& m, const NormOptions& opts) {
  const ModularTerms terms = build_terms(f, p, m);
  NormResult out;
  if (terms.empty()) return out;  // f vanishes at every node

  double lo = -std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const double log_n = std::log(double(terms.log_coef.size()));
  for (std::size_t i = 0; i < terms.log_coef.size(); ++i) {
    lo = std::max(lo, terms.log_coef[i] / terms.power[i]);
    hi = std::max(hi, (terms.log_coef[i] + log_n) / terms.power[i]);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw ConvergenceError("luxemburg_norm: modular is infinite for every lambda");

  // ln rho is convex and decreasing in v, so Newton from the left bracket end
  // approaches the root monotonically; bisection guards rounding trouble.
  double v = lo;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const auto [phi, dphi] = terms.log_value(v);
    if (phi <= 0.0) hi = std::min(hi, v);
    if (phi >= 0.0) lo = std::max(lo, v);
    double next = (dphi < 0.0) ? v - phi / dphi : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = next - v;
    v = next;
    if (std::abs(step) <= opts.rel_tol || hi - lo <= opts.rel_tol) {
      ++it;
      break;
    }
  }
  if (it >= opts.max_iterations && hi - lo > opts.rel_tol)
    throw ConvergenceError("luxemburg_norm: root finding did not converge");
  out.value = std::exp(v);
  out.modular_at_value = std::exp(terms.log_value(v).first);
  out.iterations = it;
  return out;
}

NormResult luxemburg_norm(std::span<const double> f, const ExponentFunction& p,
                          const DiscreteMeasure& m, const NormOptions& opts) {
  std::vector<double> pvals(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) pvals[i] = p(m.point(i));
  return luxemburg_norm(f, pvals, m, opts);
}

NormResult luxemburg_norm(const PointFunction& f, const ExponentFunction& p,
                          const DiscreteMeasure& m, const NormOptions& opts) {
  const auto fv = m.sample(f);
  return luxemburg_norm(fv, p, m, opts);
}

ConvergedNorm logtime_norm_converged(const HalfLineFunction& f, const ExponentFunction& q,
                                     LogGridSpec spec, double rel_change, int max_doublings) {
  auto eval = [&](const LogGridSpec& s) {
    const DiscreteMeasure m = DiscreteMeasure::logtime(LogGrid(s));
    return luxemburg_norm(m.sample_t(f), q, m);
  };
  NormResult prev = eval(spec);
  for (int d = 0; d < max_doublings; ++d) {
    const LogGridSpec next_spec = spec.doubled_resolution();
    const NormResult next = eval(next_spec);
    const double scale = std::max(std::abs(next.value), std::numeric_limits<double>::min());
    const double change = std::abs(next.value - prev.value) / scale;
    spec = next_spec;
    prev = next;
    if (change < rel_change || next.value == 0.0) return {prev, spec, change};
  }
  throw ConvergenceError("logtime_norm_converged: no convergence under panel doubling");
}

NormPair logtime_norm_identity_check(const HalfLineFunction& f, const ExponentFunction& q,
                                     const LogGrid& grid) {
  const DiscreteMeasure mu = DiscreteMeasure::logtime(grid);
  const DiscreteMeasure leb = DiscreteMeasure::lebesgue(grid);
  NormPair out;
  out.logtime = luxemburg_norm(mu.sample_t(f), q, mu).value;
  auto weighted = [&](double t) { return std::pow(t, -1.0 / q.at(t)) * f(t); };
  out.lebesgue = luxemburg_norm(leb.sample_t(weighted), q, leb).value;
  return out;
}

namespace {

InequalityReport finish(double lhs, double rhs, double tol) {
  InequalityReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  r.holds = lhs <= rhs + tol * std::max(1.0, rhs);
  return r;
}

}  // namespace

InequalityReport holder_check(std::span<const double> f, std::span<const double> g,
                              const ExponentFunction& q, const ExponentFunction& r,
                              const DiscreteMeasure& m, double tol) {
  require(f.size() == m.size() && g.size() == m.size(), "holder_check: sample count mismatch");
  std::vector<double> qv(m.size()), rv(m.size()), pv(m.size()), fg(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    qv[i] = q(m.point(i));
    rv[i] = r(m.point(i));
    pv[i] = 1.0 / (1.0 / qv[i] + 1.0 / rv[i]);
    if (pv[i] < 1.0 - 1e-12) throw DomainError("holder_check: derived exponent p < 1 at a node");
    pv[i] = std::max(pv[i], 1.0);
    fg[i] = f[i] * g[i];
  }
  const double lhs = luxemburg_norm(fg, pv, m).value;
  const double rhs = 2.0 * luxemburg_norm(f, qv, m).value * luxemburg_norm(g, rv, m).value;
  return finish(lhs, rhs, tol);
}

InequalityReport minkowski_check(const ProductFunction& F, const ExponentFunction& p,
                                 const DiscreteMeasure& outer, const DiscreteMeasure& inner,
                                 double tol) {
  std::vector<double> pv(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) pv[i] = p(outer.point(i));
  std::vector<double> integrated(outer.size(), 0.0);
  std::vector<double> slice(outer.size());
  std::vector<double> slice_norms(inner.size());
  auto w = inner.weights();
  for (std::size_t j = 0; j < inner.size(); ++j) {
    const auto y = inner.point(j);
    for (std::size_t i = 0; i < outer.size(); ++i) {
      slice[i] = F(outer.point(i), y);
      integrated[i] += w[j] * slice[i];
    }
    slice_norms[j] = w[j] * luxemburg_norm(slice, pv, outer).value;
  }
  const double lhs = luxemburg_norm(integrated, pv, outer).value;
  const double rhs = 4.0 * pairwise_sum(slice_norms);
  return finish(lhs, rhs, tol);
}

ConjugateBound conjugate_lower_bound(std::span<const double> f, const ExponentFunction& p,
                                     const DiscreteMeasure& m,
                                     const std::vector<std::vector<double>>& candidates,
                                     double tol) {
  require(!candidates.empty(), "conjugate_lower_bound: no candidates");
  require(p.p_minus() > 1.0, "conjugate_lower_bound: requires p_minus > 1");
  require(f.size() == m.size(), "conjugate_lower_bound: sample count mismatch");
  std::vector<double> pv(m.size()), pc(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    pv[i] = p(m.point(i));
    pc[i] = pv[i] / (pv[i] - 1.0);
  }
  ConjugateBound out;
  out.norm = luxemburg_norm(f, pv, m).value;
  auto w = m.weights();
  std::vector<double> prod(m.size());
  for (const auto& g : candidates) {
    require(g.size() == m.size(), "conjugate_lower_bound: candidate size mismatch");
    const double gn = luxemburg_norm(g, pc, m).value;
    if (gn == 0.0) continue;
    for (std::size_t i = 0; i < m.size(); ++i) prod[i] = w[i] * std::abs(f[i]) * std::abs(g[i]) / gn;
    out.lower_bound = std::max(out.lower_bound, pairwise_sum(prod));
  }
  out.ratio = out.norm > 0 ? out.lower_bound / out.norm : 0.0;
  out.holds = out.lower_bound <= 2.0 * out.norm + tol * std::max(1.0, out.norm);
  return out;
}

}  // namespace gvs
