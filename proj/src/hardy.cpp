#include "gvs/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gvs/errors.hpp"
#include "gvs/numeric.hpp"

namespace gvs {

namespace {

constexpr double kOverflowGuard = 1e300;

void check_finite(double v, const char* what) {
  if (!std::isfinite(v) || std::abs(v) > kOverflowGuard)
    throw ConvergenceError(std::string(what) + ": cumulative integral diverges on the grid");
}

}  // namespace

std::string to_string(HardySide side) { return side == HardySide::lower ? "lower" : "upper"; }

HardySide parse_hardy_side(const std::string& text) {
  if (text == "lower") return HardySide::lower;
  if (text == "upper") return HardySide::upper;
  throw DomainError("unknown Hardy side '" + text + "' (lower|upper)");
}

HardyIntegrator::HardyIntegrator(HalfLineFunction g, const HardyOptions& opts,
                                 std::vector<double> extra_breaks)
    : g_(std::move(g)), grid_([&] {
        LogGridSpec s = opts.spec;
        s.breakpoints.insert(s.breakpoints.end(), opts.breakpoints.begin(), opts.breakpoints.end());
        s.breakpoints.insert(s.breakpoints.end(), extra_breaks.begin(), extra_breaks.end());
        return s;
      }()) {
  auto e = grid_.panel_edges();
  edges_.assign(e.begin(), e.end());
  const std::size_t panels = edges_.size() - 1;
  std::vector<double> panel_int(panels);
  for (std::size_t p = 0; p < panels; ++p) panel_int[p] = partial(p, edges_[p], edges_[p + 1]);

  // Left end: fit ln(|g(t)| t) in u at the three outermost nodes.
  double left = 0.0;
  {
    auto t = grid_.t();
    auto u = grid_.u();
    const double gv[3] = {g_(t[0]), g_(t[1]), g_(t[2])};
    const bool all_zero = gv[0] == 0.0 && gv[1] == 0.0 && gv[2] == 0.0;
    const bool same_sign = gv[0] != 0.0 && gv[1] != 0.0 && gv[2] != 0.0 && (gv[0] > 0) == (gv[1] > 0) &&
                           (gv[1] > 0) == (gv[2] > 0);
    if (!all_zero && same_sign) {
      const double uu[3] = {u[0], u[1], u[2]};
      double G[3];
      for (int r = 0; r < 3; ++r) G[r] = std::log(std::abs(gv[r]) * t[r]);
      const TailFit fit = fit_log_tail(uu, G, edges_.front(), true, 0.0);
      if (!fit.decays || fit.slope <= 0.0)
        left_divergent_ = true;
      else
        left = std::copysign(std::exp(fit.log_integral), gv[0]);
    }
  }
  // Right end: exponential fit in t when allowed, otherwise truncation.
  double right = 0.0;
  {
    auto t = grid_.t();
    auto u = grid_.u();
    const std::size_t n = t.size();
    const double ga = g_(t[n - 2]), gb = g_(t[n - 1]);
    if (gb != 0.0 && ga != 0.0 && (ga > 0) == (gb > 0)) {
      const double T = std::exp(edges_.back());
      if (opts.exp_decaying) {
        const double beta = -(std::log(std::abs(gb)) - std::log(std::abs(ga))) / (t[n - 1] - t[n - 2]);
        if (beta > 0.0) right = gb * std::exp(-beta * (T - t[n - 1])) / beta;
      } else {
        const double a = -(std::log(std::abs(gb)) - std::log(std::abs(ga))) / (u[n - 1] - u[n - 2]);
        truncation_bound_ = a > 1.0 ? std::abs(gb) * std::pow(t[n - 1] / T, a) * T / (a - 1.0)
                                    : std::numeric_limits<double>::infinity();
      }
    }
  }

  from_left_.assign(edges_.size(), 0.0);
  from_right_.assign(edges_.size(), 0.0);
  from_left_[0] = left;
  for (std::size_t p = 0; p < panels; ++p) from_left_[p + 1] = from_left_[p] + panel_int[p];
  from_right_[panels] = right;
  for (std::size_t p = panels; p-- > 0;) from_right_[p] = from_right_[p + 1] + panel_int[p];
  if (!left_divergent_)
    for (double v : from_left_) check_finite(v, "hardy_lower");
  for (double v : from_right_) check_finite(v, "hardy_upper");
}

double HardyIntegrator::partial(std::size_t panel, double ua, double ub) const {
  (void)panel;
  if (ub <= ua) return 0.0;
  static const GaussRule rule = gauss_legendre(8);
  const double half = 0.5 * (ub - ua), mid = 0.5 * (ua + ub);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = std::exp(mid + half * rule.nodes[i]);
    s += rule.weights[i] * g_(t) * t;
  }
  return half * s;
}

std::size_t HardyIntegrator::panel_of(double u) const {
  require(u >= edges_.front() - 1e-12 && u <= edges_.back() + 1e-12, "hardy: t outside the grid range");
  auto it = std::upper_bound(edges_.begin(), edges_.end(), u);
  std::size_t p = it == edges_.begin() ? 0 : std::size_t(it - edges_.begin()) - 1;
  return std::min(p, edges_.size() - 2);
}

double HardyIntegrator::integral_to(double t) const {
  if (left_divergent_) throw ConvergenceError("hardy: int_0^t g diverges at 0");
  const double u = std::log(t);
  const std::size_t p = panel_of(u);
  return from_left_[p] + partial(p, edges_[p], std::min(u, edges_[p + 1]));
}

double HardyIntegrator::integral_from(double t) const {
  const double u = std::log(t);
  const std::size_t p = panel_of(u);
  return from_right_[p + 1] + partial(p, std::max(u, edges_[p]), edges_[p + 1]);
}

double hardy_lower(const HalfLineFunction& g, double r, double t, const HardyOptions& opts) {
  require(r > 0 && t > 0, "hardy_lower: need r > 0 and t > 0");
  HardyIntegrator I(g, opts, {t});
  return std::pow(t, -r) * I.integral_to(t);
}

double hardy_upper(const HalfLineFunction& g, double r, double t, const HardyOptions& opts) {
  require(r > 0 && t > 0, "hardy_upper: need r > 0 and t > 0");
  HardyIntegrator I(g, opts, {t});
  return std::pow(t, r) * I.integral_from(t);
}

HardyReport hardy_inequality_check(const HalfLineFunction& g, double r, const ExponentFunction& q,
                                   HardySide side, const HardyOptions& opts) {
  require(r > 0, "hardy_inequality_check: need r > 0");
  if (!q.has(ExponentClass::P0inf)) throw HypothesisError("hardy: q must be in P_{0,inf}");
  const double q0 = q.limit_zero().value_or(q.p_minus());
  if (q0 <= 1.0 || q.limit_infty() <= 1.0)
    throw HypothesisError("hardy: q(0) = 1 or q(inf) = 1 is not supported (conjugate exponent infinite)");

  HardyIntegrator I(g, opts);
  const DiscreteMeasure mu = DiscreteMeasure::logtime(I.grid());
  auto t = I.grid().t();
  std::vector<double> lhs(t.size()), rhs(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (side == HardySide::lower) {
      lhs[i] = std::pow(t[i], -r) * I.integral_to(t[i]);
      rhs[i] = std::pow(t[i], 1.0 - r) * g(t[i]);
    } else {
      lhs[i] = std::pow(t[i], r) * I.integral_from(t[i]);
      rhs[i] = std::pow(t[i], 1.0 + r) * g(t[i]);
    }
  }
  HardyReport rep;
  rep.r = r;
  rep.q_desc = q.descriptor();
  rep.truncation_bound = side == HardySide::upper ? I.truncation_bound() : 0.0;
  rep.lhs_norm = luxemburg_norm(lhs, q, mu).value;
  rep.rhs_norm = luxemburg_norm(rhs, q, mu).value;
  if (rep.rhs_norm == 0.0) {
    if (rep.lhs_norm > 0.0) throw ConvergenceError("hardy: rhs norm vanishes while lhs does not");
    return rep;
  }
  rep.ratio = rep.lhs_norm / rep.rhs_norm;
  if (!std::isfinite(rep.ratio)) throw ConvergenceError("hardy: ratio is not finite");
  return rep;
}

const std::vector<HardyFamilyMember>& hardy_test_family() {
  static const std::vector<HardyFamilyMember> family = [] {
    auto ind = [](double a, double b) {
      return [a, b](double y) { return (y >= a && y <= b) ? 1.0 : 0.0; };
    };
    std::vector<HardyFamilyMember> f;
    f.push_back({"chi(0,1]", ind(0.0, 1.0), {1.0}, false});
    f.push_back({"chi[1,2]", ind(1.0, 2.0), {1.0, 2.0}, false});
    f.push_back({"chi[1/4,4]", ind(0.25, 4.0), {0.25, 4.0}, false});
    f.push_back({"y chi(0,1]", [](double y) { return y <= 1 ? y : 0.0; }, {1.0}, false});
    f.push_back({"y^2 chi(0,1]", [](double y) { return y <= 1 ? y * y : 0.0; }, {1.0}, false});
    f.push_back({"sqrt(y) chi(0,2]", [](double y) { return y <= 2 ? std::sqrt(y) : 0.0; }, {2.0}, false});
    f.push_back({"(1-y)^2 chi(0,1]", [](double y) { return y <= 1 ? (1 - y) * (1 - y) : 0.0; }, {1.0}, false});
    f.push_back({"exp(-y)", [](double y) { return std::exp(-y); }, {}, true});
    f.push_back({"exp(-2y)", [](double y) { return std::exp(-2 * y); }, {}, true});
    f.push_back({"y exp(-y)", [](double y) { return y * std::exp(-y); }, {}, true});
    f.push_back({"y^2 exp(-y)", [](double y) { return y * y * std::exp(-y); }, {}, true});
    f.push_back({"exp(-y^2)", [](double y) { return std::exp(-y * y); }, {}, true});
    return f;
  }();
  return family;
}

HardyConstant hardy_empirical_constant(double r, const ExponentFunction& q, HardySide side,
                                       const LogGridSpec& spec) {
  const auto& family = hardy_test_family();
  HardyConstant out;
  out.reports.resize(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    HardyOptions opts{spec, family[i].breakpoints, family[i].exp_decaying};
    out.reports[i] = hardy_inequality_check(family[i].g, r, q, side, opts);
  });
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (out.reports[i].ratio > out.sup_ratio) {
      out.sup_ratio = out.reports[i].ratio;
      out.argmax = family[i].name;
    }
  }
  return out;
}

}  // namespace gvs
