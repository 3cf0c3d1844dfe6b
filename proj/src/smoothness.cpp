#include "gvs/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gvs/errors.hpp"
#include "gvs/numeric.hpp"
#include "gvs/semigroups.hpp"

namespace gvs {

namespace {

constexpr double kMembershipTol = 1e-6;

std::vector<double> exponent_values(const ExponentFunction& p, const DiscreteMeasure& m) {
  std::vector<double> v(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) v[i] = p(m.point(i));
  return v;
}

double rel_change(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

// ||t^{a} chi||_{q, dt/t} at the grid's resolution, finite and stable under
// truncation doubling, or infinity.
double side_norm(double a, bool lower_half, const ExponentFunction& q, const LogGridSpec& base) {
  auto eval = [&](LogGridSpec spec) {
    spec.breakpoints.push_back(1.0);
    const DiscreteMeasure mu = DiscreteMeasure::logtime(LogGrid(spec));
    auto f = mu.sample_t([&](double t) {
      const bool in = lower_half ? t <= 1.0 : t > 1.0;
      return in ? std::pow(t, a) : 0.0;
    });
    return luxemburg_norm(f, q, mu).value;
  };
  const double v = eval(base), w = eval(base.doubled_truncation());
  if (!std::isfinite(v) || rel_change(v, w) >= kMembershipTol) return std::numeric_limits<double>::infinity();
  return v;
}

}  // namespace

std::string to_string(SmoothnessSpace s) { return s == SmoothnessSpace::besov ? "besov" : "triebel"; }

SmoothnessSpace parse_smoothness_space(const std::string& text) {
  if (text == "besov") return SmoothnessSpace::besov;
  if (text == "triebel" || text == "tl") return SmoothnessSpace::triebel;
  throw DomainError("unknown smoothness space '" + text + "' (besov|triebel)");
}

SmoothnessParams SmoothnessParams::make(double alpha, ExponentFunction p, ExponentFunction q,
                                        std::optional<int> k) {
  require(std::isfinite(alpha) && alpha >= 0.0, "smoothness: alpha must be >= 0");
  SmoothnessParams sp{alpha, k.value_or(static_cast<int>(std::floor(alpha)) + 1), std::move(p), std::move(q)};
  sp.validate();
  return sp;
}

void SmoothnessParams::validate() const {
  require(std::isfinite(alpha) && alpha >= 0.0, "smoothness: alpha must be >= 0");
  require(k > alpha, "smoothness: k must be strictly greater than alpha");
  if (p.domain() != ExponentDomain::space || !p.has(ExponentClass::PgammaInf | ExponentClass::LH0))
    throw HypothesisError("smoothness: p must be a space exponent tagged PgammaInf and LH0 (got " +
                          p.descriptor() + ")");
  if (!q.has(ExponentClass::P0inf))
    throw HypothesisError("smoothness: q must be tagged P0inf (got " + q.descriptor() + ")");
}

QuadratureContext smoothness_context(int dim) {
  require(dim >= 1 && dim <= kMaxDimension, "smoothness_context: unsupported dimension");
  const int base = dim == 1 ? 64 : (dim == 2 ? 32 : 16);
  return QuadratureContext::make(dim, scaled_count(base, 8));
}

QuadratureContext refined(const QuadratureContext& ctx) {
  return QuadratureContext::make(ctx.space.dim(), 2 * ctx.space.nodes_per_axis(),
                                 ctx.time.spec().doubled_resolution());
}

QuadratureContext truncation_doubled(const QuadratureContext& ctx) {
  return QuadratureContext::make(ctx.space.dim(), ctx.space.nodes_per_axis(),
                                 ctx.time.spec().doubled_truncation());
}

GridMeta grid_meta(const QuadratureContext& ctx) {
  return {ctx.space.dim(), ctx.space.nodes_per_axis(), ctx.time.spec().t_min, ctx.time.spec().t_max,
          ctx.time.size()};
}

std::vector<std::vector<double>> derivative_tensor(const HermiteExpansion& f, int k,
                                                   const QuadratureContext& ctx) {
  require(k >= 0, "derivative_tensor: negative order");
  require(f.dim() == ctx.space.dim(), "derivative_tensor: dimension mismatch");
  const int N = f.degree();
  const std::size_t X = ctx.space.size();
  // F_n(x_i) = sum_{|nu| = n} c_nu h_nu(x_i)
  std::vector<std::vector<double>> by_order(N + 1, std::vector<double>(X, 0.0));
  for (const auto& [nu, c] : f.coeffs()) {
    auto& row = by_order[nu.order()];
    for (std::size_t i = 0; i < X; ++i) row[i] += c * hermite_multi(nu, ctx.space.point(i));
  }
  auto t = ctx.time.t();
  std::vector<std::vector<double>> D(t.size(), std::vector<double>(X, 0.0));
  parallel_for(t.size(), [&](std::size_t j) {
    auto& row = D[j];
    for (int n = (k == 0 ? 0 : 1); n <= N; ++n) {
      const double rt = std::sqrt(double(n));
      const double w = std::pow(-rt, k) * std::exp(-t[j] * rt);
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < X; ++i) row[i] += w * by_order[n][i];
    }
  });
  return D;
}

double besov_seminorm(const HermiteExpansion& f, const SmoothnessParams& sp, const QuadratureContext& ctx) {
  sp.validate();
  const auto D = derivative_tensor(f, sp.k, ctx);
  const DiscreteMeasure gm = DiscreteMeasure::gaussian(ctx.space);
  const DiscreteMeasure mu = DiscreteMeasure::logtime(ctx.time);
  const auto pv = exponent_values(sp.p, gm);
  auto t = ctx.time.t();
  std::vector<double> outer(t.size());
  parallel_for(t.size(), [&](std::size_t j) {
    outer[j] = std::pow(t[j], sp.k - sp.alpha) * luxemburg_norm(D[j], pv, gm).value;
  });
  return luxemburg_norm(outer, sp.q, mu).value;
}

double triebel_seminorm(const HermiteExpansion& f, const SmoothnessParams& sp, const QuadratureContext& ctx) {
  sp.validate();
  const auto D = derivative_tensor(f, sp.k, ctx);
  const DiscreteMeasure gm = DiscreteMeasure::gaussian(ctx.space);
  const DiscreteMeasure mu = DiscreteMeasure::logtime(ctx.time);
  const auto qv = exponent_values(sp.q, mu);
  auto t = ctx.time.t();
  std::vector<double> weight(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) weight[j] = std::pow(t[j], sp.k - sp.alpha);
  std::vector<double> outer(gm.size());
  parallel_for(gm.size(), [&](std::size_t i) {
    std::vector<double> column(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) column[j] = weight[j] * D[j][i];
    outer[i] = luxemburg_norm(column, qv, mu).value;
  });
  return luxemburg_norm(outer, sp.p, gm).value;
}

double seminorm(const HermiteExpansion& f, const SmoothnessParams& sp, SmoothnessSpace space,
                const QuadratureContext& ctx) {
  return space == SmoothnessSpace::besov ? besov_seminorm(f, sp, ctx) : triebel_seminorm(f, sp, ctx);
}

SmoothnessNormReport smoothness_norm(const HermiteExpansion& f, const SmoothnessParams& sp,
                                     SmoothnessSpace space, const QuadratureContext& ctx) {
  SmoothnessNormReport r;
  const DiscreteMeasure gm = DiscreteMeasure::gaussian(ctx.space);
  r.lp_norm = luxemburg_norm(f.as_function(), sp.p, gm).value;
  r.seminorm = seminorm(f, sp, space, ctx);
  r.total = r.lp_norm + r.seminorm;
  r.k_used = sp.k;
  r.grid_meta = grid_meta(ctx);
  return r;
}

SmoothnessNormReport besov_norm(const HermiteExpansion& f, const SmoothnessParams& sp,
                                const QuadratureContext& ctx) {
  return smoothness_norm(f, sp, SmoothnessSpace::besov, ctx);
}

SmoothnessNormReport triebel_norm(const HermiteExpansion& f, const SmoothnessParams& sp,
                                  const QuadratureContext& ctx) {
  return smoothness_norm(f, sp, SmoothnessSpace::triebel, ctx);
}

double besov_infty_constant(const HermiteExpansion& f, const SmoothnessParams& sp,
                            const QuadratureContext& ctx) {
  sp.validate();
  const auto D = derivative_tensor(f, sp.k, ctx);
  const DiscreteMeasure gm = DiscreteMeasure::gaussian(ctx.space);
  const auto pv = exponent_values(sp.p, gm);
  auto t = ctx.time.t();
  std::vector<double> v(t.size());
  parallel_for(t.size(), [&](std::size_t j) {
    v[j] = std::pow(t[j], sp.k - sp.alpha) * luxemburg_norm(D[j], pv, gm).value;
  });
  return *std::max_element(v.begin(), v.end());
}

MembershipReport membership(const HermiteExpansion& f, const SmoothnessParams& sp, SmoothnessSpace space,
                            const QuadratureContext& ctx) {
  MembershipReport m;
  m.norm = smoothness_norm(f, sp, space, ctx).total;
  m.norm_doubled = smoothness_norm(f, sp, space, truncation_doubled(ctx)).total;
  m.rel_change = rel_change(m.norm, m.norm_doubled);
  m.member = std::isfinite(m.norm) && m.rel_change < kMembershipTol;
  return m;
}

EquivalenceRatio equivalence_ratio(const HermiteExpansion& f, const SmoothnessParams& sp, int l,
                                   const QuadratureContext& ctx) {
  require(l != sp.k, "equivalence_ratio: l must differ from k");
  SmoothnessParams alt = sp;
  alt.k = l;
  alt.validate();
  auto ratio = [](double a, double b) {
    if (b == 0.0) {
      if (a == 0.0) return 1.0;
      throw ConvergenceError("equivalence_ratio: zero denominator with nonzero numerator");
    }
    return a / b;
  };
  EquivalenceRatio r;
  r.ratio_besov = ratio(besov_seminorm(f, sp, ctx), besov_seminorm(f, alt, ctx));
  r.ratio_tl = ratio(triebel_seminorm(f, sp, ctx), triebel_seminorm(f, alt, ctx));
  return r;
}

namespace {

InclusionReport run_inclusion(const HermiteExpansion& f, double alpha1, double alpha2, const ExponentFunction& q1,
                              const ExponentFunction& q2, const ExponentFunction& p, SmoothnessSpace space,
                              const QuadratureContext& ctx, InclusionReport rep) {
  const auto src = SmoothnessParams::make(alpha1, p, q1);
  const auto dst = SmoothnessParams::make(alpha2, p, q2);
  rep.source = membership(f, src, space, ctx);
  rep.target = membership(f, dst, space, ctx);
  rep.ratio = rep.source.norm > 0 ? rep.target.norm / rep.source.norm : 0.0;
  rep.holds = !rep.source.member || rep.target.member;
  return rep;
}

bool pointwise(const ExponentFunction& a, const ExponentFunction& b, const LogGrid& grid, bool strict) {
  for (double t : grid.t()) {
    const double x = a.at(t), y = b.at(t);
    if (strict ? !(x > y) : !(x <= y)) return false;
  }
  return true;
}

}  // namespace

InclusionReport inclusion_check_besov(const HermiteExpansion& f, double alpha1, double alpha2,
                                      const ExponentFunction& q1, const ExponentFunction& q2,
                                      const ExponentFunction& p, const QuadratureContext& ctx) {
  InclusionReport rep;
  if (alpha1 > alpha2 && alpha2 > 0) {
    rep.hypothesis = "i: alpha1 > alpha2 > 0";
    rep.side_lower = side_norm(alpha1 - alpha2, true, q2, ctx.time.spec());
    rep.side_upper = side_norm(-alpha2, false, q2, ctx.time.spec());
    if (!std::isfinite(rep.side_lower) || !std::isfinite(rep.side_upper))
      throw HypothesisError("besov inclusion: side condition norms are not finite for q2 = " + q2.descriptor());
  } else if (alpha1 == alpha2 && pointwise(q1, q2, ctx.time, false)) {
    rep.hypothesis = "ii: alpha1 = alpha2, q1 <= q2";
  } else {
    throw HypothesisError("besov inclusion: needs alpha1 > alpha2 > 0, or alpha1 = alpha2 with q1 <= q2");
  }
  return run_inclusion(f, alpha1, alpha2, q1, q2, p, SmoothnessSpace::besov, ctx, rep);
}

InclusionReport inclusion_check_tl(const HermiteExpansion& f, double alpha1, double alpha2,
                                   const ExponentFunction& q1, const ExponentFunction& q2,
                                   const ExponentFunction& p, const QuadratureContext& ctx) {
  if (!(alpha1 > alpha2 && alpha2 > 0) || !pointwise(q1, q2, ctx.time, true))
    throw HypothesisError("triebel inclusion: needs alpha1 > alpha2 > 0 and q1 > q2");
  InclusionReport rep;
  rep.hypothesis = "alpha1 > alpha2 > 0, q1 > q2";
  return run_inclusion(f, alpha1, alpha2, q1, q2, p, SmoothnessSpace::triebel, ctx, rep);
}

int shared_k(std::initializer_list<double> alphas) {
  double m = 0.0;
  for (double a : alphas) m = std::max(m, a);
  return static_cast<int>(std::floor(m)) + 1;
}

InterpolationReport interpolation_check(const HermiteExpansion& f, double alpha0, const ExponentFunction& p0,
                                        const ExponentFunction& q0, double alpha1, const ExponentFunction& p1,
                                        const ExponentFunction& q1, double theta, SmoothnessSpace space,
                                        const QuadratureContext& ctx, double tol) {
  require(theta > 0.0 && theta < 1.0, "interpolation_check: need 0 < theta < 1");
  for (const auto* e : {&p0, &p1, &q0, &q1})
    require(e->p_minus() > 1.0, "interpolation_check: exponents need p_minus > 1 (" + e->descriptor() + ")");
  InterpolationReport r;
  r.k = shared_k({alpha0, alpha1});
  r.alpha = (1.0 - theta) * alpha0 + theta * alpha1;
  const ExponentFunction p = interpolate(p0, p1, theta);
  const ExponentFunction q = interpolate(q0, q1, theta);
  r.p_desc = p.descriptor();
  r.q_desc = q.descriptor();
  const auto sp = SmoothnessParams::make(r.alpha, p, q, r.k);
  const auto sp0 = SmoothnessParams::make(alpha0, p0, q0, r.k);
  const auto sp1 = SmoothnessParams::make(alpha1, p1, q1, r.k);
  r.lhs = seminorm(f, sp, space, ctx);
  r.rhs = 4.0 * std::pow(seminorm(f, sp0, space, ctx), 1.0 - theta) * std::pow(seminorm(f, sp1, space, ctx), theta);
  r.ratio = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
  r.holds = r.lhs <= r.rhs + tol * std::max(1.0, r.rhs);
  return r;
}

std::pair<double, double> power_norm_identity_check(std::span<const double> f, double s,
                                                    const ExponentFunction& p, const DiscreteMeasure& m) {
  require(s > 0 && s * p.p_minus() >= 1.0 - 1e-12, "power_norm_identity_check: need s p_minus >= 1");
  std::vector<double> fs(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fs[i] = std::pow(std::abs(f[i]), s);
  const double lhs = luxemburg_norm(fs, p, m).value;
  const double rhs = std::pow(luxemburg_norm(f, scaled(p, s), m).value, s);
  return {lhs, rhs};
}

InequalityReport log_convexity_check(std::span<const double> f, const ExponentFunction& r0,
                                     const ExponentFunction& r1, double lambda, const DiscreteMeasure& m,
                                     double tol) {
  require(lambda > 0.0 && lambda < 1.0, "log_convexity_check: need 0 < lambda < 1");
  require(r0.p_minus() > 1.0 && r1.p_minus() > 1.0, "log_convexity_check: need r_minus > 1");
  const ExponentFunction r = interpolate(r0, r1, lambda);
  InequalityReport rep;
  rep.lhs = luxemburg_norm(f, r, m).value;
  rep.rhs = 2.0 * std::pow(luxemburg_norm(f, r0, m).value, 1.0 - lambda) *
            std::pow(luxemburg_norm(f, r1, m).value, lambda);
  rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : 0.0;
  rep.holds = rep.lhs <= rep.rhs + tol * std::max(1.0, rep.rhs);
  return rep;
}

DecayReport decay_check(const HermiteExpansion& f, const ExponentFunction& p, int k,
                        std::span<const double> t_grid, const GaussianGrid& space) {
  require(!t_grid.empty(), "decay_check: empty time grid");
  const DiscreteMeasure gm = DiscreteMeasure::gaussian(space);
  const auto pv = exponent_values(p, gm);
  DecayReport r;
  r.t.assign(t_grid.begin(), t_grid.end());
  std::sort(r.t.begin(), r.t.end());
  r.values.resize(r.t.size());
  parallel_for(r.t.size(), [&](std::size_t j) {
    const auto d = ph_derivative(f, r.t[j], k);
    r.values[j] = luxemburg_norm(gm.sample(d.as_function()), pv, gm).value;
  });
  double running_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < r.t.size(); ++j) {
    if (j > 0 && r.values[j] > 0) {
      const double g = running_min > 0 ? r.values[j] / running_min : std::numeric_limits<double>::infinity();
      r.growth_constant = std::max(r.growth_constant, g);
    }
    running_min = std::min(running_min, r.values[j]);
    r.scaled_sup = std::max(r.scaled_sup, std::pow(r.t[j], k) * r.values[j]);
  }
  return r;
}

std::vector<HermiteExpansion> smoothness_test_family(int dim, std::uint64_t seed) {
  require(dim >= 1 && dim <= kMaxDimension, "smoothness_test_family: unsupported dimension");
  auto axis = [dim](int n) {
    std::vector<int> e(dim, 0);
    e[0] = n;
    return MultiIndex(e);
  };
  std::vector<HermiteExpansion> out;
  auto add = [&](std::initializer_list<std::pair<int, double>> terms) {
    HermiteExpansion f(dim);
    for (const auto& [n, c] : terms) f.set(axis(n), c);
    out.push_back(f);
  };
  add({{1, 1.0}});
  add({{2, 1.0}});
  add({{4, 1.0}});
  add({{1, 1.0}, {3, 1.0}});
  add({{2, 1.0}, {5, -0.5}});
  add({{0, 0.3}, {1, 1.0}, {6, -1.0}});
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const auto indices = multi_indices_up_to(dim, dim == 1 ? 8 : 4);
  while (out.size() < 10) {
    HermiteExpansion f(dim);
    for (const auto& nu : indices) f.set(nu, coef(gen));
    out.push_back(f);
  }
  return out;
}

}  // namespace gvs
