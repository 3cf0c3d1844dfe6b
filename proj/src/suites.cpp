#include "gvs/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "gvs/errors.hpp"
#include "gvs/exponent.hpp"
#include "gvs/hardy.hpp"
#include "gvs/hermite.hpp"
#include "gvs/lebesgue.hpp"
#include "gvs/literal.hpp"
#include "gvs/numeric.hpp"
#include "gvs/quadrature.hpp"
#include "gvs/semigroups.hpp"
#include "gvs/smoothness.hpp"
#include "gvs/stable.hpp"

namespace gvs {

namespace {

using Cases = std::vector<CaseResult>;
using Thunk = std::function<Cases()>;
using json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio_of(double lhs, double rhs) {
  if (rhs != 0.0) return lhs / rhs;
  return lhs == 0.0 ? 0.0 : kInf;
}

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

CaseResult make_case(std::string id, double lhs, double rhs, bool pass, std::string inputs = {}) {
  CaseResult c;
  c.case_id = std::move(id);
  c.inputs = std::move(inputs);
  c.lhs = lhs;
  c.rhs = rhs;
  c.ratio = ratio_of(lhs, rhs);
  c.pass = pass;
  return c;
}

// Drift case: lhs at default resolution, rhs refined; passes when both are
// finite and the relative change is within tol.
CaseResult drift_case(std::string id, double coarse, double fine, double tol, std::string inputs = {}) {
  const bool ok = std::isfinite(coarse) && std::isfinite(fine) && rel_diff(coarse, fine) <= tol;
  return make_case(std::move(id), coarse, fine, ok, std::move(inputs));
}

Cases run_thunks(const std::vector<Thunk>& thunks, bool parallel) {
  std::vector<Cases> parts(thunks.size());
  parallel_for(thunks.size(), [&](std::size_t i) { parts[i] = thunks[i](); }, parallel ? 0u : 1u, 1);
  Cases out;
  for (auto& p : parts)
    for (auto& c : p) out.push_back(std::move(c));
  return out;
}

Thunk single(std::function<CaseResult()> f) {
  return [f = std::move(f)] { return Cases{f()}; };
}

json log_grid_meta(const LogGridSpec& s) {
  return json{{"t_min", s.t_min}, {"t_max", s.t_max}, {"panels", s.panels}, {"order", s.order}};
}

json base_meta(const SuiteConfig& cfg) {
  return json{{"seed", cfg.seed}, {"grid_scale", grid_scale()}};
}

json smoothness_meta(const QuadratureContext& ctx) {
  const GridMeta g = grid_meta(ctx);
  return json{{"dim", g.dim},
              {"hermite_nodes", g.hermite_nodes},
              {"t_min", g.t_min},
              {"t_max", g.t_max},
              {"time_nodes", g.time_nodes}};
}

struct Built {
  std::vector<Thunk> thunks;
  json meta;
};

// ---------------------------------------------------------------- semigroups

// Relative error of an eigenrelation value, with |h(x)| floored at 1 so
// nodal zeros of h do not inflate it.
double eigen_error(double got, double factor, double h) {
  return std::abs(got - factor * h) / (factor * std::max(1.0, std::abs(h)));
}

std::vector<std::vector<double>> sample_points(std::uint64_t seed, int dim, int count) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& x : p) x = u(gen);
  return pts;
}

Built eigen_suite(const SuiteConfig& cfg, bool poisson) {
  Built b;
  b.meta = base_meta(cfg);
  constexpr double kTol = 1e-5;
  for (int d = 1; d <= 2; ++d) {
    // Subordination only needs the shifted Mehler form, which is exact for
    // polynomials of degree < 2n; a small rule suffices.
    const int nodes = poisson ? (d == 1 ? 16 : 8) : scaled_count(d == 1 ? 64 : 40, 8);
    auto grid = std::make_shared<GaussianGrid>(d, nodes);
    b.meta["hermite_nodes_d" + std::to_string(d)] = nodes;
    auto pts = std::make_shared<std::vector<std::vector<double>>>(sample_points(cfg.seed + d, d, 20));
    for (const auto& nu : multi_indices_up_to(d, 6)) {
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        b.thunks.push_back(single([=] {
          const auto h = HermiteExpansion::single(nu).as_function();
          const double lambda = poisson ? std::sqrt(double(nu.order())) : double(nu.order());
          const double factor = std::exp(-t * lambda);
          double worst = 0.0;
          for (const auto& x : *pts) {
            const double got = poisson ? ph_apply_subordination(h, t, x, *grid) : ou_apply_kernel(h, t, x, *grid);
            worst = std::max(worst, eigen_error(got, factor, hermite_multi(nu, x)));
          }
          return make_case("d=" + std::to_string(d) + " nu=" + nu.to_string() + " t=" + num(t), worst, kTol,
                           worst <= kTol, "20 points, max relative error");
        }));
      }
    }
  }
  return b;
}

// ------------------------------------------------------------ stable measure

Built stable_derivatives_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  for (int k = 0; k <= 8; ++k) {
    b.thunks.push_back(single([k] {
      const auto& d = stable_derivative_terms(k);
      int bad = 0;
      for (const auto& [key, a] : d.terms())
        if (2 * key.second - key.first != k || a == Rational(0)) ++bad;
      auto c = make_case("structure k=" + std::to_string(k), bad, 0.0, bad == 0 && d.order() == k,
                         std::to_string(d.terms().size()) + " terms, lhs counts terms with 2j-i != k");
      c.k = k;
      return c;
    }));
  }
  constexpr double kTol = 1e-5;
  for (int k = 1; k <= 4; ++k) {
    std::mt19937_64 gen(cfg.seed + 31 * k);
    std::uniform_real_distribution<double> u(0.2, 5.0);
    auto ts = std::make_shared<std::vector<std::pair<double, double>>>();
    for (int n = 0; n < 50; ++n) {
      const double t = u(gen), s = u(gen);
      ts->emplace_back(t, s);
    }
    b.thunks.push_back(single([k, ts] {
      const auto& d = stable_derivative_terms(k);
      double worst = 0.0;
      for (const auto& [t, s] : *ts) {
        // The density formula is analytic in t on the whole line, so the
        // stencil may cross t = 0; the step follows the width sqrt(s).
        auto g = [s = s](double v) {
          return v / (2.0 * std::sqrt(std::numbers::pi)) * std::exp(-v * v / (4.0 * s)) * std::pow(s, -1.5);
        };
        const double fd = richardson_derivative(g, t, k, 0.25 * std::sqrt(s));
        // Scale: sum of absolute term values, so cancellation does not inflate the error.
        double scale = 0.0;
        for (const auto& [key, a] : d.terms())
          scale += std::abs(boost::rational_cast<double>(a)) * std::pow(t, key.first) * std::pow(s, -key.second);
        scale *= stable_density(t, s);
        worst = std::max(worst, std::abs(d.evaluate(t, s) - fd) / scale);
      }
      auto c = make_case("finite-difference k=" + std::to_string(k), worst, kTol, worst <= kTol,
                         "50 points (t, s) in [0.2, 5]^2");
      c.k = k;
      return c;
    }));
  }
  return b;
}

Built lemma_moment_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  constexpr double kTol = 1e-8;
  for (int k = 1; k <= 4; ++k)
    for (double t : {0.5, 1.0, 2.0})
      b.thunks.push_back(single([k, t] {
        const double q = stable_moment_quadrature(k, t), exact = moment_constant(k) / std::pow(t, 2 * k);
        auto c = make_case("k=" + std::to_string(k) + " t=" + num(t), q, exact, rel_diff(q, exact) <= kTol,
                           "quadrature vs closed form");
        c.k = k;
        return c;
      }));
  for (auto [k, v] : {std::pair{1, 2.0}, std::pair{2, 12.0}})
    b.thunks.push_back(single([k = k, v = v] {
      auto c = make_case("constant k=" + std::to_string(k), moment_constant(k), v, moment_constant(k) == v,
                         "exact value");
      c.k = k;
      return c;
    }));
  return b;
}

Built corollary_tv_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  for (int k = 1; k <= 4; ++k)
    b.thunks.push_back(single([k] {
      double lo = kInf, hi = 0.0;
      std::string inputs;
      for (double t : {0.5, 1.0, 2.0, 4.0}) {
        const double v = std::pow(t, k) * stable_tv_derivative(k, t);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        inputs += (inputs.empty() ? "" : " ") + ("t=" + num(t) + ":" + num(v));
      }
      // lhs = max, rhs = min of t^k TV over the four times.
      auto c = make_case("k=" + std::to_string(k), hi, lo, std::isfinite(hi) && hi <= 1.01 * lo, inputs);
      c.k = k;
      return c;
    }));
  return b;
}

Built lemma_maximal_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  const auto coarse = std::make_shared<std::vector<double>>(default_t_grid());
  const auto fine = std::make_shared<std::vector<double>>(log_spaced(1e-3, 50, 2 * static_cast<int>(coarse->size())));
  b.meta["t_nodes"] = coarse->size();
  b.meta["t_nodes_refined"] = fine->size();
  std::mt19937_64 gen(cfg.seed + 7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const auto f = std::make_shared<HermiteExpansion>(random_expansion(6, cfg.seed + 100 + i));
    const double x = u(gen);
    for (int k = 1; k <= 3; ++k)
      b.thunks.push_back(single([=] {
        const double xs[] = {x};
        const double a = ph_derivative_bound_check(*f, xs, k, *coarse);
        const double r = ph_derivative_bound_check(*f, xs, k, *fine);
        auto c = drift_case("f" + std::to_string(i) + " x=" + num(x) + " k=" + std::to_string(k), a, r, 0.05,
                            "sup_t t^k |d^k P_t f(x)| / T*f(x), default vs refined t grid");
        c.k = k;
        return c;
      }));
  }
  return b;
}

// ------------------------------------------------------------ variable Lebesgue

DiscreteMeasure logtime_measure(std::vector<double> breaks, const LogGridSpec& base = LogGridSpec::defaults()) {
  LogGridSpec spec = base;
  spec.breakpoints = std::move(breaks);
  return DiscreteMeasure::logtime(LogGrid(spec));
}

Built norm_lemma_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  b.meta["log_grid"] = log_grid_meta(LogGridSpec::defaults());
  const std::vector<ExponentFunction> qs = {ExponentFunction::time_family(1.5, 3), ExponentFunction::time_family(3, 1.2)};
  for (const auto& q : qs) {
    // i) t^a e^{-bt}: finite and stable under truncation doubling.
    for (double a : {0.5, 1.0, 2.0})
      for (double bb : {0.5, 1.0, 2.0})
        b.thunks.push_back(single([=] {
          auto f = [=](double t) { return std::pow(t, a) * std::exp(-bb * t); };
          const double v = logtime_norm_converged(f, q).norm.value;
          const double w = logtime_norm_converged(f, q, LogGridSpec::defaults().doubled_truncation()).norm.value;
          auto c = drift_case("i a=" + num(a) + " b=" + num(bb), v, w, 1e-6,
                              "t^a e^{-bt}, default vs doubled truncation");
          c.q_desc = q.descriptor();
          return c;
        }));
    // ii) t^a on (0, 1] and iii) t^{-a} on (1, inf).
    for (double a : {0.5, 1.0, 2.0})
      for (int part : {2, 3})
        b.thunks.push_back(single([=] {
          auto f = [=](double t) {
            if (part == 2) return t <= 1.0 ? std::pow(t, a) : 0.0;
            return t > 1.0 ? std::pow(t, -a) : 0.0;
          };
          const auto m0 = logtime_measure({1.0});
          const auto m1 = logtime_measure({1.0}, LogGridSpec::defaults().doubled_truncation());
          const double v = luxemburg_norm(m0.sample_t(f), q, m0).value;
          const double w = luxemburg_norm(m1.sample_t(f), q, m1).value;
          auto c = drift_case(std::string(part == 2 ? "ii" : "iii") + " a=" + num(a), v, w, 1e-6,
                              part == 2 ? "t^a on (0,1]" : "t^-a on (1,inf)");
          c.q_desc = q.descriptor();
          return c;
        }));
    // iv) (ln 2)^{1/q_-} <= ||chi_[t0/2, t0]|| <= 1.
    for (double t0 : {0.1, 1.0, 10.0})
      b.thunks.push_back(single([=] {
        const auto m = logtime_measure({t0 / 2, t0});
        const auto chi = m.sample_t([t0](double t) { return (t >= t0 / 2 && t <= t0) ? 1.0 : 0.0; });
        const double v = luxemburg_norm(chi, q, m).value;
        const double lower = std::pow(std::log(2.0), 1.0 / q.p_minus());
        auto c = make_case("iv t0=" + num(t0), v, 1.0, v >= lower - 1e-10 && v <= 1.0 + 1e-10,
                           "lower bound " + num(lower));
        c.q_desc = q.descriptor();
        return c;
      }));
  }
  // Constant exponents: Luxemburg norm equals (int |f|^p)^{1/p}.
  const auto m = std::make_shared<DiscreteMeasure>(DiscreteMeasure::gaussian(GaussianGrid(1, default_hermite_nodes())));
  std::mt19937_64 gen(cfg.seed + 5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (double p0 : {1.0, 1.5, 2.0, 3.0, 7.0})
    for (int trial = 0; trial < 3; ++trial) {
      auto f = std::make_shared<std::vector<double>>(m->size());
      for (auto& v : *f) v = u(gen);
      b.thunks.push_back(single([=] {
        std::vector<double> terms(f->size());
        for (std::size_t i = 0; i < f->size(); ++i) terms[i] = m->weights()[i] * std::pow(std::abs((*f)[i]), p0);
        const double direct = std::pow(pairwise_sum(terms), 1.0 / p0);
        const auto p = ExponentFunction::constant(p0);
        const double lux = luxemburg_norm(*f, p, *m).value;
        auto c = make_case("constant p=" + num(p0) + " trial=" + std::to_string(trial), lux, direct,
                           rel_diff(lux, direct) <= 1e-8, "random node values on gamma_1");
        c.p_desc = p.descriptor();
        return c;
      }));
    }
  return b;
}

std::vector<double> expansion_samples(const HermiteExpansion& f, const DiscreteMeasure& m) {
  return m.sample(f.as_function());
}

Built holder_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  const auto m = std::make_shared<DiscreteMeasure>(DiscreteMeasure::gaussian(GaussianGrid(1, default_hermite_nodes())));
  b.meta["hermite_nodes"] = m->size();
  const std::vector<std::pair<ExponentFunction, ExponentFunction>> pairs = {
      {ExponentFunction::constant(3), ExponentFunction::constant(1.5)},
      {ExponentFunction::gaussian_family(3, 1), ExponentFunction::gaussian_family(1.5, 0.5)},
      {ExponentFunction::constant(2), ExponentFunction::gaussian_family(2, 2)},
  };
  std::mt19937_64 gen(cfg.seed + 8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    auto f = std::make_shared<std::vector<double>>(), g = std::make_shared<std::vector<double>>();
    if (i % 2 == 0) {
      *f = expansion_samples(random_expansion(6, cfg.seed + 1000 + i), *m);
      *g = expansion_samples(random_expansion(4, cfg.seed + 2000 + i), *m);
    } else {
      f->resize(m->size());
      g->resize(m->size());
      for (auto& v : *f) v = u(gen);
      for (auto& v : *g) v = u(gen);
    }
    const auto [q, r] = pairs[i % pairs.size()];
    b.thunks.push_back(single([=] {
      const auto rep = holder_check(*f, *g, q, r, *m);
      auto c = make_case("case " + std::to_string(i), rep.lhs, rep.rhs, rep.holds,
                         std::string(i % 2 == 0 ? "expansions" : "random node values") + ", r=" + r.descriptor() +
                             ", rhs includes the factor 2");
      c.p_desc = holder_exponent(q, r).descriptor();
      c.q_desc = q.descriptor();
      return c;
    }));
  }
  return b;
}

Built minkowski_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  const auto outer = std::make_shared<DiscreteMeasure>(DiscreteMeasure::gaussian(GaussianGrid(1, scaled_count(48, 8))));
  const auto inner = std::make_shared<DiscreteMeasure>(DiscreteMeasure::gaussian(GaussianGrid(1, 16)));
  b.meta["outer_nodes"] = outer->size();
  b.meta["inner_nodes"] = inner->size();
  const std::vector<ExponentFunction> ps = {ExponentFunction::constant(2), ExponentFunction::gaussian_family(1.5, 1),
                                            ExponentFunction::constant(3), ExponentFunction::gaussian_family(2, 1.5)};
  std::mt19937_64 gen(cfg.seed + 9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    auto a = std::make_shared<std::vector<double>>(16);
    for (auto& v : *a) v = u(gen);
    const auto p = ps[i % ps.size()];
    b.thunks.push_back(single([=] {
      auto F = [a](std::span<const double> x, std::span<const double> y) {
        double hx[4], hy[4];
        hermite_1d_all(3, x[0], hx);
        hermite_1d_all(3, y[0], hy);
        double s = 0.0;
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) s += (*a)[4 * r + c] * hx[r] * hy[c];
        return s;
      };
      const auto rep = minkowski_check(F, p, *outer, *inner);
      auto c = make_case("case " + std::to_string(i), rep.lhs, rep.rhs, rep.holds,
                         "F = sum a_ij h_i(x) h_j(y), i, j <= 3; rhs includes the factor 4");
      c.p_desc = p.descriptor();
      return c;
    }));
  }
  return b;
}

Built conjugate_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  const auto m = std::make_shared<DiscreteMeasure>(DiscreteMeasure::gaussian(GaussianGrid(1, default_hermite_nodes())));
  const std::vector<ExponentFunction> ps = {ExponentFunction::constant(2), ExponentFunction::gaussian_family(1.5, 1),
                                            ExponentFunction::constant(3), ExponentFunction::gaussian_family(2, 1)};
  for (int i = 0; i < 12; ++i) {
    const auto p = ps[i % ps.size()];
    const auto f = std::make_shared<HermiteExpansion>(random_expansion(5, cfg.seed + 300 + i));
    b.thunks.push_back(single([=] {
      const auto fv = expansion_samples(*f, *m);
      const auto pv = p.sample(
          [&] {
            std::vector<double> pts(m->size());
            for (std::size_t j = 0; j < m->size(); ++j) pts[j] = m->point(j)[0];
            return pts;
          }(),
          1);
      std::vector<std::vector<double>> cands;
      for (int n = 0; n <= 8; ++n) cands.push_back(expansion_samples(HermiteExpansion::basis(n), *m));
      // Near-extremal candidate |f|^{p-1} sign f.
      std::vector<double> dual(fv.size());
      for (std::size_t j = 0; j < fv.size(); ++j)
        dual[j] = std::copysign(std::pow(std::abs(fv[j]), pv[j] - 1.0), fv[j]);
      cands.push_back(dual);
      const auto rep = conjugate_lower_bound(fv, p, *m, cands);
      auto c = make_case("case " + std::to_string(i), rep.lower_bound, 2.0 * rep.norm, rep.holds,
                         "10 candidates; rhs = 2 ||f||");
      c.p_desc = p.descriptor();
      return c;
    }));
  }
  return b;
}

// ------------------------------------------------------------------- Hardy

Built hardy_suite(const SuiteConfig& cfg, HardySide side) {
  Built b;
  b.meta = base_meta(cfg);
  b.meta["log_grid"] = log_grid_meta(LogGridSpec::defaults());
  b.meta["family_size"] = hardy_test_family().size();
  const std::vector<ExponentFunction> qs = {ExponentFunction::constant(2), ExponentFunction::time_family(1.5, 3),
                                            ExponentFunction::time_family(3, 1.5)};
  for (double r : {0.25, 0.5, 1.0, 2.0})
    for (const auto& q : qs)
      b.thunks.push_back(single([=] {
        const auto spec = LogGridSpec::defaults();
        const auto a = hardy_empirical_constant(r, q, side, spec);
        const auto d = hardy_empirical_constant(r, q, side, spec.doubled_resolution());
        auto c = drift_case("r=" + num(r), a.sup_ratio, d.sup_ratio, 0.02,
                            "sup over family, default vs doubled panels; argmax " + a.argmax);
        c.q_desc = q.descriptor();
        return c;
      }));
  return b;
}

// -------------------------------------------------------------- smoothness

struct SharedContexts {
  QuadratureContext base = smoothness_context(1);
  QuadratureContext fine = refined(base);
};

const SharedContexts& contexts() {
  static const SharedContexts c;
  return c;
}

Built equivalence_suite(const SuiteConfig& cfg, SmoothnessSpace space) {
  Built b;
  b.meta = base_meta(cfg);
  b.meta["default"] = smoothness_meta(contexts().base);
  b.meta["refined"] = smoothness_meta(contexts().fine);
  const auto family = std::make_shared<std::vector<HermiteExpansion>>(smoothness_test_family(1, cfg.seed));
  const auto p = ExponentFunction::gaussian_family(1.5, 1);
  const auto q = ExponentFunction::time_family(1.5, 3);
  for (double alpha : {0.3, 0.8, 1.4})
    for (auto [k, l] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{1, 3}}) {
      if (k <= alpha || l <= alpha) continue;
      for (std::size_t i = 0; i < family->size(); ++i)
        b.thunks.push_back(single([=, k = k, l = l] {
          const auto sk = SmoothnessParams::make(alpha, p, q, k), sl = SmoothnessParams::make(alpha, p, q, l);
          auto ratio = [&](const QuadratureContext& ctx) {
            const double a = seminorm((*family)[i], sk, space, ctx), d = seminorm((*family)[i], sl, space, ctx);
            if (d == 0.0) return a == 0.0 ? 1.0 : kInf;
            return a / d;
          };
          const double r0 = ratio(contexts().base), r1 = ratio(contexts().fine);
          auto c = drift_case("f" + std::to_string(i) + " k=" + std::to_string(k) + " l=" + std::to_string(l), r0,
                              r1, 0.05, "seminorm_k / seminorm_l, default vs refined grid");
          c.pass = c.pass && r0 > 0.0;
          c.alpha = alpha;
          c.k = k;
          c.p_desc = p.descriptor();
          c.q_desc = q.descriptor();
          return c;
        }));
    }
  return b;
}

Built kdecay_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  const auto coarse = std::make_shared<std::vector<double>>(default_t_grid());
  const auto fine = std::make_shared<std::vector<double>>(log_spaced(1e-3, 50, 2 * static_cast<int>(coarse->size())));
  const auto grid = std::make_shared<GaussianGrid>(1, default_hermite_nodes());
  b.meta["t_nodes"] = coarse->size();
  b.meta["hermite_nodes"] = grid->size();
  const auto family = std::make_shared<std::vector<HermiteExpansion>>(smoothness_test_family(1, cfg.seed));
  const auto p = ExponentFunction::gaussian_family(1.5, 1);
  for (std::size_t i = 0; i < family->size(); ++i)
    for (int k = 1; k <= 3; ++k)
      b.thunks.push_back([=] {
        const auto a = decay_check((*family)[i], p, k, *coarse, *grid);
        const auto r = decay_check((*family)[i], p, k, *fine, *grid);
        const std::string id = "f" + std::to_string(i) + " k=" + std::to_string(k);
        auto g = drift_case(id + " growth", a.growth_constant, r.growth_constant, 0.05,
                            "max over s < t of v(t)/v(s), default vs refined t grid");
        auto s = drift_case(id + " t^k sup", a.scaled_sup, r.scaled_sup, 0.05,
                            "sup t^k ||d^k P_t f||, default vs refined t grid");
        for (auto* c : {&g, &s}) {
          c->k = k;
          c->p_desc = p.descriptor();
        }
        return Cases{g, s};
      });
  return b;
}

struct InclusionSpec {
  double alpha1, alpha2;
  std::string q1, q2, p;
};

CaseResult inclusion_case(const std::string& id, const std::string& f_text, const InclusionSpec& s,
                          SmoothnessSpace space, bool expect_reject) {
  const auto f = parse_function_literal(f_text);
  const auto q1 = parse_exponent(s.q1), q2 = parse_exponent(s.q2), p = parse_exponent(s.p);
  const auto& ctx = contexts().base;
  const std::string inputs = "f=" + f_text + " a1=" + num(s.alpha1) + " a2=" + num(s.alpha2) + " q1=" + s.q1 +
                             " q2=" + s.q2;
  auto run = [&] {
    return space == SmoothnessSpace::besov ? inclusion_check_besov(f, s.alpha1, s.alpha2, q1, q2, p, ctx)
                                           : inclusion_check_tl(f, s.alpha1, s.alpha2, q1, q2, p, ctx);
  };
  CaseResult c;
  if (expect_reject) {
    std::string what = "accepted";
    bool rejected = false;
    try {
      run();
    } catch (const HypothesisError& e) {
      rejected = true;
      what = std::string("rejected: ") + e.what();
    }
    c = make_case(id, 0.0, 0.0, rejected, inputs + "; " + what);
  } else {
    const auto r = run();
    c = make_case(id, r.source.norm, r.target.norm, r.holds && r.source.member,
                  inputs + "; " + r.hypothesis + "; lhs source norm, rhs target norm");
  }
  c.alpha = s.alpha1;
  c.p_desc = p.descriptor();
  c.q_desc = q1.descriptor() + "->" + q2.descriptor();
  return c;
}

Built inclusion_suite(const SuiteConfig& cfg, SmoothnessSpace space) {
  Built b;
  b.meta = base_meta(cfg);
  b.meta["default"] = smoothness_meta(contexts().base);
  if (cfg.inclusion) {
    const auto& u = *cfg.inclusion;
    const InclusionSpec s{u.alpha1, u.alpha2, u.q1, u.q2, u.p};
    // Validate eagerly so hypothesis violations surface as errors.
    const auto rep = inclusion_case("user", u.f, s, space, false);
    b.thunks.push_back(single([rep] { return rep; }));
    return b;
  }
  const bool besov = space == SmoothnessSpace::besov;
  const std::vector<InclusionSpec> valid =
      besov ? std::vector<InclusionSpec>{{1.5, 0.5, "const:2", "const:3", "const:2"},
                                         {0.8, 0.3, "time:1.5:3", "const:2", "gaussian:1.5:1"},
                                         {0.5, 0.5, "const:2", "const:4", "const:2"},
                                         {0.7, 0.7, "time:1.5:3", "const:3", "gaussian:1.5:1"}}
            : std::vector<InclusionSpec>{{1.5, 0.5, "const:3", "const:2", "const:2"},
                                         {0.8, 0.3, "time:3:2.5", "const:2", "gaussian:1.5:1"},
                                         {1.2, 0.4, "time:2.5:3", "time:1.5:2", "const:3"}};
  const std::vector<InclusionSpec> invalid =
      besov ? std::vector<InclusionSpec>{{0.5, 1.5, "const:2", "const:3", "const:2"},
                                         {0.5, 0.5, "const:4", "const:2", "const:2"}}
            : std::vector<InclusionSpec>{{1.5, 0.5, "const:2", "const:3", "const:2"},
                                         {0.5, 0.5, "const:3", "const:2", "const:2"}};
  const std::vector<std::string> funcs = {"h:2", "expand:[(1,1),(3,1)]", "family:random:6:" + std::to_string(cfg.seed)};
  for (std::size_t i = 0; i < valid.size(); ++i)
    for (std::size_t j = 0; j < funcs.size(); ++j)
      b.thunks.push_back(single([=] {
        return inclusion_case("instance " + std::to_string(i) + " f" + std::to_string(j), funcs[j], valid[i], space, false);
      }));
  for (std::size_t i = 0; i < invalid.size(); ++i)
    b.thunks.push_back(single([=] {
      return inclusion_case("rejection " + std::to_string(i), funcs[0], invalid[i], space, true);
    }));
  return b;
}

Built hermite_membership_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  b.meta["d1"] = smoothness_meta(contexts().base);
  static const QuadratureContext ctx2 = smoothness_context(2);
  b.meta["d2"] = smoothness_meta(ctx2);
  struct Params {
    double alpha;
    std::string p, q;
  };
  const std::vector<Params> variable = {
      {0.5, "const:2", "const:2"}, {1.2, "gaussian:1.5:1", "time:1.5:3"}, {2.5, "const:3", "const:1.5"}};
  auto eq_case = [](const HermiteExpansion& h, const std::string& name, const Params& pr,
                    const QuadratureContext& ctx) {
    const auto sp = SmoothnessParams::make(pr.alpha, parse_exponent(pr.p), parse_exponent(pr.q));
    const double bn = besov_norm(h, sp, ctx).total, tn = triebel_norm(h, sp, ctx).total;
    auto c = make_case("B=F " + name, bn, tn, std::isfinite(bn) && rel_diff(bn, tn) <= 1e-6,
                       "Besov vs Triebel-Lizorkin norm");
    c.alpha = pr.alpha;
    c.k = sp.k;
    c.p_desc = sp.p.descriptor();
    c.q_desc = sp.q.descriptor();
    return c;
  };
  for (int n = 0; n <= 6; ++n)
    for (const auto& pr : variable)
      b.thunks.push_back(single([=] { return eq_case(HermiteExpansion::basis(n), "beta=(" + std::to_string(n) + ")", pr, contexts().base); }));
  for (const auto& nu : {MultiIndex{1, 1}, MultiIndex{2, 3}, MultiIndex{3, 3}, MultiIndex{0, 5}})
    for (const auto& pr : variable)
      b.thunks.push_back(single([=] { return eq_case(HermiteExpansion::single(nu), "beta=" + nu.to_string(), pr, ctx2); }));
  // Constant exponents: (1 + |beta|^{k/2} ||t^{k-a} e^{-t sqrt|beta|}||_{q,dt/t}) ||h_beta||_p.
  const std::vector<std::array<double, 3>> constant = {{0.5, 2, 2}, {1.5, 3, 1.5}, {0.8, 1.5, 3}};
  for (int n = 1; n <= 6; ++n)
    for (const auto& [alpha, p0, q0] : constant)
      b.thunks.push_back(single([=] {
        const auto sp = SmoothnessParams::make(alpha, ExponentFunction::constant(p0), ExponentFunction::constant(q0));
        const auto h = HermiteExpansion::basis(n);
        const auto& ctx = contexts().base;
        const double a = sp.k - alpha, lambda = std::sqrt(double(n));
        const double gamma_norm = std::pow(std::tgamma(a * q0) / std::pow(q0 * lambda, a * q0), 1.0 / q0);
        double lp = 0.0;
        for (std::size_t i = 0; i < ctx.space.size(); ++i)
          lp += ctx.space.weight(i) * std::pow(std::abs(h(ctx.space.point(i))), p0);
        lp = std::pow(lp, 1.0 / p0);
        const double closed = (1.0 + std::pow(n, 0.5 * sp.k) * gamma_norm) * lp;
        const double got = besov_norm(h, sp, ctx).total;
        auto c = make_case("closed form beta=(" + std::to_string(n) + ")", got, closed, rel_diff(got, closed) <= 1e-7,
                           "Besov norm vs Gamma-integral closed form");
        c.alpha = alpha;
        c.k = sp.k;
        c.p_desc = sp.p.descriptor();
        c.q_desc = sp.q.descriptor();
        return c;
      }));
  return b;
}

Built power_identity_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  const auto m = std::make_shared<DiscreteMeasure>(DiscreteMeasure::gaussian(GaussianGrid(1, default_hermite_nodes())));
  constexpr double kTol = 1e-7;
  auto pcase = [](std::string id, std::pair<double, double> v, const ExponentFunction& p, double s) {
    auto c = make_case(std::move(id), v.first, v.second, rel_diff(v.first, v.second) <= kTol,
                       "|| |f|^s ||_p vs ||f||_{sp}^s, s=" + num(s));
    c.p_desc = p.descriptor();
    return c;
  };
  b.thunks.push_back([m, pcase] {
    const auto h1 = expansion_samples(HermiteExpansion::basis(1), *m);
    const auto two = ExponentFunction::constant(2);
    const auto v = power_norm_identity_check(h1, 2, two, *m);
    auto moment = make_case("h1^2 moment", v.first, std::sqrt(3.0), rel_diff(v.first, std::sqrt(3.0)) <= kTol,
                            "||h_1^2||_2 vs sqrt(3)");
    moment.p_desc = two.descriptor();
    return Cases{pcase("h1 s=2", v, two, 2), moment};
  });
  std::mt19937_64 gen(cfg.seed + 19);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 5; ++i) {
    const auto f = std::make_shared<HermiteExpansion>(random_expansion(5, cfg.seed + 400 + i));
    b.thunks.push_back(single([=] {
      const auto p = ExponentFunction::gaussian_family(1.5, 1);
      return pcase("expansion " + std::to_string(i) + " s=1", power_norm_identity_check(expansion_samples(*f, *m), 1, p, *m), p, 1);
    }));
  }
  for (int i = 0; i < 10; ++i) {
    auto f = std::make_shared<std::vector<double>>(m->size());
    for (auto& v : *f) v = u(gen);
    const double s = i % 2 ? 1.5 : 2.5;
    b.thunks.push_back(single([=] {
      const auto p = ExponentFunction::gaussian_family(2, 1);
      return pcase("nonnegative " + std::to_string(i), power_norm_identity_check(*f, s, p, *m), p, s);
    }));
  }
  b.thunks.push_back(single([=] {
    const auto mt = logtime_measure({});
    const auto q = ExponentFunction::time_family(1.5, 3);
    const auto f = mt.sample_t([](double t) { return t * std::exp(-t); });
    return pcase("logtime t e^-t", power_norm_identity_check(f, 2, q, mt), q, 2);
  }));
  return b;
}

Built log_convexity_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  const auto m = std::make_shared<DiscreteMeasure>(DiscreteMeasure::gaussian(GaussianGrid(1, default_hermite_nodes())));
  struct Named {
    std::string name;
    std::vector<double> values;
  };
  auto funcs = std::make_shared<std::vector<Named>>();
  funcs->push_back({"h2", expansion_samples(HermiteExpansion::basis(2), *m)});
  funcs->push_back({"h1+h3", expansion_samples(HermiteExpansion::basis(1) + HermiteExpansion::basis(3), *m)});
  funcs->push_back({"random", expansion_samples(random_expansion(6, cfg.seed + 500), *m)});
  funcs->push_back({"bump", m->sample([](std::span<const double> x) { return 1.0 / (1.0 + std::exp(-8.0 * (1.0 - std::abs(x[0])))); })});
  const std::vector<std::pair<ExponentFunction, ExponentFunction>> pairs = {
      {ExponentFunction::constant(2), ExponentFunction::constant(4)},
      {ExponentFunction::gaussian_family(1.5, 1), ExponentFunction::constant(3)},
      {ExponentFunction::gaussian_family(2, 2), ExponentFunction::gaussian_family(3, 1)}};
  for (std::size_t i = 0; i < funcs->size(); ++i)
    for (const auto& [r0, r1] : pairs)
      for (double lambda : {0.25, 0.5, 0.75})
        b.thunks.push_back(single([=, r0 = r0, r1 = r1] {
          const auto rep = log_convexity_check((*funcs)[i].values, r0, r1, lambda, *m);
          auto c = make_case((*funcs)[i].name + " lambda=" + num(lambda), rep.lhs, rep.rhs, rep.holds,
                             "r0=" + r0.descriptor() + " r1=" + r1.descriptor() + "; rhs includes the factor 2");
          c.p_desc = interpolate(r0, r1, lambda).descriptor();
          return c;
        }));
  b.thunks.push_back(single([] {
    const auto mt = logtime_measure({});
    const auto r0 = ExponentFunction::time_family(1.5, 3), r1 = ExponentFunction::constant(2);
    const auto rep = log_convexity_check(mt.sample_t([](double t) { return t * std::exp(-t); }), r0, r1, 0.5, mt);
    auto c = make_case("logtime t e^-t lambda=0.5", rep.lhs, rep.rhs, rep.holds,
                       "r0=" + r0.descriptor() + " r1=" + r1.descriptor() + "; rhs includes the factor 2");
    c.q_desc = interpolate(r0, r1, 0.5).descriptor();
    return c;
  }));
  return b;
}

Built interpolation_suite(const SuiteConfig& cfg) {
  Built b;
  b.meta = base_meta(cfg);
  b.meta["default"] = smoothness_meta(contexts().base);
  struct Endpoints {
    double a0;
    std::string p0, q0;
    double a1;
    std::string p1, q1;
  };
  const std::vector<Endpoints> ends = {
      {0.25, "const:2", "const:2", 0.75, "const:2", "const:2"},
      {0.3, "gaussian:1.5:1", "const:2", 0.9, "const:3", "const:2"},
      {0.5, "const:2", "time:1.5:3", 1.5, "gaussian:2:1", "const:2"},
  };
  const std::vector<std::string> funcs = {"h:2", "expand:[(1,1),(3,1)]", "family:random:6:" + std::to_string(cfg.seed)};
  for (const auto& fn : funcs)
    for (std::size_t e = 0; e < ends.size(); ++e)
      for (double theta : {0.25, 0.5, 0.75})
        for (auto space : {SmoothnessSpace::besov, SmoothnessSpace::triebel})
          b.thunks.push_back(single([=, en = ends[e]] {
            const auto f = parse_function_literal(fn);
            const auto r = interpolation_check(f, en.a0, parse_exponent(en.p0), parse_exponent(en.q0), en.a1,
                                               parse_exponent(en.p1), parse_exponent(en.q1), theta, space,
                                               contexts().base);
            auto c = make_case(to_string(space) + " f=" + fn + " endpoints " + std::to_string(e) + " theta=" + num(theta),
                               r.lhs, r.rhs, r.holds, "rhs = 4 semi_0^{1-theta} semi_1^theta");
            c.alpha = r.alpha;
            c.k = r.k;
            c.p_desc = r.p_desc;
            c.q_desc = r.q_desc;
            return c;
          }));
  return b;
}

// ---------------------------------------------------------------- registry

struct Entry {
  std::string id;
  std::string anchor;
  std::function<Built(const SuiteConfig&)> build;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {"eigen-ou", "Hermite polynomials are eigenfunctions of the Ornstein-Uhlenbeck semigroup: T_t h_nu = e^{-t|nu|} h_nu",
       [](const SuiteConfig& c) { return eigen_suite(c, false); }},
      {"eigen-ph", "Hermite polynomials are eigenfunctions of the Poisson-Hermite semigroup: P_t h_nu = e^{-t sqrt|nu|} h_nu",
       [](const SuiteConfig& c) { return eigen_suite(c, true); }},
      {"stable-derivatives",
       "t-derivatives of the stable density are finite sums a_ij t^i s^{-j} g(t,s) with 2j - i = k",
       stable_derivatives_suite},
      {"lemma-moment", "negative moments of the stable measure: int s^{-k} mu_t(ds) = C_k / t^{2k}", lemma_moment_suite},
      {"corollary-tv", "total variation of the k-th t-derivative of mu_t is a constant times t^{-k}", corollary_tv_suite},
      {"lemma-maximal", "t^k |d^k P_t f(x)| is bounded by a constant times the Ornstein-Uhlenbeck maximal function",
       lemma_maximal_suite},
      {"norm-lemma-i-iv",
       "power-exponential and cut-off powers have finite q(.)-norms on (0,inf) with dt/t; indicators of [t0/2, t0] have "
       "norm between (ln 2)^{1/q_-} and 1",
       norm_lemma_suite},
      {"holder", "Hoelder inequality in variable Lebesgue spaces with constant 2", holder_suite},
      {"minkowski", "Minkowski integral inequality in variable Lebesgue spaces with constant 4", minkowski_suite},
      {"conjugate", "the associate norm is bounded by twice the Luxemburg norm", conjugate_suite},
      {"hardy-lower", "weighted Hardy inequality for t^{-r} int_0^t g on L^{q(.)}(dt/t)",
       [](const SuiteConfig& c) { return hardy_suite(c, HardySide::lower); }},
      {"hardy-upper", "weighted Hardy inequality for t^{r} int_t^inf g on L^{q(.)}(dt/t)",
       [](const SuiteConfig& c) { return hardy_suite(c, HardySide::upper); }},
      {"besov-equivalence", "the variable Gaussian Besov seminorm does not depend on the derivative order k > alpha",
       [](const SuiteConfig& c) { return equivalence_suite(c, SmoothnessSpace::besov); }},
      {"tl-equivalence",
       "the variable Gaussian Triebel-Lizorkin seminorm does not depend on the derivative order k > alpha",
       [](const SuiteConfig& c) { return equivalence_suite(c, SmoothnessSpace::triebel); }},
      {"kdecay", "||d^k P_t f||_{p(.)} is essentially decreasing in t and bounded by a constant times t^{-k}",
       kdecay_suite},
      {"besov-inclusion", "inclusions between variable Gaussian Besov spaces for decreasing alpha or increasing q",
       [](const SuiteConfig& c) { return inclusion_suite(c, SmoothnessSpace::besov); }},
      {"tl-inclusion", "inclusions between variable Gaussian Triebel-Lizorkin spaces for decreasing alpha",
       [](const SuiteConfig& c) { return inclusion_suite(c, SmoothnessSpace::triebel); }},
      {"hermite-membership",
       "Hermite polynomials belong to every space, with equal Besov and Triebel-Lizorkin norms",
       hermite_membership_suite},
      {"power-identity", "|| |f|^s ||_{p(.)} = ||f||_{s p(.)}^s", power_identity_suite},
      {"log-convexity", "variable Lebesgue norms are log-convex in 1/p up to the factor 2", log_convexity_suite},
      {"interpolation", "seminorms interpolate between two variable smoothness spaces up to the factor 4",
       interpolation_suite},
  };
  return e;
}

const Entry& find_entry(const std::string& id) {
  for (const auto& e : entries())
    if (e.id == id) return e;
  throw DomainError("unknown suite '" + id + "'");
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
}

const std::vector<std::string>& suite_registry() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& e : entries()) v.push_back(e.id);
    return v;
  }();
  return ids;
}

const std::string& suite_anchor(const std::string& id) { return find_entry(id).anchor; }

SuiteResult run_suite(const std::string& id, const SuiteConfig& cfg) {
  const Entry& e = find_entry(id);
  const auto start = std::chrono::steady_clock::now();
  Built b = e.build(cfg);
  SuiteResult r;
  r.suite_id = e.id;
  r.result_anchor = e.anchor;
  r.cases = run_thunks(b.thunks, cfg.parallel);
  r.grid_meta = std::move(b.meta);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::ordered_json to_json(const SuiteResult& r, bool include_wall_time) {
  json cases = json::array();
  std::size_t failures = 0;
  for (const auto& c : r.cases) {
    if (!c.pass) ++failures;
    cases.push_back(json{{"case_id", c.case_id},
                         {"inputs", c.inputs},
                         {"alpha", json_number(c.alpha)},
                         {"k", c.k >= 0 ? json(c.k) : json(nullptr)},
                         {"p_desc", c.p_desc},
                         {"q_desc", c.q_desc},
                         {"lhs", json_number(c.lhs)},
                         {"rhs", json_number(c.rhs)},
                         {"ratio", json_number(c.ratio)},
                         {"pass", c.pass}});
  }
  json out{{"suite_id", r.suite_id},
           {"result_anchor", r.result_anchor},
           {"passed", r.passed()},
           {"case_count", r.cases.size()},
           {"failures", failures},
           {"grid_meta", r.grid_meta},
           {"cases", std::move(cases)}};
  if (include_wall_time) out["wall_time"] = r.wall_time;
  return out;
}

std::string csv_header() { return "suite_id,case_id,alpha,k,p_desc,q_desc,lhs,rhs,ratio,pass\n"; }

std::string to_csv_rows(const SuiteResult& r) {
  std::ostringstream os;
  for (const auto& c : r.cases) {
    os << csv_field(r.suite_id) << ',' << csv_field(c.case_id) << ','
       << (std::isnan(c.alpha) ? std::string() : csv_number(c.alpha)) << ','
       << (c.k >= 0 ? std::to_string(c.k) : std::string()) << ',' << csv_field(c.p_desc) << ','
       << csv_field(c.q_desc) << ',' << csv_number(c.lhs) << ',' << csv_number(c.rhs) << ','
       << csv_number(c.ratio) << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace gvs
