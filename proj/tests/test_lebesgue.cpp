#include <cmath>
#include <functional>

#include "doctest.h"
#include "gvs/errors.hpp"
#include "gvs/lebesgue.hpp"
#include "gvs/semigroups.hpp"
#include "oracles.hpp"

using namespace gvs;

namespace {

DiscreteMeasure gauss1(int n = 64) { return DiscreteMeasure::gaussian(GaussianGrid(1, n)); }

DiscreteMeasure logtime(std::vector<double> breaks = {}) {
  LogGridSpec spec = LogGridSpec::defaults();
  spec.breakpoints = std::move(breaks);
  return DiscreteMeasure::logtime(LogGrid(spec));
}

std::vector<double> random_samples(std::mt19937_64& g, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = oracle::uniform(g, -2, 2);
  return v;
}

}  // namespace

TEST_CASE("modular examples") {
  auto m = gauss1();
  auto two = ExponentFunction::constant(2);
  CHECK(modular([](std::span<const double>) { return 1.0; }, two, m) == doctest::Approx(1.0).epsilon(1e-14));
  auto mu = logtime();
  auto f = mu.sample_t([](double t) { return std::sqrt(t) * std::exp(-t); });
  CHECK(modular(f, two, mu) == doctest::Approx(0.5).epsilon(1e-8));
  auto q = ExponentFunction::time_family(1.5, 3);
  for (double t0 : {0.1, 1.0, 10.0}) {
    auto mt = logtime({t0 / 2, t0});
    auto chi = mt.sample_t([t0](double t) { return (t >= t0 / 2 && t <= t0) ? 1.0 : 0.0; });
    CHECK(modular(chi, q, mt) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  std::vector<double> bad(m.size(), 1.0);
  bad[3] = NAN;
  CHECK_THROWS_AS(modular(bad, two, m), DomainError);
}

TEST_CASE("luxemburg norm examples") {
  auto m = gauss1();
  auto p = ExponentFunction::gaussian_family(1.5, 1);
  auto c = luxemburg_norm([](std::span<const double>) { return 3.5; }, p, m);
  CHECK(c.value == doctest::Approx(3.5).epsilon(1e-10));
  CHECK(std::abs(c.modular_at_value - 1) < 1e-9);
  CHECK(luxemburg_norm(HermiteExpansion::basis(1).as_function(), ExponentFunction::constant(2), m).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  auto mt = logtime({0.5, 1.0});
  auto chi = mt.sample_t([](double t) { return (t >= 0.5 && t <= 1.0) ? 1.0 : 0.0; });
  CHECK(luxemburg_norm(chi, ExponentFunction::constant(2), mt).value ==
        doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-10));
  std::vector<double> zero(m.size(), 0.0);
  auto z = luxemburg_norm(zero, p, m);
  CHECK(z.value == 0.0);
  CHECK(z.iterations == 0);
}

TEST_CASE("constant exponent reduction") {
  auto g = oracle::rng(41);
  auto m = gauss1();
  for (double p0 : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    auto f = random_samples(g, m.size());
    double s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m.weights()[i] * std::pow(std::abs(f[i]), p0);
    CHECK(std::abs(luxemburg_norm(f, ExponentFunction::constant(p0), m).value / std::pow(s, 1 / p0) - 1) <= 1e-8);
  }
}

TEST_CASE("logtime norms against the Gamma oracle") {
  auto mu = logtime();
  for (double a : {0.5, 1.0, 2.0})
    for (double lam : {0.5, 1.0, 2.0})
      for (double q : {1.0, 2.0, 3.5}) {
        auto f = mu.sample_t([=](double t) { return std::pow(t, a) * std::exp(-lam * t); });
        const double v = luxemburg_norm(f, ExponentFunction::constant(q), mu).value;
        CHECK(std::abs(v / oracle::gamma_norm(a, lam, q) - 1) <= 1e-7);
      }
}

TEST_CASE("modular is monotone in lambda and the norm is homogeneous") {
  auto g = oracle::rng(43);
  auto m = gauss1();
  auto p = ExponentFunction::gaussian_family(1.5, 2);
  for (int i = 0; i < 20; ++i) {
    auto f = random_samples(g, m.size());
    const double c = oracle::uniform(g, -5, 5);
    std::vector<double> cf(f), f1(f), f2(f);
    for (std::size_t j = 0; j < f.size(); ++j) {
      cf[j] *= c;
      f1[j] /= 0.7;
      f2[j] /= 1.3;
    }
    CHECK(modular(f1, p, m) >= modular(f2, p, m));
    const double n = luxemburg_norm(f, p, m).value;
    CHECK(luxemburg_norm(cf, p, m).value == doctest::Approx(std::abs(c) * n).epsilon(1e-9));
  }
}

TEST_CASE("norm lemma parts") {
  for (const auto& q : {ExponentFunction::time_family(1.5, 3), ExponentFunction::time_family(3, 1.2)}) {
    for (double a : {0.5, 1.0, 2.0})
      for (double b : {0.5, 1.0, 2.0}) {
        auto r = logtime_norm_converged([=](double t) { return std::pow(t, a) * std::exp(-b * t); }, q);
        CHECK(std::isfinite(r.norm.value));
        CHECK(r.norm.value > 0);
      }
    for (double a : {0.5, 1.0}) {
      auto mt = logtime({1.0});
      CHECK(std::isfinite(luxemburg_norm(mt.sample_t([a](double t) { return t <= 1 ? std::pow(t, a) : 0.0; }), q, mt).value));
      CHECK(std::isfinite(luxemburg_norm(mt.sample_t([a](double t) { return t > 1 ? std::pow(t, -a) : 0.0; }), q, mt).value));
    }
    for (double t0 : {0.1, 1.0, 10.0}) {
      auto mt = logtime({t0 / 2, t0});
      auto chi = mt.sample_t([t0](double t) { return (t >= t0 / 2 && t <= t0) ? 1.0 : 0.0; });
      const double v = luxemburg_norm(chi, q, mt).value;
      CHECK(v >= std::pow(std::log(2.0), 1 / q.p_minus()) - 1e-10);
      CHECK(v <= 1 + 1e-10);
    }
  }
}

TEST_CASE("dt/t identity") {
  LogGrid grid;
  auto q2 = ExponentFunction::constant(2);
  auto r = logtime_norm_identity_check([](double t) { return std::sqrt(t) * std::exp(-t); }, q2, grid);
  CHECK(r.logtime == doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));
  CHECK(r.lebesgue == doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));
  LogGridSpec spec = LogGridSpec::defaults();
  spec.breakpoints = {1.0, 2.0};
  auto chi = [](double t) { return (t >= 1 && t <= 2) ? 1.0 : 0.0; };
  auto s = logtime_norm_identity_check(chi, ExponentFunction::constant(1), LogGrid(spec));
  CHECK(s.logtime == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(s.lebesgue == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  auto z = logtime_norm_identity_check([](double) { return 0.0; }, q2, grid);
  CHECK(z.logtime == 0.0);
  CHECK(z.lebesgue == 0.0);
  auto q = ExponentFunction::time_family(1.5, 3);
  auto v = logtime_norm_identity_check([](double t) { return t * std::exp(-t); }, q, grid);
  CHECK(v.logtime == doctest::Approx(v.lebesgue).epsilon(1e-6));
}

TEST_CASE("Hoelder inequality") {
  auto m = gauss1();
  auto two = ExponentFunction::constant(2);
  std::vector<double> one(m.size(), 1.0);
  auto r = holder_check(one, one, two, two, m);
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.rhs == doctest::Approx(2.0));
  auto h1 = m.sample(HermiteExpansion::basis(1).as_function());
  auto s = holder_check(h1, h1, two, two, m);
  CHECK(s.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.rhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(holder_check(one, one, ExponentFunction::constant(1.5), two, m), DomainError);
  auto g = oracle::rng(47);
  for (int i = 0; i < 50; ++i) {
    auto f = random_samples(g, m.size()), h = random_samples(g, m.size());
    auto rep = holder_check(f, h, ExponentFunction::constant(3), ExponentFunction::constant(1.5), m);
    CHECK(rep.ratio <= 1.0);
    CHECK(rep.holds);
  }
}

TEST_CASE("Minkowski integral inequality") {
  auto outer = gauss1(32);
  auto inner = DiscreteMeasure::gaussian(GaussianGrid(1, 12));
  auto p = ExponentFunction::gaussian_family(1.5, 1);
  auto sep = minkowski_check([](std::span<const double> x, std::span<const double> y) {
    return (1 + x[0] * x[0]) * (2 + y[0] * y[0]);
  }, ExponentFunction::constant(2), outer, inner);
  CHECK(sep.ratio == doctest::Approx(0.25).epsilon(1e-10));
  auto zero = minkowski_check([](auto, auto) { return 0.0; }, p, outer, inner);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.holds);
}

TEST_CASE("conjugate lower bound") {
  auto m = gauss1();
  auto two = ExponentFunction::constant(2);
  auto f = m.sample(HermiteExpansion::basis(2).as_function());
  std::vector<std::vector<double>> cands;
  for (int n = 0; n <= 6; ++n) cands.push_back(m.sample(HermiteExpansion::basis(n).as_function()));
  auto b = conjugate_lower_bound(f, two, m, cands);
  CHECK(b.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.norm == doctest::Approx(1.0).epsilon(1e-12));
  auto self = conjugate_lower_bound(f, two, m, {f});
  CHECK(self.lower_bound == doctest::Approx(self.norm).epsilon(1e-12));
  CHECK_THROWS_AS(conjugate_lower_bound(f, two, m, {}), DomainError);
  CHECK_THROWS_AS(conjugate_lower_bound(f, ExponentFunction::constant(1), m, cands), DomainError);
}

TEST_CASE("tail closure follows a varying exponent beyond the grid") {
  // q varies like 1/t at the right edge and like t at the left edge; the
  // closed tails must make the norm insensitive to the truncation points.
  const auto q = ExponentFunction::time_family(3, 1.2);
  auto right = [](double t) { return t > 1 ? std::pow(t, -0.5) : 0.0; };
  auto left = [](double t) { return t <= 1 ? std::pow(t, 0.2) : 0.0; };
  for (const auto& f : {std::function<double(double)>(right), std::function<double(double)>(left)}) {
    auto a = logtime({1.0});
    LogGridSpec wide = LogGridSpec::defaults().doubled_truncation();
    wide.breakpoints = {1.0};
    auto b = DiscreteMeasure::logtime(LogGrid(wide));
    const double va = luxemburg_norm(a.sample_t(f), q, a).value, vb = luxemburg_norm(b.sample_t(f), q, b).value;
    CHECK(std::abs(va / vb - 1) <= 1e-7);
  }
}
