#include <cmath>

#include "doctest.h"
#include "gvs/errors.hpp"
#include "gvs/semigroups.hpp"
#include "gvs/smoothness.hpp"
#include "oracles.hpp"

using namespace gvs;

namespace {

const QuadratureContext& ctx1() {
  static const QuadratureContext c = smoothness_context(1);
  return c;
}

SmoothnessParams const_params(double alpha, double p, double q, std::optional<int> k = {}) {
  return SmoothnessParams::make(alpha, ExponentFunction::constant(p), ExponentFunction::constant(q), k);
}

// |beta|^{k/2} ||t^{k-a} e^{-t sqrt|beta|}||_{q, dt/t}
double eigen_factor(int n, int k, double alpha, double q) {
  return std::pow(n, 0.5 * k) * oracle::gamma_norm(k - alpha, std::sqrt(double(n)), q);
}

}  // namespace

TEST_CASE("parameters") {
  CHECK(const_params(0.5, 2, 2).k == 1);
  CHECK(const_params(1.0, 2, 2).k == 2);
  CHECK(const_params(1.4, 2, 2).k == 2);
  CHECK_THROWS_AS(const_params(1.0, 2, 2, 1), DomainError);
  CHECK_THROWS_AS(const_params(-0.1, 2, 2), DomainError);
  CHECK_THROWS_AS(SmoothnessParams::make(0.5, ExponentFunction::time_family(2, 3), ExponentFunction::constant(2)),
                  HypothesisError);
  CHECK_THROWS_AS(SmoothnessParams::make(0.5, ExponentFunction::constant(2), ExponentFunction::gaussian_family(2, 1)),
                  HypothesisError);
}

TEST_CASE("Besov seminorm of a first-order eigenfunction") {
  auto h1 = HermiteExpansion::basis(1);
  const auto sp = const_params(0.5, 2, 2);
  CHECK(besov_seminorm(h1, sp, ctx1()) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
  CHECK(besov_seminorm(HermiteExpansion::basis(0), sp, ctx1()) == 0.0);
  CHECK(besov_seminorm(-3.0 * h1, sp, ctx1()) == doctest::Approx(3 * std::sqrt(0.5)).epsilon(1e-8));
  auto rep = besov_norm(h1, sp, ctx1());
  CHECK(rep.total == doctest::Approx(1 + std::sqrt(0.5)).epsilon(1e-8));
  CHECK(rep.k_used == 1);
  CHECK(besov_norm(HermiteExpansion(1), sp, ctx1()).total == 0.0);
}

TEST_CASE("two-term expansion reduces by orthonormality") {
  auto f = HermiteExpansion::basis(1) + HermiteExpansion::basis(4);
  const auto sp = const_params(0.5, 2, 2);
  // inner norm (e^{-2t} + 4 e^{-4t})^{1/2}; outer int t (e^{-2t} + 4 e^{-4t}) dt/t = 1/2 + 1
  CHECK(besov_seminorm(f, sp, ctx1()) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-8));
}

TEST_CASE("Besov infinity constant") {
  const auto sp = const_params(0.5, 2, 2);
  CHECK(besov_infty_constant(HermiteExpansion::basis(1), sp, ctx1()) ==
        doctest::Approx(std::sqrt(0.5) * std::exp(-0.5)).epsilon(1e-4));
  CHECK(besov_infty_constant(HermiteExpansion::basis(0), sp, ctx1()) == 0.0);
  CHECK(besov_infty_constant(2.5 * HermiteExpansion::basis(3), sp, ctx1()) ==
        doctest::Approx(2.5 * besov_infty_constant(HermiteExpansion::basis(3), sp, ctx1())).epsilon(1e-12));
}

TEST_CASE("Triebel-Lizorkin seminorm agrees on eigenfunctions") {
  const auto sp = const_params(0.5, 2, 2);
  CHECK(triebel_seminorm(HermiteExpansion::basis(1), sp, ctx1()) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
  CHECK(triebel_seminorm(HermiteExpansion::basis(0), sp, ctx1()) == 0.0);
  for (const auto& p : {ExponentFunction::constant(3), ExponentFunction::gaussian_family(1.5, 1)})
    for (const auto& q : {ExponentFunction::constant(1.5), ExponentFunction::time_family(1.5, 3)})
      for (int n : {1, 3, 6}) {
        const auto s = SmoothnessParams::make(1.2, p, q);
        auto h = HermiteExpansion::basis(n);
        const double b = besov_norm(h, s, ctx1()).total, t = triebel_norm(h, s, ctx1()).total;
        CHECK(std::abs(b - t) <= 1e-6 * b);
      }
}

TEST_CASE("closed form for constant exponents") {
  for (int n : {1, 2, 4, 6})
    for (double alpha : {0.5, 1.5})
      for (double q : {1.0, 2.0, 3.0}) {
        const auto sp = const_params(alpha, 2, q);
        auto h = HermiteExpansion::basis(n);
        const double expect = 1 + eigen_factor(n, sp.k, alpha, q);
        CHECK(std::abs(besov_norm(h, sp, ctx1()).total / expect - 1) <= 1e-7);
      }
}

TEST_CASE("equivalence ratios") {
  auto h = HermiteExpansion::basis(2);
  const auto sp = const_params(0.5, 2, 2);
  const auto r = equivalence_ratio(h, sp, 2, ctx1());
  const double expect = eigen_factor(2, 1, 0.5, 2) / eigen_factor(2, 2, 0.5, 2);
  CHECK(r.ratio_besov == doctest::Approx(expect).epsilon(1e-7));
  CHECK(r.ratio_tl == doctest::Approx(expect).epsilon(1e-7));
  const auto z = equivalence_ratio(HermiteExpansion::basis(0), sp, 2, ctx1());
  CHECK(z.ratio_besov == 1.0);
  CHECK(z.ratio_tl == 1.0);
  CHECK_THROWS_AS(equivalence_ratio(h, sp, 1, ctx1()), DomainError);
}

TEST_CASE("inclusions") {
  auto h2 = HermiteExpansion::basis(2);
  auto q2 = ExponentFunction::constant(2), q3 = ExponentFunction::constant(3), q4 = ExponentFunction::constant(4);
  auto p = ExponentFunction::constant(2);
  auto a = inclusion_check_besov(h2, 1.5, 0.5, q2, q3, p, ctx1());
  CHECK(a.source.member);
  CHECK(a.target.member);
  CHECK(a.holds);
  auto b = inclusion_check_besov(h2, 0.5, 0.5, q2, q4, p, ctx1());
  CHECK(b.holds);
  CHECK(b.target.norm <= b.source.norm * 2);
  CHECK_THROWS_AS(inclusion_check_besov(h2, 0.5, 1.5, q2, q3, p, ctx1()), HypothesisError);
  CHECK_THROWS_AS(inclusion_check_besov(h2, 0.5, 0.5, q4, q2, p, ctx1()), HypothesisError);
  auto c = inclusion_check_tl(h2, 1.5, 0.5, q3, q2, p, ctx1());
  CHECK(c.holds);
  CHECK(c.target.member);
  CHECK_THROWS_AS(inclusion_check_tl(h2, 1.5, 0.5, q2, q3, p, ctx1()), HypothesisError);
  CHECK_THROWS_AS(inclusion_check_tl(h2, 0.5, 0.5, q3, q2, p, ctx1()), HypothesisError);
}

TEST_CASE("interpolation") {
  auto two = ExponentFunction::constant(2);
  auto h2 = HermiteExpansion::basis(2);
  auto same = interpolation_check(h2, 0.5, two, two, 0.5, two, two, 0.5, SmoothnessSpace::besov, ctx1());
  CHECK(same.ratio == doctest::Approx(0.25).epsilon(1e-12));
  // Constant exponents and a single eigenfunction: lhs is the geometric mean
  // of the endpoint seminorms up to the Gamma factors.
  auto r = interpolation_check(h2, 0.25, two, two, 0.75, two, two, 0.5, SmoothnessSpace::besov, ctx1());
  const double s0 = eigen_factor(2, 1, 0.25, 2), s1 = eigen_factor(2, 1, 0.75, 2), s = eigen_factor(2, 1, 0.5, 2);
  CHECK(r.lhs == doctest::Approx(s).epsilon(1e-7));
  CHECK(r.rhs == doctest::Approx(4 * std::sqrt(s0 * s1)).epsilon(1e-7));
  auto f = HermiteExpansion::basis(1) + HermiteExpansion::basis(3);
  for (auto space : {SmoothnessSpace::besov, SmoothnessSpace::triebel}) {
    auto v = interpolation_check(f, 0.3, ExponentFunction::gaussian_family(1.5, 1), two, 0.9,
                                 ExponentFunction::constant(3), two, 0.5, space, ctx1());
    CHECK(v.holds);
  }
  CHECK_THROWS_AS(interpolation_check(f, 0.3, two, two, 0.9, two, two, 1.0, SmoothnessSpace::besov, ctx1()),
                  DomainError);
  CHECK_THROWS_AS(interpolation_check(f, 0.3, ExponentFunction::constant(1), two, 0.9, two, two, 0.5,
                                      SmoothnessSpace::besov, ctx1()),
                  DomainError);
}

TEST_CASE("power identity and log-convexity") {
  const DiscreteMeasure m = DiscreteMeasure::gaussian(GaussianGrid(1, 64));
  auto h1 = m.sample(HermiteExpansion::basis(1).as_function());
  auto [lhs, rhs] = power_norm_identity_check(h1, 2, ExponentFunction::constant(2), m);
  CHECK(lhs == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(rhs == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  auto [a, b] = power_norm_identity_check(h1, 1, ExponentFunction::gaussian_family(1.5, 1), m);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
  auto gen = oracle::rng(53);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> f(m.size());
    for (auto& v : f) v = oracle::uniform(gen, 0, 3);
    auto [l, r] = power_norm_identity_check(f, 1.5, ExponentFunction::gaussian_family(2, 1), m);
    CHECK(std::abs(l / r - 1) <= 1e-7);
  }
  CHECK_THROWS_AS(power_norm_identity_check(h1, 0.5, ExponentFunction::constant(1.5), m), DomainError);

  auto h2 = m.sample(HermiteExpansion::basis(2).as_function());
  auto two = ExponentFunction::constant(2), four = ExponentFunction::constant(4);
  auto same = log_convexity_check(h2, two, two, 0.3, m);
  CHECK(same.ratio == doctest::Approx(0.5).epsilon(1e-12));
  auto lc = log_convexity_check(h2, two, four, 0.5, m);
  // ||h_2||_4^4 = E[(2x^2 - 1)^4] / 4 = 60 / 4 under gamma_1
  const double n2 = 1.0, n4 = std::pow(15.0, 0.25);
  CHECK(lc.rhs == doctest::Approx(2 * std::sqrt(n2 * n4)).epsilon(1e-10));
  double s83 = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s83 += m.weights()[i] * std::pow(std::abs(h2[i]), 8.0 / 3.0);
  CHECK(lc.lhs == doctest::Approx(std::pow(s83, 3.0 / 8.0)).epsilon(1e-9));
  CHECK(lc.holds);
}

TEST_CASE("decay of the semigroup derivatives") {
  GaussianGrid grid(1, 64);
  auto gen = oracle::rng(59);
  for (int trial = 0; trial < 3; ++trial) {
    HermiteExpansion f(1, 6);
    for (int n = 0; n <= 6; ++n) f.set(MultiIndex{n}, oracle::uniform(gen, -1, 1));
    for (int k = 1; k <= 3; ++k) {
      auto r = decay_check(f, ExponentFunction::gaussian_family(1.5, 1), k, default_t_grid(), grid);
      CHECK(std::isfinite(r.growth_constant));
      CHECK(std::isfinite(r.scaled_sup));
      auto fine = decay_check(f, ExponentFunction::gaussian_family(1.5, 1), k, log_spaced(1e-3, 50, 240), grid);
      CHECK(fine.scaled_sup == doctest::Approx(r.scaled_sup).epsilon(0.05));
    }
  }
}

TEST_CASE("triangle inequality of the space norms") {
  auto gen = oracle::rng(61);
  const auto sp = SmoothnessParams::make(0.8, ExponentFunction::gaussian_family(1.5, 1),
                                         ExponentFunction::time_family(1.5, 3));
  for (int i = 0; i < 5; ++i) {
    HermiteExpansion f(1, 6), g(1, 6);
    for (int n = 0; n <= 6; ++n) {
      f.set(MultiIndex{n}, oracle::uniform(gen, -1, 1));
      g.set(MultiIndex{n}, oracle::uniform(gen, -1, 1));
    }
    for (auto space : {SmoothnessSpace::besov, SmoothnessSpace::triebel}) {
      const double a = smoothness_norm(f, sp, space, ctx1()).total, b = smoothness_norm(g, sp, space, ctx1()).total;
      CHECK(smoothness_norm(f + g, sp, space, ctx1()).total <= a + b + 1e-9);
    }
  }
}
