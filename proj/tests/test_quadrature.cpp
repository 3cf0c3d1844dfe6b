#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gvs/numeric.hpp"
#include "gvs/quadrature.hpp"

using namespace gvs;

TEST_CASE("Gauss-Hermite rule integrates Gaussian moments") {
  auto rule = gauss_hermite_rule(20);
  double m0 = 0, m2 = 0, m4 = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i], w = rule.weights[i];
    m0 += w;
    m2 += w * x * x;
    m4 += w * x * x * x * x;
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m4 == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("Gauss-Legendre rule") {
  auto rule = gauss_legendre(5);
  double s = 0;
  for (std::size_t i = 0; i < 5; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 8);
  CHECK(s == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature") {
  const double v = integrate_adaptive([](double x) { return std::exp(-x * x); }, -10, 10);
  CHECK(v == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  const double br[] = {1.0};
  const double w = integrate_adaptive_split([](double x) { return x < 1 ? 1.0 : 0.0; }, 0, 3, br);
  CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log grid weights and breakpoints") {
  LogGridSpec spec = LogGridSpec::defaults();
  spec.breakpoints = {0.5, 1.0};
  LogGrid grid(spec);
  double total = 0, window = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    total += grid.log_weights()[i];
    if (grid.t()[i] >= 0.5 && grid.t()[i] <= 1.0) window += grid.log_weights()[i];
  }
  CHECK(total == doctest::Approx(std::log(1e7)).epsilon(1e-12));
  CHECK(window == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  auto d = spec.doubled_truncation();
  CHECK(d.t_min == doctest::Approx(1e-8));
  CHECK(d.t_max == doctest::Approx(1e6));
}

TEST_CASE("pairwise sum and parallel_for") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
  std::vector<int> hit(500, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; }, 4);
  for (int h : hit) CHECK(h == 1);
}
