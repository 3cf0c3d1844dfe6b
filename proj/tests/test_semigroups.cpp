#include <cmath>

#include "doctest.h"
#include "gvs/errors.hpp"
#include "gvs/semigroups.hpp"
#include "oracles.hpp"

using namespace gvs;

namespace {

HermiteExpansion random_expansion(std::mt19937_64& g, int dim, int cap, bool zero_mean = false) {
  HermiteExpansion f(dim, cap);
  for (const auto& nu : multi_indices_up_to(dim, cap))
    if (!(zero_mean && nu.order() == 0)) f.set(nu, oracle::uniform(g, -1, 1));
  return f;
}

}  // namespace

TEST_CASE("ou_apply on expansions") {
  auto f = HermiteExpansion::basis(2);
  CHECK(ou_apply(f, 0.5).coeff(MultiIndex{2}) == doctest::Approx(std::exp(-1.0)));
  CHECK(ou_apply(f, 0.0).coeff(MultiIndex{2}) == 1.0);
  CHECK(ou_apply(HermiteExpansion::basis(0), 7.0).coeff(MultiIndex{0}) == 1.0);
}

TEST_CASE("semigroup law on coefficients") {
  auto g = oracle::rng(17);
  auto f = random_expansion(g, 2, 5);
  auto a = ou_apply(ou_apply(f, 0.3), 0.9), b = ou_apply(f, 1.2);
  auto c = ph_derivative(ph_derivative(f, 0.3, 0), 0.9, 0), d = ph_derivative(f, 1.2, 0);
  for (const auto& [nu, v] : b.coeffs()) {
    CHECK(a.coeff(nu) == doctest::Approx(v).epsilon(1e-14));
    CHECK(c.coeff(nu) == doctest::Approx(d.coeff(nu)).epsilon(1e-14));
  }
}

TEST_CASE("Mehler kernel quadrature") {
  GaussianGrid grid(1, 64);
  const double x1[] = {1.0}, x0[] = {0.0};
  const auto h2 = HermiteExpansion::basis(2).as_function();
  CHECK(ou_apply_kernel(h2, 0.5, x1, grid) == doctest::Approx(std::exp(-1.0) / std::sqrt(2.0)).epsilon(1e-10));
  auto one = [](std::span<const double>) { return 1.0; };
  for (double t : {0.01, 0.5, 3.0}) CHECK(ou_apply_kernel(one, t, x1, grid) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(ou_apply_kernel(h2, 20.0, x0, grid)) < 1e-15);
  CHECK_THROWS_AS(ou_apply_kernel(h2, 0.0, x1, grid), DomainError);
}

TEST_CASE("kernel eigenrelation for d <= 2") {
  for (int d = 1; d <= 2; ++d) {
    GaussianGrid grid(d, d == 1 ? 64 : 40);
    auto g = oracle::rng(100 + d);
    for (const auto& nu : multi_indices_up_to(d, 6)) {
      auto h = HermiteExpansion::single(nu).as_function();
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        for (int i = 0; i < 20; ++i) {
          std::vector<double> x(d);
          for (auto& xi : x) xi = oracle::uniform(g, -2, 2);
          const double ref = std::exp(-t * nu.order()) * hermite_multi(nu, x);
          CHECK(std::abs(ou_apply_kernel(h, t, x, grid) - ref) <= 1e-6 * (1 + std::abs(hermite_multi(nu, x))));
        }
      }
    }
  }
}

TEST_CASE("ph_derivative coefficients") {
  CHECK(ph_derivative(HermiteExpansion::basis(1), 1.0, 0).coeff(MultiIndex{1}) == doctest::Approx(std::exp(-1.0)));
  CHECK(ph_derivative(HermiteExpansion::basis(4), 0.5, 1).coeff(MultiIndex{4}) ==
        doctest::Approx(-2 * std::exp(-1.0)));
  CHECK(ph_derivative(HermiteExpansion::basis(0), 0.5, 2).is_zero());
}

TEST_CASE("ph derivatives match finite differences in t") {
  auto g = oracle::rng(23);
  auto f = random_expansion(g, 1, 6);
  const double x[] = {0.4};
  for (int k = 1; k <= 3; ++k)
    for (double t : {0.5, 1.0, 2.0}) {
      const double fd = oracle::richardson_derivative([&](double s) { return ph_derivative(f, s, 0)(x); }, t, k, 1e-1);
      const double v = ph_derivative(f, t, k)(x);
      CHECK(std::abs(v - fd) <= 1e-4 * std::max(1.0, std::abs(v)));
    }
}

TEST_CASE("subordination path") {
  GaussianGrid grid(1, 48);
  const double x1[] = {1.0}, x3[] = {0.3};
  CHECK(ph_apply_subordination(HermiteExpansion::basis(1).as_function(), 1.0, x1, grid) ==
        doctest::Approx(std::exp(-1.0) * std::sqrt(2.0)).epsilon(1e-7));
  auto one = [](std::span<const double>) { return 1.0; };
  CHECK(ph_apply_subordination(one, 0.7, x1, grid) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(ph_apply_subordination(HermiteExpansion::basis(4).as_function(), 2.0, x3, grid) ==
        doctest::Approx(std::exp(-4.0) * hermite_1d(4, 0.3)).epsilon(1e-6));
  auto gen = oracle::rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_expansion(gen, 1, 6);
    const double x[] = {oracle::uniform(gen, -1.5, 1.5)};
    for (double t : {0.3, 1.0}) {
      const double ref = ph_derivative(f, t, 0)(x);
      CHECK(std::abs(ph_apply_subordination(f.as_function(), t, x, grid) - ref) <= 1e-5 * std::max(1.0, std::abs(ref)));
      const double ref1 = ph_derivative(f, t, 1)(x);
      CHECK(std::abs(ph_derivative_subordination(f.as_function(), t, 1, x, grid) - ref1) <=
            1e-5 * std::max(1.0, std::abs(ref1)));
    }
  }
}

TEST_CASE("maximal function and derivative bound") {
  const auto tg = default_t_grid();
  const double x0[] = {0.0}, x1[] = {1.0};
  CHECK(ou_maximal(HermiteExpansion::basis(0), x0, tg) == doctest::Approx(1.0));
  CHECK(ou_maximal(HermiteExpansion::basis(2), x0, tg) ==
        doctest::Approx(1 / std::sqrt(2.0) * std::exp(-2e-3)).epsilon(1e-12));
  auto f = HermiteExpansion::basis(1) + HermiteExpansion::basis(2);
  CHECK(ou_maximal(f, x1, log_spaced(1e-6, 50, 200)) >= std::abs(f(x1)) - 1e-4);
  CHECK(ph_derivative_bound_check(HermiteExpansion::basis(0), x1, 1, tg) == 0.0);
  CHECK(ph_derivative_bound_check(HermiteExpansion::basis(1), x1, 1, log_spaced(1e-3, 50, 4000)) ==
        doctest::Approx(std::exp(-1.0 + 1e-3)).epsilon(1e-6));  // T* is the grid sup, attained at t = 1e-3
  CHECK_THROWS_AS(ou_maximal(f, x1, {}), DomainError);
}

TEST_CASE("derivative bound is refinement stable") {
  auto g = oracle::rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_expansion(g, 1, 6);
    const double x[] = {oracle::uniform(g, -1, 1)};
    for (int k = 1; k <= 3; ++k) {
      const double a = ph_derivative_bound_check(f, x, k, log_spaced(1e-3, 50, 60));
      const double b = ph_derivative_bound_check(f, x, k, log_spaced(1e-3, 50, 120));
      CHECK(std::isfinite(a));
      CHECK(std::abs(b / a - 1) < 0.05);
    }
  }
}

TEST_CASE("derivatives decay at large t") {
  auto g = oracle::rng(37);
  auto f = random_expansion(g, 1, 6, true);
  const double x[] = {0.5};
  double prev = INFINITY;
  for (double T : {1.0, 4.0, 16.0, 64.0}) {
    double sup = 0.0;
    for (double t : log_spaced(T, 200.0, 80)) sup = std::max(sup, std::abs(ph_derivative(f, t, 2)(x)));
    CHECK(sup <= prev);
    prev = sup;
  }
  CHECK(prev < 1e-3);
}
