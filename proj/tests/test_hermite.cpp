#include <cmath>

#include "doctest.h"
#include "gvs/errors.hpp"
#include "gvs/hermite.hpp"
#include "gvs/quadrature.hpp"
#include "oracles.hpp"

using namespace gvs;

TEST_CASE("hermite_1d spot values") {
  CHECK(hermite_1d(0, 3.7) == doctest::Approx(1.0));
  CHECK(hermite_1d(1, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(hermite_1d(2, 0.0) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("recurrence agrees with the explicit sum") {
  auto g = oracle::rng(11);
  for (int n = 0; n <= 10; ++n) {
    for (int i = 0; i < 100; ++i) {
      const double x = oracle::uniform(g, -4, 4);
      const double ref = oracle::hermite_explicit(n, x);
      CHECK(std::abs(hermite_1d(n, x) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("derivative of h_n is sqrt(2n) h_{n-1}") {
  for (int n = 1; n <= 6; ++n) {
    const double x = 0.37;
    const double fd = oracle::richardson_derivative([n](double y) { return hermite_1d(n, y); }, x, 1, 0.1);
    CHECK(hermite_1d_derivative(n, x) == doctest::Approx(fd).epsilon(1e-9));
  }
}

TEST_CASE("hermite_multi") {
  const double x0[] = {3.2, -1.0}, x1[] = {1.0, 1.0}, x2[] = {0.0, 5.0};
  CHECK(hermite_multi(MultiIndex{0, 0}, x0) == doctest::Approx(1.0));
  CHECK(hermite_multi(MultiIndex{1, 1}, x1) == doctest::Approx(2.0));
  CHECK(hermite_multi(MultiIndex{2, 0}, x2) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  const double x3[] = {1.0};
  CHECK_THROWS_AS(hermite_multi(MultiIndex{1, 1}, x3), DomainError);
}

TEST_CASE("multi-index basics") {
  MultiIndex a{2, 1, 0};
  CHECK(a.order() == 3);
  CHECK(a.factorial() == 2.0);
  CHECK(a == MultiIndex{2, 1, 0});
  CHECK(a != MultiIndex{2, 0, 1});
  CHECK_THROWS_AS(MultiIndex({1, -1}), DomainError);
  CHECK(multi_indices_up_to(2, 2).size() == 6);
}

TEST_CASE("orthonormality on the tensor grid") {
  for (int d = 1; d <= 3; ++d) {
    GaussianGrid grid(d, d == 3 ? 10 : 16);
    const auto idx = multi_indices_up_to(d, 6);
    for (std::size_t a = 0; a < idx.size(); a += (d == 3 ? 7 : 1)) {
      for (std::size_t b = 0; b < idx.size(); b += (d == 3 ? 5 : 1)) {
        double s = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
          s += grid.weight(i) * hermite_multi(idx[a], grid.point(i)) * hermite_multi(idx[b], grid.point(i));
        CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("project") {
  GaussianGrid grid(1, 32);
  auto e = project(HermiteExpansion::basis(3).as_function(), grid, 5);
  CHECK(e.coeff(MultiIndex{3}) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& [nu, c] : e.coeffs())
    if (nu != MultiIndex{3}) CHECK(std::abs(c) < 1e-12);
  auto lin = project([](std::span<const double> x) { return x[0]; }, grid, 2);
  CHECK(lin.coeff(MultiIndex{1}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  auto one = project([](std::span<const double>) { return 1.0; }, grid, 0);
  CHECK(one.coeff(MultiIndex{0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(project(lin.as_function(), GaussianGrid(1, 4), 8), DomainError);
}

TEST_CASE("project of evaluate is the identity") {
  auto g = oracle::rng(5);
  for (int d = 1; d <= 2; ++d) {
    HermiteExpansion f(d, 6);
    for (const auto& nu : multi_indices_up_to(d, 6)) f.set(nu, oracle::uniform(g, -1, 1));
    auto back = project(f.as_function(), GaussianGrid(d, 12), 6);
    for (const auto& nu : multi_indices_up_to(d, 6))
      CHECK(std::abs(back.coeff(nu) - f.coeff(nu)) <= 1e-10);
  }
}

TEST_CASE("expansion algebra") {
  auto f = HermiteExpansion::basis(1) + 2.0 * HermiteExpansion::basis(4);
  const double x[] = {0.3};
  CHECK(f(x) == doctest::Approx(hermite_1d(1, 0.3) + 2 * hermite_1d(4, 0.3)));
  CHECK(f.degree() == 4);
  f.set(MultiIndex{4}, 0.0);
  CHECK(f.degree() == 1);
  CHECK_THROWS_AS(f.set(MultiIndex{1, 1}, 1.0), DomainError);
}
