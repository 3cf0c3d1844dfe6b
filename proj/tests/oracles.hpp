#pragma once

// Independent reference computations used by the tests. None of these call
// into the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Explicit sum for the physicists' Hermite polynomial, normalized in L^2(gamma_1).
inline double hermite_explicit(int n, double x) {
  long double sum = 0.0L;
  long double nfact = std::tgamma(n + 1.0L);
  for (int m = 0; 2 * m <= n; ++m) {
    const long double term = nfact / (std::tgamma(m + 1.0L) * std::tgamma(n - 2 * m + 1.0L)) *
                             std::pow(2.0L * x, n - 2 * m);
    sum += (m % 2 ? -term : term);
  }
  return double(sum / std::sqrt(std::pow(2.0L, n) * nfact));
}

// ||t^a e^{-lambda t}||_{q, dt/t} = (Gamma(aq) / (q lambda)^{aq})^{1/q}.
inline double gamma_norm(double a, double lambda, double q) {
  return std::pow(std::tgamma(a * q) / std::pow(q * lambda, a * q), 1.0 / q);
}

// k-th derivative of g at t: central differences at h0, h0/2, ... combined
// by a Richardson tableau in h^2; returns the entry with the smallest
// estimated error.
inline double richardson_derivative(const std::function<double(double)>& g, double t, int k,
                                    double h0, double* err_out = nullptr) {
  constexpr int kLevels = 7;
  auto central = [&](double h) {
    long double s = 0.0L;
    long double binom = 1.0L;
    for (int i = 0; i <= k; ++i) {
      const double x = t + (0.5 * k - i) * h;
      s += ((i % 2) ? -binom : binom) * g(x);
      binom = binom * (k - i) / (i + 1);
    }
    return double(s / std::pow((long double)h, k));
  };
  double table[kLevels][kLevels];
  double best = 0.0, best_err = INFINITY;
  double h = h0;
  for (int i = 0; i < kLevels; ++i, h *= 0.5) {
    table[i][0] = central(h);
    double fac = 4.0;
    for (int j = 1; j <= i; ++j, fac *= 4.0) {
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (fac - 1.0);
      const double err = std::max(std::abs(table[i][j] - table[i][j - 1]),
                                  std::abs(table[i][j] - table[i - 1][j - 1]));
      if (err < best_err) {
        best_err = err;
        best = table[i][j];
      }
    }
  }
  if (err_out) *err_out = best_err;
  return best;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace oracle
