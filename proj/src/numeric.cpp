#include "gvs/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gvs/errors.hpp"

namespace gvs {

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 32;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned max_threads, std::size_t min_parallel) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (max_threads != 0) hw = std::min(hw, max_threads);
  const std::size_t workers = std::min<std::size_t>(hw, n);
  if (workers <= 1 || n < min_parallel) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body, &failure, &failure_mutex] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

GaussRule gauss_legendre(int n) {
  require(n >= 1, "gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

namespace {

struct Piece {
  double a, b, value, err;
  bool operator<(const Piece& o) const { return err < o.err; }
};

Piece kronrod(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& cuts,
                        const AdaptiveOptions& opts) {
  std::priority_queue<Piece> heap;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] == cuts[i + 1]) continue;
    heap.push(kronrod(f, cuts[i], cuts[i + 1]));
  }
  auto sums = [&] {
    std::vector<Piece> all;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
    std::vector<double> v(all.size()), e(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      v[i] = all[i].value;
      e[i] = all[i].err;
    }
    total = pairwise_sum(v);
    total_err = pairwise_sum(e);
  };
  sums();
  std::size_t count = heap.size();
  while (!heap.empty() && count < opts.max_intervals) {
    if (!std::isfinite(total)) throw ConvergenceError("integrate_adaptive: non-finite integral");
    if (total_err <= std::max(opts.rel_tol * std::abs(total), opts.abs_tol)) break;
    const Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted in floating point
    heap.pop();
    const Piece left = kronrod(f, worst.a, mid), right = kronrod(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++count;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
  }
  sums();
  if (!std::isfinite(total)) throw ConvergenceError("integrate_adaptive: non-finite integral");
  const double allowed = std::max(opts.rel_tol * std::abs(total), opts.abs_tol);
  // The Kronrod-Gauss difference overestimates the true error by a wide
  // margin on smooth integrands; allow two decades of slack.
  if (total_err > 100.0 * allowed) {
    throw ConvergenceError("integrate_adaptive: error estimate " + std::to_string(total_err) +
                           " exceeds tolerance " + std::to_string(allowed));
  }
  return total;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opts) {
  if (a == b) return 0.0;
  return integrate_pieces(f, {a, b}, opts);
}

double integrate_adaptive_split(const std::function<double(double)>& f, double a, double b,
                                std::span<const double> breaks, const AdaptiveOptions& opts) {
  std::vector<double> cuts{a};
  for (double c : breaks)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  return integrate_pieces(f, cuts, opts);
}

double richardson_derivative(const std::function<double(double)>& f, double x, int k, double h0,
                             double* err) {
  require(k >= 1 && h0 > 0, "richardson_derivative: need k >= 1 and h0 > 0");
  constexpr int kLevels = 7;
  auto central = [&](double h) {
    // Extended precision for the alternating sum.
    long double s = 0.0L, binom = 1.0L;
    for (int i = 0; i <= k; ++i) {
      s += ((i % 2) ? -binom : binom) * f(x + (0.5 * k - i) * h);
      binom = binom * (k - i) / (i + 1);
    }
    return double(s / std::pow((long double)h, k));
  };
  double table[kLevels][kLevels];
  double best = central(h0), best_err = std::numeric_limits<double>::infinity();
  double h = h0;
  for (int i = 0; i < kLevels; ++i, h *= 0.5) {
    table[i][0] = i == 0 ? best : central(h);
    double fac = 4.0;
    for (int j = 1; j <= i; ++j, fac *= 4.0) {
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (fac - 1.0);
      const double e = std::max(std::abs(table[i][j] - table[i][j - 1]), std::abs(table[i][j] - table[i - 1][j - 1]));
      if (e < best_err) {
        best_err = e;
        best = table[i][j];
      }
    }
  }
  if (err) *err = best_err;
  return best;
}

TailFit fit_log_tail(const double (&u)[3], const double (&G)[3], double U, bool left, double min_slope) {
  double phi[3];
  for (int r = 0; r < 3; ++r) phi[r] = left ? std::exp(u[r]) : std::exp(-u[r]);
  const double T_phi = left ? std::exp(U) : std::exp(-U);
  const double du1 = u[1] - u[0], du2 = u[2] - u[1];
  const double dp1 = phi[1] - phi[0], dp2 = phi[2] - phi[1];
  const double dg1 = G[1] - G[0], dg2 = G[2] - G[1];
  const double det = du1 * dp2 - du2 * dp1;
  TailFit fit;
  double b = 0.0;
  fit.slope = dg1 / du1;
  if (det != 0.0) {
    const double s3 = (dg1 * dp2 - dg2 * dp1) / det;
    const double b3 = (du1 * dg2 - du2 * dg1) / det;
    if (std::isfinite(s3) && std::isfinite(b3) && std::abs(b3 * T_phi) <= 0.5) {
      fit.slope = s3;
      b = b3;
    }
  }
  fit.curvature = b;
  fit.offset = G[0] - fit.slope * u[0] - b * phi[0];
  const double sgn = left ? 1.0 : -1.0;
  if (!(sgn * fit.slope >= min_slope)) return fit;
  // int e^{c + s u} e^{b phi} du = e^{c + sU} sum_n (b T_phi)^n / (n! (n + sgn s))
  const double x = b * T_phi;
  double sum = 0.0, power = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double term = power / (k + sgn * fit.slope);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    power *= x / (k + 1);
  }
  if (!(sum > 0.0)) return fit;
  fit.decays = true;
  fit.log_integral = G[0] - fit.slope * (u[0] - U) - b * phi[0] + std::log(sum);
  return fit;
}

double grid_scale() {
  const char* env = std::getenv("GVS_GRID_SCALE");
  if (env == nullptr) return 1.0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || !std::isfinite(v) || v <= 0.0) return 1.0;
  return v;
}

int scaled_count(int base, int min_value) {
  return std::max(min_value, static_cast<int>(std::lround(base * grid_scale())));
}

}  // namespace gvs
