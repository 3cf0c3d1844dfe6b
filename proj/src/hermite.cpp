#include "gvs/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gvs/errors.hpp"
#include "gvs/quadrature.hpp"

namespace gvs {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) require(e >= 0, "MultiIndex: negative entry");
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

int MultiIndex::order() const {
  int s = 0;
  for (int e : entries_) s += e;
  return s;
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : entries_) f *= std::tgamma(e + 1.0);
  return f;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

namespace {

void enumerate(int dim, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == dim) {
    out.emplace_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur.push_back(v);
    enumerate(dim, remaining - v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(int dim, int degree_cap) {
  require(dim >= 1 && dim <= kMaxDimension, "multi_indices_up_to: unsupported dimension");
  require(degree_cap >= 0, "multi_indices_up_to: negative degree cap");
  std::vector<MultiIndex> out;
  std::vector<int> cur;
  enumerate(dim, degree_cap, cur, out);
  std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    return a.order() < b.order();
  });
  return out;
}

void hermite_1d_all(int n, double x, std::span<double> out) {
  require(n >= 0, "hermite_1d: negative degree");
  require(out.size() >= static_cast<std::size_t>(n) + 1, "hermite_1d_all: output too small");
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = std::sqrt(2.0) * x;
  for (int m = 1; m < n; ++m) {
    out[m + 1] = x * std::sqrt(2.0 / (m + 1)) * out[m] - std::sqrt(double(m) / (m + 1)) * out[m - 1];
  }
}

double hermite_1d(int n, double x) {
  require(n >= 0, "hermite_1d: negative degree");
  double prev = 0.0, cur = 1.0;
  for (int m = 0; m < n; ++m) {
    const double next = x * std::sqrt(2.0 / (m + 1)) * cur - std::sqrt(double(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_1d_derivative(int n, double x) {
  if (n == 0) return 0.0;
  return std::sqrt(2.0 * n) * hermite_1d(n - 1, x);
}

double hermite_multi(const MultiIndex& nu, std::span<const double> x) {
  require(nu.dim() == x.size(), "hermite_multi: dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) v *= hermite_1d(nu[i], x[i]);
  return v;
}

HermiteExpansion::HermiteExpansion(int dim, int degree_cap) : dim_(dim), degree_cap_(degree_cap) {
  require(dim >= 1 && dim <= kMaxDimension, "HermiteExpansion: dimension must be in [1, 3]");
  require(degree_cap >= 0, "HermiteExpansion: negative degree cap");
}

HermiteExpansion HermiteExpansion::single(const MultiIndex& nu, double coeff) {
  HermiteExpansion e(static_cast<int>(nu.dim()), std::max(kDefaultDegreeCap, nu.order()));
  e.set(nu, coeff);
  return e;
}

void HermiteExpansion::set(const MultiIndex& nu, double c) {
  require(static_cast<int>(nu.dim()) == dim_, "HermiteExpansion: multi-index length mismatch");
  require(nu.order() <= degree_cap_, "HermiteExpansion: |nu| exceeds degree cap");
  require(std::isfinite(c), "HermiteExpansion: non-finite coefficient");
  if (c == 0.0)
    coeffs_.erase(nu);
  else
    coeffs_[nu] = c;
}

double HermiteExpansion::coeff(const MultiIndex& nu) const {
  auto it = coeffs_.find(nu);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int HermiteExpansion::degree() const {
  int d = 0;
  for (const auto& [nu, c] : coeffs_) d = std::max(d, nu.order());
  return d;
}

double HermiteExpansion::operator()(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == dim_, "HermiteExpansion: point dimension mismatch");
  const int n = degree();
  // Per-axis tables h_0..h_n so each term is a product of lookups.
  std::vector<double> table(static_cast<std::size_t>(dim_) * (n + 1));
  for (int i = 0; i < dim_; ++i)
    hermite_1d_all(n, x[i], std::span<double>(table).subspan(static_cast<std::size_t>(i) * (n + 1), n + 1));
  double s = 0.0;
  for (const auto& [nu, c] : coeffs_) {
    double term = c;
    for (int i = 0; i < dim_; ++i) term *= table[static_cast<std::size_t>(i) * (n + 1) + nu[i]];
    s += term;
  }
  return s;
}

PointFunction HermiteExpansion::as_function() const {
  return [self = *this](std::span<const double> x) { return self(x); };
}

HermiteExpansion HermiteExpansion::map_by_order(const std::function<double(int)>& factor) const {
  HermiteExpansion out(dim_, degree_cap_);
  for (const auto& [nu, c] : coeffs_) {
    const double v = factor(nu.order()) * c;
    if (v != 0.0) out.coeffs_[nu] = v;
  }
  return out;
}

HermiteExpansion& HermiteExpansion::operator+=(const HermiteExpansion& other) {
  require(dim_ == other.dim_, "HermiteExpansion: dimension mismatch in sum");
  degree_cap_ = std::max(degree_cap_, other.degree_cap_);
  for (const auto& [nu, c] : other.coeffs_) set(nu, coeff(nu) + c);
  return *this;
}

HermiteExpansion& HermiteExpansion::operator*=(double c) {
  if (c == 0.0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [nu, v] : coeffs_) v *= c;
  return *this;
}

std::string HermiteExpansion::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [nu, c] : coeffs_) {
    os << (first ? "" : " + ") << c << "*h" << nu.to_string();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

HermiteExpansion project(const PointFunction& f, const GaussianGrid& grid, int degree_cap) {
  require(degree_cap >= 0, "project: negative degree cap");
  if (grid.nodes_per_axis() < degree_cap + 1)
    throw DomainError("project: Gauss-Hermite rule too small for degree cap " +
                      std::to_string(degree_cap));
  const int dim = grid.dim();
  const auto indices = multi_indices_up_to(dim, degree_cap);
  const std::size_t n = grid.size();
  std::vector<double> fvals(n);
  for (std::size_t i = 0; i < n; ++i) fvals[i] = f(grid.point(i));

  // Per-node, per-axis Hermite tables.
  const int stride = degree_cap + 1;
  std::vector<double> table(n * dim * stride);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = grid.point(i);
    for (int a = 0; a < dim; ++a)
      hermite_1d_all(degree_cap, x[a], std::span<double>(table).subspan((i * dim + a) * stride, stride));
  }
  HermiteExpansion out(dim, degree_cap);
  std::vector<double> terms(n);
  for (const auto& nu : indices) {
    for (std::size_t i = 0; i < n; ++i) {
      double h = 1.0;
      for (int a = 0; a < dim; ++a) h *= table[(i * dim + a) * stride + nu[a]];
      terms[i] = grid.weight(i) * fvals[i] * h;
    }
    out.set(nu, pairwise_sum(terms));
  }
  return out;
}

}  // namespace gvs
