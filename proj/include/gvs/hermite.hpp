#pragma once

// Multi-indices, L2(gamma_d)-normalized Hermite polynomials and finite
// Hermite expansions.

#include <compare>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace gvs {

class GaussianGrid;

inline constexpr int kMaxDimension = 3;
inline constexpr int kDefaultDegreeCap = 12;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::span<const int> entries() const { return entries_; }

  /// |nu| = sum of entries.
  int order() const;
  /// nu! = product of entry factorials.
  double factorial() const;

  std::string to_string() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

/// All multi-indices of length dim with |nu| <= degree_cap, graded order.
std::vector<MultiIndex> multi_indices_up_to(int dim, int degree_cap);

/// h_n(x), normalized so that int h_n^2 dgamma_1 = 1. Uses the three-term
/// recurrence of the normalized family, so 2^n n! is never formed.
double hermite_1d(int n, double x);

/// h_0(x), ..., h_n(x) into out (size n+1).
void hermite_1d_all(int n, double x, std::span<double> out);

/// Derivative h_n'(x) = sqrt(2n) h_{n-1}(x).
double hermite_1d_derivative(int n, double x);

/// Tensor-product h_nu(x). Throws DomainError on dimension mismatch.
double hermite_multi(const MultiIndex& nu, std::span<const double> x);

using PointFunction = std::function<double(std::span<const double>)>;

/// f = sum c_nu h_nu with a fixed dimension and degree cap.
class HermiteExpansion {
 public:
  HermiteExpansion(int dim, int degree_cap = kDefaultDegreeCap);

  static HermiteExpansion single(const MultiIndex& nu, double coeff = 1.0);
  /// Single 1-d polynomial h_n.
  static HermiteExpansion basis(int n) { return single(MultiIndex{n}); }

  int dim() const { return dim_; }
  int degree_cap() const { return degree_cap_; }
  const std::map<MultiIndex, double>& coeffs() const { return coeffs_; }

  /// Sets c_nu; zero removes the entry. Validates length and degree.
  void set(const MultiIndex& nu, double c);
  double coeff(const MultiIndex& nu) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Largest |nu| with a nonzero coefficient (0 for the zero expansion).
  int degree() const;

  double operator()(std::span<const double> x) const;
  PointFunction as_function() const;

  /// c_nu -> factor(|nu|) c_nu. Entries mapped to exactly zero are dropped.
  HermiteExpansion map_by_order(const std::function<double(int)>& factor) const;

  HermiteExpansion& operator+=(const HermiteExpansion& other);
  HermiteExpansion& operator*=(double c);
  friend HermiteExpansion operator+(HermiteExpansion a, const HermiteExpansion& b) { return a += b; }
  friend HermiteExpansion operator*(double c, HermiteExpansion a) { return a *= c; }

  std::string to_string() const;

 private:
  int dim_;
  int degree_cap_;
  std::map<MultiIndex, double> coeffs_;
};

/// Orthonormal projection c_nu = int f h_nu dgamma_d over the grid.
/// Throws DomainError when the grid cannot integrate degree 2N exactly.
HermiteExpansion project(const PointFunction& f, const GaussianGrid& grid, int degree_cap);

}  // namespace gvs
