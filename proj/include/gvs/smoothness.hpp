#pragma once

// Variable Gaussian Besov-Lipschitz and Triebel-Lizorkin norms of Hermite
// expansions, and the inclusion / interpolation / equivalence checks.
//
// Both seminorms are built from the same tensor D(t_j, x_i) =
// d^k/dt^k P_t f(x_i) on the logtime nodes t_j and Gauss-Hermite nodes x_i:
//   Besov:  || t^{k-a} || D(t, .) ||_{p(.),gamma} ||_{q(.),dt/t}
//   TL:     || || t^{k-a} D(., x) ||_{q(.),dt/t} ||_{p(.),gamma}

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gvs/exponent.hpp"
#include "gvs/hermite.hpp"
#include "gvs/lebesgue.hpp"
#include "gvs/quadrature.hpp"

namespace gvs {

enum class SmoothnessSpace { besov, triebel };

std::string to_string(SmoothnessSpace s);
SmoothnessSpace parse_smoothness_space(const std::string& text);

struct SmoothnessParams {
  double alpha;
  int k;
  ExponentFunction p;  ///< on R^d, tags PgammaInf and LH0
  ExponentFunction q;  ///< on (0, inf), tag P0inf

  /// k defaults to floor(alpha) + 1. Validates.
  static SmoothnessParams make(double alpha, ExponentFunction p, ExponentFunction q,
                               std::optional<int> k = {});
  /// DomainError for alpha < 0 or k <= alpha; HypothesisError for missing tags.
  void validate() const;
};

/// Gauss-Hermite nodes per axis 64 / 32 / 16 for d = 1 / 2 / 3 (scaled by
/// GVS_GRID_SCALE), default logtime grid.
QuadratureContext smoothness_context(int dim);
/// Twice the Hermite nodes per axis and twice the panels.
QuadratureContext refined(const QuadratureContext& ctx);
/// Same resolution, ln t_min and ln t_max doubled.
QuadratureContext truncation_doubled(const QuadratureContext& ctx);

struct GridMeta {
  int dim = 1;
  int hermite_nodes = 0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t time_nodes = 0;
};

GridMeta grid_meta(const QuadratureContext& ctx);

struct SmoothnessNormReport {
  double lp_norm = 0.0;
  double seminorm = 0.0;
  double total = 0.0;
  int k_used = 0;
  GridMeta grid_meta;
};

/// D(t_j, x_i) as rows over t_j.
std::vector<std::vector<double>> derivative_tensor(const HermiteExpansion& f, int k,
                                                   const QuadratureContext& ctx);

double besov_seminorm(const HermiteExpansion& f, const SmoothnessParams& sp, const QuadratureContext& ctx);
double triebel_seminorm(const HermiteExpansion& f, const SmoothnessParams& sp, const QuadratureContext& ctx);
double seminorm(const HermiteExpansion& f, const SmoothnessParams& sp, SmoothnessSpace space,
                const QuadratureContext& ctx);

SmoothnessNormReport besov_norm(const HermiteExpansion& f, const SmoothnessParams& sp,
                                const QuadratureContext& ctx);
SmoothnessNormReport triebel_norm(const HermiteExpansion& f, const SmoothnessParams& sp,
                                  const QuadratureContext& ctx);
SmoothnessNormReport smoothness_norm(const HermiteExpansion& f, const SmoothnessParams& sp,
                                     SmoothnessSpace space, const QuadratureContext& ctx);

/// sup over the logtime nodes of t^{k-a} ||d^k P_t f||_{p(.),gamma}; a lower
/// bound of the true supremum.
double besov_infty_constant(const HermiteExpansion& f, const SmoothnessParams& sp,
                            const QuadratureContext& ctx);

struct MembershipReport {
  double norm = 0.0;          ///< at the given truncation
  double norm_doubled = 0.0;  ///< after one truncation doubling
  double rel_change = 0.0;
  bool member = false;        ///< finite and rel_change < 1e-6
};

MembershipReport membership(const HermiteExpansion& f, const SmoothnessParams& sp, SmoothnessSpace space,
                            const QuadratureContext& ctx);

struct EquivalenceRatio {
  double ratio_besov = 1.0;  ///< seminorm with k / seminorm with l
  double ratio_tl = 1.0;
};

/// Both ratios; 0/0 reports 1, x/0 throws ConvergenceError.
EquivalenceRatio equivalence_ratio(const HermiteExpansion& f, const SmoothnessParams& sp, int l,
                                   const QuadratureContext& ctx);

struct InclusionReport {
  std::string hypothesis;  ///< which case applied
  MembershipReport source;
  MembershipReport target;
  double ratio = 0.0;      ///< target / source norm
  double side_lower = 0.0; ///< ||t^{a1-a2} chi_(0,1]||_{q2} (case i of the Besov check)
  double side_upper = 0.0; ///< ||t^{-a2} chi_(1,inf)||_{q2}
  bool holds = true;       ///< source member implies target member
};

/// Besov: case i) a1 > a2 > 0 (q1, q2 unrelated; the two side norms above must
/// be finite), case ii) a1 = a2 and q1 <= q2 on the logtime nodes.
/// Anything else throws HypothesisError.
InclusionReport inclusion_check_besov(const HermiteExpansion& f, double alpha1, double alpha2,
                                      const ExponentFunction& q1, const ExponentFunction& q2,
                                      const ExponentFunction& p, const QuadratureContext& ctx);
/// TL: a1 > a2 > 0 and q1 > q2 on the logtime nodes; HypothesisError otherwise.
InclusionReport inclusion_check_tl(const HermiteExpansion& f, double alpha1, double alpha2,
                                   const ExponentFunction& q1, const ExponentFunction& q2,
                                   const ExponentFunction& p, const QuadratureContext& ctx);

/// Smallest integer strictly greater than every given alpha.
int shared_k(std::initializer_list<double> alphas);

struct InterpolationReport {
  double alpha = 0.0;
  int k = 0;
  std::string p_desc, q_desc;
  double lhs = 0.0;   ///< seminorm in the interpolated space
  double rhs = 0.0;   ///< 4 semi_0^{1-theta} semi_1^theta
  double ratio = 0.0;
  bool holds = true;
};

/// alpha, 1/p and 1/q interpolated linearly in theta; one k (shared_k of
/// alpha0, alpha1) for all three spaces. Requires 0 < theta < 1 and
/// p_j^-, q_j^- > 1.
InterpolationReport interpolation_check(const HermiteExpansion& f, double alpha0, const ExponentFunction& p0,
                                        const ExponentFunction& q0, double alpha1, const ExponentFunction& p1,
                                        const ExponentFunction& q1, double theta, SmoothnessSpace space,
                                        const QuadratureContext& ctx, double tol = 1e-9);

/// (|| |f|^s ||_{p(.)}, ||f||_{s p(.)}^s). DomainError when s p^- < 1.
std::pair<double, double> power_norm_identity_check(std::span<const double> f, double s,
                                                    const ExponentFunction& p, const DiscreteMeasure& m);

/// ||f||_{r} <= 2 ||f||_{r0}^{1-lambda} ||f||_{r1}^lambda, 1/r = (1-lambda)/r0 + lambda/r1.
/// Requires 0 < lambda < 1 and r_j^- > 1.
InequalityReport log_convexity_check(std::span<const double> f, const ExponentFunction& r0,
                                     const ExponentFunction& r1, double lambda, const DiscreteMeasure& m,
                                     double tol = 1e-9);

struct DecayReport {
  double growth_constant = 0.0;  ///< max over s < t of v(t) / v(s)
  double scaled_sup = 0.0;       ///< sup t^k v(t)
  std::vector<double> t, values;
};

/// v(t) = ||d^k P_t f||_{p(.),gamma} on the time grid.
DecayReport decay_check(const HermiteExpansion& f, const ExponentFunction& p, int k,
                        std::span<const double> t_grid, const GaussianGrid& space);

/// Ten expansions in dimension `dim`: fixed single and two-term cases plus
/// seeded random ones.
std::vector<HermiteExpansion> smoothness_test_family(int dim = 1, std::uint64_t seed = 2024);

}  // namespace gvs
