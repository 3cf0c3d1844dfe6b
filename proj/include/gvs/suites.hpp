#pragma once

// Named verification suites. Each suite checks one result numerically and
// returns a table of cases (lhs, rhs, ratio, pass). Output is deterministic
// for a fixed config apart from wall_time.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gvs {

struct CaseResult {
  std::string case_id;
  std::string inputs;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  int k = -1;
  std::string p_desc, q_desc;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite_id;
  std::string result_anchor;  ///< the statement the suite checks
  std::vector<CaseResult> cases;
  nlohmann::ordered_json grid_meta;
  double wall_time = 0.0;
  bool passed() const;
};

/// Single user-supplied instance for the inclusion suites.
struct InclusionInstance {
  std::string f = "h:2";
  double alpha1 = 1.5, alpha2 = 0.5;
  std::string q1 = "const:2", q2 = "const:3", p = "const:2";
};

struct SuiteConfig {
  std::uint64_t seed = 2024;
  bool parallel = false;
  std::optional<InclusionInstance> inclusion;
};

/// Suite ids in run order.
const std::vector<std::string>& suite_registry();
const std::string& suite_anchor(const std::string& id);

/// Throws DomainError for unknown ids; HypothesisError when a user-supplied
/// inclusion instance violates the hypotheses.
SuiteResult run_suite(const std::string& id, const SuiteConfig& cfg = {});

nlohmann::ordered_json to_json(const SuiteResult& r, bool include_wall_time = true);

/// Header plus one row per case:
/// suite_id,case_id,alpha,k,p_desc,q_desc,lhs,rhs,ratio,pass
std::string csv_header();
std::string to_csv_rows(const SuiteResult& r);

}  // namespace gvs
