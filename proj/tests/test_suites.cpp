#include <string>

#include "doctest.h"
#include "gvs/errors.hpp"
#include "gvs/suites.hpp"

using namespace gvs;

TEST_CASE("registry order and anchors") {
  const auto& ids = suite_registry();
  REQUIRE(ids.size() == 21);
  CHECK(ids.front() == "eigen-ou");
  CHECK(ids.back() == "interpolation");
  for (const auto& id : ids) CHECK(!suite_anchor(id).empty());
  CHECK_THROWS_AS(run_suite("no-such-suite"), DomainError);
}

TEST_CASE("reports are deterministic and independent of threading") {
  for (const std::string id : {"holder", "conjugate", "lemma-moment", "hardy-lower"}) {
    SuiteConfig serial, parallel;
    parallel.parallel = true;
    const auto a = to_json(run_suite(id, serial), false).dump();
    const auto b = to_json(run_suite(id, serial), false).dump();
    const auto c = to_json(run_suite(id, parallel), false).dump();
    CAPTURE(id);
    CHECK(a == b);
    CHECK(a == c);
  }
}

TEST_CASE("seed changes the random cases") {
  SuiteConfig a, b;
  b.seed = 7;
  CHECK(to_json(run_suite("holder", a), false).dump() != to_json(run_suite("holder", b), false).dump());
}

TEST_CASE("pass flags agree with lhs and rhs") {
  const auto r = run_suite("minkowski");
  for (const auto& c : r.cases) CHECK(c.pass == (c.lhs <= c.rhs + 1e-9));
  CHECK(r.passed());
}

TEST_CASE("CSV rows") {
  CHECK(csv_header() == "suite_id,case_id,alpha,k,p_desc,q_desc,lhs,rhs,ratio,pass\n");
  const auto r = run_suite("lemma-moment");
  const auto rows = to_csv_rows(r);
  std::size_t lines = 0;
  for (char ch : rows) lines += ch == '\n';
  CHECK(lines == r.cases.size());
  CHECK(rows.rfind("lemma-moment,k=1 t=0.5,,1,", 0) == 0);
}

TEST_CASE("user inclusion instance") {
  SuiteConfig cfg;
  cfg.inclusion = InclusionInstance{};
  const auto r = run_suite("besov-inclusion", cfg);
  REQUIRE(r.cases.size() == 1);
  CHECK(r.passed());
  cfg.inclusion->alpha1 = 0.5;
  cfg.inclusion->alpha2 = 1.5;
  CHECK_THROWS_AS(run_suite("besov-inclusion", cfg), HypothesisError);
  cfg.inclusion = InclusionInstance{};
  CHECK_THROWS_AS(run_suite("tl-inclusion", cfg), HypothesisError);  // q1 = 2 < q2 = 3
}
