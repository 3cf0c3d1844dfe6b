// Acceptance report: one line per criterion. argv[1] is the path of the gvs
// executable, used for the exit-code part of criterion 9.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gvs/suites.hpp"

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::map<std::string, gvs::SuiteResult> cache;

const gvs::SuiteResult& suite(const std::string& id) {
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, gvs::run_suite(id)).first;
  return it->second;
}

std::size_t failures(const gvs::SuiteResult& r) {
  std::size_t n = 0;
  for (const auto& c : r.cases) n += c.pass ? 0 : 1;
  return n;
}

// All named suites pass; optional wall-time budget over their sum.
Outcome suites_pass(const std::vector<std::string>& ids, double budget = 0.0) {
  Outcome o;
  double total = 0.0;
  std::ostringstream os;
  for (const auto& id : ids) {
    const auto& r = suite(id);
    total += r.wall_time;
    o.pass = o.pass && r.passed();
    os << id << " " << (r.cases.size() - failures(r)) << "/" << r.cases.size() << "; ";
  }
  os.precision(3);
  os << "time " << total << " s";
  if (budget > 0.0) {
    os << " (budget " << budget << " s)";
    o.pass = o.pass && total < budget;
  }
  o.detail = os.str();
  return o;
}

int exit_code(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

Outcome run_guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"semigroup eigenrelations, d <= 2, |nu| <= 6, under 30 s", [] { return suites_pass({"eigen-ou", "eigen-ph"}, 30.0); }},
      {"stable moments vs closed form, C_1 = 2 and C_2 = 12", [] { return suites_pass({"lemma-moment"}); }},
      {"stable derivative structure and finite differences", [] { return suites_pass({"stable-derivatives"}); }},
      {"total-variation scaling and maximal bound", [] { return suites_pass({"corollary-tv", "lemma-maximal", "kdecay"}); }},
      {"variable Lebesgue core", [] { return suites_pass({"norm-lemma-i-iv", "holder", "minkowski", "conjugate"}); }},
      {"Hardy constants finite and grid stable", [] { return suites_pass({"hardy-lower", "hardy-upper"}); }},
      {"definition independence of the seminorms, under 2 min",
       [] { return suites_pass({"besov-equivalence", "tl-equivalence"}, 120.0); }},
      {"Hermite polynomials: Besov = Triebel-Lizorkin and closed form", [] { return suites_pass({"hermite-membership"}); }},
      {"inclusions and rejection of invalid configs",
       [cli] {
         Outcome o = suites_pass({"besov-inclusion", "tl-inclusion"});
         if (cli.empty()) return Outcome{false, o.detail + "; no CLI path given"};
         const int a = exit_code(cli + " verify besov-inclusion --alpha1 0.5 --alpha2 1.5");
         const int b = exit_code(cli + " verify tl-inclusion --alpha1 1.5 --alpha2 0.5 --q1 const:2 --q2 const:3");
         const int c = exit_code(cli + " verify besov-inclusion --f h:3 --alpha1 1.5 --alpha2 0.5");
         o.pass = o.pass && a == 2 && b == 2 && c == 0;
         o.detail += "; CLI exit codes " + std::to_string(a) + " " + std::to_string(b) + " (want 2 2), valid " +
                     std::to_string(c) + " (want 0)";
         return o;
       }},
      {"power identity, log-convexity and interpolation",
       [] {
         Outcome o = suites_pass({"power-identity", "log-convexity", "interpolation"});
         bool variable = false;
         for (const auto& c : suite("interpolation").cases)
           variable = variable || (c.pass && c.p_desc.rfind("const", 0) != 0 && c.q_desc.rfind("const", 0) != 0);
         o.pass = o.pass && variable;
         o.detail += variable ? "; variable (p, q) instance present" : "; no variable (p, q) instance";
         return o;
       }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = run_guarded(criteria[i].second);
    failed += o.pass ? 0 : 1;
    std::printf("criterion %zu: %s - %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
