// gvs: norms, semigroup values and verification suites from the command line.
//
// Exit codes: 0 pass, 1 suite failure, 2 usage error, 3 non-convergence.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gvs/errors.hpp"
#include "gvs/exponent.hpp"
#include "gvs/lebesgue.hpp"
#include "gvs/literal.hpp"
#include "gvs/numeric.hpp"
#include "gvs/quadrature.hpp"
#include "gvs/semigroups.hpp"
#include "gvs/smoothness.hpp"
#include "gvs/suites.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitConvergence = 3;

// Option values gathered from the config file, then overridden by flags.
struct Options {
  std::string config;
  std::string csv;
  bool parallel = false;
  std::optional<std::uint64_t> seed;
  // norm / semigroup
  std::string space = "lp";
  std::string f;
  std::optional<double> alpha;
  std::optional<int> k;
  std::string p = "const:2";
  std::string q = "const:2";
  std::string kind = "ph";
  std::string method = "expansion";
  std::optional<double> t;
  std::vector<double> x;
  // verify / report
  std::vector<std::string> suites;
  std::optional<std::string> inc_f, inc_q1, inc_q2, inc_p;
  std::optional<double> inc_alpha1, inc_alpha2;
};

template <class T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <class T>
void take(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void load_config(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw gvs::DomainError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw gvs::DomainError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw gvs::DomainError("config '" + path + "': expected a JSON object");
  try {
    take(j, "csv", o.csv);
    take(j, "parallel", o.parallel);
    take(j, "seed", o.seed);
    take(j, "space", o.space);
    take(j, "f", o.f);
    take(j, "alpha", o.alpha);
    take(j, "k", o.k);
    take(j, "p", o.p);
    take(j, "q", o.q);
    take(j, "kind", o.kind);
    take(j, "method", o.method);
    take(j, "t", o.t);
    take(j, "x", o.x);
    take(j, "suites", o.suites);
    if (j.contains("inclusion")) {
      const auto& inc = j.at("inclusion");
      take(inc, "f", o.inc_f);
      take(inc, "alpha1", o.inc_alpha1);
      take(inc, "alpha2", o.inc_alpha2);
      take(inc, "q1", o.inc_q1);
      take(inc, "q2", o.inc_q2);
      take(inc, "p", o.inc_p);
    }
  } catch (const json::exception& e) {
    throw gvs::DomainError("config '" + path + "': " + e.what());
  }
}

void write_csv(const std::string& path, const std::string& body) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw gvs::DomainError("cannot write CSV '" + path + "'");
  out << body;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : "nan"); }

gvs::SuiteConfig suite_config(const Options& o) {
  gvs::SuiteConfig cfg;
  if (o.seed) cfg.seed = *o.seed;
  cfg.parallel = o.parallel;
  if (o.inc_f || o.inc_alpha1 || o.inc_alpha2 || o.inc_q1 || o.inc_q2 || o.inc_p) {
    gvs::InclusionInstance inc;
    if (o.inc_f) inc.f = *o.inc_f;
    if (o.inc_alpha1) inc.alpha1 = *o.inc_alpha1;
    if (o.inc_alpha2) inc.alpha2 = *o.inc_alpha2;
    if (o.inc_q1) inc.q1 = *o.inc_q1;
    if (o.inc_q2) inc.q2 = *o.inc_q2;
    if (o.inc_p) inc.p = *o.inc_p;
    cfg.inclusion = inc;
  }
  return cfg;
}

int cmd_norm(const Options& o) {
  if (o.f.empty()) throw gvs::DomainError("norm: --f is required");
  const auto f = gvs::parse_function_literal(o.f);
  const auto p = gvs::parse_exponent(o.p);
  json out{{"f", o.f}, {"space", o.space}, {"p", p.descriptor()}};
  std::string csv;
  if (o.space == "lp") {
    const auto m = gvs::DiscreteMeasure::gaussian(gvs::GaussianGrid(f.dim(), gvs::smoothness_context(f.dim()).space.nodes_per_axis()));
    const auto r = gvs::luxemburg_norm(f.as_function(), p, m);
    out["value"] = number(r.value);
    out["modular_at_value"] = number(r.modular_at_value);
    out["iterations"] = r.iterations;
    std::ostringstream row;
    row.precision(17);
    row << "norm,lp,,," << p.descriptor() << ",," << r.value << ",,,true\n";
    csv = row.str();
  } else {
    const auto space = gvs::parse_smoothness_space(o.space);
    if (!o.alpha) throw gvs::DomainError("norm: --alpha is required for space " + o.space);
    const auto q = gvs::parse_exponent(o.q);
    const auto sp = gvs::SmoothnessParams::make(*o.alpha, p, q, o.k);
    const auto ctx = gvs::smoothness_context(f.dim());
    const auto r = gvs::smoothness_norm(f, sp, space, ctx);
    out["q"] = q.descriptor();
    out["alpha"] = sp.alpha;
    out["k_used"] = r.k_used;
    out["lp_norm"] = number(r.lp_norm);
    out["seminorm"] = number(r.seminorm);
    out["total"] = number(r.total);
    out["grid_meta"] = json{{"dim", r.grid_meta.dim},
                            {"hermite_nodes", r.grid_meta.hermite_nodes},
                            {"t_min", r.grid_meta.t_min},
                            {"t_max", r.grid_meta.t_max},
                            {"time_nodes", r.grid_meta.time_nodes}};
    std::ostringstream row;
    row.precision(17);
    row << "norm," << o.space << ',' << sp.alpha << ',' << r.k_used << ',' << p.descriptor() << ','
        << q.descriptor() << ',' << r.total << ",,,true\n";
    csv = row.str();
  }
  std::cout << out.dump(2) << '\n';
  write_csv(o.csv, gvs::csv_header() + csv);
  return kExitPass;
}

int cmd_semigroup(const Options& o) {
  if (o.f.empty()) throw gvs::DomainError("semigroup: --f is required");
  if (!o.t) throw gvs::DomainError("semigroup: --t is required");
  const auto f = gvs::parse_function_literal(o.f);
  const std::vector<double> x = o.x.empty() ? std::vector<double>(f.dim(), 0.0) : o.x;
  if (static_cast<int>(x.size()) != f.dim()) throw gvs::DomainError("semigroup: --x has the wrong dimension");
  const int k = o.k.value_or(0);
  const double t = *o.t;
  double value = 0.0;
  if (o.kind == "ou") {
    if (k != 0) throw gvs::DomainError("semigroup: derivatives are only available for kind ph");
    if (o.method == "expansion") value = gvs::ou_apply(f, t)(x);
    else if (o.method == "kernel")
      value = gvs::ou_apply_kernel(f.as_function(), t, x, gvs::GaussianGrid(f.dim(), gvs::default_hermite_nodes()));
    else throw gvs::DomainError("semigroup: method for ou must be expansion or kernel");
  } else if (o.kind == "ph") {
    if (o.method == "expansion") value = gvs::ph_derivative(f, t, k)(x);
    else if (o.method == "subordination") {
      const gvs::GaussianGrid grid(f.dim(), gvs::default_hermite_nodes());
      value = k == 0 ? gvs::ph_apply_subordination(f.as_function(), t, x, grid)
                     : gvs::ph_derivative_subordination(f.as_function(), t, k, x, grid);
    } else throw gvs::DomainError("semigroup: method for ph must be expansion or subordination");
  } else {
    throw gvs::DomainError("semigroup: kind must be ou or ph");
  }
  std::cout << json{{"f", o.f}, {"kind", o.kind}, {"method", o.method}, {"t", t}, {"k", k}, {"x", x},
                    {"value", number(value)}}
                   .dump(2)
            << '\n';
  return kExitPass;
}

std::vector<std::string> expand_ids(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) {
    if (id == "all") out.insert(out.end(), gvs::suite_registry().begin(), gvs::suite_registry().end());
    else out.push_back(id);
  }
  for (const auto& id : out) gvs::suite_anchor(id);  // rejects unknown ids before running anything
  return out;
}

int cmd_verify(const Options& o) {
  if (o.suites.empty()) throw gvs::DomainError("verify: a suite id is required");
  const auto ids = expand_ids(o.suites);
  const auto cfg = suite_config(o);
  json reports = json::array();
  std::string csv = gvs::csv_header();
  bool ok = true;
  for (const auto& id : ids) {
    const auto r = gvs::run_suite(id, cfg);
    ok = ok && r.passed();
    reports.push_back(gvs::to_json(r));
    csv += gvs::to_csv_rows(r);
  }
  if (reports.size() == 1) std::cout << reports[0].dump(2) << '\n';
  else std::cout << json{{"passed", ok}, {"suites", reports}}.dump(2) << '\n';
  write_csv(o.csv, csv);
  return ok ? kExitPass : kExitFail;
}

int cmd_report(const Options& o) {
  const auto ids = expand_ids(o.suites.empty() ? std::vector<std::string>{"all"} : o.suites);
  const auto cfg = suite_config(o);
  json rows = json::array();
  std::string csv = gvs::csv_header();
  bool ok = true;
  for (const auto& id : ids) {
    const auto r = gvs::run_suite(id, cfg);
    ok = ok && r.passed();
    std::size_t failures = 0;
    double worst = 0.0;
    for (const auto& c : r.cases) {
      if (!c.pass) ++failures;
      if (std::isfinite(c.ratio)) worst = std::max(worst, c.ratio);
    }
    rows.push_back(json{{"suite_id", r.suite_id},
                        {"result_anchor", r.result_anchor},
                        {"passed", r.passed()},
                        {"cases", r.cases.size()},
                        {"failures", failures},
                        {"max_ratio", worst},
                        {"wall_time", r.wall_time}});
    csv += gvs::to_csv_rows(r);
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.suite_id << " (" << r.cases.size() << " cases, " << failures
              << " failed, " << r.wall_time << " s)\n";
  }
  std::cout << json{{"passed", ok}, {"seed", cfg.seed}, {"grid_scale", gvs::grid_scale()}, {"suites", rows}}.dump(2)
            << '\n';
  write_csv(o.csv, csv);
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-exponent Gaussian Besov and Triebel-Lizorkin norms: computation and verification"};
  app.require_subcommand(1);
  Options flags;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON config file; flags override its values");
    sub->add_option("--csv", flags.csv, "Write a CSV table to this path ('-' for stdout)");
  };

  auto* norm = app.add_subcommand("norm", "Lebesgue, Besov or Triebel-Lizorkin norm of a Hermite expansion");
  common(norm);
  norm->add_option("--space", flags.space, "lp | besov | triebel");
  norm->add_option("--f", flags.f, "Function literal: h:k, expand:[...], family:random:N:seed");
  norm->add_option("--alpha", flags.alpha, "Smoothness index");
  norm->add_option("--k", flags.k, "Derivative order (default floor(alpha) + 1)");
  norm->add_option("--p", flags.p, "Space exponent: const:c | gaussian:p_inf:c");
  norm->add_option("--q", flags.q, "Time exponent: const:c | time:q0:q_inf");

  auto* semi = app.add_subcommand("semigroup", "Value of T_t f(x) or d^k/dt^k P_t f(x)");
  common(semi);
  semi->add_option("--f", flags.f, "Function literal");
  semi->add_option("--kind", flags.kind, "ou | ph");
  semi->add_option("--method", flags.method, "expansion | kernel (ou) | subordination (ph)");
  semi->add_option("--t", flags.t, "Time t > 0");
  semi->add_option("--k", flags.k, "Derivative order in t (ph only)");
  semi->add_option("--x", flags.x, "Evaluation point")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Run verification suites (or 'all')");
  common(verify);
  verify->add_option("suite", flags.suites, "Suite ids");
  verify->add_flag("--parallel", flags.parallel, "Run independent cases concurrently");
  verify->add_option("--seed", flags.seed, "RNG seed for random families");
  verify->add_option("--f", flags.inc_f, "Inclusion suites: function literal");
  verify->add_option("--alpha1", flags.inc_alpha1, "Inclusion suites: source smoothness");
  verify->add_option("--alpha2", flags.inc_alpha2, "Inclusion suites: target smoothness");
  verify->add_option("--q1", flags.inc_q1, "Inclusion suites: source time exponent");
  verify->add_option("--q2", flags.inc_q2, "Inclusion suites: target time exponent");
  verify->add_option("--p", flags.inc_p, "Inclusion suites: space exponent");

  auto* report = app.add_subcommand("report", "Run suites and print a summary");
  common(report);
  report->add_option("--suites", flags.suites, "Suite ids (default all)")->delimiter(',');
  report->add_flag("--parallel", flags.parallel, "Run independent cases concurrently");
  report->add_option("--seed", flags.seed, "RNG seed for random families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Options o;
    if (!flags.config.empty()) load_config(flags.config, o);
    // Flags given on the command line win over the config file.
    CLI::App* sub = app.get_subcommands().front();
    auto given = [&](const std::string& name) {
      try {
        return sub->get_option(name)->count() > 0;
      } catch (const CLI::OptionNotFound&) {
        return false;
      }
    };
    o.config = flags.config;
    if (given("--csv")) o.csv = flags.csv;
    if (given("--parallel")) o.parallel = flags.parallel;
    if (given("--seed")) o.seed = flags.seed;
    if (given("--space")) o.space = flags.space;
    if (given("--alpha")) o.alpha = flags.alpha;
    if (given("--k")) o.k = flags.k;
    if (given("--q")) o.q = flags.q;
    if (given("--kind")) o.kind = flags.kind;
    if (given("--method")) o.method = flags.method;
    if (given("--t")) o.t = flags.t;
    if (given("--x")) o.x = flags.x;
    if (given("suite") || given("--suites")) o.suites = flags.suites;
    if (sub == verify) {
      if (given("--f")) o.inc_f = flags.inc_f;
      if (given("--alpha1")) o.inc_alpha1 = flags.inc_alpha1;
      if (given("--alpha2")) o.inc_alpha2 = flags.inc_alpha2;
      if (given("--q1")) o.inc_q1 = flags.inc_q1;
      if (given("--q2")) o.inc_q2 = flags.inc_q2;
      if (given("--p")) o.inc_p = flags.inc_p;
    } else {
      if (given("--f")) o.f = flags.f;
      if (given("--p")) o.p = flags.p;
    }

    if (sub == norm) return cmd_norm(o);
    if (sub == semi) return cmd_semigroup(o);
    if (sub == verify) return cmd_verify(o);
    return cmd_report(o);
  } catch (const gvs::ConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const gvs::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
