// Copyright 2026 The hypersum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hypersum: command-line front end.
//
// Exit codes: 0 success, 2 rejected input (domain or divergence),
// 3 numerical failure, 4 a verification suite failed.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypersum/branching.hpp"
#include "hypersum/error.hpp"
#include "hypersum/hypersum.hpp"
#include "hypersum/json_out.hpp"
#include "hypersum/mc_sim.hpp"
#include "hypersum/special_fn.hpp"
#include "hypersum/verify.hpp"

namespace {

using hypersum::Json;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerifyFailed = 4;

// Writes records as newline-delimited JSON or as CSV rows under a fixed
// header (written once, before the first row).
class Emitter {
 public:
  Emitter(std::ostream& out, bool csv, std::vector<std::string> columns)
      : out_(out), csv_(csv), columns_(std::move(columns)) {}

  void emit(const Json& record) {
    if (!csv_) {
      out_ << hypersum::dump_json(record) << '\n';
      return;
    }
    if (!header_done_) {
      for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
      out_ << '\n';
      header_done_ = true;
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) out_ << ',';
      const auto it = record.find(columns_[i]);
      if (it != record.end()) out_ << cell(*it);
    }
    out_ << '\n';
  }

 private:
  static std::string cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + '"';
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return hypersum::format_double(v.get<double>());
    return v.dump();
  }

  std::ostream& out_;
  bool csv_;
  std::vector<std::string> columns_;
  bool header_done_ = false;
};

struct Globals {
  std::string format = "json";
  std::string out_path;
};

std::int64_t max_terms_from_env() {
  const char* env = std::getenv("HYPERSUM_MAX_TERMS");
  if (env == nullptr || *env == '\0') return hypersum::special::kDefaultMaxTerms;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (*end != '\0' || v <= 0) {
    hypersum::fail(hypersum::ErrorKind::Domain,
                   "HYPERSUM_MAX_TERMS must be a positive integer");
  }
  return v;
}

Json result_fields(Json record, const hypersum::EvalResult& r) {
  record["value"] = r.value;
  record["abs_error_estimate"] = r.abs_error_estimate;
  record["terms_used"] = r.terms_used;
  record["method"] = std::string(hypersum::to_string(r.method));
  return record;
}

// Runs `body`; a library error becomes a status record (the inputs as they
// stand at the throw) plus exit 2 or 3.
template <typename Body>
int guarded(Emitter& em, Json& inputs, Body body) {
  try {
    return body();
  } catch (const hypersum::Error& e) {
    inputs["status"] = std::string(hypersum::to_string(e.kind()));
    inputs["message"] = e.what();
    em.emit(inputs);
    std::cerr << "hypersum: " << hypersum::to_string(e.kind()) << ": " << e.what() << '\n';
    return hypersum::is_rejection(e.kind()) ? kExitRejected : kExitNumerical;
  }
}

// ---------------------------------------------------------------------------

struct Hyp2f1Args {
  double a = 0, b = 0, c = 1, x = 0;
  std::optional<double> tol;
};

int cmd_hyp2f1(const Hyp2f1Args& args, std::ostream& out, bool csv) {
  Emitter em(out, csv,
             {"a", "b", "c", "x", "value", "abs_error_estimate", "terms_used", "method",
              "status"});
  Json in{{"command", "hyp2f1"}, {"a", args.a}, {"b", args.b}, {"c", args.c}, {"x", args.x}};
  return guarded(em, in, [&] {
    hypersum::EvalResult r;
    if (args.tol && args.x >= -0.5 && args.x <= 0.9) {
      r = hypersum::special::hyp2f1_series({args.a, args.b, args.c, args.x}, *args.tol,
                                           max_terms_from_env());
    } else {
      r = hypersum::special::hyp2f1(args.a, args.b, args.c, args.x);
    }
    Json rec = result_fields(in, r);
    rec["status"] = "ok";
    em.emit(rec);
    return kExitOk;
  });
}

struct SumArgs {
  double eta = 1, c = 1, x = 0;
  std::string method = "auto";
  std::optional<double> tol;
};

int cmd_sum(const SumArgs& args, std::ostream& out, bool csv) {
  Emitter em(out, csv,
             {"eta", "c", "x", "method_requested", "value", "abs_error_estimate", "terms_used",
              "method", "analytic_continuation", "convergent", "reason", "status"});
  Json in{{"command", "sum"}, {"eta", args.eta}, {"c", args.c}, {"x", args.x},
          {"method_requested", args.method}};
  return guarded(em, in, [&] {
    const auto p = hypersum::SumParams::make(args.eta, args.c, args.x);
    const auto verdict = hypersum::convergence_check(p);
    in["convergent"] = verdict.convergent;
    in["reason"] = std::string(hypersum::to_string(verdict.reason));
    hypersum::DirectOptions opts;
    opts.max_terms = max_terms_from_env();
    if (args.tol) opts.tol = *args.tol;
    const hypersum::SumMethod m = args.method == "direct"    ? hypersum::SumMethod::Direct
                                  : args.method == "closed"  ? hypersum::SumMethod::Closed
                                  : args.method == "special" ? hypersum::SumMethod::Special
                                                             : hypersum::SumMethod::Auto;
    const hypersum::EvalResult r = hypersum::evaluate_sum(p, m, opts);
    Json rec = result_fields(in, r);
    rec["analytic_continuation"] = r.analytic_continuation;
    rec["status"] = "ok";
    em.emit(rec);
    return kExitOk;
  });
}

int cmd_check(double eta, double c, double x, std::ostream& out, bool csv) {
  Emitter em(out, csv,
             {"eta", "c", "x", "convergent", "on_boundary", "reason", "late_term_ratio",
              "status"});
  Json in{{"command", "check"}, {"eta", eta}, {"c", c}, {"x", x}};
  return guarded(em, in, [&] {
    const auto p = hypersum::SumParams::make(eta, c, x);
    const auto v = hypersum::convergence_check(p);
    Json rec = in;
    rec["convergent"] = v.convergent;
    rec["on_boundary"] = v.on_boundary;
    rec["reason"] = std::string(hypersum::to_string(v.reason));
    rec["late_term_ratio"] = hypersum::late_term_ratio(p);
    rec["status"] = "ok";
    em.emit(rec);
    return kExitOk;
  });
}

int cmd_progeny_pmf(double lambda, std::int64_t lmax, std::ostream& out, bool csv) {
  Emitter em(out, csv, {"lambda", "Q", "l", "pmf", "cumulative", "status"});
  Json in{{"command", "progeny pmf"}, {"lambda", lambda}, {"lmax", lmax}};
  return guarded(em, in, [&] {
    if (lmax < 1) hypersum::fail(hypersum::ErrorKind::Domain, "lmax must be at least 1");
    const auto law = hypersum::branching::ProgenyHalfLaw::from_lambda(lambda);
    const std::vector<double> p = hypersum::branching::progeny_pmf_table(law, lmax);
    double cum = 0.0;
    for (std::int64_t l = 1; l <= lmax; ++l) {
      cum += p[static_cast<std::size_t>(l - 1)];
      em.emit(Json{{"command", "progeny pmf"}, {"lambda", lambda}, {"Q", law.Q}, {"l", l},
                   {"pmf", p[static_cast<std::size_t>(l - 1)]}, {"cumulative", cum},
                   {"status", "ok"}});
    }
    return kExitOk;
  });
}

int cmd_progeny_pgf(double lambda, double z, std::ostream& out, bool csv) {
  Emitter em(out, csv,
             {"lambda", "z", "value", "value_hypergeometric", "z_minus", "z_plus", "status"});
  Json in{{"command", "progeny pgf"}, {"lambda", lambda}, {"z", z}};
  return guarded(em, in, [&] {
    const auto law = hypersum::branching::ProgenyHalfLaw::from_lambda(lambda);
    Json rec = in;
    rec["value"] = hypersum::branching::progeny_pgf_elementary(law, z);
    rec["value_hypergeometric"] =
        z > 0.0 && z <= law.z_minus
            ? Json(hypersum::branching::progeny_pgf_hypergeometric(law, z))
            : Json(nullptr);
    rec["z_minus"] = law.z_minus;
    rec["z_plus"] = law.z_plus;
    rec["status"] = "ok";
    em.emit(rec);
    return kExitOk;
  });
}

int cmd_progeny_general(double c, double x, std::int64_t lmax, std::ostream& out, bool csv) {
  Emitter em(out, csv, {"c", "x", "l", "pmf", "cumulative", "status"});
  Json in{{"command", "progeny general"}, {"c", c}, {"x", x}, {"lmax", lmax}};
  return guarded(em, in, [&] {
    if (lmax < 1) hypersum::fail(hypersum::ErrorKind::Domain, "lmax must be at least 1");
    const auto law = hypersum::branching::GeneralProgenyLaw::make(c, x);
    const std::vector<double> q = hypersum::branching::general_progeny_pmf_table(law, lmax);
    double cum = 0.0;
    for (std::int64_t l = 1; l <= lmax; ++l) {
      cum += q[static_cast<std::size_t>(l - 1)];
      em.emit(Json{{"command", "progeny general"}, {"c", c}, {"x", x}, {"l", l},
                   {"pmf", q[static_cast<std::size_t>(l - 1)]}, {"cumulative", cum},
                   {"status", "ok"}});
    }
    return kExitOk;
  });
}

struct SimArgs {
  double alpha = 0.5, lambda = 0.6;
  std::int64_t n = 1000000;
  std::uint64_t seed = 42;
  std::int64_t cap = 100000;
  int workers = 1;
  int bins = 40;
};

int cmd_simulate(const SimArgs& a, std::ostream& out, bool csv) {
  Emitter em(out, csv,
             {"l", "observed", "expected", "z_score", "chi_square", "dof", "quantile_999",
              "censored", "status"});
  Json in{{"command", "simulate"}, {"alpha", a.alpha},  {"lambda", a.lambda},
          {"replicates", a.n},     {"seed", a.seed},    {"cap", a.cap},
          {"workers", a.workers},  {"bins", a.bins}};
  return guarded(em, in, [&] {
    namespace br = hypersum::branching;
    const auto d = br::ScaledSibuya::make(a.alpha, a.lambda);
    hypersum::mc::SimConfig cfg;
    cfg.seed = a.seed;
    cfg.replicates = a.n;
    cfg.progeny_cap = a.cap;
    cfg.workers = a.workers;
    const bool half = a.alpha == 0.5;
    const std::vector<double> pmf =
        half ? br::progeny_pmf_table(br::ProgenyHalfLaw::from_lambda(a.lambda), a.bins)
             : br::dual_progeny_pmf_lagrange(d, a.bins);
    const auto sim = hypersum::mc::simulate_total_progeny(d, cfg);
    in["theory"] = half ? "hypergeometric" : "lagrange-inversion";
    const auto gof = hypersum::mc::gof_compare(sim, pmf, a.bins);

    if (csv) {
      for (int l = 1; l <= a.bins; ++l) {
        const auto it = sim.counts.find(l);
        em.emit(Json{{"l", l}, {"observed", it == sim.counts.end() ? 0 : it->second},
                     {"expected", pmf[static_cast<std::size_t>(l - 1)]},
                     {"z_score", gof.z_scores.at(l)}, {"chi_square", gof.chi_square},
                     {"dof", gof.dof}, {"quantile_999", gof.quantile_999},
                     {"censored", gof.censored}, {"status", "ok"}});
      }
      return kExitOk;
    }
    Json counts = Json::object();
    for (const auto& [l, c] : sim.counts) counts[std::to_string(l)] = c;
    Json z = Json::object();
    for (const auto& [l, v] : gof.z_scores) z[std::to_string(l)] = v;
    Json rec = in;
    rec["censored"] = gof.censored;
    rec["mean_uncensored"] = gof.mean_uncensored;
    rec["chi_square"] = gof.chi_square;
    rec["dof"] = gof.dof;
    rec["cells"] = gof.cells;
    rec["quantile_999"] = gof.quantile_999;
    rec["passed"] = gof.passed;
    rec["max_abs_deviation"] = gof.max_abs_deviation;
    rec["z_scores"] = z;
    rec["counts"] = counts;
    rec["status"] = "ok";
    em.emit(rec);
    return kExitOk;
  });
}

int cmd_verify(const std::string& suite, const hypersum::verify::VerifyOptions& opts,
               std::ostream& out, bool csv) {
  Emitter em(out, csv, {"suite", "criterion", "passed", "seconds", "status"});
  Json in{{"command", "verify"}, {"suite", suite}};
  return guarded(em, in, [&] {
    std::vector<std::string> names;
    if (suite == "all") {
      names = hypersum::verify::suite_names();
    } else {
      names.push_back(suite);
    }
    bool all = true;
    for (const std::string& name : names) {
      const auto rep = hypersum::verify::run_suite(name, opts);
      all = all && rep.passed;
      if (csv) {
        for (const auto& c : rep.criteria) {
          em.emit(Json{{"suite", rep.suite}, {"criterion", c.id}, {"passed", c.passed},
                       {"seconds", rep.seconds}, {"status", c.passed ? "pass" : "fail"}});
        }
      } else {
        Json rec = rep.to_json();
        rec["status"] = rep.passed ? "pass" : "fail";
        em.emit(rec);
      }
    }
    return all ? kExitOk : kExitVerifyFailed;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted hypergeometric sums, Sibuya branching laws and their checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", g.out_path, "Write records to this file instead of stdout");

  Hyp2f1Args h;
  auto* hyp = app.add_subcommand("hyp2f1", "Gauss hypergeometric function 2F1(a,b;c;x)");
  hyp->add_option("--a", h.a)->required();
  hyp->add_option("--b", h.b)->required();
  hyp->add_option("--c", h.c)->required();
  hyp->add_option("--x", h.x)->required();
  hyp->add_option("--tol", h.tol, "Series tolerance (direct series range only)");

  SumArgs s;
  auto* sum = app.add_subcommand("sum", "The weighted sum S(eta, c; x)");
  sum->add_option("--eta", s.eta)->required();
  sum->add_option("--c", s.c)->required();
  sum->add_option("--x", s.x)->required();
  sum->add_option("--method", s.method)
      ->check(CLI::IsMember({"direct", "closed", "special", "auto"}))
      ->capture_default_str();
  sum->add_option("--tol", s.tol, "Direct-summation tolerance");

  double ck_eta = 1, ck_c = 1, ck_x = 0;
  auto* check = app.add_subcommand("check", "Convergence verdict for S(eta, c; x)");
  check->add_option("--eta", ck_eta)->required();
  check->add_option("--c", ck_c)->required();
  check->add_option("--x", ck_x)->required();

  auto* progeny = app.add_subcommand("progeny", "Total-progeny laws");
  progeny->require_subcommand(1);
  double pl = 0.6, pz = 1.0, gc = 2.5, gx = 0.49;
  std::int64_t lmax = 20, glmax = 100;
  auto* pmf = progeny->add_subcommand("pmf", "p_l for alpha = 1/2");
  pmf->add_option("--lambda", pl)->required();
  pmf->add_option("--lmax", lmax)->capture_default_str();
  auto* pgf = progeny->add_subcommand("pgf", "Generating function for alpha = 1/2");
  pgf->add_option("--lambda", pl)->required();
  pgf->add_option("--z", pz)->required();
  auto* general = progeny->add_subcommand("general", "q_l of the (c, x) class");
  general->add_option("--c", gc)->required();
  general->add_option("--x", gx)->required();
  general->add_option("--lmax", glmax)->capture_default_str();

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo total progeny with chi-square check");
  sim->add_option("--alpha", sa.alpha)->capture_default_str();
  sim->add_option("--lambda", sa.lambda)->capture_default_str();
  sim->add_option("--n", sa.n, "Replicates")->capture_default_str();
  sim->add_option("--seed", sa.seed)->capture_default_str();
  sim->add_option("--cap", sa.cap, "Censoring threshold")->capture_default_str();
  sim->add_option("--workers", sa.workers)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--bins", sa.bins, "Cells l = 1..bins before the tail cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string suite = "all";
  hypersum::verify::VerifyOptions vo;
  auto* ver = app.add_subcommand("verify", "Run verification suites");
  std::vector<std::string> suite_choices = hypersum::verify::suite_names();
  suite_choices.push_back("all");
  ver->add_option("--suite", suite)->check(CLI::IsMember(suite_choices))->capture_default_str();
  ver->add_option("--seed", vo.seed)->capture_default_str();
  ver->add_option("--replicates", vo.mc_replicates)->capture_default_str();
  ver->add_option("--workers", vo.mc_workers)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitRejected;
  }

  std::ofstream file;
  if (!g.out_path.empty()) {
    file.open(g.out_path);
    if (!file) {
      std::cerr << "hypersum: cannot open " << g.out_path << '\n';
      return kExitRejected;
    }
  }
  std::ostream& out = g.out_path.empty() ? std::cout : file;
  const bool csv = g.format == "csv";

  if (*hyp) return cmd_hyp2f1(h, out, csv);
  if (*sum) return cmd_sum(s, out, csv);
  if (*check) return cmd_check(ck_eta, ck_c, ck_x, out, csv);
  if (*pmf) return cmd_progeny_pmf(pl, lmax, out, csv);
  if (*pgf) return cmd_progeny_pgf(pl, pz, out, csv);
  if (*general) return cmd_progeny_general(gc, gx, glmax, out, csv);
  if (*sim) return cmd_simulate(sa, out, csv);
  if (*ver) return cmd_verify(suite, vo, out, csv);
  return kExitRejected;
}
