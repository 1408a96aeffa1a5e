// Command-line front end. Exit codes: 0 success, 1 usage, 2 instance
// validation failure, 3 enumeration guard exceeded.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "divkit/core/diversity.hpp"
#include "divkit/core/errors.hpp"
#include "divkit/dispersion/ball.hpp"
#include "divkit/dispersion/baselines.hpp"
#include "divkit/dispersion/qptas.hpp"
#include "divkit/diversification/baselines.hpp"
#include "divkit/diversification/diversify.hpp"
#include "divkit/dks/brute_force.hpp"
#include "divkit/dks/submodular_dks.hpp"
#include "divkit/lp/lp_dump.hpp"
#include "divkit/ranking/dcg_lp.hpp"
#include "divkit/ranking/ptas.hpp"
#include "divkit/ranking/ranking.hpp"
#include "divkit/workbench/bench.hpp"
#include "divkit/workbench/generators.hpp"
#include "divkit/workbench/io.hpp"
#include "divkit/workbench/results.hpp"

namespace wb = divkit::workbench;
using divkit::GuardError;
using divkit::ValidationError;
using wb::Json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kGuard = 3 };

struct Global {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

struct Inner {
  std::string inner = "scheme";
  std::optional<double> gamma;
  std::optional<int> s;
  std::optional<double> t;
  std::optional<std::uint64_t> enum_cap;
  std::string mode = "exact";

  // Pair-loop commands also take --inner and an inner --gamma; solve-dks has its own --gamma.
  void add(CLI::App* cmd, bool pair_loop) {
    if (pair_loop) {
      cmd->add_option("--inner", inner, "Ball DkS solver: exact or scheme")->check(CLI::IsMember({"exact", "scheme"}));
      cmd->add_option("--gamma", gamma, "Inner accuracy (default 0.00005 eps^2)")->check(CLI::PositiveNumber);
    }
    cmd->add_option("--s", s, "Number of parts")->check(CLI::PositiveNumber);
    cmd->add_option("--t", t, "Target part size")->check(CLI::PositiveNumber);
    cmd->add_option("--enum-cap", enum_cap, "Enumeration cap")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", mode, "Matroid step: exact or greedy")->check(CLI::IsMember({"exact", "greedy"}));
  }

  divkit::dispersion::InnerOverrides overrides() const {
    divkit::dispersion::InnerOverrides ov;
    ov.inner = divkit::dispersion::parse_inner_mode(inner);
    ov.gamma = gamma;
    ov.s = s;
    ov.t = t;
    if (enum_cap) ov.enum_cap = *enum_cap;
    ov.mode = divkit::dks::parse_matroid_mode(mode);
    return ov;
  }

  void record(Json& params) const {
    params["inner"] = inner;
    params["mode"] = mode;
    params["gamma"] = gamma ? Json(*gamma) : Json(nullptr);
    params["s"] = s ? Json(*s) : Json(nullptr);
    params["t"] = t ? Json(*t) : Json(nullptr);
    params["enum_cap"] = enum_cap ? Json(*enum_cap) : Json(nullptr);
  }
};

void emit_text(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error(g.out + ": cannot open for writing");
  f << text;
}

// JSON result, or with --format csv a single row in the bench record layout.
void emit_result(const Global& g, const Json& result, const std::string& instance, const std::string& algorithm,
                 std::optional<double> epsilon, double value, double millis) {
  if (g.format == "csv") {
    wb::BenchRecord r;
    r.instance = instance;
    r.algorithm = algorithm;
    r.seed = g.seed;
    r.epsilon = epsilon;
    r.value = value;
    r.millis = millis;
    emit_text(g, wb::records_csv({r}));
  } else {
    emit_text(g, wb::dump(result));
  }
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

divkit::MetricInstance load_valid_metric(const std::string& path) {
  auto m = wb::metric_from_json(wb::load_json_file(path));
  const auto rep = divkit::validate_metric(m);
  if (!rep.ok()) {
    if (rep.violation == divkit::MetricReport::Violation::asymmetric)
      throw ValidationError(path + ": $.dist is not symmetric at (" + std::to_string(rep.i) + "," + std::to_string(rep.j) + ")");
    throw ValidationError(path + ": $.dist violates the triangle inequality on (" + std::to_string(rep.i) + "," +
                          std::to_string(rep.j) + "," + std::to_string(rep.k) + ")");
  }
  return m;
}

divkit::SubmodularSpec load_function(const std::string& path, int n) {
  auto f = wb::submodular_from_json(wb::load_json_file(path));
  if (f.ground_size() != n)
    throw ValidationError(path + ": function has " + std::to_string(f.ground_size()) + " elements, instance has " +
                          std::to_string(n));
  return f;
}

// ---- gen ----

struct GenArgs {
  std::string kind;
  int n = 10, dim = 2, k = 3, m = 5, kmax = 2, universe = 12, extra = 0, max_cover = 3;
  bool no_plant = false;
  double scale = 1.0;
};

int run_gen(const Global& g, const GenArgs& a) {
  divkit::Provenance meta;
  meta.generator = a.kind;
  meta.seed = g.seed;
  Json doc;
  if (a.kind == "euclidean") {
    meta.params = {{"n", a.n}, {"dim", a.dim}};
    doc = wb::to_json(wb::gen_random_euclidean(a.n, a.dim, g.seed), &meta);
  } else if (a.kind == "range12") {
    meta.params = {{"n", a.n}};
    doc = wb::to_json(wb::gen_random_metric(a.n, g.seed), &meta);
  } else if (a.kind == "planted-dks" || a.kind == "planted-dispersion") {
    meta.params = {{"n", a.n}, {"k", a.k}};
    const auto pd = wb::gen_planted_dks(a.n, a.k, g.seed);
    meta.planted = pd.planted;
    if (a.kind == "planted-dks") {
      doc = wb::to_json(pd.instance, &meta);
    } else {
      meta.params["p"] = a.k;
      doc = wb::to_json(wb::dks_to_dispersion(pd.instance).metric, &meta);
    }
  } else if (a.kind == "coverage" || a.kind == "coverage-dcg") {
    meta.params = {{"universe", a.universe}, {"k", a.k}, {"extra", a.extra}, {"planted", a.no_plant ? 0 : 1}};
    const auto c = wb::gen_regular_coverage(a.universe, a.k, !a.no_plant, a.extra, g.seed);
    meta.planted = c.planted;
    doc = a.kind == "coverage" ? wb::to_json(c, &meta) : wb::to_json(wb::coverage_to_dcg(c), &meta);
  } else if (a.kind == "setsystem") {
    meta.params = {{"n", a.n}, {"m", a.m}, {"kmax", a.kmax}};
    doc = wb::to_json(wb::gen_setsystem(a.n, a.m, a.kmax, g.seed), &meta);
  } else if (a.kind == "coverage-f") {
    meta.params = {{"n", a.n}, {"universe", a.universe}, {"max_cover", a.max_cover}};
    doc = wb::to_json(wb::gen_coverage_function(a.n, a.universe, a.max_cover, g.seed), &meta);
  } else if (a.kind == "modular") {
    meta.params = {{"n", a.n}, {"scale", a.scale}};
    doc = wb::to_json(wb::gen_modular_function(a.n, a.scale, g.seed), &meta);
  }
  emit_text(g, wb::dump(doc));
  return kOk;
}

// ---- solvers ----

struct DcgArgs {
  std::string in, lp_dump;
  double epsilon = 0.1;
  std::optional<int> u;
  std::optional<double> gamma;
  int trials = 50;
  std::uint64_t prefix_cap = 100000;
};

int run_solve_dcg(const Global& g, const DcgArgs& a) {
  const auto inst = wb::setsystem_from_json(wb::load_json_file(a.in));
  divkit::ranking::PtasOptions opt;
  opt.epsilon = a.epsilon;
  opt.u = a.u;
  opt.gamma = a.gamma;
  opt.trials = a.trials;
  opt.prefix_cap = a.prefix_cap;
  const auto start = std::chrono::steady_clock::now();
  const auto r = divkit::ranking::ptas_dcg(inst, opt, g.seed);
  const double ms = millis_since(start);
  if (!a.lp_dump.empty()) {
    const auto lp = divkit::ranking::solve_dcg_lp(inst, divkit::ranking::GainFunction::standard());
    std::ofstream f(a.lp_dump, std::ios::binary);
    if (!f) throw std::runtime_error(a.lp_dump + ": cannot open for writing");
    divkit::lp::write_lp_text(f, lp.final_lp);
  }
  Json j = wb::to_json(r);
  Json params;
  params["seed"] = g.seed;
  params["epsilon"] = a.epsilon;
  params["u"] = a.u ? Json(*a.u) : Json(nullptr);
  params["gamma"] = r.diagnostics.gamma;
  params["trials"] = a.trials;
  params["prefix_cap"] = a.prefix_cap;
  j["params"] = std::move(params);
  emit_result(g, j, a.in, "solve-dcg", a.epsilon, r.dcg, ms);
  return kOk;
}

struct PairArgs {
  std::string in, f;
  int p = 2;
  double epsilon = 0.5;
  Inner inner;
};

int run_solve_dispersion(const Global& g, const PairArgs& a) {
  const auto m = load_valid_metric(a.in);
  const auto start = std::chrono::steady_clock::now();
  const auto r = divkit::dispersion::qptas_dispersion(m, a.p, a.epsilon, a.inner.overrides(), g.seed);
  const double ms = millis_since(start);
  Json j = wb::pair_loop_json("dispersion_result", r, r.value, 0.0);
  Json params;
  params["seed"] = g.seed;
  params["p"] = a.p;
  params["epsilon"] = a.epsilon;
  a.inner.record(params);
  j["params"] = std::move(params);
  emit_result(g, j, a.in, "solve-dispersion", a.epsilon, r.value, ms);
  return kOk;
}

int run_solve_diversification(const Global& g, const PairArgs& a) {
  auto m = load_valid_metric(a.in);
  auto f = load_function(a.f, m.size());
  const divkit::diversification::DiversificationInstance di(std::move(m), std::move(f), a.p);
  const auto start = std::chrono::steady_clock::now();
  const auto r = divkit::diversification::diversify(di, a.epsilon, a.inner.overrides(), g.seed);
  const double ms = millis_since(start);
  Json j = wb::pair_loop_json("diversification_result", r, divkit::disp(r.set, di.metric), di.f(r.set));
  Json params;
  params["seed"] = g.seed;
  params["p"] = a.p;
  params["epsilon"] = a.epsilon;
  a.inner.record(params);
  j["params"] = std::move(params);
  emit_result(g, j, a.in, "solve-diversification", a.epsilon, r.value, ms);
  return kOk;
}

struct DksArgs {
  std::string in, h;
  double gamma = 0.1;
  Inner inner;
};

int run_solve_dks(const Global& g, const DksArgs& a) {
  const auto inst = wb::dks_from_json(wb::load_json_file(a.in));
  auto ov = a.inner.overrides();
  auto params = ov.params(a.gamma);
  const auto start = std::chrono::steady_clock::now();
  divkit::dks::SubDksResult r;
  if (a.h.empty()) {
    r = divkit::dks::submodular_dks(inst, divkit::ZeroFunction{}, params, g.seed);
  } else {
    const auto h = load_function(a.h, inst.size());
    r = divkit::dks::submodular_dks(inst, h, params, g.seed);
  }
  const double ms = millis_since(start);
  Json j = wb::to_json(r);
  Json pj;
  pj["seed"] = g.seed;
  pj["gamma"] = a.gamma;
  pj["bonus"] = !a.h.empty();
  pj["mode"] = a.inner.mode;
  pj["s"] = a.inner.s ? Json(*a.inner.s) : Json(nullptr);
  pj["t"] = a.inner.t ? Json(*a.inner.t) : Json(nullptr);
  pj["enum_cap"] = a.inner.enum_cap ? Json(*a.inner.enum_cap) : Json(nullptr);
  j["params"] = std::move(pj);
  emit_result(g, j, a.in, "solve-dks", a.gamma, r.solution.value, ms);
  return kOk;
}

// ---- oracle / check ----

struct OracleArgs {
  std::string in, f;
  std::optional<int> p;
};

int run_oracle(const Global& g, const OracleArgs& a) {
  const auto doc = wb::load_json_file(a.in);
  const auto kind = wb::kind_of(doc);
  Json j;
  j["kind"] = "oracle_result";
  const auto start = std::chrono::steady_clock::now();
  double value = 0.0;
  if (kind == "setsystem") {
    const auto inst = wb::setsystem_from_json(doc);
    if (inst.element_count() > divkit::ranking::kBruteForceRankingMaxN)
      throw GuardError("oracle: DCG enumeration is limited to n <= " + std::to_string(divkit::ranking::kBruteForceRankingMaxN));
    const auto r = divkit::ranking::brute_force_dcg(inst);
    j["problem"] = "dcg";
    j["order"] = r.ranking.order;
    j["cover_times"] = r.ranking.cover_times;
    value = r.value;
  } else if (kind == "dks") {
    const auto inst = wb::dks_from_json(doc);
    divkit::dks::DksSolution s;
    if (a.f.empty())
      s = divkit::dks::brute_force_subdks(inst, divkit::ZeroFunction{});
    else
      s = divkit::dks::brute_force_subdks(inst, load_function(a.f, inst.size()));
    j["problem"] = "dks";
    j["nodes"] = s.nodes;
    j["h"] = s.h;
    j["den"] = s.den;
    value = s.value;
  } else if (kind == "metric") {
    if (!a.p) throw CLI::ValidationError("--p", "required for metric instances");
    auto m = load_valid_metric(a.in);
    if (a.f.empty()) {
      const auto r = divkit::dispersion::brute_force_dispersion(m, *a.p);
      j["problem"] = "dispersion";
      j["set"] = r.set;
      value = r.value;
    } else {
      auto f = load_function(a.f, m.size());
      const divkit::diversification::DiversificationInstance di(std::move(m), std::move(f), *a.p);
      const auto r = divkit::diversification::brute_force_diversification(di);
      j["problem"] = "diversification";
      j["set"] = r.set;
      j["disp"] = r.disp;
      j["f"] = r.f;
      value = r.value;
    }
  } else if (kind == "maxcoverage") {
    const auto c = wb::coverage_instance_from_json(doc);
    const auto r = wb::brute_force_coverage(c);
    j["problem"] = "coverage";
    j["chosen"] = r.chosen;
    value = r.value;
  } else {
    throw ValidationError(a.in + ": $.kind \"" + kind + "\" has no oracle");
  }
  j["value"] = value;
  emit_result(g, j, a.in, "oracle", std::nullopt, value, millis_since(start));
  return kOk;
}

int run_check(const Global& g, const OracleArgs& a) {
  const auto doc = wb::load_json_file(a.in);
  const auto kind = wb::kind_of(doc);
  Json j;
  j["kind"] = "check_report";
  j["instance_kind"] = kind;
  bool ok = true;
  if (kind == "metric") {
    const auto m = wb::metric_from_json(doc);
    const auto rep = divkit::validate_metric(m);
    Json mj;
    mj["ok"] = rep.ok();
    mj["violation"] = rep.violation == divkit::MetricReport::Violation::none         ? "none"
                      : rep.violation == divkit::MetricReport::Violation::asymmetric ? "asymmetric"
                                                                                     : "triangle";
    mj["witness"] = Json::array({rep.i, rep.j, rep.k});
    j["metric"] = std::move(mj);
    ok = rep.ok();
    if (ok && a.p) {
      Json sj;
      if (a.f.empty()) {
        const auto opt = divkit::dispersion::brute_force_dispersion(m, *a.p);
        sj = wb::to_json(divkit::dispersion::check_structural_lemma(m, *a.p, opt.set));
        sj["optimum"] = opt.set;
        sj["value"] = opt.value;
      } else {
        const divkit::diversification::DiversificationInstance di(m, load_function(a.f, m.size()), *a.p);
        const auto opt = divkit::diversification::brute_force_diversification(di);
        sj = wb::to_json(divkit::diversification::check_div_structural_lemma(di, opt.set));
        sj["optimum"] = opt.set;
        sj["value"] = opt.value;
      }
      const bool holds = sj["min_ratio"].is_null() || sj["min_ratio"].get<double>() >= 1.0;
      sj["holds"] = holds;
      ok = ok && holds;
      j["structural"] = std::move(sj);
    }
  } else if (kind == "setsystem") {
    wb::setsystem_from_json(doc);
  } else if (kind == "dks") {
    wb::dks_from_json(doc);
  } else if (kind == "modular" || kind == "coverage") {
    wb::submodular_from_json(doc);
  } else if (kind == "maxcoverage") {
    wb::coverage_instance_from_json(doc);
  } else {
    throw ValidationError(a.in + ": $.kind: unknown kind \"" + kind + "\"");
  }
  j["ok"] = ok;
  emit_text(g, wb::dump(j));
  return ok ? kOk : kInvalid;
}

int run_bench_cmd(const Global& g, const std::string& spec) {
  const auto rep = wb::run_bench(wb::load_json_file(spec), std::filesystem::path(spec).parent_path());
  emit_text(g, g.format == "csv" ? wb::records_csv(rep.records) : wb::dump(wb::to_json(rep)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diversification algorithms workbench"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("kind", gen.kind, "Instance kind")
      ->required()
      ->check(CLI::IsMember({"euclidean", "range12", "planted-dks", "planted-dispersion", "coverage", "coverage-dcg",
                             "setsystem", "coverage-f", "modular"}));
  gen_cmd->add_option("--n", gen.n, "Points / elements / nodes")->capture_default_str();
  gen_cmd->add_option("--dim", gen.dim, "Euclidean dimension")->capture_default_str();
  gen_cmd->add_option("--k", gen.k, "Planted size or coverage k")->capture_default_str();
  gen_cmd->add_option("--m", gen.m, "Number of sets")->capture_default_str();
  gen_cmd->add_option("--kmax", gen.kmax, "Largest requirement")->capture_default_str();
  gen_cmd->add_option("--universe", gen.universe, "Universe size")->capture_default_str();
  gen_cmd->add_option("--extra", gen.extra, "Extra random regular sets")->capture_default_str();
  gen_cmd->add_option("--max-cover", gen.max_cover, "Largest cover per element")->capture_default_str();
  gen_cmd->add_option("--scale", gen.scale, "Modular weight scale")->capture_default_str();
  gen_cmd->add_flag("--no-plant", gen.no_plant, "Omit the planted partition");

  DcgArgs dcg;
  auto* dcg_cmd = app.add_subcommand("solve-dcg", "Rank a set system for DCG");
  dcg_cmd->add_option("--in", dcg.in, "Set system JSON")->required();
  dcg_cmd->add_option("--epsilon", dcg.epsilon, "Accuracy")->capture_default_str();
  dcg_cmd->add_option("--u", dcg.u, "Prefix length");
  dcg_cmd->add_option("--gamma", dcg.gamma, "Rounding scale");
  dcg_cmd->add_option("--trials", dcg.trials, "Rounding trials per prefix")->capture_default_str();
  dcg_cmd->add_option("--prefix-cap", dcg.prefix_cap, "Largest number of prefixes")->capture_default_str();
  dcg_cmd->add_option("--lp-dump", dcg.lp_dump, "Write the relaxation after cut generation to this file");

  PairArgs disp;
  auto* disp_cmd = app.add_subcommand("solve-dispersion", "Max-Sum Dispersion");
  disp_cmd->add_option("--in", disp.in, "Metric JSON")->required();
  disp_cmd->add_option("--p", disp.p, "Target size")->required();
  disp_cmd->add_option("--epsilon", disp.epsilon, "Accuracy")->capture_default_str();
  disp.inner.add(disp_cmd, true);

  PairArgs div;
  auto* div_cmd = app.add_subcommand("solve-diversification", "Max-Sum Diversification");
  div_cmd->add_option("--in", div.in, "Metric JSON")->required();
  div_cmd->add_option("--f", div.f, "Submodular function JSON")->required();
  div_cmd->add_option("--p", div.p, "Target size")->required();
  div_cmd->add_option("--epsilon", div.epsilon, "Accuracy")->capture_default_str();
  div.inner.add(div_cmd, true);

  DksArgs dks;
  auto* dks_cmd = app.add_subcommand("solve-dks", "Densest k-subgraph with optional submodular bonus");
  dks_cmd->add_option("--in", dks.in, "DkS JSON")->required();
  dks_cmd->add_option("--submodular", dks.h, "Bonus function JSON over the nodes");
  dks_cmd->add_option("--gamma", dks.gamma, "Accuracy")->check(CLI::PositiveNumber)->capture_default_str();
  dks.inner.add(dks_cmd, false);

  OracleArgs orc;
  auto* orc_cmd = app.add_subcommand("oracle", "Exact optimum by enumeration");
  orc_cmd->add_option("--in", orc.in, "Instance JSON")->required();
  orc_cmd->add_option("--p", orc.p, "Target size (metric instances)");
  orc_cmd->add_option("--f", orc.f, "Submodular function JSON");

  OracleArgs chk;
  auto* chk_cmd = app.add_subcommand("check", "Validate an instance; with --p, check the structural bound at the optimum");
  chk_cmd->add_option("--in", chk.in, "Instance JSON")->required();
  chk_cmd->add_option("--p", chk.p, "Target size");
  chk_cmd->add_option("--f", chk.f, "Submodular function JSON");

  std::string bench_spec;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark spec");
  bench_cmd->add_option("--spec", bench_spec, "Bench spec JSON")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(g, gen);
    if (dcg_cmd->parsed()) return run_solve_dcg(g, dcg);
    if (disp_cmd->parsed()) return run_solve_dispersion(g, disp);
    if (div_cmd->parsed()) return run_solve_diversification(g, div);
    if (dks_cmd->parsed()) return run_solve_dks(g, dks);
    if (orc_cmd->parsed()) return run_oracle(g, orc);
    if (chk_cmd->parsed()) return run_check(g, chk);
    if (bench_cmd->parsed()) return run_bench_cmd(g, bench_spec);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
