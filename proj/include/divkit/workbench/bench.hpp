#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "divkit/core/errors.hpp"
#include "divkit/core/metric.hpp"
#include "divkit/dispersion/baselines.hpp"
#include "divkit/dispersion/qptas.hpp"
#include "divkit/diversification/baselines.hpp"
#include "divkit/diversification/diversify.hpp"
#include "divkit/dks/brute_force.hpp"
#include "divkit/dks/submodular_dks.hpp"
#include "divkit/ranking/ptas.hpp"
#include "divkit/ranking/ranking.hpp"
#include "divkit/workbench/generators.hpp"
#include "divkit/workbench/io.hpp"

namespace divkit::workbench {

// A bench spec is a JSON document:
//   {"instances": [{"id": ..., "generator": ..., <generator args>} | {"id": ..., "path": ...}],
//    "algorithms": [{"name": ..., "params": {<name>: scalar or array}}],
//    "seeds": [...], "oracle": true}
// Every algorithm runs on every instance of a matching kind, for every point
// of its parameter grid and every seed.

struct BenchRecord {
  std::string instance;
  std::string algorithm;  // name plus non-epsilon parameters, e.g. dispersion-qptas[inner=exact;p=3]
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  double value = 0.0;
  std::optional<double> oracle;
  std::optional<double> ratio;
  double millis = 0.0;
};

struct BenchAggregate {
  std::string algorithm;
  std::optional<double> epsilon;
  int runs = 0;
  double mean_value = 0.0;
  int ratio_runs = 0;
  std::optional<double> mean_ratio;
  std::optional<double> min_ratio;
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<BenchAggregate> aggregates;
};

struct DiversificationPair {
  MetricInstance metric;
  SubmodularSpec f;
};

using BenchInstance = std::variant<MetricInstance, DksInstance, SetSystemInstance, DiversificationPair>;

namespace detail {

inline std::uint64_t seed_field(const Json& j, const std::string& path) {
  const auto& s = field(j, path, "seed");
  if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
    fail(at_key(path, "seed"), "expected a non-negative integer");
  return s.get<std::uint64_t>();
}

inline int int_field(const Json& j, const std::string& path, const char* key, long long lo, long long hi) {
  return int_in(field(j, path, key), at_key(path, key), lo, hi);
}

// Relative instance paths resolve against base_dir.
inline BenchInstance load_bench_instance(const Json& j, const std::string& path, const std::filesystem::path& base_dir) {
  if (j.contains("path")) {
    expect_object(j, path, {"id", "path"});
    const auto& p = j["path"];
    if (!p.is_string()) fail(at_key(path, "path"), "expected a string");
    const std::filesystem::path file(p.get<std::string>());
    const auto doc = load_json_file((file.is_absolute() ? file : base_dir / file).string());
    const auto kind = kind_of(doc);
    if (kind == "metric") return metric_from_json(doc);
    if (kind == "dks") return dks_from_json(doc);
    if (kind == "setsystem") return setsystem_from_json(doc);
    fail(at_key(path, "path"), "unsupported instance kind \"" + kind + "\"");
  }
  const auto& g = field(j, path, "generator");
  if (!g.is_string()) fail(at_key(path, "generator"), "expected a string");
  const auto gen = g.get<std::string>();
  const auto seed = seed_field(j, path);
  if (gen == "euclidean") {
    expect_object(j, path, {"id", "generator", "seed", "n", "dim"});
    return gen_random_euclidean(int_field(j, path, "n", 2, 4096), j.contains("dim") ? int_field(j, path, "dim", 1, 64) : 2, seed);
  }
  if (gen == "range12") {
    expect_object(j, path, {"id", "generator", "seed", "n"});
    return gen_random_metric(int_field(j, path, "n", 2, 4096), seed);
  }
  if (gen == "planted-dks" || gen == "planted-dispersion") {
    expect_object(j, path, {"id", "generator", "seed", "n", "k"});
    const int n = int_field(j, path, "n", 2, 4096);
    const int k = int_field(j, path, "k", 2, n);
    auto pd = gen_planted_dks(n, k, seed);
    if (gen == "planted-dks") return std::move(pd.instance);
    return dks_to_dispersion(pd.instance).metric;
  }
  if (gen == "setsystem") {
    expect_object(j, path, {"id", "generator", "seed", "n", "m", "kmax"});
    return gen_setsystem(int_field(j, path, "n", 1, 4096), int_field(j, path, "m", 1, 4096),
                         int_field(j, path, "kmax", 1, 4096), seed);
  }
  if (gen == "coverage-dcg") {
    expect_object(j, path, {"id", "generator", "seed", "universe", "k", "extra"});
    const int m = int_field(j, path, "universe", 1, 1 << 16);
    const int k = int_field(j, path, "k", 1, m);
    if (m % k != 0) fail(at_key(path, "k"), "must divide universe");
    return coverage_to_dcg(gen_regular_coverage(m, k, true, j.contains("extra") ? int_field(j, path, "extra", 0, 4096) : 0, seed));
  }
  if (gen == "diversification") {
    expect_object(j, path, {"id", "generator", "seed", "n", "dim", "universe", "max_cover"});
    const int n = int_field(j, path, "n", 2, 4096);
    const int dim = j.contains("dim") ? int_field(j, path, "dim", 1, 64) : 2;
    const int m = j.contains("universe") ? int_field(j, path, "universe", 1, 1 << 16) : 8;
    const int c = j.contains("max_cover") ? int_field(j, path, "max_cover", 1, 1 << 16) : 3;
    return DiversificationPair{gen_random_euclidean(n, dim, seed), gen_coverage_function(n, m, c, derive_seed(seed, {1}))};
  }
  fail(at_key(path, "generator"), "unknown generator \"" + gen + "\"");
}

// Expands {"a": [1, 2], "b": 3} into [{"a":1,"b":3}, {"a":2,"b":3}] in key order.
inline std::vector<Json> expand_grid(const Json& params, const std::string& path) {
  std::vector<Json> out{Json::object()};
  if (params.is_null()) return out;
  if (!params.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : params.items()) {
    std::vector<Json> choices;
    if (value.is_array()) {
      if (value.empty()) fail(at_key(path, key), "grid values must be non-empty");
      for (const auto& v : value) choices.push_back(v);
    } else {
      choices.push_back(value);
    }
    std::vector<Json> next;
    for (const auto& base : out)
      for (const auto& c : choices) {
        Json b = base;
        b[key] = c;
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  return out;
}

class Params {
 public:
  Params(Json j, std::string path) : j_(std::move(j)), path_(std::move(path)) {}

  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& [key, value] : j_.items()) {
      bool ok = false;
      for (const char* k : keys) ok = ok || key == k;
      if (!ok) fail(at_key(path_, key), "unknown parameter");
    }
  }
  bool has(const char* key) const { return j_.contains(key); }
  int integer(const char* key, long long lo, long long hi) const {
    if (!has(key)) fail(at_key(path_, key), "missing required parameter");
    return int_in(j_[key], at_key(path_, key), lo, hi);
  }
  std::optional<int> opt_integer(const char* key, long long lo, long long hi) const {
    if (!has(key)) return std::nullopt;
    return integer(key, lo, hi);
  }
  double real(const char* key, double fallback) const { return has(key) ? number(j_[key], at_key(path_, key)) : fallback; }
  std::optional<double> opt_real(const char* key) const {
    if (!has(key)) return std::nullopt;
    return number(j_[key], at_key(path_, key));
  }
  std::string text(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_string()) fail(at_key(path_, key), "expected a string");
    return j_[key].get<std::string>();
  }
  // Parameters other than epsilon, sorted by key, joined as k=v;k=v.
  std::string tag() const {
    std::map<std::string, std::string> kv;
    for (const auto& [key, value] : j_.items())
      if (key != "epsilon") kv[key] = value.is_string() ? value.get<std::string>() : value.dump();
    std::string out;
    for (const auto& [k, v] : kv) out += (out.empty() ? "" : ";") + k + "=" + v;
    return out;
  }
  const std::string& path() const { return path_; }

 private:
  Json j_;
  std::string path_;
};

inline dispersion::InnerOverrides inner_overrides(const Params& p) {
  dispersion::InnerOverrides ov;
  try {
    ov.inner = dispersion::parse_inner_mode(p.text("inner", "scheme"));
    ov.mode = dks::parse_matroid_mode(p.text("mode", "exact"));
  } catch (const std::invalid_argument& e) {
    fail(p.path(), e.what());
  }
  ov.gamma = p.opt_real("gamma");
  ov.s = p.opt_integer("s", 1, 1 << 20);
  ov.t = p.opt_real("t");
  if (p.has("enum_cap")) ov.enum_cap = static_cast<std::uint64_t>(p.integer("enum_cap", 1, 1LL << 40));
  return ov;
}

inline std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace detail

struct RunOutcome {
  double value = 0.0;
  std::optional<double> epsilon;
  std::function<std::optional<double>()> oracle;  // empty when no oracle applies
  std::string oracle_key;                          // cells with equal keys on one instance share the oracle value
};

/// Runs one (instance, algorithm, parameter point, seed) cell. Returns
/// nullopt when the algorithm does not apply to the instance kind.
inline std::optional<RunOutcome> run_cell(const BenchInstance& inst, const std::string& name, const detail::Params& p,
                                          std::uint64_t seed) {
  auto guarded = [](auto fn) -> std::function<std::optional<double>()> {
    return [fn]() -> std::optional<double> {
      try {
        return fn();
      } catch (const GuardError&) {
        return std::nullopt;
      }
    };
  };
  if (name == "dispersion-qptas" || name == "dispersion-greedy") {
    const auto* m = std::get_if<MetricInstance>(&inst);
    if (!m) return std::nullopt;
    if (name == "dispersion-greedy") p.allow({"p"});
    else p.allow({"p", "epsilon", "inner", "gamma", "s", "t", "enum_cap", "mode"});
    const int pp = p.integer("p", 2, m->size());
    RunOutcome out;
    if (name == "dispersion-greedy") {
      out.value = disp(dispersion::greedy_dispersion(*m, pp), *m);
    } else {
      out.epsilon = p.real("epsilon", 0.5);
      out.value = dispersion::qptas_dispersion(*m, pp, *out.epsilon, detail::inner_overrides(p), seed).value;
    }
    out.oracle = guarded([m, pp] { return dispersion::brute_force_dispersion(*m, pp).value; });
    out.oracle_key = "dispersion|" + std::to_string(pp);
    return out;
  }
  if (name == "diversify" || name == "diversification-greedy") {
    const auto* d = std::get_if<DiversificationPair>(&inst);
    if (!d) return std::nullopt;
    if (name == "diversification-greedy") p.allow({"p"});
    else p.allow({"p", "epsilon", "inner", "gamma", "s", "t", "enum_cap", "mode"});
    const diversification::DiversificationInstance di(d->metric, d->f, p.integer("p", 2, d->metric.size()));
    RunOutcome out;
    if (name == "diversification-greedy") {
      out.value = dive(diversification::greedy_diversification(di), di.metric, di.f);
    } else {
      out.epsilon = p.real("epsilon", 0.5);
      out.value = diversification::diversify(di, *out.epsilon, detail::inner_overrides(p), seed).value;
    }
    out.oracle = guarded([di] { return diversification::brute_force_diversification(di).value; });
    out.oracle_key = "diversification|" + std::to_string(di.p);
    return out;
  }
  if (name == "dks-additive") {
    const auto* g = std::get_if<DksInstance>(&inst);
    if (!g) return std::nullopt;
    p.allow({"epsilon", "s", "t", "enum_cap", "mode"});
    RunOutcome out;
    out.epsilon = p.real("epsilon", 0.1);
    auto ov = detail::inner_overrides(p);
    out.value = dks::dks_additive(*g, *out.epsilon, seed, ov.params(*out.epsilon)).solution.den;
    out.oracle = guarded([g] { return dks::brute_force_subdks(*g, ZeroFunction{}).den; });
    out.oracle_key = "dks";
    return out;
  }
  if (name == "dcg-ptas" || name == "dcg-identity") {
    const auto* s = std::get_if<SetSystemInstance>(&inst);
    if (!s) return std::nullopt;
    RunOutcome out;
    if (name == "dcg-identity") {
      p.allow({});
      out.value = ranking::dcg_value(range_vector(s->element_count()), *s);
    } else {
      p.allow({"epsilon", "u", "gamma", "trials", "prefix_cap"});
      ranking::PtasOptions opt;
      opt.epsilon = p.real("epsilon", 0.1);
      opt.u = p.opt_integer("u", 0, 64);
      opt.gamma = p.opt_real("gamma");
      if (p.has("trials")) opt.trials = p.integer("trials", 1, 1 << 20);
      if (p.has("prefix_cap")) opt.prefix_cap = static_cast<std::uint64_t>(p.integer("prefix_cap", 1, 1LL << 40));
      out.epsilon = opt.epsilon;
      out.value = ranking::ptas_dcg(*s, opt, seed).dcg;
    }
    if (s->element_count() <= ranking::kBruteForceRankingMaxN)
      out.oracle = [s] { return std::optional<double>(ranking::brute_force_dcg(*s).value); };
    out.oracle_key = "dcg";
    return out;
  }
  detail::fail(p.path(), "unknown algorithm \"" + name + "\"");
}

/// Groups by (algorithm, epsilon); ratios averaged over the records that have one.
inline std::vector<BenchAggregate> aggregate(const std::vector<BenchRecord>& records) {
  std::map<std::pair<std::string, std::optional<double>>, BenchAggregate> groups;
  for (const auto& r : records) {
    auto& g = groups[{r.algorithm, r.epsilon}];
    g.algorithm = r.algorithm;
    g.epsilon = r.epsilon;
    ++g.runs;
    g.mean_value += r.value;
    if (r.ratio) {
      ++g.ratio_runs;
      g.mean_ratio = g.mean_ratio.value_or(0.0) + *r.ratio;
      g.min_ratio = std::min(g.min_ratio.value_or(std::numeric_limits<double>::infinity()), *r.ratio);
    }
  }
  std::vector<BenchAggregate> out;
  for (auto& [key, g] : groups) {
    g.mean_value /= g.runs;
    if (g.mean_ratio) *g.mean_ratio /= g.ratio_runs;
    out.push_back(g);
  }
  return out;
}

inline void sort_records(std::vector<BenchRecord>& records) {
  std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.instance, a.algorithm, a.epsilon, a.seed) < std::tie(b.instance, b.algorithm, b.epsilon, b.seed);
  });
}

inline BenchReport run_bench(const Json& spec, const std::filesystem::path& base_dir = {}) {
  const std::string root = "$";
  detail::expect_object(spec, root, {"instances", "algorithms", "seeds", "oracle"});
  const auto ipath = detail::at_key(root, "instances");
  const auto& instances = detail::array(detail::field(spec, root, "instances"), ipath);
  std::vector<std::pair<std::string, BenchInstance>> loaded;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto p = detail::at_index(ipath, i);
    if (!instances[i].is_object()) detail::fail(p, "expected an object");
    const auto& id = detail::field(instances[i], p, "id");
    if (!id.is_string()) detail::fail(detail::at_key(p, "id"), "expected a string");
    for (const auto& [other, unused] : loaded)
      if (other == id.get<std::string>()) detail::fail(detail::at_key(p, "id"), "duplicate instance id");
    loaded.emplace_back(id.get<std::string>(), detail::load_bench_instance(instances[i], p, base_dir));
  }
  std::vector<std::uint64_t> seeds;
  const auto spath = detail::at_key(root, "seeds");
  const auto& sj = detail::array(detail::field(spec, root, "seeds"), spath);
  for (std::size_t i = 0; i < sj.size(); ++i) {
    if (!sj[i].is_number_unsigned() && !(sj[i].is_number_integer() && sj[i].get<long long>() >= 0))
      detail::fail(detail::at_index(spath, i), "expected a non-negative integer");
    seeds.push_back(sj[i].get<std::uint64_t>());
  }
  bool use_oracle = true;
  if (spec.contains("oracle")) {
    if (!spec["oracle"].is_boolean()) detail::fail("$.oracle", "expected a boolean");
    use_oracle = spec["oracle"].get<bool>();
  }

  BenchReport report;
  std::map<std::string, std::optional<double>> oracle_cache;
  const auto apath = detail::at_key(root, "algorithms");
  const auto& algorithms = detail::array(detail::field(spec, root, "algorithms"), apath);
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    const auto p = detail::at_index(apath, a);
    detail::expect_object(algorithms[a], p, {"name", "params"});
    const auto& nj = detail::field(algorithms[a], p, "name");
    if (!nj.is_string()) detail::fail(detail::at_key(p, "name"), "expected a string");
    const auto name = nj.get<std::string>();
    const auto ppath = detail::at_key(p, "params");
    const auto grid = detail::expand_grid(algorithms[a].contains("params") ? algorithms[a]["params"] : Json(), ppath);
    for (const auto& point : grid) {
      const detail::Params params(point, ppath);
      const auto tag = params.tag();
      const std::string label = tag.empty() ? name : name + "[" + tag + "]";
      for (const auto& [id, inst] : loaded)
        for (auto seed : seeds) {
          const auto start = std::chrono::steady_clock::now();
          auto outcome = run_cell(inst, name, params, seed);
          const auto stop = std::chrono::steady_clock::now();
          if (!outcome) continue;
          BenchRecord r;
          r.instance = id;
          r.algorithm = label;
          r.seed = seed;
          r.epsilon = outcome->epsilon;
          r.value = outcome->value;
          r.millis = std::chrono::duration<double, std::milli>(stop - start).count();
          if (use_oracle && outcome->oracle) {
            const std::string key = id + "|" + outcome->oracle_key;
            auto it = oracle_cache.find(key);
            if (it == oracle_cache.end()) it = oracle_cache.emplace(key, outcome->oracle()).first;
            r.oracle = it->second;
            if (r.oracle) r.ratio = *r.oracle > 0.0 ? r.value / *r.oracle : 1.0;
          }
          report.records.push_back(std::move(r));
        }
    }
  }
  sort_records(report.records);
  report.aggregates = aggregate(report.records);
  return report;
}

inline constexpr const char* kBenchCsvHeader = "instance,algorithm,seed,epsilon,value,oracle,ratio,millis";

inline std::string records_csv(const std::vector<BenchRecord>& records) {
  std::string out = std::string(kBenchCsvHeader) + "\n";
  for (const auto& r : records) {
    out += r.instance + "," + r.algorithm + "," + std::to_string(r.seed) + "," + detail::format_optional(r.epsilon) + "," +
           detail::format_number(r.value) + "," + detail::format_optional(r.oracle) + "," +
           detail::format_optional(r.ratio) + "," + detail::format_number(r.millis) + "\n";
  }
  return out;
}

inline std::string aggregates_csv(const std::vector<BenchAggregate>& aggs) {
  std::string out = "algorithm,epsilon,runs,mean_value,ratio_runs,mean_ratio,min_ratio\n";
  for (const auto& g : aggs)
    out += g.algorithm + "," + detail::format_optional(g.epsilon) + "," + std::to_string(g.runs) + "," +
           detail::format_number(g.mean_value) + "," + std::to_string(g.ratio_runs) + "," +
           detail::format_optional(g.mean_ratio) + "," + detail::format_optional(g.min_ratio) + "\n";
  return out;
}

inline Json to_json(const BenchReport& rep) {
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  Json j;
  j["kind"] = "bench_report";
  Json recs = Json::array();
  for (const auto& r : rep.records) {
    Json o;
    o["instance"] = r.instance;
    o["algorithm"] = r.algorithm;
    o["seed"] = r.seed;
    o["epsilon"] = opt(r.epsilon);
    o["value"] = r.value;
    o["oracle"] = opt(r.oracle);
    o["ratio"] = opt(r.ratio);
    o["millis"] = r.millis;
    recs.push_back(std::move(o));
  }
  j["records"] = std::move(recs);
  Json aggs = Json::array();
  for (const auto& g : rep.aggregates) {
    Json o;
    o["algorithm"] = g.algorithm;
    o["epsilon"] = opt(g.epsilon);
    o["runs"] = g.runs;
    o["mean_value"] = g.mean_value;
    o["ratio_runs"] = g.ratio_runs;
    o["mean_ratio"] = opt(g.mean_ratio);
    o["min_ratio"] = opt(g.min_ratio);
    aggs.push_back(std::move(o));
  }
  j["aggregates"] = std::move(aggs);
  return j;
}

}  // namespace divkit::workbench
