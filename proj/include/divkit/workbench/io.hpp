#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "divkit/core/dks_instance.hpp"
#include "divkit/core/errors.hpp"
#include "divkit/core/metric.hpp"
#include "divkit/core/provenance.hpp"
#include "divkit/core/set_system.hpp"
#include "divkit/core/submodular.hpp"
#include "divkit/workbench/generators.hpp"

namespace divkit::workbench {

/// Object keys keep insertion order, so documents are written in the
/// canonical field order used by the to_json functions below.
using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw ValidationError(path + ": " + msg);
}

inline std::string at_key(const std::string& path, const std::string& key) { return path + "." + key; }
inline std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = key == "meta";
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(at_key(path, key), "unknown field");
  }
}

inline const Json& field(const Json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(at_key(path, key), "missing required field");
  return *it;
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

inline long long integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && std::floor(v) == v && std::abs(v) < 9.0e15) return static_cast<long long>(v);
  }
  fail(path, "expected an integer");
}

inline int int_in(const Json& j, const std::string& path, long long lo, long long hi) {
  const long long v = integer(j, path);
  if (v < lo || v > hi) fail(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

inline std::vector<int> int_list(const Json& j, const std::string& path, long long lo, long long hi) {
  std::vector<int> out;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(int_in(a[i], at_index(path, i), lo, hi));
  return out;
}

inline std::vector<double> number_list(const Json& j, const std::string& path) {
  std::vector<double> out;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(number(a[i], at_index(path, i)));
  return out;
}

inline void expect_kind(const Json& j, const std::string& path, const char* kind) {
  const auto& k = field(j, path, "kind");
  if (!k.is_string() || k.get<std::string>() != kind)
    fail(at_key(path, "kind"), std::string("expected \"") + kind + "\"");
}

// Constructor invariants are reported against the document root.
template <class Fn>
auto with_root(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

inline constexpr long long kMaxIndex = 1LL << 30;

}  // namespace detail

// ---- provenance ----

inline Json to_json(const Provenance& p) {
  Json j;
  j["generator"] = p.generator;
  Json params = Json::object();
  for (const auto& [k, v] : p.params) params[k] = v;
  j["params"] = std::move(params);
  j["seed"] = p.seed;
  if (!p.planted.empty()) j["planted"] = p.planted;
  return j;
}

inline Provenance provenance_from_json(const Json& j, const std::string& path = "$.meta") {
  detail::expect_object(j, path, {"generator", "params", "seed", "planted"});
  Provenance p;
  const auto& g = detail::field(j, path, "generator");
  if (!g.is_string()) detail::fail(detail::at_key(path, "generator"), "expected a string");
  p.generator = g.get<std::string>();
  if (j.contains("params")) {
    const auto& params = j["params"];
    const auto ppath = detail::at_key(path, "params");
    if (!params.is_object()) detail::fail(ppath, "expected an object");
    for (const auto& [k, v] : params.items()) p.params[k] = detail::number(v, detail::at_key(ppath, k));
  }
  if (j.contains("seed")) {
    const auto& s = j["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      detail::fail(detail::at_key(path, "seed"), "expected a non-negative integer");
    p.seed = s.get<std::uint64_t>();
  }
  if (j.contains("planted")) p.planted = detail::int_list(j["planted"], detail::at_key(path, "planted"), 0, detail::kMaxIndex);
  return p;
}

inline void attach_meta(Json& j, const Provenance* meta) {
  if (meta && !meta->empty()) j["meta"] = to_json(*meta);
}

inline void read_meta(const Json& j, Provenance* meta) {
  if (meta && j.contains("meta")) *meta = provenance_from_json(j["meta"]);
}

// ---- metric ----

inline Json to_json(const MetricInstance& m, const Provenance* meta = nullptr) {
  Json j;
  j["kind"] = "metric";
  j["n"] = m.size();
  Json rows = Json::array();
  for (int i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.size(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  j["dist"] = std::move(rows);
  if (m.coordinates()) j["coords"] = *m.coordinates();
  attach_meta(j, meta);
  return j;
}

inline MetricInstance metric_from_json(const Json& j, Provenance* meta = nullptr, const std::string& path = "$") {
  detail::expect_object(j, path, {"kind", "n", "dist", "coords"});
  detail::expect_kind(j, path, "metric");
  const int n = detail::int_in(detail::field(j, path, "n"), detail::at_key(path, "n"), 1, 1 << 15);
  const auto dpath = detail::at_key(path, "dist");
  const auto& rows = detail::array(detail::field(j, path, "dist"), dpath);
  if (rows.size() != static_cast<std::size_t>(n)) detail::fail(dpath, "expected " + std::to_string(n) + " rows");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto rpath = detail::at_index(dpath, i);
    const auto row = detail::number_list(rows[i], rpath);
    if (row.size() != static_cast<std::size_t>(n)) detail::fail(rpath, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] < 0.0) detail::fail(detail::at_index(rpath, c), "distance must be non-negative");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  std::optional<std::vector<std::vector<double>>> coords;
  if (j.contains("coords")) {
    const auto cpath = detail::at_key(path, "coords");
    const auto& pts = detail::array(j["coords"], cpath);
    if (pts.size() != static_cast<std::size_t>(n)) detail::fail(cpath, "expected " + std::to_string(n) + " points");
    coords.emplace();
    for (std::size_t i = 0; i < pts.size(); ++i) coords->push_back(detail::number_list(pts[i], detail::at_index(cpath, i)));
  }
  read_meta(j, meta);
  return detail::with_root(path, [&] { return MetricInstance(n, std::move(flat), std::move(coords)); });
}

// ---- set system ----

inline Json to_json(const SetSystemInstance& s, const Provenance* meta = nullptr) {
  Json j;
  j["kind"] = "setsystem";
  j["n"] = s.element_count();
  Json sets = Json::array();
  for (const auto& c : s.sets()) {
    Json o;
    o["members"] = c.members;
    o["k"] = c.requirement;
    sets.push_back(std::move(o));
  }
  j["sets"] = std::move(sets);
  attach_meta(j, meta);
  return j;
}

inline SetSystemInstance setsystem_from_json(const Json& j, Provenance* meta = nullptr, const std::string& path = "$") {
  detail::expect_object(j, path, {"kind", "n", "sets"});
  detail::expect_kind(j, path, "setsystem");
  const int n = detail::int_in(detail::field(j, path, "n"), detail::at_key(path, "n"), 1, detail::kMaxIndex);
  const auto spath = detail::at_key(path, "sets");
  const auto& sets = detail::array(detail::field(j, path, "sets"), spath);
  if (sets.empty()) detail::fail(spath, "at least one set is required");
  std::vector<CoveredSet> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto p = detail::at_index(spath, i);
    detail::expect_object(sets[i], p, {"members", "k"});
    auto members = detail::int_list(detail::field(sets[i], p, "members"), detail::at_key(p, "members"), 0, n - 1);
    if (members.empty()) detail::fail(detail::at_key(p, "members"), "must be non-empty");
    const int k = detail::int_in(detail::field(sets[i], p, "k"), detail::at_key(p, "k"), 1,
                                 static_cast<long long>(members.size()));
    out.push_back({std::move(members), k});
  }
  read_meta(j, meta);
  return detail::with_root(path, [&] { return SetSystemInstance(n, std::move(out)); });
}

// ---- dks ----

inline Json to_json(const DksInstance& g, const Provenance* meta = nullptr) {
  Json j;
  j["kind"] = "dks";
  j["n"] = g.size();
  Json w = Json::array();
  for (const auto& p : g.pairs()) w.push_back(Json::array({p.a, p.b, p.w}));
  j["weights"] = std::move(w);
  j["forced"] = g.forced();
  j["k"] = g.k();
  attach_meta(j, meta);
  return j;
}

inline DksInstance dks_from_json(const Json& j, Provenance* meta = nullptr, const std::string& path = "$") {
  detail::expect_object(j, path, {"kind", "n", "weights", "forced", "k"});
  detail::expect_kind(j, path, "dks");
  const int n = detail::int_in(detail::field(j, path, "n"), detail::at_key(path, "n"), 1, 1 << 15);
  const auto wpath = detail::at_key(path, "weights");
  const auto& w = detail::array(detail::field(j, path, "weights"), wpath);
  std::vector<WeightedPair> pairs;
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto p = detail::at_index(wpath, i);
    const auto& e = detail::array(w[i], p);
    if (e.size() != 3) detail::fail(p, "expected [i, j, w]");
    const int a = detail::int_in(e[0], detail::at_index(p, 0), 0, n - 1);
    const int b = detail::int_in(e[1], detail::at_index(p, 1), 0, n - 1);
    const double x = detail::number(e[2], detail::at_index(p, 2));
    if (a == b) detail::fail(p, "self-pair");
    if (!(x >= 0.0 && x <= 1.0)) detail::fail(detail::at_index(p, 2), "weight must lie in [0, 1]");
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) detail::fail(p, "duplicate pair");
    pairs.push_back({a, b, x});
  }
  auto forced = detail::int_list(detail::field(j, path, "forced"), detail::at_key(path, "forced"), 0, n - 1);
  const int k = detail::int_in(detail::field(j, path, "k"), detail::at_key(path, "k"), 0, n);
  if (k < static_cast<int>(forced.size())) detail::fail(detail::at_key(path, "k"), "must be at least |forced|");
  read_meta(j, meta);
  return detail::with_root(path, [&] { return DksInstance::from_pairs(n, pairs, std::move(forced), k); });
}

// ---- submodular ----

inline Json to_json(const SubmodularSpec& f, const Provenance* meta = nullptr) {
  Json j;
  if (f.kind() == SubmodularSpec::Kind::modular) {
    j["kind"] = "modular";
    j["weights"] = f.weights();
  } else {
    j["kind"] = "coverage";
    j["universe"] = f.universe();
    j["covers"] = f.covers();
    if (f.uweights()) j["uweights"] = *f.uweights();
  }
  attach_meta(j, meta);
  return j;
}

inline SubmodularSpec submodular_from_json(const Json& j, Provenance* meta = nullptr, const std::string& path = "$") {
  if (!j.is_object()) detail::fail(path, "expected an object");
  const auto& kind = detail::field(j, path, "kind");
  if (!kind.is_string()) detail::fail(detail::at_key(path, "kind"), "expected a string");
  const auto k = kind.get<std::string>();
  SubmodularSpec out;
  if (k == "modular") {
    detail::expect_object(j, path, {"kind", "weights"});
    const auto wpath = detail::at_key(path, "weights");
    const auto w = detail::number_list(detail::field(j, path, "weights"), wpath);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] < 0.0) detail::fail(detail::at_index(wpath, i), "weight must be non-negative");
    out = SubmodularSpec::modular(w);
  } else if (k == "coverage") {
    detail::expect_object(j, path, {"kind", "universe", "covers", "uweights"});
    const int m = detail::int_in(detail::field(j, path, "universe"), detail::at_key(path, "universe"), 0, detail::kMaxIndex);
    const auto cpath = detail::at_key(path, "covers");
    const auto& covers = detail::array(detail::field(j, path, "covers"), cpath);
    std::vector<std::vector<int>> cv;
    for (std::size_t i = 0; i < covers.size(); ++i)
      cv.push_back(detail::int_list(covers[i], detail::at_index(cpath, i), 0, static_cast<long long>(m) - 1));
    std::optional<std::vector<double>> uw;
    if (j.contains("uweights")) {
      const auto upath = detail::at_key(path, "uweights");
      uw = detail::number_list(j["uweights"], upath);
      if (uw->size() != static_cast<std::size_t>(m)) detail::fail(upath, "expected " + std::to_string(m) + " entries");
      for (std::size_t i = 0; i < uw->size(); ++i)
        if ((*uw)[i] < 0.0) detail::fail(detail::at_index(upath, i), "weight must be non-negative");
    }
    out = detail::with_root(path, [&] { return SubmodularSpec::coverage(m, std::move(cv), std::move(uw)); });
  } else {
    detail::fail(detail::at_key(path, "kind"), "expected \"modular\" or \"coverage\"");
  }
  read_meta(j, meta);
  return out;
}

// ---- maximum coverage ----

inline Json to_json(const CoverageInstance& c, const Provenance* meta = nullptr) {
  Json j;
  j["kind"] = "maxcoverage";
  j["universe"] = c.universe;
  j["sets"] = c.sets;
  j["k"] = c.k;
  j["regular"] = c.regular;
  if (!c.planted.empty()) j["planted"] = c.planted;
  attach_meta(j, meta);
  return j;
}

inline CoverageInstance coverage_instance_from_json(const Json& j, Provenance* meta = nullptr,
                                                    const std::string& path = "$") {
  detail::expect_object(j, path, {"kind", "universe", "sets", "k", "regular", "planted"});
  detail::expect_kind(j, path, "maxcoverage");
  CoverageInstance c;
  c.universe = detail::int_in(detail::field(j, path, "universe"), detail::at_key(path, "universe"), 1, detail::kMaxIndex);
  const auto spath = detail::at_key(path, "sets");
  const auto& sets = detail::array(detail::field(j, path, "sets"), spath);
  for (std::size_t i = 0; i < sets.size(); ++i)
    c.sets.push_back(detail::int_list(sets[i], detail::at_index(spath, i), 0, c.universe - 1));
  c.k = detail::int_in(detail::field(j, path, "k"), detail::at_key(path, "k"), 1, detail::kMaxIndex);
  const auto& reg = detail::field(j, path, "regular");
  if (!reg.is_boolean()) detail::fail(detail::at_key(path, "regular"), "expected a boolean");
  c.regular = reg.get<bool>();
  if (j.contains("planted")) c.planted = detail::int_list(j["planted"], detail::at_key(path, "planted"), 0, detail::kMaxIndex);
  read_meta(j, meta);
  detail::with_root(path, [&] { c.validate(); });
  return c;
}

// ---- files ----

inline std::string kind_of(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) detail::fail("$.kind", "missing or not a string");
  return j["kind"].get<std::string>();
}

inline Json parse_json(const std::string& text, const std::string& name = "input") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(name + ": invalid JSON (" + e.what() + ")");
  }
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

/// Two-space indented text with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << dump(j);
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace divkit::workbench
