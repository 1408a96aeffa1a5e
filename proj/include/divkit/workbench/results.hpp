#pragma once

#include <string>

#include "divkit/dispersion/ball.hpp"
#include "divkit/dispersion/pair_loop.hpp"
#include "divkit/dks/submodular_dks.hpp"
#include "divkit/ranking/ptas.hpp"
#include "divkit/workbench/io.hpp"

namespace divkit::workbench {

// Result documents contain no timings, so equal inputs give byte-identical output.

inline Json to_json(const ranking::PtasDiagnostics& d) {
  Json j;
  j["u_requested"] = d.u_requested;
  j["u_used"] = d.u_used;
  j["prefix_cap_hit"] = d.prefix_cap_hit;
  j["prefixes"] = d.prefixes;
  j["gamma"] = d.gamma;
  j["eta"] = d.eta;
  j["trials"] = d.trials;
  j["lp_bound"] = d.lp_bound;
  j["lp_bound_valid"] = d.lp_bound_valid;
  j["lp_solves"] = d.lp_solves;
  j["lp_failures"] = d.lp_failures;
  j["cut_rounds"] = d.cut_rounds;
  j["cuts_added"] = d.cuts_added;
  j["theoretical_u_log10"] = d.theoretical_u_log10;
  j["tau_residual"] = d.tau_residual;
  return j;
}

inline Json to_json(const ranking::PtasResult& r) {
  Json j;
  j["kind"] = "dcg_result";
  j["order"] = r.ranking.order;
  j["cover_times"] = r.ranking.cover_times;
  j["dcg"] = r.dcg;
  j["lp_bound"] = r.diagnostics.lp_bound;
  j["diagnostics"] = to_json(r.diagnostics);
  return j;
}

inline Json to_json(const dks::SubDksDiagnostics& d) {
  Json j;
  j["gamma"] = d.gamma;
  j["gamma_prime"] = d.gamma_prime;
  j["k_prime"] = d.k_prime;
  j["s_formula"] = d.s_formula;
  j["s"] = d.s;
  j["t"] = d.t;
  j["size_lo"] = d.size_lo;
  j["size_hi"] = d.size_hi;
  j["part_sizes"] = d.part_sizes;
  j["empty_parts"] = d.empty_parts;
  j["anchors_total"] = d.anchors_total;
  j["anchors_scanned"] = d.anchors_scanned;
  j["anchors_evaluated"] = d.anchors_evaluated;
  j["anchor_cap_hit"] = d.anchor_cap_hit;
  j["candidates_per_part"] = d.candidates_per_part;
  j["candidate_cap_hit"] = d.candidate_cap_hit;
  j["admitted_total"] = d.admitted_total;
  j["admission_checks"] = d.admission_checks;
  j["admission_budget_hit"] = d.admission_budget_hit;
  j["matroid_fallbacks"] = d.matroid_fallbacks;
  j["h_evaluations"] = d.h_evaluations;
  j["repairs_sampled"] = d.repairs_sampled;
  j["repairs_padded"] = d.repairs_padded;
  j["best_anchor"] = d.best_anchor;
  j["no_anchor"] = d.no_anchor;
  j["caps_hit"] = d.caps_hit();
  return j;
}

inline Json to_json(const dks::DksSolution& s) {
  Json j;
  j["nodes"] = s.nodes;
  j["value"] = s.value;
  j["h"] = s.h;
  j["den"] = s.den;
  return j;
}

inline Json to_json(const dks::SubDksResult& r) {
  Json j;
  j["kind"] = "dks_result";
  j["nodes"] = r.solution.nodes;
  j["value"] = r.solution.value;
  j["h"] = r.solution.h;
  j["den"] = r.solution.den;
  j["diagnostics"] = to_json(r.diagnostics);
  return j;
}

inline Json to_json(const dispersion::PairLoopDiagnostics& d) {
  Json j;
  j["epsilon"] = d.epsilon;
  j["epsilon_prime"] = d.epsilon_prime;
  j["inner"] = d.inner;
  j["inner_gamma"] = d.inner_gamma;
  j["pairs_total"] = d.pairs_total;
  j["pairs_admissible"] = d.pairs_admissible;
  j["pairs_skipped_gate"] = d.pairs_skipped_gate;
  j["pairs_skipped_degenerate"] = d.pairs_skipped_degenerate;
  j["pairs_caps_hit"] = d.pairs_caps_hit;
  j["no_admissible_pair"] = d.no_admissible_pair;
  j["whole_set"] = d.whole_set;
  j["theoretical_parameters_honored"] = d.theoretical_parameters_honored;
  j["decomposition_max_error"] = d.decomposition_max_error;
  if (d.best_pair)
    j["best_pair"] = Json::array({d.best_pair->first, d.best_pair->second});
  else
    j["best_pair"] = nullptr;
  j["loop_set"] = d.loop_set;
  j["loop_value"] = d.loop_value;
  j["greedy_set"] = d.greedy_set;
  j["greedy_value"] = d.greedy_value;
  j["chose_greedy"] = d.chose_greedy;
  return j;
}

/// `kind` is "dispersion_result" or "diversification_result"; disp and f
/// split the value (f = 0 for dispersion).
inline Json pair_loop_json(const char* kind, const dispersion::PairLoopResult& r, double disp_part, double f_part) {
  Json j;
  j["kind"] = kind;
  j["set"] = r.set;
  j["value"] = r.value;
  j["disp"] = disp_part;
  j["f"] = f_part;
  j["diagnostics"] = to_json(r.diagnostics);
  return j;
}

inline Json to_json(const dispersion::StructuralReport& r) {
  Json j;
  j["u_min"] = r.u_min;
  j["witness"] = r.witness;
  if (std::isfinite(r.min_ratio))
    j["min_ratio"] = r.min_ratio;
  else
    j["min_ratio"] = nullptr;
  return j;
}

}  // namespace divkit::workbench
