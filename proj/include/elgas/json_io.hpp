#pragma once

// JSON and CSV projections of the result records. Needs the single-header
// nlohmann/json on the include path as "json.hpp".

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "elgas/dvlimit.hpp"
#include "elgas/energy.hpp"
#include "elgas/lattice.hpp"
#include "elgas/momentum.hpp"
#include "elgas/verify.hpp"

namespace elgas {

using json = nlohmann::ordered_json;

inline json to_json(const IVec3& v) { return json::array({v.x, v.y, v.z}); }

inline json to_json(const LatticeConfig& cfg) {
  return {{"k_F", cfg.k_fermi},     {"r2max", cfg.r2max},  {"N", cfg.particle_count},
          {"kappa", cfg.kappa()},   {"min_gap", 0.5}};
}

inline json to_json(const LuneBasis& b) {
  json rows = json::array();
  for (std::size_t i = 0; i < b.size(); ++i) rows.push_back({{"p", to_json(b.points[i])}, {"lambda", b.lambda(i)}});
  return {{"k", to_json(b.k)}, {"size", b.size()}, {"points", rows}};
}

inline json to_json(const MomentumBreakdown& m) {
  json j = {{"xi", to_json(m.xi)},
            {"n_b", m.n_b},
            {"n_ex", m.n_ex},
            {"n_total", m.n_total()},
            {"quad_error", m.quad_error},
            {"tail_estimate", m.tail_estimate},
            {"k_modes_used", m.k_modes_used},
            {"route", to_string(m.route)}};
  if (m.n_b_spectral) j["n_b_spectral"] = *m.n_b_spectral;
  if (m.n_b_integral) j["n_b_integral"] = *m.n_b_integral;
  if (auto d = m.discrepancy()) j["discrepancy"] = *d;
  j["tail_n_b"] = m.tail_n_b;
  j["tail_n_ex"] = m.tail_n_ex;
  j["k_max_used"] = m.k_max_used;
  j["converged"] = m.converged;
  j["note"] = "n_b+n_ex (error term dropped)";
  return j;
}

inline json to_json(const WeightedResult& w) {
  json rows = json::array();
  for (const auto& [f, row] : w.rows) {
    json r = to_json(row);
    r["f"] = f;
    rows.push_back(r);
  }
  return {{"value", w.value}, {"n_b", w.n_b}, {"n_ex", w.n_ex}, {"converged", w.converged}, {"rows", rows}};
}

inline json to_json(const TruncatedSum& s) {
  return {{"value", s.value},         {"tail_estimate", s.tail_estimate}, {"k_max_used", s.k_max_used},
          {"quad_error", s.quad_error}, {"k_modes", s.k_modes},           {"converged", s.converged},
          {"quad_converged", s.quad_converged}};
}

inline json to_json(const EnergyReport& e) {
  return {{"k_F", e.k_fermi},
          {"N", e.particle_count},
          {"e_fs_kinetic", e.fs.kinetic},
          {"e_fs_interaction", e.fs.interaction},
          {"e_corr_bos", e.corr_bos.value},
          {"e_corr_ex", e.corr_ex.value},
          {"k_cutoff", std::max(e.corr_bos.k_max_used, e.corr_ex.k_max_used)},
          {"tail_flags", {{"e_corr_bos", to_json(e.corr_bos)}, {"e_corr_ex", to_json(e.corr_ex)}}}};
}

inline json to_json(const CheckReport& r) {
  json j = {{"name", r.name},
            {"status", to_string(r.status)},
            {"measured", r.measured},
            {"tolerance", r.tolerance},
            {"worst_case", r.worst_case},
            {"parameters", r.parameters}};
  if (!r.reproducer.empty()) j["reproducer"] = r.reproducer;
  if (!r.metrics.empty()) {
    json m = json::object();
    for (const auto& [k, v] : r.metrics) m[k] = v;
    j["metrics"] = m;
  }
  return j;
}

inline json to_json(const std::vector<CheckReport>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return a;
}

inline json to_json(const CompareRow& r) {
  return {{"xi", to_json(r.xi)},           {"n_b_disc", r.n_b_disc},
          {"n_ex_disc", r.n_ex_disc},      {"n_b_dv", r.n_b_dv},
          {"n_b_dv_error", r.n_b_dv_error}, {"n_ex_dv", r.n_ex_dv},
          {"n_ex_dv_stderr", r.n_ex_dv_stderr}, {"ratio_b", r.ratio_b},
          {"ratio_ex", r.ratio_ex}};
}

namespace detail {
inline std::string csv_number(double x) {
  // Same digits as the JSON writer.
  return json(x).dump();
}
}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  os << "xi,n_b_disc,n_ex_disc,n_b_dv,n_ex_dv,ratio_b,ratio_ex\n";
  for (const auto& r : rows) {
    os << '"' << to_string(r.xi) << '"';
    for (double x : {r.n_b_disc, r.n_ex_disc, r.n_b_dv, r.n_ex_dv, r.ratio_b, r.ratio_ex})
      os << ',' << detail::csv_number(x);
    os << '\n';
  }
}

inline void write_csv(std::ostream& os, const LuneBasis& b) {
  os << "px,py,pz,lambda\n";
  for (std::size_t i = 0; i < b.size(); ++i)
    os << b.points[i].x << ',' << b.points[i].y << ',' << b.points[i].z << ',' << detail::csv_number(b.lambda(i)) << '\n';
}

}  // namespace elgas
