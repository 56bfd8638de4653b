#pragma once

// Triangle group -> lift -> reduction check -> constraints -> polyhedron ->
// pairings -> artifacts.

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lorentzfd/export.hpp"
#include "lorentzfd/pairing.hpp"
#include "lorentzfd/reduction.hpp"

namespace lorentzfd {

inline constexpr int kSchemaVersion = 1;

enum class ReadingChoice { Auto, Tri, Lcm };

struct Tolerances {
  double vertex_merge = 1e-8;
  double incidence = 1e-9;
  double pairing_match = 1e-7;
  double boundary_band = 1e-6;
};

struct RunConfig {
  Series series = Series::E;
  int k = 2;
  ReadingChoice p_reading = ReadingChoice::Auto;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  int word_budget = 8;
  Tolerances tolerances;
  std::filesystem::path output_dir = ".";
  std::set<std::string> formats{"off", "json"};
};

inline ReadingChoice parse_reading(const std::string& s) {
  if (s == "auto") return ReadingChoice::Auto;
  if (s == "tri") return ReadingChoice::Tri;
  if (s == "lcm") return ReadingChoice::Lcm;
  throw Error(ErrorCode::InvalidArgument, "unknown p-reading '" + s + "' (auto, tri, lcm)");
}

inline void validate(const RunConfig& cfg) {
  check_admissible(cfg.k);
  if (cfg.word_budget < 0) throw Error(ErrorCode::InvalidArgument, "word budget must be >= 0");
  for (const auto& f : cfg.formats) {
    if (f != "off" && f != "obj" && f != "json" && f != "svg") {
      throw Error(ErrorCode::InvalidArgument, "unknown format '" + f + "'");
    }
  }
}

struct Domain {
  ConstraintSet constraints;
  Polyhedron polyhedron;
  EdgeCycleReport cycles;
};

/// Builds F_e for one reading; throws if the boundary is not a closed Euler-2
/// surface or a side face stays unpaired.
inline Domain build_domain(Series series, int k, PReading reading, const RunConfig& cfg) {
  Domain d;
  d.constraints = series_constraints(series, k, reading);
  assert_sheet_windows(d.constraints);
  PolyhedronOptions popts;
  popts.vertex_merge_tol = cfg.tolerances.vertex_merge;
  popts.incidence_tol = cfg.tolerances.incidence;
  d.polyhedron = build_polyhedron(d.constraints, popts);
  PairingOptions qopts;
  qopts.max_word_len = cfg.word_budget;
  qopts.match_tol = cfg.tolerances.pairing_match;
  d.polyhedron.pairings = find_pairings(d.polyhedron, d.constraints, qopts);
  const auto unpaired = unpaired_faces(d.polyhedron, false);
  if (!unpaired.empty()) {
    throw Error(ErrorCode::UnpairedFace, "face " + d.polyhedron.faces[unpaired.front()].label +
                                             " unpaired within word budget " +
                                             std::to_string(cfg.word_budget));
  }
  d.cycles = edge_cycles(d.polyhedron);
  return d;
}

inline nlohmann::json cover_json(const CoverElement& g) {
  return nlohmann::json::array({g.z.real(), g.z.imag(), g.w.real(), g.w.imag(), g.phi});
}

inline nlohmann::json report_json(const RunConfig& cfg, const Domain& d, const ReductionReport& rr,
                                  const EquivalenceStats& eq, const std::string& rejected) {
  using nlohmann::json;
  const auto& cs = d.constraints;
  const auto& lc = cs.lift.config;
  const auto& g = cs.lift.group;
  const auto& poly = d.polyhedron;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["series"] = to_string(cfg.series);
  j["k"] = cfg.k;
  j["singularity_label"] = singularity_label(cfg.series, cfg.k);
  j["p_reading"] = to_string(cs.reading);
  j["rejected_readings"] = rejected;
  j["triangle_group"] = {{"p", g.p}, {"q", g.q}, {"r", g.r}, {"L", g.L},
                         {"cosh_L", std::cosh(g.L)}, {"d", g.d}, {"s", g.s}};
  j["level_config"] = {{"k", lc.k},
                       {"p_tri", lc.p_tri},
                       {"p_lcm", lc.p_lcm},
                       {"lambda", lc.lambda},
                       {"mu", lc.mu},
                       {"central_corrections", {lc.x, lc.y, lc.z}}};
  j["reduction"] = {{"alpha", rr.alpha},
                    {"R", rr.R},
                    {"tanh_L", rr.tanh_L},
                    {"ell_minus_at_sec", rr.ell_minus_at_sec},
                    {"ell_minus_closed", rr.ell_minus_closed},
                    {"rhs", rr.rhs},
                    {"rhs_closed", rr.rhs_closed},
                    {"orbit_premise", rr.orbit_premise},
                    {"second_shell_radius", rr.second_shell_radius},
                    {"holds", rr.holds},
                    {"margin", rr.margin}};
  j["sample_equivalence"] = {{"samples", eq.samples},
                             {"agree", eq.agree},
                             {"excluded", eq.excluded},
                             {"inside", eq.inside},
                             {"seed", cfg.seed}};
  j["constraints"] = {{"period", cs.period},
                      {"period_certified", cs.period_certified},
                      {"rotation_p", cs.rotation_p},
                      {"window", cs.window},
                      {"half_width", cs.half_width},
                      {"D", cover_json(cs.D)},
                      {"a0", cover_json(cs.a0)}};
  j["counts"] = {{"vertices", poly.vertices.size()},
                 {"edges", poly.edge_count},
                 {"faces", poly.faces.size()},
                 {"euler", poly.euler_characteristic()}};
  j["symmetry_order"] = poly.symmetry_order;
  json faces = json::array();
  for (const auto& f : poly.faces) {
    faces.push_back({{"label", f.label}, {"size", f.loop.size()}, {"slab", f.slab}});
  }
  j["faces"] = faces;
  json pairs = json::array();
  for (const auto& p : poly.pairings) {
    pairs.push_back({{"face", poly.faces[p.face].label},
                     {"partner", poly.faces[p.partner].label},
                     {"word", to_string(p.word)},
                     {"central_shift", p.central_shift},
                     {"g2_power", p.g2_power},
                     {"g1", cover_json(p.g1)},
                     {"g2", cover_json(p.g2)},
                     {"vertex_map", p.vertex_map},
                     {"reverses_orientation", p.reverses_orientation}});
  }
  j["pairings"] = pairs;
  j["edge_cycles"] = {{"cycles", d.cycles.cycles},
                      {"open", d.cycles.open},
                      {"central", d.cycles.central},
                      {"fixes_edge", d.cycles.fixes_edge},
                      {"self_paired", d.cycles.self_paired},
                      {"max_length", d.cycles.max_length}};
  return j;
}

struct RunResult {
  Domain domain;
  ReductionReport reduction;
  EquivalenceStats equivalence;
  nlohmann::json report;
  std::vector<std::filesystem::path> written;
};

inline std::string artifact_stem(Series s, int k) {
  return std::string("fund_") + to_string(s) + "_k" + std::to_string(k);
}

inline RunResult run(const RunConfig& cfg) {
  validate(cfg);
  std::vector<PReading> readings;
  if (cfg.p_reading != ReadingChoice::Lcm) readings.push_back(PReading::Tri);
  if (cfg.p_reading != ReadingChoice::Tri) readings.push_back(PReading::Lcm);

  RunResult res;
  std::string rejected;
  bool accepted = false;
  for (PReading r : readings) {
    try {
      res.domain = build_domain(cfg.series, cfg.k, r, cfg);
      accepted = true;
      break;
    } catch (const Error& e) {
      if (readings.size() == 1) throw;
      if (!rejected.empty()) rejected += "; ";
      rejected += std::string(to_string(r)) + ": " + e.what();
    }
  }
  if (!accepted) throw Error(ErrorCode::ReadingRejected, "no reading accepted (" + rejected + ")");

  res.reduction = check_theorem71(cfg.series, cfg.k);
  res.equivalence = sample_equivalence(res.domain.constraints, cfg.samples, cfg.seed,
                                       cfg.tolerances.boundary_band);
  res.report = report_json(cfg, res.domain, res.reduction, res.equivalence, rejected);

  const auto stem = cfg.output_dir / artifact_stem(cfg.series, cfg.k);
  auto emit = [&](const std::string& ext, const std::string& text) {
    auto path = stem;
    path += "." + ext;
    write_file_atomic(path, text);
    res.written.push_back(path);
  };
  if (cfg.formats.count("off")) emit("off", write_off(res.domain.polyhedron));
  if (cfg.formats.count("obj")) emit("obj", write_obj(res.domain.polyhedron));
  if (cfg.formats.count("svg")) emit("svg", write_svg(res.domain.constraints.lift.group));
  if (cfg.formats.count("json")) emit("json", res.report.dump(2) + "\n");
  return res;
}

inline nlohmann::json error_json(const Error& e) {
  return {{"schema_version", kSchemaVersion},
          {"error", std::string(to_string(e.code()))},
          {"message", e.what()}};
}

}  // namespace lorentzfd
