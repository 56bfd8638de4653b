// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "lorentzfd/lorentzfd.hpp"

using namespace lorentzfd;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<std::pair<Series, int>> kCases = {
    {Series::E, 1}, {Series::E, 2}, {Series::E, 4}, {Series::E, 5},
    {Series::Z, 1}, {Series::Z, 2}, {Series::Z, 4}, {Series::Z, 5}};

std::string case_tag(Series s, int k) { return std::string(to_string(s)) + std::to_string(k); }

bool same_sets(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b) found = found || std::abs(x - y) < tol;
    if (!found) return false;
  }
  return true;
}

Outcome corona() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto g = build_triangle_group(5, 3, 3);
  const auto c = edge_corona(g);
  double worst = 0.0;
  for (const auto& x : c) worst = std::max(worst, std::abs(std::abs(x) - 0.786152));
  const double gap = max_consecutive_gap(c);
  o.pass = c.size() == 10 && worst < 1e-5 && std::abs(gap - 0.485866) < 1e-5;
  for (int p : {5, 7}) {
    const auto h = build_triangle_group(p, 3, 3);
    o.pass = o.pass && same_sets(edge_corona(h), dirichlet_corona(h, h.u), 1e-8);
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 5.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu points, |d-0.786152| %.1e, |s-0.485866| %.1e, oracle ok, %.2fs",
                c.size(), worst, std::abs(gap - 0.485866), secs);
  o.detail = buf;
  return o;
}

Outcome cover() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-0.7, 0.7), t(-10.0, 10.0);
  auto rnd = [&] {
    return rotation_lift({u(rng), u(rng)}, t(rng)) * rotation_lift({u(rng), u(rng)}, t(rng));
  };
  double hom = 0, assoc = 0, centre = 0, path = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = rnd(), b = rnd(), c = rnd();
    const Complex x(0.5 * u(rng), 0.5 * u(rng));
    const Complex y = mobius_apply((a * b).base(), x);
    hom = std::max(hom, std::abs(y - mobius_apply(a.base(), mobius_apply(b.base(), x))));
    const Complex c0(u(rng), u(rng));
    const double t1 = t(rng), t2 = t(rng);
    hom = std::max(hom, max_abs_diff(rotation_lift(c0, t1) * rotation_lift(c0, t2),
                                     rotation_lift(c0, t1 + t2)));
    assoc = std::max(assoc, max_abs_diff((a * b) * c, a * (b * c)));
    centre = std::max(centre, max_abs_diff(a * central(3), central(3) * a));
    if (i % 10 == 0) path = std::max(path, std::abs((a * b).phi - path_lifted_phi(a, b)));
  }
  bool stab = true;
  for (const auto& [s, k] : kCases) {
    const auto lift = series_lift(s, k);
    const auto c = pow(lift.D, lift.config.p_lcm);
    stab = stab && std::abs(c.phi - central(k).phi) < 1e-10 && max_abs_diff(c, central(k)) < 1e-10;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = hom < 1e-10 && assoc < 1e-10 && centre < 1e-10 && path < 1e-10 && stab && secs < 10.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "hom %.1e, assoc %.1e, centre %.1e, path %.1e, D^p = C^k %s, %.2fs", hom, assoc,
                centre, path, stab ? "ok" : "FAILED", secs);
  o.detail = buf;
  return o;
}

Outcome lifts() {
  int checked = 0, mismatches = 0, relation_failures = 0;
  for (int p = 4; p <= 15; ++p) {
    const auto g = build_triangle_group(p, 3, 3);
    for (int k = 1; k <= 10; ++k) {
      ++checked;
      const bool predicted =
          std::gcd(k, p) == 1 && std::gcd(k, 3) == 1 && (9 * p - 3 * p - 9 - 3 * p) % k == 0;
      bool ok = true;
      LevelLift lift;
      try {
        lift = lift_level(g, k);
      } catch (const Error&) {
        ok = false;
      }
      if (ok != predicted) ++mismatches;
      if (!ok) continue;
      for (const auto& rel : {pow(lift.gu, p), pow(lift.gv, 3), pow(lift.gw, 3),
                              lift.gu * lift.gv * lift.gw}) {
        if (!in_level_centre(rel, k, 1e-9)) ++relation_failures;
      }
    }
  }
  Outcome o;
  o.pass = mismatches == 0 && relation_failures == 0;
  o.detail = std::to_string(checked) + " (p,k) pairs, " + std::to_string(mismatches) +
             " mismatches, " + std::to_string(relation_failures) + " relation failures";
  return o;
}

Outcome theorem() {
  Outcome o;
  double min_margin = INFINITY, worst_forms = 0.0;
  for (Series s : {Series::E, Series::Z}) {
    for (int k = 1; k <= 20; ++k) {
      if (k % 3 == 0) continue;
      const auto rep = check_theorem71(s, k);
      o.pass = o.pass && rep.holds && rep.margin > 0.0;
      min_margin = std::min(min_margin, rep.margin);
      worst_forms = std::max(worst_forms, std::abs(rep.ell_minus_at_sec - rep.ell_minus_closed));
    }
  }
  const auto ref = check_theorem71(Series::E, 2);
  const bool refs = std::abs(ref.ell_minus_at_sec - 0.5489) < 1e-3 && std::abs(ref.rhs - 0.6687) < 1e-3;
  o.pass = o.pass && refs && worst_forms < 1e-10;
  char buf[200];
  std::snprintf(buf, sizeof buf, "min margin %.4f, E2 l- %.6f rhs %.6f, forms differ by %.1e",
                min_margin, ref.ell_minus_at_sec, ref.rhs, worst_forms);
  o.detail = buf;
  return o;
}

std::map<std::pair<int, int>, Domain>& domains() {
  static std::map<std::pair<int, int>, Domain> cache;
  return cache;
}

const Domain* domain(Series s, int k, std::string& err) {
  auto key = std::make_pair(static_cast<int>(s), k);
  auto& cache = domains();
  auto it = cache.find(key);
  if (it != cache.end()) return &it->second;
  try {
    return &cache.emplace(key, build_domain(s, k, PReading::Tri, RunConfig{})).first->second;
  } catch (const Error& e) {
    err = case_tag(s, k) + ": " + e.what();
    return nullptr;
  }
}

Outcome equivalence() {
  const auto t0 = Clock::now();
  Outcome o;
  std::size_t total = 0;
  std::string worst;
  for (const auto& [s, k] : kCases) {
    const auto cs = series_constraints(s, k, PReading::Tri);
    const auto st = sample_equivalence(cs, 10000, 1);
    total += st.samples;
    if (st.samples < 10000 || st.agree != st.samples) {
      o.pass = false;
      worst += " " + case_tag(s, k) + " " + std::to_string(st.agree) + "/" +
               std::to_string(st.samples);
    }
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 120.0;
  char buf[120];
  std::snprintf(buf, sizeof buf, "%zu samples over 8 cases, %.1fs", total, secs);
  o.detail = buf + worst;
  return o;
}

Outcome validity() {
  Outcome o;
  std::string info;
  for (const auto& [s, k] : kCases) {
    std::string err;
    const Domain* d = domain(s, k, err);
    if (!d) {
      o.pass = false;
      info += " " + err;
      continue;
    }
    const auto& poly = d->polyhedron;
    std::map<std::pair<int, int>, int> directed;
    for (const auto& f : poly.faces) {
      for (std::size_t i = 0; i < f.loop.size(); ++i) {
        ++directed[{f.loop[i], f.loop[(i + 1) % f.loop.size()]}];
      }
    }
    bool closed = directed.size() == 2 * poly.edge_count;
    for (const auto& [e, n] : directed) {
      closed = closed && n == 1 && directed.count({e.second, e.first}) == 1;
    }
    int slabs = 0;
    for (const auto& f : poly.faces) slabs += f.slab;
    const double psi = 2 * kPi / poly.symmetry_order;
    const bool sym = poly.symmetry_order > 1 &&
                     set_invariant(poly.vertices,
                                   [psi](const Vec3& x) { return rotate_chart(x, psi); }, 1e-8);
    const bool ok = closed && poly.euler_characteristic() == 2 && slabs == 2 && sym;
    o.pass = o.pass && ok;
    info += " " + case_tag(s, k) + "(" + std::to_string(poly.vertices.size()) + "," +
            std::to_string(poly.edge_count) + "," + std::to_string(poly.faces.size()) + ")";
  }
  o.detail = "V,E,F:" + info;
  return o;
}

Outcome pairings() {
  Outcome o;
  std::size_t total = 0;
  std::string info;
  for (const auto& [s, k] : kCases) {
    std::string err;
    const Domain* d = domain(s, k, err);
    if (!d) {
      o.pass = false;
      info += " " + err;
      continue;
    }
    const auto& poly = d->polyhedron;
    std::map<int, int> seen;
    bool ok = unpaired_faces(poly, false).empty();
    for (const auto& p : poly.pairings) {
      if (poly.faces[p.face].slab) continue;
      ++seen[p.face];
      ++total;
      ok = ok && flags_consistent(p) && static_cast<int>(p.word.size()) <= 8;
    }
    for (const auto& [f, n] : seen) ok = ok && n == 1;
    ok = ok && pattern_matches(poly, d->constraints) && flags_match_figures(poly, d->constraints) &&
         pairings_involutive(poly, k);
    if (!ok) info += " " + case_tag(s, k) + " failed";
    o.pass = o.pass && ok;
  }
  o.detail = std::to_string(total) + " side-face pairings, pattern and flags as in the figures" + info;
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const auto base = std::filesystem::temp_directory_path() / "lorentzfd_acceptance";
  std::filesystem::remove_all(base);
  RunConfig cfg;
  cfg.samples = 1000;
  cfg.formats = {"off", "json"};
  std::size_t bytes = 0;
  for (int run_id = 0; run_id < 2; ++run_id) {
    cfg.output_dir = base / std::to_string(run_id);
    run(cfg);
  }
  for (const char* name : {"fund_E_k2.off", "fund_E_k2.json"}) {
    const auto a = slurp(base / "0" / name), b = slurp(base / "1" / name);
    o.pass = o.pass && !a.empty() && a == b;
    bytes += a.size();
  }
  o.detail = "E2 OFF+JSON, " + std::to_string(bytes) + " bytes identical across runs";
  if (!o.pass) o.detail = "artifacts differ between runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"corona closed forms", corona},     {"cover arithmetic", cover},
      {"level lifts", lifts},              {"reduction theorem", theorem},
      {"corona equivalence", equivalence}, {"polyhedron validity", validity},
      {"pairing scheme", pairings},        {"determinism", determinism}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("criterion %zu (%s): %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
