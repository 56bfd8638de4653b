#pragma once

// Face pairings (g1, g2) . x = g1 x g2^-1 with g1 in the lifted triangle group
// and g2 in the lifted (C_3)^k.

#include <cmath>
#include <algorithm>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <vector>

#include "lorentzfd/polyhedron.hpp"

namespace lorentzfd {

struct PairingOptions {
  int max_word_len = 8;   // syllables u^i, v^j
  int slab_word_len = 1;  // top and bottom only meet stabilizer words
  std::size_t max_words = 200000;
  double match_tol = 1e-7;
  bool include_slab = true;
};

inline ConePoint act(const CoverElement& g1, const CoverElement& g2, const ConePoint& p) {
  return (g1 * p) * g2.inverse();
}

namespace detail {

struct WordEntry {
  Word word;
  CoverElement g;
};

// Words alternating between u- and v-syllables, one per element of the
// projected group, in breadth-first order.
class WordEnumerator {
 public:
  explicit WordEnumerator(const LevelLift& lift) : lift_(lift), seen_(1e-9) {
    const Complex probe(0.1234, 0.0567);
    probe_ = probe;
    seen_.insert(probe);
    levels_.push_back({{{}, CoverElement::identity()}});
  }

  // Words of exactly `len` syllables (generated on demand).
  const std::vector<WordEntry>& level(int len) {
    while (static_cast<int>(levels_.size()) <= len) grow();
    return levels_[len];
  }

 private:
  void grow() {
    std::vector<WordEntry> next;
    for (const auto& e : levels_.back()) {
      for (Gen gen : {Gen::U, Gen::V}) {
        if (!e.word.empty() && e.word.back().gen == gen) continue;
        const int order = gen == Gen::U ? lift_.group.p : lift_.group.q;
        const CoverElement& step = gen == Gen::U ? lift_.gu : lift_.gv;
        CoverElement g = e.g;
        for (int i = 1; i < order; ++i) {
          g = g * step;
          if (!seen_.insert(mobius_apply(g.base(), probe_)).second) continue;
          Word w = e.word;
          w.push_back({gen, i});
          next.push_back({w, g});
        }
      }
    }
    levels_.push_back(std::move(next));
  }

  const LevelLift& lift_;
  Complex probe_;
  PointSet seen_;
  std::vector<std::vector<WordEntry>> levels_;
};

inline Vec3 centroid(const std::vector<Vec3>& pts) {
  Vec3 c;
  for (const auto& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

}  // namespace detail

/// Tries to map `face` onto another face by (g1 C^j, t^power); fills the
/// pairing on success.
inline std::optional<FacePairing> match_face(const Polyhedron& poly, int face,
                                             const CoverElement& g1, const CoverElement& g2,
                                             int k, double tol,
                                             const std::vector<bool>& taken) {
  const auto& src = poly.faces[face].loop;
  std::vector<ConePoint> imgs;
  std::vector<Vec3> chart;
  for (int v : src) {
    const ConePoint q = act(g1, g2, from_chart(poly.vertices[v]));
    if (std::abs(q.w.real()) < 1e-9) return std::nullopt;
    imgs.push_back(q);
    chart.push_back(to_chart(q));
  }
  const Vec3 c = detail::centroid(chart);
  for (std::size_t t = 0; t < poly.faces.size(); ++t) {
    const auto& dst = poly.faces[t].loop;
    if (taken[t] || dst.size() != src.size()) continue;
    std::vector<Vec3> dpts;
    for (int v : dst) dpts.push_back(poly.vertices[v]);
    if (distance(detail::centroid(dpts), c) > tol * 10) continue;
    std::vector<int> vmap;
    for (const auto& x : chart) {
      int hit = -1;
      for (std::size_t j = 0; j < dpts.size(); ++j) {
        if (distance(x, dpts[j]) < tol) hit = static_cast<int>(j);
      }
      if (hit < 0) break;
      vmap.push_back(hit);
    }
    if (vmap.size() != src.size()) continue;
    bool identity = static_cast<int>(t) == face;
    for (std::size_t i = 0; i < vmap.size() && identity; ++i) identity = vmap[i] == static_cast<int>(i);
    if (identity) continue;
    // img = C^j * (positive multiple of target) with k | j.
    std::optional<long> shift;
    bool ok = true;
    for (std::size_t i = 0; i < imgs.size() && ok; ++i) {
      const ConePoint target = from_chart(dpts[vmap[i]]);
      const double jr = (target.phi - imgs[i].phi) / kPi;
      const long j = std::lround(jr);
      ok = std::abs(jr - j) < tol && (shift ? *shift == j : true) &&
           ((j % 2 == 0) == (imgs[i].w.real() > 0.0));
      shift = j;
    }
    if (!ok || mod_floor(*shift, k) != 0) continue;
    FacePairing fp;
    fp.face = face;
    fp.partner = static_cast<int>(t);
    fp.central_shift = -*shift;
    fp.g1 = central(-*shift) * g1;
    fp.g2 = g2;
    fp.vertex_map = vmap;
    const int n = static_cast<int>(vmap.size());
    fp.reverses_orientation = mod_floor(vmap[1] - vmap[0], n) == n - 1;
    return fp;
  }
  return std::nullopt;
}

inline FacePairing invert_pairing(const FacePairing& p) {
  FacePairing q;
  q.face = p.partner;
  q.partner = p.face;
  q.g1 = p.g1.inverse();
  q.g2 = p.g2.inverse();
  q.central_shift = 0;
  q.g2_power = p.g2_power == 0 ? 0 : 3 - p.g2_power;
  q.vertex_map.assign(p.vertex_map.size(), 0);
  for (std::size_t i = 0; i < p.vertex_map.size(); ++i) q.vertex_map[p.vertex_map[i]] = static_cast<int>(i);
  q.reverses_orientation = p.reverses_orientation;
  Word w;
  for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) w.push_back({it->gen, -it->exp});
  if (p.central_shift != 0) w.push_back({Gen::C, -p.central_shift});
  q.word = w;
  return q;
}

/// Pairs faces breadth-first over word length. Each pairing is stored for
/// both faces (the second as the inverse).
inline std::vector<FacePairing> find_pairings(const Polyhedron& poly, const ConstraintSet& cs,
                                              const PairingOptions& opts = {}) {
  const auto& lift = cs.lift;
  const int k = lift.config.k;
  detail::WordEnumerator words(lift);
  std::vector<bool> taken(poly.faces.size(), false);
  std::vector<FacePairing> out;
  for (std::size_t f = 0; f < poly.faces.size(); ++f) {
    if (taken[f] || (poly.faces[f].slab && !opts.include_slab)) continue;
    std::optional<FacePairing> found;
    const int max_len = poly.faces[f].slab ? opts.slab_word_len : opts.max_word_len;
    std::size_t tried = 0;
    for (int len = 0; len <= max_len && !found && tried < opts.max_words; ++len) {
      for (const auto& entry : words.level(len)) {
        if (++tried > opts.max_words) break;
        for (int j = 0; j < 3 && !found; ++j) {
          found = match_face(poly, static_cast<int>(f), entry.g, pow(lift.t, j), k,
                             opts.match_tol, taken);
          if (found) {
            found->word = entry.word;
            found->g2_power = j;
          }
        }
        if (found) break;
      }
    }
    if (!found) continue;
    taken[f] = true;
    taken[found->partner] = true;
    out.push_back(*found);
    out.push_back(invert_pairing(*found));
  }
  std::sort(out.begin(), out.end(),
            [](const FacePairing& a, const FacePairing& b) { return a.face < b.face; });
  return out;
}

/// Faces (by index) without a pairing; slab faces are listed only if
/// `include_slab`.
inline std::vector<int> unpaired_faces(const Polyhedron& poly, bool include_slab) {
  std::vector<bool> has(poly.faces.size(), false);
  for (const auto& p : poly.pairings) has[p.face] = true;
  std::vector<int> out;
  for (std::size_t i = 0; i < poly.faces.size(); ++i) {
    if (!has[i] && (include_slab || !poly.faces[i].slab)) out.push_back(static_cast<int>(i));
  }
  return out;
}

/// Applies the pairing and checks that the partner's vertices come back,
/// in the recorded order.
inline bool verify_pairing(const Polyhedron& poly, const FacePairing& p, int k,
                           double tol = 1e-7) {
  const auto& src = poly.faces[p.face].loop;
  const auto& dst = poly.faces[p.partner].loop;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const ConePoint q = act(p.g1, p.g2, from_chart(poly.vertices[src[i]]));
    if (q.w.real() <= 0.0) return false;
    const Vec3 x = to_chart(q);
    const ConePoint target = from_chart(poly.vertices[dst[p.vertex_map[i]]]);
    if (distance(x, poly.vertices[dst[p.vertex_map[i]]]) > tol) return false;
    if (std::abs(q.phi - target.phi) > tol) return false;
  }
  (void)k;
  return true;
}

/// Every pairing's inverse is recorded and maps the partner back.
inline bool pairings_involutive(const Polyhedron& poly, int k) {
  for (const auto& p : poly.pairings) {
    if (!verify_pairing(poly, p, k)) return false;
    bool found = false;
    for (const auto& q : poly.pairings) {
      if (q.face != p.partner || q.partner != p.face) continue;
      found = max_abs_diff(q.g1, p.g1.inverse()) < 1e-8 &&
              max_abs_diff(q.g2, p.g2.inverse()) < 1e-8;
      for (std::size_t i = 0; found && i < p.vertex_map.size(); ++i) {
        found = q.vertex_map[p.vertex_map[i]] == static_cast<int>(i);
      }
      if (found) break;
    }
    if (!found) return false;
  }
  return true;
}

/// Vertex maps are dihedral (a rotation or reflection of the loop).
inline bool flags_consistent(const FacePairing& p) {
  const int n = static_cast<int>(p.vertex_map.size());
  const int step = mod_floor(p.vertex_map[1] - p.vertex_map[0], n);
  if (step != 1 && step != n - 1) return false;
  for (int i = 0; i < n; ++i) {
    if (mod_floor(p.vertex_map[(i + 1) % n] - p.vertex_map[i], n) != step) return false;
  }
  return true;
}

/// Expected partner label per the series' identification pattern, or "" when
/// the face is not a side face.
inline std::string expected_partner(const ConstraintSet& cs, const Face& f) {
  const int T = cs.period;
  auto lab = [&](char fam, int m) { return std::string(1, fam) + "_" + std::to_string(mod_floor(m, T)); };
  if (cs.series == Series::E) {
    if (f.family == 'a') return lab('b', f.m - 1);
    if (f.family == 'b') return lab('a', f.m + 1);
  } else {
    const int p1 = cs.lift.config.p_tri;
    if (f.family == 'a') return lab('c', f.m - 1);
    if (f.family == 'c') return lab('a', f.m + 1);
    if (f.family == 'b') return lab('b', f.m + p1);
  }
  return "";
}

inline bool pattern_matches(const Polyhedron& poly, const ConstraintSet& cs) {
  for (const auto& p : poly.pairings) {
    const auto& f = poly.faces[p.face];
    if (f.slab) continue;
    if (poly.faces[p.partner].label != expected_partner(cs, f)) return false;
  }
  return true;
}

/// Neighbour correspondences of the identification figures: for a pairing
/// F -> F', each edge of F is described by the face across it, and its image
/// by the face across the image edge. The figures' top face is H_D here.
inline std::set<std::pair<std::string, std::string>> expected_flags(const ConstraintSet& cs,
                                                                    const Face& src) {
  const int T = cs.period;
  auto lab = [&](char fam, int m) { return std::string(1, fam) + "_" + std::to_string(mod_floor(m, T)); };
  using Set = std::set<std::pair<std::string, std::string>>;
  auto swapped = [](const Set& in) {
    Set out;
    for (const auto& [a, b] : in) out.insert({b, a});
    return out;
  };
  const int m = src.m;
  if (cs.series == Series::E) {
    if (src.family == 'b') return {{lab('a', m + 1), lab('b', m)}, {lab('a', m), "D^-1"}, {"D", lab('b', m + 1)}};
    if (src.family == 'a') {
      const int n = m - 1;
      return swapped({{lab('a', n + 1), lab('b', n)}, {lab('a', n), "D^-1"}, {"D", lab('b', n + 1)}});
    }
  } else {
    const int p1 = cs.lift.config.p_tri;
    if (src.family == 'c') return {{lab('b', m), "D^-1"}, {lab('a', m + 1), lab('c', m)}, {"D", lab('b', m + 1)}};
    if (src.family == 'a') {
      const int n = m - 1;
      return swapped({{lab('b', n), "D^-1"}, {lab('a', n + 1), lab('c', n)}, {"D", lab('b', n + 1)}});
    }
    if (src.family == 'b') {
      return {{lab('c', m), "D"}, {"D^-1", lab('a', m + p1)}, {lab('a', m), "D^-1"}, {"D", lab('c', m + p1)}};
    }
  }
  return {};
}

/// Compares every side-face pairing's edge correspondence with the figures.
inline bool flags_match_figures(const Polyhedron& poly, const ConstraintSet& cs) {
  std::map<std::pair<int, int>, std::vector<int>> faces_of_edge;
  for (std::size_t f = 0; f < poly.faces.size(); ++f) {
    const auto& l = poly.faces[f].loop;
    for (std::size_t i = 0; i < l.size(); ++i) {
      const int a = l[i], b = l[(i + 1) % l.size()];
      faces_of_edge[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(f));
    }
  }
  auto across = [&](int f, int a, int b) {
    const auto& v = faces_of_edge[{std::min(a, b), std::max(a, b)}];
    return poly.faces[v[0] == f ? v[1] : v[0]].label;
  };
  for (const auto& p : poly.pairings) {
    const auto& F = poly.faces[p.face];
    if (F.slab) continue;
    const auto& G = poly.faces[p.partner];
    const std::size_t n = F.loop.size();
    std::set<std::pair<std::string, std::string>> got;
    for (std::size_t i = 0; i < n; ++i) {
      const int a2 = G.loop[p.vertex_map[i]];
      const int b2 = G.loop[p.vertex_map[(i + 1) % n]];
      got.insert({across(p.face, F.loop[i], F.loop[(i + 1) % n]), across(p.partner, a2, b2)});
    }
    if (got != expected_flags(cs, F)) return false;
  }
  return true;
}

struct EdgeCycleReport {
  std::size_t cycles = 0;
  std::size_t open = 0;           // reach an unpaired face
  std::size_t fixes_edge = 0;     // composition fixes the edge vertices
  std::size_t central = 0;        // both components central
  std::size_t self_paired = 0;    // non-central, length 1: an edge shared by paired faces
  std::size_t max_length = 0;
};

/// Follows each directed edge through the pairings until it returns with the
/// same direction, composing the pairing elements. Each cycle is counted once.
inline EdgeCycleReport edge_cycles(const Polyhedron& poly) {
  std::map<int, const FacePairing*> by_face;
  for (const auto& p : poly.pairings) by_face[p.face] = &p;
  std::map<std::pair<int, int>, std::vector<int>> faces_of_edge;
  for (std::size_t f = 0; f < poly.faces.size(); ++f) {
    const auto& l = poly.faces[f].loop;
    for (std::size_t i = 0; i < l.size(); ++i) {
      const int a = l[i], b = l[(i + 1) % l.size()];
      faces_of_edge[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(f));
    }
  }
  auto position = [&](int f, int v) {
    const auto& l = poly.faces[f].loop;
    return static_cast<int>(std::find(l.begin(), l.end(), v) - l.begin());
  };
  using State = std::pair<std::pair<int, int>, int>;  // directed edge, face
  EdgeCycleReport rep;
  std::set<State> visited;
  for (const auto& [edge, fs] : faces_of_edge) {
    const State start{edge, fs[0]};
    if (visited.count(start)) continue;
    State st = start;
    CoverElement h1 = CoverElement::identity(), h2 = CoverElement::identity();
    std::size_t len = 0;
    bool open = false;
    do {
      visited.insert(st);
      // The reversed traversal belongs to the same cycle.
      const int other = faces_of_edge[{std::min(st.first.first, st.first.second),
                                       std::max(st.first.first, st.first.second)}][0] == st.second
                            ? 1
                            : 0;
      visited.insert({{st.first.second, st.first.first},
                      faces_of_edge[{std::min(st.first.first, st.first.second),
                                     std::max(st.first.first, st.first.second)}][other]});
      auto it = by_face.find(st.second);
      if (it == by_face.end()) {
        open = true;
        break;
      }
      const FacePairing& p = *it->second;
      const auto& dl = poly.faces[p.partner].loop;
      const int a = dl[p.vertex_map[position(st.second, st.first.first)]];
      const int b = dl[p.vertex_map[position(st.second, st.first.second)]];
      h1 = p.g1 * h1;
      h2 = p.g2 * h2;
      const auto& nf = faces_of_edge[{std::min(a, b), std::max(a, b)}];
      st = {{a, b}, nf[0] == p.partner ? nf[1] : nf[0]};
      ++len;
    } while (st != start && len < 4 * poly.faces.size());
    if (open) {
      ++rep.open;
      continue;
    }
    ++rep.cycles;
    rep.max_length = std::max(rep.max_length, len);
    bool fixes = st == start;
    for (int v : {edge.first, edge.second}) {
      const ConePoint x = from_chart(poly.vertices[v]);
      const ConePoint y = act(h1, h2, x);
      fixes = fixes && std::abs(y.z - x.z) + std::abs(y.w - x.w) + std::abs(y.phi - x.phi) < 1e-7;
    }
    if (fixes) ++rep.fixes_edge;
    if (central_exponent(h1, 1e-7) && central_exponent(h2, 1e-7)) {
      ++rep.central;
    } else if (len == 1) {
      ++rep.self_paired;
    }
  }
  return rep;
}

}  // namespace lorentzfd
