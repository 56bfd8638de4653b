#pragma once

// Vertices and faces of F_e in the slab chart (x1, x2, s).

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lorentzfd/constraints.hpp"
#include "lorentzfd/vec3.hpp"

namespace lorentzfd {

struct Face {
  int constraint = -1;  // index into ConstraintSet::constraints
  char family = 'a';
  int m = 0;
  std::string label;
  std::vector<int> loop;  // anticlockwise seen from outside
  Vec3 normal;            // outward unit normal
  bool slab = false;      // top or bottom
};

struct FacePairing {
  int face = -1;
  int partner = -1;
  Word word;                  // g1 before the central correction
  long central_shift = 0;     // g1 = C^central_shift * word
  int g2_power = 0;           // g2 = t^g2_power
  CoverElement g1, g2;
  std::vector<int> vertex_map;  // loop position in face -> loop position in partner
  bool reverses_orientation = false;
};

struct Polyhedron {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::size_t edge_count = 0;
  int symmetry_order = 1;
  std::vector<FacePairing> pairings;

  int euler_characteristic() const {
    return static_cast<int>(vertices.size()) - static_cast<int>(edge_count) +
           static_cast<int>(faces.size());
  }
};

struct PolyhedronOptions {
  double vertex_merge_tol = 1e-8;
  double incidence_tol = 1e-9;
  double max_condition = 1e10;
  double probe_eps = 1e-7;
};

struct Plane {
  Vec3 n;  // unit normal, inside is n . x <= c
  double c = 0.0;
  int group = -1;
};

inline std::vector<Plane> planes_of(const ConstraintSet& cs) {
  std::vector<Plane> out(cs.constraints.size());
  for (std::size_t gi = 0; gi < cs.groups.size(); ++gi) {
    for (int idx : cs.groups[gi].members) {
      const auto& hs = cs.constraints[idx].half_space;
      const double len = norm(hs.n);
      out[idx] = {hs.n / len, hs.c / len, static_cast<int>(gi)};
    }
  }
  return out;
}

namespace detail {

inline bool vec_less(const Vec3& a, const Vec3& b) {
  const double qa = std::round(a.z * 1e8), qb = std::round(b.z * 1e8);
  if (qa != qb) return qa < qb;
  const double aa = std::round(canonical_angle(Complex(a.x, a.y)) * 1e8);
  const double ab = std::round(canonical_angle(Complex(b.x, b.y)) * 1e8);
  if (aa != ab) return aa < ab;
  return std::hypot(a.x, a.y) < std::hypot(b.x, b.y);
}

class VertexPool {
 public:
  explicit VertexPool(double tol) : tol_(tol) {}
  int id(const Vec3& x) {
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (distance(pts_[i], x) < tol_) return static_cast<int>(i);
    }
    pts_.push_back(x);
    return static_cast<int>(pts_.size()) - 1;
  }
  const std::vector<Vec3>& points() const { return pts_; }

 private:
  double tol_;
  std::vector<Vec3> pts_;
};

}  // namespace detail

/// Points on three constraint planes that satisfy the full membership
/// predicate, deduplicated and canonically ordered.
inline std::vector<Vec3> enumerate_vertices(const ConstraintSet& cs,
                                            const PolyhedronOptions& opts = {}) {
  const auto planes = planes_of(cs);
  detail::VertexPool pool(opts.vertex_merge_tol);
  const std::size_t n = planes.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        const std::array<Vec3, 3> rows{planes[i].n, planes[j].n, planes[l].n};
        if (hadamard_condition(rows) > opts.max_condition) continue;
        Vec3 x;
        if (!solve3(rows, {planes[i].c, planes[j].c, planes[l].c}, x, 1e-14)) continue;
        if (!fe_membership_linear(cs, x, opts.incidence_tol)) continue;
        pool.id(x);
      }
    }
  }
  std::vector<Vec3> out = pool.points();
  if (out.empty()) throw Error(ErrorCode::NoVertices, "constraint arrangement has no vertices");
  std::sort(out.begin(), out.end(), detail::vec_less);
  return out;
}

inline Vec3 rotate_chart(const Vec3& x, double psi) {
  const double c = std::cos(psi), s = std::sin(psi);
  return {c * x.x - s * x.y, s * x.x + c * x.y, x.z};
}

/// (x1, x2, s) -> (x1, -x2, -s).
inline Vec3 half_turn(const Vec3& x) { return {x.x, -x.y, -x.z}; }

template <typename Map>
bool set_invariant(const std::vector<Vec3>& pts, Map f, double tol) {
  for (const auto& p : pts) {
    const Vec3 q = f(p);
    bool found = false;
    for (const auto& r : pts) {
      if (distance(q, r) < tol) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Largest n <= max_order with the point set invariant under rotation by 2pi/n.
inline int rotational_symmetry_order(const std::vector<Vec3>& pts, int max_order,
                                     double tol = 1e-8) {
  for (int n = max_order; n > 1; --n) {
    const double psi = 2.0 * kPi / n;
    if (set_invariant(pts, [psi](const Vec3& x) { return rotate_chart(x, psi); }, tol)) return n;
  }
  return 1;
}

/// True if the half-turn maps every plane of family `from` onto a plane of
/// family `to`.
inline bool half_turn_maps_family(const ConstraintSet& cs, char from, char to,
                                  double tol = 1e-9) {
  const auto planes = planes_of(cs);
  for (std::size_t i = 0; i < planes.size(); ++i) {
    if (cs.constraints[i].family != from) continue;
    const Vec3 n = half_turn(planes[i].n);
    bool found = false;
    for (std::size_t j = 0; j < planes.size() && !found; ++j) {
      found = cs.constraints[j].family == to && distance(n, planes[j].n) < tol &&
              std::abs(planes[i].c - planes[j].c) < tol;
    }
    if (!found) return false;
  }
  return true;
}

/// Builds the boundary of F_e. For each plane, the lines where it meets the
/// other planes are cut at every remaining plane; an elementary segment is a
/// face edge when membership in the face flips across it.
inline Polyhedron build_polyhedron(const ConstraintSet& cs, const PolyhedronOptions& opts = {}) {
  const auto planes = planes_of(cs);
  const std::size_t np = planes.size();

  auto in_face = [&](std::size_t i, const Vec3& y) {
    const double tol = opts.incidence_tol / 10.0;
    if (!fe_membership_linear(cs, y, tol)) return false;
    for (int j : cs.groups[planes[i].group].members) {
      if (static_cast<std::size_t>(j) != i && dot(planes[j].n, y) < planes[j].c - tol) {
        return false;
      }
    }
    return true;
  };

  detail::VertexPool pool(opts.vertex_merge_tol);
  std::map<std::pair<int, int>, std::set<int>> edge_faces;  // fine edges -> planes
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      if (j == i) continue;
      Vec3 d = cross(planes[i].n, planes[j].n);
      if (norm(d) < 1e-12) continue;
      d = normalized(d);
      Vec3 x0;
      if (!solve3({planes[i].n, planes[j].n, d}, {planes[i].c, planes[j].c, 0.0}, x0, 1e-14)) {
        continue;
      }
      std::vector<double> ts;
      for (std::size_t l = 0; l < np; ++l) {
        if (l == i || l == j) continue;
        const double den = dot(planes[l].n, d);
        if (std::abs(den) < 1e-14) continue;
        ts.push_back((planes[l].c - dot(planes[l].n, x0)) / den);
      }
      std::sort(ts.begin(), ts.end());
      const Vec3 nu = normalized(cross(planes[i].n, d));
      for (std::size_t a = 0; a + 1 < ts.size(); ++a) {
        if (ts[a + 1] - ts[a] < 1e-10) continue;
        const Vec3 mid = x0 + d * ((ts[a] + ts[a + 1]) / 2.0);
        if (in_face(i, mid + nu * opts.probe_eps) == in_face(i, mid - nu * opts.probe_eps)) {
          continue;
        }
        const int va = pool.id(x0 + d * ts[a]);
        const int vb = pool.id(x0 + d * ts[a + 1]);
        if (va == vb) continue;
        edge_faces[{std::min(va, vb), std::max(va, vb)}].insert(static_cast<int>(i));
      }
    }
  }
  if (edge_faces.empty()) throw Error(ErrorCode::NoVertices, "no face edges found");

  const auto& fine = pool.points();
  std::vector<std::set<int>> nbrs(fine.size());
  for (const auto& [e, fs] : edge_faces) {
    if (fs.size() != 2) {
      throw Error(ErrorCode::NonManifold, "edge with " + std::to_string(fs.size()) +
                                              " incident faces");
    }
    nbrs[e.first].insert(e.second);
    nbrs[e.second].insert(e.first);
  }

  // Loops per plane over the fine edges.
  std::map<int, std::vector<std::pair<int, int>>> plane_edges;
  for (const auto& [e, fs] : edge_faces) {
    for (int f : fs) plane_edges[f].push_back(e);
  }
  struct RawFace {
    int plane;
    std::vector<int> loop;
  };
  std::vector<RawFace> raw;
  for (const auto& [plane, edges] : plane_edges) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (const auto& [v, ns] : adj) {
      if (ns.size() != 2) {
        throw Error(ErrorCode::NonManifold,
                    "face " + cs.constraints[plane].label() + " is pinched at a vertex");
      }
    }
    std::set<int> seen;
    for (const auto& [start, ns] : adj) {
      if (seen.count(start)) continue;
      std::vector<int> loop{start};
      seen.insert(start);
      int prev = start, cur = ns[0];
      while (cur != start) {
        loop.push_back(cur);
        seen.insert(cur);
        const auto& cn = adj[cur];
        const int next = cn[0] == prev ? cn[1] : cn[0];
        prev = cur;
        cur = next;
      }
      // Drop vertices where only two faces meet (interior points of an edge).
      std::vector<int> kept;
      for (int v : loop) {
        if (nbrs[v].size() > 2) kept.push_back(v);
      }
      if (kept.size() < 3) throw Error(ErrorCode::NonManifold, "degenerate face loop");
      raw.push_back({plane, kept});
    }
  }

  // Canonical vertex order.
  std::vector<int> used;
  for (std::size_t v = 0; v < fine.size(); ++v) {
    if (nbrs[v].size() > 2) used.push_back(static_cast<int>(v));
  }
  std::sort(used.begin(), used.end(),
            [&](int a, int b) { return detail::vec_less(fine[a], fine[b]); });
  std::vector<int> remap(fine.size(), -1);
  Polyhedron poly;
  for (std::size_t i = 0; i < used.size(); ++i) {
    remap[used[i]] = static_cast<int>(i);
    poly.vertices.push_back(fine[used[i]]);
  }

  for (auto& rf : raw) {
    Face f;
    const auto& lc = cs.constraints[rf.plane];
    f.constraint = rf.plane;
    f.family = lc.family;
    f.m = lc.m;
    f.label = lc.label();
    f.slab = lc.family == 'D' || lc.family == 'd';
    f.normal = planes[rf.plane].n;
    for (int v : rf.loop) f.loop.push_back(remap[v]);
    Vec3 area;
    for (std::size_t i = 0; i < f.loop.size(); ++i) {
      area += cross(poly.vertices[f.loop[i]], poly.vertices[f.loop[(i + 1) % f.loop.size()]]);
    }
    if (dot(area, f.normal) < 0.0) std::reverse(f.loop.begin(), f.loop.end());
    std::rotate(f.loop.begin(), std::min_element(f.loop.begin(), f.loop.end()), f.loop.end());
    poly.faces.push_back(std::move(f));
  }
  auto rank = [](const Face& f) {
    return f.family == 'D' ? 3 : f.family == 'd' ? 4 : (f.family - 'a');
  };
  std::sort(poly.faces.begin(), poly.faces.end(), [&](const Face& a, const Face& b) {
    if (a.slab != b.slab) return !a.slab;
    if (a.slab) return rank(a) < rank(b);
    if (a.m != b.m) return a.m < b.m;
    if (a.family != b.family) return a.family < b.family;
    return a.loop < b.loop;
  });

  // Closed and consistently oriented: every directed edge occurs exactly once
  // and its reverse occurs exactly once.
  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : poly.faces) {
    for (std::size_t i = 0; i < f.loop.size(); ++i) {
      ++directed[{f.loop[i], f.loop[(i + 1) % f.loop.size()]}];
    }
  }
  for (const auto& [e, count] : directed) {
    if (count != 1 || directed.count({e.second, e.first}) != 1) {
      throw Error(ErrorCode::NonManifold, "boundary is not a closed oriented surface");
    }
  }
  poly.edge_count = directed.size() / 2;
  if (poly.euler_characteristic() != 2) {
    throw Error(ErrorCode::EulerCheckFailed,
                "Euler characteristic " + std::to_string(poly.euler_characteristic()) + " != 2");
  }
  for (const auto& v : poly.vertices) {
    int incident = 0;
    for (const auto& p : planes) incident += std::abs(dot(p.n, v) - p.c) < opts.incidence_tol * 10;
    if (incident < 3) throw Error(ErrorCode::NonManifold, "vertex on fewer than three planes");
  }
  poly.symmetry_order = rotational_symmetry_order(poly.vertices, 4 * cs.rotation_p);
  return poly;
}

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;
  std::vector<bool> removable;  // top and bottom
};

/// The chart is the tangent space at e; flipping the sign of the form on the
/// s axis gives the Euclidean picture, so coordinates carry over unchanged.
inline Mesh lie_project(const Polyhedron& poly) {
  Mesh mesh;
  mesh.vertices = poly.vertices;
  for (const auto& f : poly.faces) {
    mesh.faces.push_back(f.loop);
    mesh.removable.push_back(f.slab);
  }
  return mesh;
}

/// The form on tangent vectors at e in chart coordinates: x1^2 + x2^2 - s^2.
inline double tangent_form(const Vec3& v) { return v.x * v.x + v.y * v.y - v.z * v.z; }

}  // namespace lorentzfd
