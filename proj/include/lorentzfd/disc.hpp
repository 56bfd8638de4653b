#pragma once

// SU(1,1) acting on the Poincare disc: rotations, triangle groups, orbits,
// Dirichlet regions and edge coronas.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <numbers>
#include <string>
#include <unordered_map>
#include <vector>

#include "lorentzfd/error.hpp"

namespace lorentzfd {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Element (z, w) of SU(1,1), identified with the matrix ((conj w, z), (conj z, w)).
/// Membership requires |z|^2 - |w|^2 = -1.
struct GroupElement {
  Complex z{0.0, 0.0};
  Complex w{1.0, 0.0};

  static GroupElement identity() { return {}; }

  double quadric_defect() const { return std::norm(z) - std::norm(w) + 1.0; }

  GroupElement inverse() const { return {-z, std::conj(w)}; }

  GroupElement operator-() const { return {-z, -w}; }
};

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return {std::conj(a.w) * b.z + a.z * b.w, std::conj(a.z) * b.z + a.w * b.w};
}

inline double max_abs_diff(const GroupElement& a, const GroupElement& b) {
  return std::max(std::abs(a.z - b.z), std::abs(a.w - b.w));
}

/// True if a == +-b within `tol` (equality in PSU(1,1)).
inline bool same_projective(const GroupElement& a, const GroupElement& b, double tol) {
  return max_abs_diff(a, b) <= tol || max_abs_diff(a, -b) <= tol;
}

/// x -> (conj(w) x + z) / (conj(z) x + w).
inline Complex mobius_apply(const GroupElement& g, Complex x) {
  return (std::conj(g.w) * x + g.z) / (std::conj(g.z) * x + g.w);
}

/// Element with real positive w sending 0 to x.
inline GroupElement translation_to(Complex x) {
  const double n = 1.0 / std::sqrt(1.0 - std::norm(x));
  return {x * n, Complex(n, 0.0)};
}

/// Anticlockwise rotation through `t` about the disc point `x`.
inline GroupElement rotation_about(Complex x, double t) {
  const GroupElement r0{Complex(0.0, 0.0), std::polar(1.0, -t / 2.0)};
  if (x == Complex(0.0, 0.0)) return r0;
  const GroupElement tx = translation_to(x);
  return tx * r0 * tx.inverse();
}

/// Fixed point inside the disc of an elliptic element.
inline Complex fixed_point(const GroupElement& g) {
  // conj(z) x^2 + (w - conj w) x - z = 0
  const Complex a = std::conj(g.z);
  const Complex b = g.w - std::conj(g.w);
  const Complex c = -g.z;
  if (std::abs(a) < 1e-15) return Complex(0.0, 0.0);
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  const Complex r1 = (-b + disc) / (2.0 * a);
  const Complex r2 = (-b - disc) / (2.0 * a);
  return std::abs(r1) < std::abs(r2) ? r1 : r2;
}

inline double hyperbolic_distance(Complex a, Complex b) {
  const double ratio = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
  return 2.0 * std::atanh(std::min(ratio, 1.0 - 1e-16));
}

/// Euclidean radius of the disc point at hyperbolic distance `rho` from 0.
inline double euclidean_radius(double rho) { return std::tanh(rho / 2.0); }

inline double hyperbolic_radius(double r) { return 2.0 * std::atanh(r); }

struct TriangleGroupData {
  int p = 0;
  int q = 0;
  int r = 0;
  Complex u, v, w;
  GroupElement gen_u, gen_v, gen_w;
  double L = 0.0;  // hyperbolic distance u-v
  double d = 0.0;  // Euclidean radius of the edge corona
  double s = 0.0;  // largest gap between consecutive corona points
};

inline bool is_hyperbolic_signature(int p, int q, int r) {
  return p >= 2 && q >= 2 && r >= 2 &&
         static_cast<long>(q) * r + static_cast<long>(p) * r + static_cast<long>(p) * q <
             static_cast<long>(p) * q * r;
}

inline double triangle_cosh_length(int p, int q, int r) {
  return (std::cos(kPi / p) * std::cos(kPi / q) + std::cos(kPi / r)) /
         (std::sin(kPi / p) * std::sin(kPi / q));
}

/// Places u at the origin and v on the positive real axis; w comes out at
/// argument +pi/p so that gen_u * gen_v * gen_w = +-identity.
inline TriangleGroupData build_triangle_group(int p, int q, int r) {
  if (!is_hyperbolic_signature(p, q, r)) {
    throw Error(ErrorCode::NotHyperbolic, "signature (" + std::to_string(p) + "," +
                                              std::to_string(q) + "," + std::to_string(r) +
                                              ") is not hyperbolic: 1/p+1/q+1/r >= 1");
  }
  TriangleGroupData g;
  g.p = p;
  g.q = q;
  g.r = r;
  const double cosh_l = triangle_cosh_length(p, q, r);
  g.L = std::acosh(cosh_l);
  g.u = Complex(0.0, 0.0);
  g.v = Complex(std::tanh(g.L / 2.0), 0.0);
  g.gen_u = rotation_about(g.u, 2.0 * kPi / p);
  g.gen_v = rotation_about(g.v, 2.0 * kPi / q);
  g.gen_w = (g.gen_u * g.gen_v).inverse();
  g.w = fixed_point(g.gen_w);
  if (!same_projective(g.gen_w, rotation_about(g.w, 2.0 * kPi / r), 1e-9)) {
    throw Error(ErrorCode::InconsistentProduct,
                "derived third generator is not a rotation through 2pi/r");
  }
  const double sh = std::sinh(g.L);
  const double sq = std::sin(kPi / q);
  const double denom = sh * sh * sq * sq + 1.0;
  g.d = sh * sq / std::sqrt(denom);
  g.s = sh * std::sin(2.0 * kPi / q) / denom;
  return g;
}

namespace detail {

// Grid hash for deduplicating disc points at a fixed tolerance.
class PointSet {
 public:
  explicit PointSet(double tol) : tol_(tol), cell_(std::max(tol * 16.0, 1e-12)) {}

  // Returns the index of an existing point within tolerance, or -1.
  long find(Complex x) const {
    const auto [cx, cy] = cell_of(x);
    for (long dx = -1; dx <= 1; ++dx) {
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (long idx : it->second) {
          if (std::abs(points_[idx] - x) <= tol_) return idx;
        }
      }
    }
    return -1;
  }

  // Inserts if new; returns {index, inserted}.
  std::pair<long, bool> insert(Complex x) {
    const long found = find(x);
    if (found >= 0) return {found, false};
    const auto [cx, cy] = cell_of(x);
    const long idx = static_cast<long>(points_.size());
    points_.push_back(x);
    cells_[key(cx, cy)].push_back(idx);
    return {idx, true};
  }

  const std::vector<Complex>& points() const { return points_; }

 private:
  std::pair<long, long> cell_of(Complex x) const {
    return {static_cast<long>(std::floor(x.real() / cell_)),
            static_cast<long>(std::floor(x.imag() / cell_))};
  }
  static std::uint64_t key(long a, long b) {
    return (static_cast<std::uint64_t>(a) << 32) ^ (static_cast<std::uint64_t>(b) & 0xffffffffu);
  }

  double tol_;
  double cell_;
  std::vector<Complex> points_;
  std::unordered_map<std::uint64_t, std::vector<long>> cells_;
};

inline double canonical_angle(Complex x) {
  if (std::abs(x) < 1e-14) return 0.0;
  double a = std::arg(x);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi - 1e-12) a = 0.0;
  return a;
}

}  // namespace detail

/// Canonical ordering: by angle in [0, 2pi) (quantized at 1e-9), then radius.
inline void sort_canonical(std::vector<Complex>& pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    const double qa = std::round(detail::canonical_angle(a) * 1e9);
    const double qb = std::round(detail::canonical_angle(b) * 1e9);
    if (qa != qb) return qa < qb;
    return std::abs(a) < std::abs(b);
  });
}

struct OrbitOptions {
  double dedup_tol = 1e-9;
  int max_word_length = 256;
};

/// Orbit of `base` under the triangle group, restricted to |x| <= radius.
///
/// Breadth-first search over group elements by right multiplication with the
/// generators and their inverses. An element is expanded while its image of u
/// lies within radius + d(base, u) + perimeter of the triangle; tiles meeting a
/// convex ball are edge-connected, so this reaches every orbit point in the ball.
inline std::vector<Complex> orbit(const TriangleGroupData& group, Complex base, double radius,
                                  const OrbitOptions& opts = {}) {
  if (!(radius > 0.0 && radius < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "orbit radius must lie in (0, 1)");
  }
  if (std::abs(base) >= 1.0) throw Error(ErrorCode::InvalidArgument, "base outside the disc");
  const double perimeter = hyperbolic_distance(group.u, group.v) +
                           hyperbolic_distance(group.v, group.w) +
                           hyperbolic_distance(group.u, group.w);
  const double explore =
      hyperbolic_radius(radius) + hyperbolic_distance(base, group.u) + perimeter + 1e-9;

  // A generic point with trivial stabilizer identifies group elements.
  const Complex probe = (group.u + group.v + group.w) / 3.0 + Complex(0.0, 1e-3);
  detail::PointSet elements(1e-9);
  detail::PointSet result(opts.dedup_tol);

  const GroupElement letters[6] = {group.gen_u, group.gen_u.inverse(), group.gen_v,
                                   group.gen_v.inverse(), group.gen_w, group.gen_w.inverse()};
  std::vector<GroupElement> frontier{GroupElement::identity()};
  elements.insert(mobius_apply(GroupElement::identity(), probe));
  for (int depth = 0; !frontier.empty(); ++depth) {
    for (const auto& g : frontier) {
      const Complex y = mobius_apply(g, base);
      if (std::abs(y) <= radius) result.insert(y);
    }
    if (depth == opts.max_word_length) {
      throw Error(ErrorCode::BudgetExceeded,
                  "orbit search exceeded the word-length budget of " +
                      std::to_string(opts.max_word_length));
    }
    std::vector<GroupElement> next;
    for (const auto& g : frontier) {
      for (const auto& s : letters) {
        const GroupElement h = g * s;
        if (hyperbolic_distance(Complex(0.0, 0.0), mobius_apply(h, group.u)) > explore) continue;
        if (elements.insert(mobius_apply(h, probe)).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Complex> pts = result.points();
  sort_canonical(pts);
  return pts;
}

/// The elements rho_u^m rho_v^l, m = 0..p-1, l in {1, q-1}.
inline std::vector<GroupElement> edge_corona_elements(const TriangleGroupData& group) {
  std::vector<GroupElement> out;
  GroupElement um = GroupElement::identity();
  GroupElement v_last = GroupElement::identity();
  for (int l = 0; l < group.q - 1; ++l) v_last = v_last * group.gen_v;
  for (int m = 0; m < group.p; ++m) {
    out.push_back(um * group.gen_v);
    out.push_back(um * v_last);
    um = um * group.gen_u;
  }
  return out;
}

/// Closed-form edge corona of u, canonically ordered.
inline std::vector<Complex> edge_corona(const TriangleGroupData& group) {
  detail::PointSet set(1e-9);
  for (const auto& g : edge_corona_elements(group)) set.insert(mobius_apply(g, group.u));
  std::vector<Complex> pts = set.points();
  sort_canonical(pts);
  return pts;
}

/// Largest Euclidean distance between angularly consecutive points.
inline double max_consecutive_gap(std::vector<Complex> pts) {
  sort_canonical(pts);
  double gap = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    gap = std::max(gap, std::abs(pts[(i + 1) % pts.size()] - pts[i]));
  }
  return gap;
}

/// Orbit of u by stepping through edge coronas: x = g(u) has neighbours g c(u)
/// for the corona elements c. Complete within a ball about u whenever the
/// corona is the full Dirichlet adjacency (a geodesic from u to any orbit point
/// in the ball only crosses cells whose centres lie in the ball).
inline std::vector<Complex> orbit_by_corona(const TriangleGroupData& group, double radius,
                                            const OrbitOptions& opts = {}) {
  if (!(radius > 0.0 && radius < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "orbit radius must lie in (0, 1)");
  }
  const auto steps = edge_corona_elements(group);
  detail::PointSet pts(opts.dedup_tol);
  pts.insert(group.u);
  std::vector<GroupElement> frontier{GroupElement::identity()};
  for (int depth = 0; !frontier.empty(); ++depth) {
    if (depth == opts.max_word_length) {
      throw Error(ErrorCode::BudgetExceeded, "corona orbit search exceeded the depth budget");
    }
    std::vector<GroupElement> next;
    for (const auto& g : frontier) {
      for (const auto& c : steps) {
        const GroupElement h = g * c;
        const Complex y = mobius_apply(h, group.u);
        if (std::abs(y) > radius) continue;
        if (pts.insert(y).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Complex> out = pts.points();
  sort_canonical(out);
  return out;
}

// ---------------------------------------------------------------------------
// Dirichlet regions. Bisectors are straight lines in the Klein model, so the
// region is a convex polygon obtained by half-plane clipping.

struct DirichletOptions {
  double edge_tol = 1e-7;     // minimal Klein length for a shared edge
  double contact_tol = 1e-9;  // bisector-through-vertex tolerance
  int max_doublings = 6;
  OrbitOptions orbit{};
};

struct DirichletRegion {
  Complex base;
  std::vector<Complex> vertices;      // Poincare coordinates, anticlockwise
  std::vector<Complex> edge_sources;  // orbit point whose bisector carries edge i (v_i -> v_i+1)
  std::vector<Complex> vertex_contacts;  // bisectors touching only at a vertex
  double orbit_radius = 0.0;          // Euclidean radius of the orbit patch used
  double circumradius = 0.0;          // hyperbolic
};

namespace detail {

struct Hyperboloid {
  double t, x, y;
};

inline Hyperboloid to_hyperboloid(Complex p) {
  const double n = std::norm(p);
  const double f = 1.0 / (1.0 - n);
  return {(1.0 + n) * f, 2.0 * p.real() * f, 2.0 * p.imag() * f};
}

inline Complex klein_of(Complex p) { return 2.0 * p / (1.0 + std::norm(p)); }

inline Complex poincare_of_klein(Complex k) {
  return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(k))));
}

struct KleinVertex {
  Complex k;
  long tag;  // source of the edge starting at this vertex, -1 for the box
};

// Half-plane a + b.re*k.re + b.im*k.im >= 0.
inline std::vector<KleinVertex> clip(const std::vector<KleinVertex>& poly, double a, Complex b,
                                     long tag) {
  auto f = [&](Complex k) { return a + b.real() * k.real() + b.imag() * k.imag(); };
  std::vector<KleinVertex> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& P = poly[i];
    const auto& Q = poly[(i + 1) % n];
    const double fp = f(P.k);
    const double fq = f(Q.k);
    const bool pin = fp >= 0.0;
    const bool qin = fq >= 0.0;
    if (pin) out.push_back(P);
    if (pin != qin) {
      const double t = fp / (fp - fq);
      const Complex I = P.k + t * (Q.k - P.k);
      out.push_back({I, pin ? tag : P.tag});
    }
  }
  return out;
}

}  // namespace detail

/// Dirichlet region of `base` from an orbit patch that is doubled in
/// hyperbolic radius until it certifiably contains every contributing point
/// (orbit radius >= 2 x circumradius of the computed region).
inline DirichletRegion dirichlet_region(const TriangleGroupData& group, Complex base,
                                        const DirichletOptions& opts = {}) {
  const auto B = detail::to_hyperboloid(base);
  double rho = 2.0 * group.L + 1.0;
  for (int attempt = 0; attempt <= opts.max_doublings; ++attempt, rho *= 1.5) {
    const double radius = std::min(euclidean_radius(rho), 1.0 - 1e-12);
    const auto pts = orbit(group, base, radius, opts.orbit);
    std::vector<detail::KleinVertex> poly = {{Complex(-1.5, -1.5), -1},
                                             {Complex(1.5, -1.5), -1},
                                             {Complex(1.5, 1.5), -1},
                                             {Complex(-1.5, 1.5), -1}};
    std::vector<long> sources;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::abs(pts[i] - base) <= 1e-9) continue;
      const auto X = detail::to_hyperboloid(pts[i]);
      // <Y, X - B> >= 0 with Minkowski form t t' - x x' - y y', Y = (1, k).
      const double a = X.t - B.t;
      const Complex b(-(X.x - B.x), -(X.y - B.y));
      const double scale = std::hypot(a, std::abs(b));
      poly = detail::clip(poly, a / scale, b / scale, static_cast<long>(i));
    }
    bool bounded = !poly.empty();
    for (const auto& v : poly) bounded = bounded && v.tag >= 0 && std::abs(v.k) < 1.0;
    if (!bounded) continue;

    DirichletRegion region;
    region.base = base;
    region.orbit_radius = radius;
    const std::size_t n = poly.size();
    std::vector<bool> has_edge(pts.size(), false);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex a = poly[i].k;
      const Complex b = poly[(i + 1) % n].k;
      if (std::abs(b - a) <= opts.edge_tol) continue;
      region.vertices.push_back(detail::poincare_of_klein(a));
      region.edge_sources.push_back(pts[poly[i].tag]);
      has_edge[poly[i].tag] = true;
    }
    for (const auto& v : region.vertices) {
      region.circumradius = std::max(region.circumradius, hyperbolic_distance(base, v));
    }
    if (hyperbolic_radius(radius) < 2.0 * region.circumradius + 1e-6) continue;
    // Points equidistant to a vertex that carry no edge touch only at a vertex.
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (has_edge[i] || std::abs(pts[i] - base) <= 1e-9) continue;
      for (const auto& v : region.vertices) {
        if (std::abs(hyperbolic_distance(v, pts[i]) - hyperbolic_distance(v, base)) <=
            opts.contact_tol * (1.0 + hyperbolic_distance(v, base))) {
          region.vertex_contacts.push_back(pts[i]);
          break;
        }
      }
    }
    return region;
  }
  throw Error(ErrorCode::BudgetExceeded,
              "Dirichlet region not certified within the orbit-radius budget");
}

/// Brute-force edge corona: orbit points whose bisector with `base` carries an
/// edge of the Dirichlet region of `base`. Vertex-only contacts are excluded.
inline std::vector<Complex> dirichlet_corona(const TriangleGroupData& group, Complex base,
                                             const DirichletOptions& opts = {}) {
  const auto region = dirichlet_region(group, base, opts);
  detail::PointSet set(1e-9);
  for (const auto& x : region.edge_sources) set.insert(x);
  std::vector<Complex> pts = set.points();
  sort_canonical(pts);
  return pts;
}

}  // namespace lorentzfd
