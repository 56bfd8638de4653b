#pragma once

// The constraint description of F_e: the slab E_e cut by H_D, H_{D^-1} and
// the union groups {I_a_m, I_b_m[, I_c_m]}.

#include <cmath>
#include <string>
#include <vector>

#include "lorentzfd/quadric.hpp"
#include "lorentzfd/series.hpp"
#include "lorentzfd/vec3.hpp"

namespace lorentzfd {

enum class PReading { Tri, Lcm };

inline const char* to_string(PReading r) { return r == PReading::Tri ? "tri" : "lcm"; }

/// v -> coef . v + offset equals <pi(g), p> for the slab point p of chart v.
struct AffineFunctional {
  Vec3 coef;
  double offset = 0.0;
  double operator()(const Vec3& v) const { return dot(coef, v) + offset; }
};

/// Chart half-space n . x <= c.
struct HalfSpace {
  Vec3 n;
  double c = 0.0;
  double slack(const Vec3& x) const { return c - dot(n, x); }
};

struct LabeledConstraint {
  char family = 'a';  // 'a', 'b', 'c', or 'D' (H_D), 'd' (H_{D^-1})
  int m = 0;
  HalfSpaceConstraint constraint;
  AffineFunctional functional;
  HalfSpace half_space;

  std::string label() const {
    if (family == 'D') return "D";
    if (family == 'd') return "D^-1";
    return std::string(1, family) + "_" + std::to_string(m);
  }
};

struct ConstraintGroup {
  std::vector<int> members;  // indices into ConstraintSet::constraints
  bool is_union = false;
};

struct ConstraintSet {
  Series series = Series::E;
  PReading reading = PReading::Tri;
  LevelLift lift;
  CoverElement D;
  CoverElement a0;
  int rotation_p = 0;   // p-hat in R_u(pi / p-hat)
  int period = 0;       // T with a_{m+T} = a_m
  bool period_certified = false;
  double half_width = 0.0;  // tan(pi k / 2 p_lcm)
  std::vector<int> window;  // retained m
  std::vector<LabeledConstraint> constraints;
  std::vector<ConstraintGroup> groups;

  const LevelConfig& config() const { return lift.config; }
};

inline AffineFunctional linearize(const HalfSpaceConstraint& c) {
  const auto& g = c.g;
  return {{g.z.real(), g.z.imag(), -g.w.imag()}, -g.w.real()};
}

inline HalfSpace to_half_space(const HalfSpaceConstraint& c) {
  const AffineFunctional f = linearize(c);
  if (c.side == Side::H) return {-f.coef, 1.0 + f.offset};  // value >= -1
  return {f.coef, -1.0 - f.offset};                         // value <= -1
}

inline int lambda_of(int k) { return k % 3 == 1 ? 1 : 2; }

/// Exponent -2(lambda k + 2)/3 of C in a_0.
inline long a0_central_exponent(int k) {
  const long num = 2L * (lambda_of(k) * k + 2);
  if (num % 3 != 0) {
    throw Error(ErrorCode::InvalidArgument, "central exponent of a_0 is not integral");
  }
  return -num / 3;
}

namespace detail {

// Largest value of |n . x| over the cylinder |z| <= r, |s| <= t.
inline double cylinder_extent(const Vec3& n, double r, double t) {
  return std::hypot(n.x, n.y) * r + std::abs(n.z) * t;
}

}  // namespace detail

inline ConstraintSet series_constraints(Series series, int k, PReading reading) {
  ConstraintSet cs;
  cs.series = series;
  cs.reading = reading;
  cs.lift = series_lift(series, k);
  const auto& cfg = cs.lift.config;
  const auto& g = cs.lift.group;
  cs.D = cs.lift.D;
  cs.rotation_p = reading == PReading::Tri ? cfg.p_tri : cfg.p_lcm;
  const long exponent = 2L * lambda_of(k) * cs.rotation_p - (series == Series::E ? 1 : 2);
  cs.a0 = rotation_lift(g.v, 8.0 * kPi / 3.0) * pow(cs.D, exponent) * central(a0_central_exponent(k));
  cs.half_width = slab_half_width(k, cfg.p_lcm);

  const CoverElement rot = rotation_lift(g.u, kPi / cs.rotation_p);
  cs.period = 2 * cs.rotation_p;
  const CoverElement aT = pow(rot, cs.period) * cs.a0 * pow(rot, -cs.period);
  cs.period_certified = max_abs_diff(aT, cs.a0) < 1e-9;
  if (!cs.period_certified) {
    throw Error(ErrorCode::InvalidArgument, "conjugation period of a_m not certified");
  }

  auto add = [&](char family, int m, const CoverElement& el, Side side) {
    LabeledConstraint lc;
    lc.family = family;
    lc.m = m;
    lc.constraint = {el, side};
    lc.functional = linearize(lc.constraint);
    lc.half_space = to_half_space(lc.constraint);
    cs.constraints.push_back(lc);
    return static_cast<int>(cs.constraints.size()) - 1;
  };
  cs.groups.push_back({{add('D', 0, cs.D, Side::H)}, false});
  cs.groups.push_back({{add('d', 0, cs.D.inverse(), Side::H)}, false});

  const double r = std::sqrt(1.0 + cs.half_width * cs.half_width);
  for (int m = 0; m < cs.period; ++m) {
    const CoverElement am = pow(rot, m) * cs.a0 * pow(rot, -m);
    std::vector<CoverElement> fam{am, am * cs.D};
    if (series == Series::Z) fam.push_back(fam.back() * cs.D);
    // A member satisfied on the whole bounding cylinder makes the group vacuous.
    bool vacuous = false, all_empty = true;
    for (const auto& el : fam) {
      const HalfSpace hs = to_half_space({el, Side::I});
      const double ext = detail::cylinder_extent(hs.n, r, cs.half_width);
      if (hs.c >= ext) vacuous = true;
      if (hs.c >= -ext) all_empty = false;
    }
    if (all_empty) throw Error(ErrorCode::EmptyConstraintSet, "union group excludes the slab");
    if (vacuous) continue;
    ConstraintGroup grp;
    grp.is_union = true;
    const char names[3] = {'a', 'b', 'c'};
    for (std::size_t i = 0; i < fam.size(); ++i) grp.members.push_back(add(names[i], m, fam[i], Side::I));
    cs.groups.push_back(grp);
    cs.window.push_back(m);
  }
  return cs;
}

struct FeMembership {
  bool inside = true;
  double slack = INFINITY;  // min |Re w(g^-1 p) - 1| over sheet-active constraints
};

/// Membership in F_e from the half-space predicates on the cone.
inline FeMembership fe_membership(const ConstraintSet& cs, const ConePoint& p) {
  FeMembership r;
  if (!slab_membership(p, cs.config())) r.inside = false;
  for (const auto& grp : cs.groups) {
    bool any = false;
    for (int idx : grp.members) {
      const auto& c = cs.constraints[idx].constraint;
      const ConePoint h = c.g.inverse() * p;
      if (in_sheet_window(h.phi)) r.slack = std::min(r.slack, std::abs(h.w.real() - 1.0));
      any = any || membership(c, p);
    }
    if (!any) r.inside = false;
  }
  return r;
}

/// Membership in F_e from the linear chart inequalities.
inline bool fe_membership_linear(const ConstraintSet& cs, const Vec3& x, double tol = 1e-9) {
  if (std::abs(x.z) > cs.half_width + tol) return false;
  for (const auto& grp : cs.groups) {
    bool any = false;
    for (int idx : grp.members) any = any || cs.constraints[idx].half_space.slack(x) >= -tol;
    if (!any) return false;
  }
  return true;
}

/// Asserts that on the slab every constraint's sheet condition is inactive,
/// i.e. wherever Re w(g^-1 p) > 0 the lifted argument is principal. The slab
/// is probed on a deterministic grid inside the cone.
inline void assert_sheet_windows(const ConstraintSet& cs, int grid = 24) {
  const double t = cs.half_width;
  const double r = std::sqrt(1.0 + t * t);
  for (int is = 0; is <= 4; ++is) {
    const double s = -t + 2.0 * t * is / 4.0;
    for (int ix = 0; ix <= grid; ++ix) {
      for (int iy = 0; iy <= grid; ++iy) {
        const Vec3 x{-r + 2.0 * r * ix / grid, -r + 2.0 * r * iy / grid, s};
        if (x.x * x.x + x.y * x.y >= 1.0 + s * s) continue;
        const ConePoint p = from_chart(x);
        for (const auto& lc : cs.constraints) {
          const ConePoint h = lc.constraint.g.inverse() * p;
          if (h.w.real() <= 0.0) continue;
          if (std::abs(h.phi - std::arg(h.w)) > 1e-9) {
            throw Error(ErrorCode::SheetConditionActive,
                        "sheet condition of " + lc.label() + " active at chart point (" +
                            std::to_string(x.x) + ", " + std::to_string(x.y) + ", " +
                            std::to_string(x.z) + ")");
          }
        }
      }
    }
  }
}

}  // namespace lorentzfd
