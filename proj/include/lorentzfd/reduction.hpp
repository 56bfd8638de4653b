#pragma once

// Corona reduction: the bounds l-(t), f(s,t) and the inequality that makes the
// edge corona sufficient, specialised to the two series.

#include <cmath>
#include <limits>
#include <random>

#include "lorentzfd/constraints.hpp"
#include "lorentzfd/disc.hpp"
#include "lorentzfd/quadric.hpp"
#include "lorentzfd/series.hpp"

namespace lorentzfd {

/// l+-(t) = 1/tanh L +- sqrt(1/t^2 - cos^2(pi/q)) / (sinh L sin(pi/q)).
template <typename T>
T ell(T t, int sign, T L, int q) {
  const T pi = std::acos(T(-1));
  const T c = std::cos(pi / q);
  const T rad = T(1) / (t * t) - c * c;
  if (rad < T(0)) {
    if (rad > -T(64) * std::numeric_limits<T>::epsilon()) return T(1) / std::tanh(L);
    throw Error(ErrorCode::DomainError, "ell: 1/t^2 < cos^2(pi/q)");
  }
  return T(1) / std::tanh(L) + T(sign) * std::sqrt(rad) / (std::sinh(L) * std::sin(pi / q));
}

inline double ell(double t, int sign, const TriangleGroupData& g) {
  return ell<double>(t, sign, g.L, g.q);
}

/// f(s,t) = 1/s - sec(pi k / 2p) / t * sqrt(1 - s^2) / s.
template <typename T>
T f_bound(T s, T t, int k, int p_lcm) {
  if (!(s > T(0) && s <= T(1))) throw Error(ErrorCode::DomainError, "f_bound: s outside (0,1]");
  if (t < T(1)) throw Error(ErrorCode::DomainError, "f_bound: t < 1");
  const T pi = std::acos(T(-1));
  const T sec = T(1) / std::cos(pi * k / (T(2) * p_lcm));
  return T(1) / s - sec / t * std::sqrt(T(1) - s * s) / s;
}

/// Closed forms in alpha = pi/2p for q = r = 3.
template <typename T>
struct AlphaForms {
  T alpha, R, ell_minus, rhs, d_squared, sinh_L, chain_lhs, chain_rhs;
};

template <typename T>
AlphaForms<T> alpha_forms(int p_tri, int k, int p_lcm) {
  const T pi = std::acos(T(-1));
  AlphaForms<T> a;
  a.alpha = pi / (T(2) * p_tri);
  const T ca = std::cos(a.alpha), sa = std::sin(a.alpha);
  const T c2 = std::cos(T(2) * a.alpha), c3 = std::cos(T(3) * a.alpha);
  const T ck = std::cos(pi * k / (T(2) * p_lcm));
  a.R = ca / c2 * std::sqrt(c3 / ca);
  a.ell_minus = (ca - sa * std::sqrt(T(4) * ck * ck - T(1))) * std::sqrt(ca / c3);
  a.rhs = (c2 - sa) / ca * std::sqrt(ca / c3);
  a.d_squared = c3 / ca;
  a.sinh_L = T(1) / std::sqrt(T(3)) / sa * std::sqrt(c3 / ca);
  a.chain_lhs = T(2) * ck;
  a.chain_rhs = T(1) / std::sin(pi / T(4) - a.alpha / T(2));
  return a;
}

struct ReductionReport {
  Series series = Series::E;
  int k = 0;
  double alpha = 0.0;
  double R = 0.0;
  double tanh_L = 0.0;
  double ell_minus_at_sec = 0.0;      // from the l- formula
  double ell_minus_closed = 0.0;      // from the alpha closed form
  double rhs = 0.0;                   // (1 - sqrt(1 - R^2)) / R
  double rhs_closed = 0.0;
  bool orbit_premise = false;
  std::size_t orbit_points_checked = 0;
  double second_shell_radius = 0.0;   // smallest |x| outside corona and u
  bool holds = false;
  double margin = 0.0;
};

/// Verifies l-(sec(pi k/2p)) <= (1 - sqrt(1-R^2))/R with
/// R = cos a / cos 2a * sqrt(cos 3a / cos a), and that no orbit point other
/// than u and the edge corona lies in |x| < R.
inline ReductionReport check_theorem71(Series series, int k, double premise_radius = 0.999) {
  check_admissible(k);
  const LevelLift lift = series_lift(series, k);
  const auto& g = lift.group;
  const auto& cfg = lift.config;
  using LD = long double;
  const auto forms = alpha_forms<LD>(cfg.p_tri, k, cfg.p_lcm);

  ReductionReport rep;
  rep.series = series;
  rep.k = k;
  rep.alpha = static_cast<double>(forms.alpha);
  rep.R = static_cast<double>(forms.R);
  rep.tanh_L = std::tanh(g.L);
  const LD L = std::acosh(static_cast<LD>(triangle_cosh_length(g.p, g.q, g.r)));
  const LD pi = std::acos(LD(-1));
  const LD sec = LD(1) / std::cos(pi * k / (LD(2) * cfg.p_lcm));
  rep.ell_minus_at_sec = static_cast<double>(ell<LD>(sec, -1, L, g.q));
  rep.ell_minus_closed = static_cast<double>(forms.ell_minus);
  rep.rhs = static_cast<double>((LD(1) - std::sqrt(LD(1) - forms.R * forms.R)) / forms.R);
  rep.rhs_closed = static_cast<double>(forms.rhs);

  const auto corona = edge_corona(g);
  const auto pts = orbit_by_corona(g, premise_radius);
  rep.orbit_points_checked = pts.size();
  rep.second_shell_radius = 1.0;
  for (const auto& x : pts) {
    if (std::abs(x) < 1e-12) continue;
    bool in_corona = false;
    for (const auto& c : corona) in_corona = in_corona || std::abs(c - x) < 1e-9;
    if (!in_corona) rep.second_shell_radius = std::min(rep.second_shell_radius, std::abs(x));
  }
  rep.orbit_premise = rep.R >= rep.tanh_L && rep.second_shell_radius >= rep.R - 1e-9;
  rep.margin = rep.rhs - rep.ell_minus_at_sec;
  rep.holds = rep.orbit_premise && rep.ell_minus_at_sec <= rep.rhs && rep.ell_minus_at_sec <= 1.0;
  return rep;
}

struct EquivalenceStats {
  std::size_t samples = 0;        // off-boundary points compared
  std::size_t agree = 0;
  std::size_t excluded = 0;       // near a boundary
  std::size_t inside = 0;         // in both sets
  double agreement() const { return samples ? static_cast<double>(agree) / samples : 1.0; }
};

/// Lifts in Gamma_1 of the corona elements rho_u^m rho_v^l.
inline std::vector<CoverElement> corona_lifts(const LevelLift& lift) {
  std::vector<CoverElement> out;
  for (int m = 0; m < lift.group.p; ++m) {
    for (int l = 1; l < lift.group.q; ++l) {
      out.push_back(pow(lift.gu, m) * pow(lift.gv, l));
    }
  }
  return out;
}

struct CoronaMembership {
  bool inside = true;  // in the slab minus the union of the corona prisms
  double slack = INFINITY;
};

inline CoronaMembership corona_domain_membership(const std::vector<CoverElement>& lifts,
                                                 const ConePoint& p, const LevelConfig& cfg) {
  CoronaMembership r;
  for (const auto& h : lifts) {
    const Complex x = mobius_apply(h.base(), Complex(0.0, 0.0));
    const auto q = prism_membership(x, h, p, cfg);
    r.slack = std::min(r.slack, q.slack);
    if (q.inside) r.inside = false;
  }
  return r;
}

/// Compares F_e (constraint description) and F_E (slab minus corona prisms)
/// on seeded uniform samples of the slab inside the cone.
inline EquivalenceStats sample_equivalence(const ConstraintSet& cs, std::size_t n_samples,
                                           std::uint64_t seed = 1, double band = 1e-6) {
  const auto& cfg = cs.lift.config;
  const auto lifts = corona_lifts(cs.lift);
  const double t = slab_half_width(cfg.k, cfg.p_lcm);
  const double r = std::sqrt(1.0 + t * t);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-r, r), us(-t, t);
  EquivalenceStats st;
  const std::size_t max_draws = 100 * n_samples + 1000;
  for (std::size_t draw = 0; st.samples < n_samples && draw < max_draws; ++draw) {
    const Vec3 x{ux(rng), ux(rng), us(rng)};
    if (x.x * x.x + x.y * x.y >= 1.0 + x.z * x.z) continue;
    const ConePoint p = from_chart(x);
    const auto fe = fe_membership(cs, p);
    const auto fc = corona_domain_membership(lifts, p, cfg);
    if (std::min(fe.slack, fc.slack) < band || t - std::abs(x.z) < band) {
      ++st.excluded;
      continue;
    }
    ++st.samples;
    if (fe.inside == fc.inside) ++st.agree;
    if (fe.inside && fc.inside) ++st.inside;
  }
  return st;
}

}  // namespace lorentzfd
