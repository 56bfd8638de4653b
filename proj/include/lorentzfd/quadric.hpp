#pragma once

// The signature (2,2) form, the cone over SU(1,1), lifted tangent half-spaces,
// the slab and the prisms Q_x.

#include <cmath>

#include "lorentzfd/cover.hpp"
#include "lorentzfd/vec3.hpp"

namespace lorentzfd {

/// A point of the universal cover of the cone: |z| < |w|, phi a lift of arg w.
struct ConePoint {
  Complex z{0.0, 0.0};
  Complex w{1.0, 0.0};
  double phi = 0.0;
};

/// Slab chart (x1, x2, s) -> (x1 + i x2, 1 + i s) on the principal sheet.
inline ConePoint from_chart(const Vec3& x) {
  const Complex w(1.0, x.z);
  return {Complex(x.x, x.y), w, std::atan(x.z)};
}

inline Vec3 to_chart(const ConePoint& p) {
  const double r = p.w.real();
  return {p.z.real() / r, p.z.imag() / r, p.w.imag() / r};
}

inline ConePoint from_cover(const CoverElement& g) { return {g.z, g.w, g.phi}; }

/// g * p, extending the group law to the cone by linearity.
inline ConePoint operator*(const CoverElement& g, const ConePoint& p) {
  return {std::conj(g.w) * p.z + g.z * p.w, std::conj(g.z) * p.z + g.w * p.w,
          g.phi + p.phi + std::arg(1.0 + std::conj(g.z) * p.z / (g.w * p.w))};
}

/// p * g.
inline ConePoint operator*(const ConePoint& p, const CoverElement& g) {
  return {std::conj(p.w) * g.z + p.z * g.w, std::conj(p.z) * g.z + p.w * g.w,
          p.phi + g.phi + std::arg(1.0 + std::conj(p.z) * g.z / (p.w * g.w))};
}

/// <(z1,w1),(z2,w2)> = Re(z1 conj(z2) - w1 conj(w2)).
inline double pairing_form(Complex z1, Complex w1, Complex z2, Complex w2) {
  return (z1 * std::conj(z2) - w1 * std::conj(w2)).real();
}
inline double pairing_form(const ConePoint& a, const ConePoint& b) {
  return pairing_form(a.z, a.w, b.z, b.w);
}
inline double pairing_form(const CoverElement& a, const ConePoint& b) {
  return pairing_form(a.z, a.w, b.z, b.w);
}
inline double pairing_form(const CoverElement& a, const CoverElement& b) {
  return pairing_form(a.z, a.w, b.z, b.w);
}

enum class Side { I, H, E };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::I: return "I";
    case Side::H: return "H";
    case Side::E: return "E";
  }
  return "?";
}

struct HalfSpaceConstraint {
  CoverElement g;
  Side side = Side::I;
};

inline bool in_sheet_window(double phi) { return std::abs(phi) < kPi / 2.0; }

/// I_g: Re w(g^-1 p) >= 1 on the sheet |phi| < pi/2; H_g is the complement of
/// the interior of I_g; E_g their common boundary.
inline bool membership(const HalfSpaceConstraint& c, const ConePoint& p, double tol = 0.0) {
  const ConePoint h = c.g.inverse() * p;
  const double val = h.w.real();
  const bool window = in_sheet_window(h.phi);
  switch (c.side) {
    case Side::I: return window && val >= 1.0 - tol;
    case Side::H: return !(window && val > 1.0 + tol);
    case Side::E: return window && std::abs(val - 1.0) <= tol;
  }
  return false;
}

inline double slab_half_width(int k, int p_lcm) { return std::tan(kPi * k / (2.0 * p_lcm)); }

inline bool slab_membership(const ConePoint& p, const LevelConfig& cfg, double tol = 1e-10) {
  return std::abs(p.w.real() - 1.0) <= tol &&
         std::abs(p.w.imag()) < slab_half_width(cfg.k, cfg.p_lcm) &&
         std::abs(p.phi - std::arg(p.w)) <= tol && std::abs(p.z) < std::abs(p.w);
}

struct PrismResult {
  bool inside = true;
  double slack = INFINITY;  // min |Re w - 1| over sheet-active translates
};

/// p in Q_x = intersection of H_{g D^n}. Only translates with |phi| < pi/2 can
/// exclude p, so the window of half-width N is centred on the n that brings
/// phi(D^-n g^-1 p) nearest 0 and re-evaluated at 2N as a stabilization check.
inline PrismResult prism_membership(Complex x, const CoverElement& g_lift, const ConePoint& p,
                                    const LevelConfig& cfg, int N = 0) {
  if (std::abs(mobius_apply(g_lift.base(), Complex(0.0, 0.0)) - x) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "prism lift does not send u to x");
  }
  if (N <= 0) N = 2 * cfg.p_lcm;
  const double beta = kPi * cfg.k / cfg.p_lcm;
  const ConePoint q = g_lift.inverse() * p;
  const long n0 = std::lround(-q.phi / beta);
  auto eval = [&](int half) {
    PrismResult r;
    for (long n = n0 - half; n <= n0 + half; ++n) {
      // D^-n q = (e^{-in beta} z, e^{in beta} w, phi + n beta)
      const Complex w = std::polar(1.0, n * beta) * q.w;
      const double phi = q.phi + n * beta;
      if (!in_sheet_window(phi)) continue;
      r.slack = std::min(r.slack, std::abs(w.real() - 1.0));
      if (w.real() > 1.0) r.inside = false;
    }
    return r;
  };
  const PrismResult a = eval(N);
  const PrismResult b = eval(2 * N);
  if (a.inside != b.inside) {
    throw Error(ErrorCode::StabilizationFailure,
                "prism membership changed when the window doubled to " + std::to_string(2 * N));
  }
  return a;
}

struct CylinderBounds {
  double r_in;
  double r_out;
};

inline CylinderBounds cylinder_bounds(Complex x, const LevelConfig& cfg) {
  const double r_in = std::sqrt(1.0 - std::norm(x));
  return {r_in, r_in / std::cos(kPi * cfg.k / (2.0 * cfg.p_lcm))};
}

}  // namespace lorentzfd
