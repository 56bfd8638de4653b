#pragma once

// The universal cover G of SU(1,1): elements carry a lifted argument phi of w.

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lorentzfd/disc.hpp"
#include "lorentzfd/error.hpp"

namespace lorentzfd {

/// (z, w, phi) with |z|^2 - |w|^2 = -1 and e^{i phi} = w/|w|.
struct CoverElement {
  Complex z{0.0, 0.0};
  Complex w{1.0, 0.0};
  double phi = 0.0;

  static CoverElement identity() { return {}; }

  GroupElement base() const { return {z, w}; }

  CoverElement inverse() const { return {-z, std::conj(w), -phi}; }
};

/// Group law; the correction term has positive real part so the principal
/// branch of arg is continuous.
inline CoverElement operator*(const CoverElement& a, const CoverElement& b) {
  return {std::conj(a.w) * b.z + a.z * b.w, std::conj(a.z) * b.z + a.w * b.w,
          a.phi + b.phi + std::arg(1.0 + std::conj(a.z) * b.z / (a.w * b.w))};
}

inline CoverElement cover_mul(const CoverElement& a, const CoverElement& b) { return a * b; }
inline CoverElement cover_inv(const CoverElement& g) { return g.inverse(); }

inline double max_abs_diff(const CoverElement& a, const CoverElement& b) {
  return std::max({std::abs(a.z - b.z), std::abs(a.w - b.w), std::abs(a.phi - b.phi)});
}

/// C^n = (0, (-1)^n, -n pi).
inline CoverElement central(long n) {
  return {Complex(0.0, 0.0), Complex(n % 2 == 0 ? 1.0 : -1.0, 0.0),
          -static_cast<double>(n) * kPi};
}

/// If g is central within `tol`, the exponent n with g = C^n.
inline std::optional<long> central_exponent(const CoverElement& g, double tol = 1e-9) {
  if (std::abs(g.z) > tol) return std::nullopt;
  const double n = -g.phi / kPi;
  const long r = std::lround(n);
  if (std::abs(n - r) > tol) return std::nullopt;
  if (max_abs_diff(central(r), g) > tol * (1.0 + std::abs(g.phi))) return std::nullopt;
  return r;
}

/// Lift of t -> rotation_about(x, t) starting at the identity.
inline CoverElement rotation_lift(Complex x, double t) {
  const CoverElement r0{Complex(0.0, 0.0), std::polar(1.0, -t / 2.0), -t / 2.0};
  if (x == Complex(0.0, 0.0)) return r0;
  const double n = 1.0 / std::sqrt(1.0 - std::norm(x));
  const CoverElement tx{x * n, Complex(n, 0.0), 0.0};
  return tx * r0 * tx.inverse();
}

/// phi of a*b obtained by continuing arg w along s -> a * (s z_b, w(s)), where
/// w(s) has modulus sqrt(1 + s^2|z_b|^2) and argument s phi_b. Independent of
/// the closed-form cocycle.
inline double path_lifted_phi(const CoverElement& a, const CoverElement& b, int steps = 4096) {
  double phi = a.phi;
  Complex prev = a.w;
  for (int i = 1; i <= steps; ++i) {
    const double s = static_cast<double>(i) / steps;
    const Complex zs = s * b.z;
    const Complex ws = std::polar(std::sqrt(1.0 + std::norm(zs)), s * b.phi);
    const Complex w = std::conj(a.z) * zs + a.w * ws;
    phi += std::arg(w / prev);
    prev = w;
  }
  return phi;
}

inline CoverElement pow(const CoverElement& g, long n) {
  CoverElement result = CoverElement::identity();
  CoverElement base = n < 0 ? g.inverse() : g;
  for (unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n); e != 0; e >>= 1) {
    if (e & 1u) result = result * base;
    base = base * base;
  }
  return result;
}

/// The integer mu with R_u(2pi/p) R_v(2pi/q) R_w(2pi/r) = C^mu.
inline long product_defect(const TriangleGroupData& group) {
  const CoverElement prod = rotation_lift(group.u, 2.0 * kPi / group.p) *
                            rotation_lift(group.v, 2.0 * kPi / group.q) *
                            rotation_lift(group.w, 2.0 * kPi / group.r);
  const auto mu = central_exponent(prod, 1e-9);
  if (!mu) {
    throw Error(ErrorCode::InconsistentProduct,
                "product of canonical rotation lifts is not central");
  }
  return *mu;
}

inline long mod_floor(long a, long k) {
  const long r = a % k;
  return r < 0 ? r + k : r;
}

/// Inverse of a modulo k, or nullopt if gcd(a, k) != 1.
inline std::optional<long> inverse_mod(long a, long k) {
  if (k == 1) return 0;
  long t = 0, new_t = 1, r = k, new_r = mod_floor(a, k);
  while (new_r != 0) {
    const long q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) return std::nullopt;
  return mod_floor(t, k);
}

struct LevelConfig {
  int k = 1;
  int p_tri = 0;
  int p_lcm = 0;
  int lambda = 0;  // 0 when 3 | k
  long x = 0, y = 0, z = 0;  // central corrections mod k
  long mu = 0;
};

struct LevelLift {
  TriangleGroupData group;
  LevelConfig config;
  CoverElement gu, gv, gw;  // R(2pi/p) C^x, R(2pi/q) C^y, R(2pi/r) C^z
  CoverElement D;           // R_u(2pi k / p_lcm)
  CoverElement t;           // R_u(2pi k / 3), generator of the lifted (C_3)^k
};

inline CoverElement stabilizer_generator(int k, int p_lcm) {
  return rotation_lift(Complex(0.0, 0.0), 2.0 * kPi * k / p_lcm);
}

/// Level-k lift of a triangle group. The corrections solve
/// p x = q y = r z = -1 and x + y + z = -mu (mod k).
inline LevelLift lift_level(const TriangleGroupData& group, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  const long p = group.p, q = group.q, r = group.r;
  for (long n : {p, q, r}) {
    if (std::gcd(n, static_cast<long>(k)) != 1) {
      throw Error(ErrorCode::NoLevelLift,
                  "no level-" + std::to_string(k) + " lift exists: gcd(k, " + std::to_string(n) +
                      ") != 1" + (n == 3 ? " (k divisible by 3)" : ""));
    }
  }
  if ((p * q * r - p * q - q * r - r * p) % k != 0) {
    throw Error(ErrorCode::NoLevelLift, "no level-" + std::to_string(k) +
                                            " lift exists: k does not divide pqr-pq-qr-rp");
  }
  LevelLift out;
  out.group = group;
  auto& c = out.config;
  c.k = k;
  c.p_tri = group.p;
  c.p_lcm = std::lcm(group.p, 3);
  c.lambda = k % 3 == 1 ? 1 : (k % 3 == 2 ? 2 : 0);
  c.mu = product_defect(group);
  c.x = mod_floor(-*inverse_mod(p, k), k);
  c.y = mod_floor(-*inverse_mod(q, k), k);
  c.z = mod_floor(-*inverse_mod(r, k), k);
  if (mod_floor(c.x + c.y + c.z + c.mu, k) != 0) {
    throw Error(ErrorCode::NoLevelLift,
                "no level-" + std::to_string(k) + " lift exists: x+y+z != -mu (mod k)");
  }
  out.gu = rotation_lift(group.u, 2.0 * kPi / p) * central(c.x);
  out.gv = rotation_lift(group.v, 2.0 * kPi / q) * central(c.y);
  out.gw = rotation_lift(group.w, 2.0 * kPi / r) * central(c.z);
  out.D = stabilizer_generator(k, c.p_lcm);
  out.t = rotation_lift(group.u, 2.0 * kPi * k / 3.0);
  return out;
}

/// True if g = C^{kn} for some n (within tol).
inline bool in_level_centre(const CoverElement& g, int k, double tol = 1e-9) {
  const auto n = central_exponent(g, tol);
  return n && mod_floor(*n, k) == 0;
}

enum class Gen { U, V, W, D, C };

struct Syllable {
  Gen gen;
  long exp;
};

using Word = std::vector<Syllable>;

inline const char* to_string(Gen g) {
  switch (g) {
    case Gen::U: return "u";
    case Gen::V: return "v";
    case Gen::W: return "w";
    case Gen::D: return "D";
    case Gen::C: return "C";
  }
  return "?";
}

inline std::string to_string(const Word& word) {
  if (word.empty()) return "e";
  std::string s;
  for (const auto& syl : word) {
    if (!s.empty()) s += ' ';
    s += to_string(syl.gen);
    s += '^';
    s += std::to_string(syl.exp);
  }
  return s;
}

inline CoverElement lift_word(const Word& word, const LevelLift& lift) {
  CoverElement g = CoverElement::identity();
  for (const auto& syl : word) {
    switch (syl.gen) {
      case Gen::U: g = g * pow(lift.gu, syl.exp); break;
      case Gen::V: g = g * pow(lift.gv, syl.exp); break;
      case Gen::W: g = g * pow(lift.gw, syl.exp); break;
      case Gen::D: g = g * pow(lift.D, syl.exp); break;
      case Gen::C: g = g * central(syl.exp); break;
    }
  }
  return g;
}

}  // namespace lorentzfd
