#pragma once

// The two series Gamma(k+3,3,3)^k x (C_3)^k and Gamma(2k+3,3,3)^k x (C_3)^k.

#include <string>

#include "lorentzfd/cover.hpp"

namespace lorentzfd {

enum class Series { E, Z };

inline const char* to_string(Series s) { return s == Series::E ? "E" : "Z"; }

inline Series parse_series(const std::string& s) {
  if (s == "E" || s == "e") return Series::E;
  if (s == "Z" || s == "z") return Series::Z;
  throw Error(ErrorCode::InvalidArgument, "unknown series '" + s + "' (expected E or Z)");
}

inline void check_admissible(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (k % 3 == 0) {
    throw Error(ErrorCode::NoLevelLift, "k divisible by 3: no level-k lift exists");
  }
}

inline int series_p_tri(Series s, int k) { return s == Series::E ? k + 3 : 2 * k + 3; }

/// Singularity label: E_{4k+10} or Z_{4k+9}.
inline std::string singularity_label(Series s, int k) {
  return s == Series::E ? "E_" + std::to_string(4 * k + 10) : "Z_" + std::to_string(4 * k + 9);
}

inline LevelLift series_lift(Series s, int k) {
  check_admissible(k);
  return lift_level(build_triangle_group(series_p_tri(s, k), 3, 3), k);
}

}  // namespace lorentzfd
