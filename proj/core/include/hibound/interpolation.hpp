#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "hibound/error.hpp"

namespace hibound {

enum class Spline : std::uint8_t { cubic = 0, linear = 1 };
enum class Scheme : std::uint8_t { multidim = 0, seq1d = 1 };

/// The (spline, scheme) pair used on one interpolation level.
struct LevelConfig {
  Spline spline = Spline::cubic;
  Scheme scheme = Scheme::multidim;

  /// Position in the fixed tie-break order: cubic before linear, multidim before seq1d.
  constexpr int rank() const { return static_cast<int>(spline) * 2 + static_cast<int>(scheme); }
  static constexpr LevelConfig from_rank(int r) {
    return {static_cast<Spline>(r / 2), static_cast<Scheme>(r % 2)};
  }

  friend constexpr bool operator==(LevelConfig, LevelConfig) = default;
};

inline constexpr int kMaxLevels = 4;
inline constexpr std::array<LevelConfig, 4> kLevelConfigs = {
    LevelConfig::from_rank(0), LevelConfig::from_rank(1), LevelConfig::from_rank(2),
    LevelConfig::from_rank(3)};

std::string to_string(LevelConfig config);

/// Per-level configuration; level l (1..4) is stored at index l-1.
struct InterpConfig {
  std::array<LevelConfig, kMaxLevels> levels{};

  static InterpConfig uniform(LevelConfig c) { return {{c, c, c, c}}; }

  LevelConfig at(int level) const { return levels[static_cast<std::size_t>(level - 1)]; }
  LevelConfig& at(int level) { return levels[static_cast<std::size_t>(level - 1)]; }

  /// One byte per level: bit 0 = spline, bit 1 = scheme.
  std::array<std::uint8_t, kMaxLevels> serialize() const;
  static InterpConfig parse(std::span<const std::uint8_t, kMaxLevels> bytes);

  friend bool operator==(const InterpConfig&, const InterpConfig&) = default;
};

/// Known samples around a midpoint, at stencil offsets (-3, -1, +1, +3) in
/// units of half the current interpolation stride.
template <class T>
struct StencilSamples {
  std::array<T, 4> value{};
  std::array<bool, 4> present{};
};

/// A prediction with the number of samples that produced it (cubic = 4,
/// quadratic = 3, linear or linear extrapolation = 2, copy = 1).
template <class T>
struct Interpolated {
  T value{};
  int order = 0;
};

// Stencils are written as a sample plus weighted differences so that equal
// samples reproduce exactly.
template <class T>
constexpr T interp_cubic(T a, T b, T c, T d) {
  return (b + c) / 2 + ((b - a) + (c - d)) / 16;
}
// Quadratic through offsets (-1, +1, +3).
template <class T>
constexpr T interp_quad_right(T b, T c, T d) {
  return c + (3 * (b - c) - (d - c)) / 8;
}
// Quadratic through offsets (-3, -1, +1).
template <class T>
constexpr T interp_quad_left(T a, T b, T c) {
  return b + (3 * (c - b) - (a - b)) / 8;
}
template <class T>
constexpr T interp_linear(T b, T c) {
  return (b + c) / 2;
}
// Linear extrapolation from offsets (-3, -1) to 0.
template <class T>
constexpr T extrap_linear(T a, T b) {
  return b + (b - a) / 2;
}

template <class T>
Interpolated<T> interpolate_1d(const StencilSamples<T>& s, Spline spline) {
  const auto& v = s.value;
  const auto& p = s.present;
  if (p[1] && p[2]) {
    if (spline == Spline::cubic) {
      if (p[0] && p[3]) return {interp_cubic(v[0], v[1], v[2], v[3]), 4};
      if (p[3]) return {interp_quad_right(v[1], v[2], v[3]), 3};
      if (p[0]) return {interp_quad_left(v[0], v[1], v[2]), 3};
    }
    return {interp_linear(v[1], v[2]), 2};
  }
  if (p[1]) {
    if (p[0]) return {extrap_linear(v[0], v[1]), 2};
    return {v[1], 1};
  }
  if (p[2]) {
    if (p[3]) return {extrap_linear(v[3], v[2]), 2};
    return {v[2], 1};
  }
  fail(ErrorCode::invalid_argument, "interpolation needs a sample adjacent to the midpoint");
}

/// Averages the per-axis predictions that reach the highest spline order;
/// lower-order predictions are discarded.
template <class T>
T combine_axis_predictions(std::span<const Interpolated<T>> parts) {
  int best = 0;
  for (const auto& p : parts) best = p.order > best ? p.order : best;
  // Deviations from the first kept prediction, so equal inputs average exactly.
  T base = 0, deviation = 0;
  int count = 0;
  for (const auto& p : parts) {
    if (p.order != best) continue;
    if (count++ == 0) {
      base = p.value;
    } else {
      deviation += p.value - base;
    }
  }
  return count == 1 ? base : base + deviation / static_cast<T>(count);
}

}  // namespace hibound
