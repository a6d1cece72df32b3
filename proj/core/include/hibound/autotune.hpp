#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hibound/field.hpp"
#include "hibound/interpolation.hpp"

namespace hibound {

inline constexpr double kTuneSampleFraction = 0.002;
inline constexpr std::size_t kTuneBlockExtent = 17;

/// Blocks sampled for tuning, all of the same extent. Origins lie on the
/// anchor lattice and blocks never overlap.
struct BlockSampling {
  std::array<std::size_t, 3> extent{1, 1, 1};
  std::size_t anchor_stride = 16;
  std::vector<std::array<std::size_t, 3>> origins;
  bool whole_field = false;

  std::size_t block_points() const { return extent[0] * extent[1] * extent[2]; }
};

BlockSampling sample_blocks(const Dims& dims);

struct LevelTune {
  int level = 0;
  bool evaluated = false;
  /// Sum of |original - prediction| over sampled blocks, indexed by LevelConfig::rank().
  std::array<double, 4> error{};
  LevelConfig chosen{};
};

struct TuneReport {
  std::array<LevelTune, kMaxLevels> levels{};
  BlockSampling sampling;
  InterpConfig config;

  std::string to_json() const;
};

template <class T>
TuneReport tune_report(const Field<T>& field, double eb);

template <class T>
InterpConfig tune(const Field<T>& field, double eb) {
  return tune_report(field, eb).config;
}

/// argmin under the fixed tie order (lowest rank wins on equal error).
LevelConfig select_config(const std::array<double, 4>& error);

}  // namespace hibound
