#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hibound/field.hpp"

namespace hibound {

/// Largest l <= log2(anchor_stride) with 2^l dividing x, y and z.
int level_of(std::size_t x, std::size_t y, std::size_t z, std::size_t anchor_stride);

/// Closed-form map from grid coordinates to positions in the level-grouped
/// sequence: levels in descending order, row-major within each level.
class LevelMap {
 public:
  LevelMap(const Dims& dims, std::size_t anchor_stride);

  const Dims& dims() const { return dims_; }
  std::size_t anchor_stride() const { return stride_; }
  int top_level() const { return top_; }

  /// Extent of the lattice of multiples of 2^l along each axis.
  const std::array<std::size_t, 3>& subgrid(int level) const { return sub_[static_cast<std::size_t>(level)]; }
  /// Number of points on levels strictly above `level` (0 for the anchor level).
  std::size_t prefix(int level) const { return prefix_[static_cast<std::size_t>(level)]; }
  std::size_t level_size(int level) const;

  std::size_t index_of(std::size_t x, std::size_t y, std::size_t z) const;  // bounds-checked
  std::size_t index_of_unchecked(std::size_t x, std::size_t y, std::size_t z) const;

  /// Sequence position of every row-major grid index.
  std::vector<std::uint64_t> permutation() const;

 private:
  Dims dims_;
  std::size_t stride_;
  int top_;
  std::array<std::array<std::size_t, 3>, 5> sub_{};
  std::array<std::size_t, 5> prefix_{};
};

/// Fields up to this many points are permuted through a precomputed table.
inline constexpr std::size_t kReorderTableThreshold = std::size_t{1} << 22;

enum class ReorderStrategy { automatic, table, closed_form };

std::vector<std::uint8_t> reorder(std::span<const std::uint8_t> codes, const LevelMap& map,
                                  ReorderStrategy strategy = ReorderStrategy::automatic);
std::vector<std::uint8_t> inverse_reorder(std::span<const std::uint8_t> sequence, const LevelMap& map,
                                          ReorderStrategy strategy = ReorderStrategy::automatic);

}  // namespace hibound
