#include "hibound/reorder.hpp"

#include <bit>
#include <string>

#include "hibound/error.hpp"
#include "hibound/parallel.hpp"
#include "hibound/predictor.hpp"

namespace hibound {

int level_of(std::size_t x, std::size_t y, std::size_t z, std::size_t anchor_stride) {
  const int top = level_count(anchor_stride);
  const std::size_t bits = x | y | z;
  if (bits == 0) return top;
  return std::min(top, std::countr_zero(bits));
}

LevelMap::LevelMap(const Dims& dims, std::size_t anchor_stride)
    : dims_(dims), stride_(anchor_stride), top_(level_count(anchor_stride)) {
  for (int l = 0; l <= top_; ++l) {
    const std::size_t step = std::size_t{1} << l;
    for (std::size_t a = 0; a < 3; ++a) {
      sub_[static_cast<std::size_t>(l)][a] = (dims.extent[a] + step - 1) / step;
    }
  }
  for (int l = 0; l < top_; ++l) {
    const auto& up = sub_[static_cast<std::size_t>(l + 1)];
    prefix_[static_cast<std::size_t>(l)] = up[0] * up[1] * up[2];
  }
  prefix_[static_cast<std::size_t>(top_)] = 0;
}

std::size_t LevelMap::level_size(int level) const {
  const auto& s = subgrid(level);
  const std::size_t all = s[0] * s[1] * s[2];
  return level == top_ ? all : all - prefix(level);
}

std::size_t LevelMap::index_of(std::size_t x, std::size_t y, std::size_t z) const {
  if (x >= dims_[0] || y >= dims_[1] || z >= dims_[2]) {
    fail(ErrorCode::invalid_argument, "coordinate (" + std::to_string(x) + ", " + std::to_string(y) +
                                          ", " + std::to_string(z) + ") outside the grid");
  }
  return index_of_unchecked(x, y, z);
}

std::size_t LevelMap::index_of_unchecked(std::size_t x, std::size_t y, std::size_t z) const {
  const std::size_t bits = x | y | z;
  const int l = bits == 0 ? top_ : std::min(top_, std::countr_zero(bits));
  const auto& d = sub_[static_cast<std::size_t>(l)];
  const std::size_t u = x >> l, v = y >> l, w = z >> l;
  const std::size_t row_major = (u * d[1] + v) * d[2] + w;
  if (l == top_) return row_major;

  // Remove the points of higher levels (all-even subgrid coordinates) that
  // precede (u, v, w) in row-major order.
  const std::size_t even_y = (d[1] + 1) / 2, even_z = (d[2] + 1) / 2;
  std::size_t skipped = ((u + 1) / 2) * even_y * even_z;
  if (u % 2 == 0) {
    skipped += ((v + 1) / 2) * even_z;
    if (v % 2 == 0) skipped += (w + 1) / 2;
  }
  return prefix_[static_cast<std::size_t>(l)] + row_major - skipped;
}

std::vector<std::uint64_t> LevelMap::permutation() const {
  std::vector<std::uint64_t> table(dims_.count());
  const std::size_t rows = dims_[0] * dims_[1];
  parallel_for(
      rows,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
          const std::size_t x = r / dims_[1], y = r % dims_[1];
          for (std::size_t z = 0; z < dims_[2]; ++z) {
            table[r * dims_[2] + z] = index_of_unchecked(x, y, z);
          }
        }
      },
      std::max<std::size_t>(1, 16384 / dims_[2]));
  return table;
}

namespace {

void check_length(std::size_t n, const LevelMap& map) {
  if (n != map.dims().count()) {
    fail(ErrorCode::dimension_mismatch, "sequence length " + std::to_string(n) +
                                            " does not match grid size " +
                                            std::to_string(map.dims().count()));
  }
}

// Calls f(row_major_index, sequence_index) for every grid point.
template <class F>
void for_each_pair(const LevelMap& map, ReorderStrategy strategy, F&& f) {
  const Dims& d = map.dims();
  const std::size_t grain = std::max<std::size_t>(1, 16384 / d[2]);
  const bool use_table = strategy == ReorderStrategy::table ||
                         (strategy == ReorderStrategy::automatic && d.count() <= kReorderTableThreshold);
  if (use_table) {
    const auto table = map.permutation();
    parallel_for(
        d[0] * d[1],
        [&](std::size_t begin, std::size_t end) {
          for (std::size_t i = begin * d[2]; i < end * d[2]; ++i) f(i, static_cast<std::size_t>(table[i]));
        },
        grain);
    return;
  }
  parallel_for(
      d[0] * d[1],
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
          const std::size_t x = r / d[1], y = r % d[1];
          for (std::size_t z = 0; z < d[2]; ++z) f(r * d[2] + z, map.index_of_unchecked(x, y, z));
        }
      },
      grain);
}

}  // namespace

std::vector<std::uint8_t> reorder(std::span<const std::uint8_t> codes, const LevelMap& map,
                                  ReorderStrategy strategy) {
  check_length(codes.size(), map);
  std::vector<std::uint8_t> out(codes.size());
  for_each_pair(map, strategy, [&](std::size_t i, std::size_t j) { out[j] = codes[i]; });
  return out;
}

std::vector<std::uint8_t> inverse_reorder(std::span<const std::uint8_t> sequence, const LevelMap& map,
                                          ReorderStrategy strategy) {
  check_length(sequence.size(), map);
  std::vector<std::uint8_t> out(sequence.size());
  for_each_pair(map, strategy, [&](std::size_t i, std::size_t j) { out[i] = sequence[j]; });
  return out;
}

}  // namespace hibound
