#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hibound/field.hpp"
#include "hibound/interpolation.hpp"

namespace hibound {

inline constexpr std::size_t kAnchorStride = 16;

/// Anchor stride used for a grid: 16, reduced to the largest power of two
/// below the smallest non-degenerate extent so that every axis keeps at least
/// two anchors.
std::size_t anchor_stride_for(const Dims& dims);

/// Number of interpolation levels for an anchor stride (log2 of the stride).
int level_count(std::size_t anchor_stride);

/// Points whose coordinates are all multiples of `stride`, in row-major order.
template <class T>
struct AnchorGrid {
  std::size_t stride = kAnchorStride;
  std::array<std::size_t, 3> counts{1, 1, 1};
  std::vector<T> values;

  std::size_t size() const { return counts[0] * counts[1] * counts[2]; }
};

std::array<std::size_t, 3> anchor_counts(const Dims& dims, std::size_t stride);

template <class T>
AnchorGrid<T> extract_anchors(const Field<T>& field, std::size_t stride = kAnchorStride);

template <class T>
struct Outlier {
  std::uint64_t index = 0;
  T value{};

  friend bool operator==(const Outlier&, const Outlier&) = default;
};

/// One-byte codes per grid point (code 0 marks an outlier, anchors hold 128),
/// outliers sorted by index, and the losslessly kept anchors.
template <class T>
struct QuantizedField {
  Dims dims;
  std::vector<std::uint8_t> codes;
  std::vector<Outlier<T>> outliers;
  AnchorGrid<T> anchors;
};

template <class T>
struct Decomposition {
  QuantizedField<T> quantized;
  /// The compressor's working grid after the last level; reconstruct() must reproduce it bit-exactly.
  Field<T> reconstructed;
};

template <class T>
Decomposition<T> decompose(const Field<T>& field, double eb, const InterpConfig& config,
                           std::optional<std::size_t> anchor_stride = std::nullopt);

template <class T>
Field<T> reconstruct(const QuantizedField<T>& quantized, double eb, const InterpConfig& config);

}  // namespace hibound
