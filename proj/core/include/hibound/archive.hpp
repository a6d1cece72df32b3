#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hibound/field.hpp"
#include "hibound/interpolation.hpp"

namespace hibound {

/// Archive layout (all integers little-endian):
///
///   magic "CSZH" | version u8 | mode u8 | precision u8 | ndim u8
///   dims 3 x u64 | eb f64 | config 4 x u8 | log2 anchor stride u8 | flags u8
///   anchor count u64 | anchor values (precision-sized)
///   outlier count u64 | (index u64, value)*
///   stream length u64 | stream bytes
///
/// flags: bit 0 = codes stored raw (lossless pipeline skipped),
///        bit 1 = codes kept in row-major order (level reordering skipped),
///        bit 2 = field stored verbatim in the stream section, no anchors or outliers.
inline constexpr std::array<char, 4> kArchiveMagic = {'C', 'S', 'Z', 'H'};
inline constexpr std::uint8_t kArchiveVersion = 1;
inline constexpr std::uint8_t kFlagRawCodes = 0x01;
inline constexpr std::uint8_t kFlagRowMajor = 0x02;
inline constexpr std::uint8_t kFlagVerbatim = 0x04;
inline constexpr std::size_t kArchiveHeaderSize = 4 + 4 + 24 + 8 + 4 + 2;

enum class LosslessMode : std::uint8_t { cr = 0, tp = 1 };

std::string to_string(LosslessMode mode);
std::optional<LosslessMode> parse_mode(std::string_view text);

struct CompressOptions {
  LosslessMode mode = LosslessMode::cr;
  bool reorder = true;
  /// Skips the auto-tuner when set.
  std::optional<InterpConfig> config{};
};

template <class T>
std::vector<std::uint8_t> compress(const Field<T>& field, const ErrorBoundSpec& bound,
                                   const CompressOptions& options = {});
std::vector<std::uint8_t> compress(const AnyField& field, const ErrorBoundSpec& bound,
                                   const CompressOptions& options = {});

AnyField decompress(std::span<const std::uint8_t> archive);

template <class T>
Field<T> decompress_as(std::span<const std::uint8_t> archive);

/// Header fields and section sizes of an archive, without decoding the stream.
struct ArchiveInfo {
  std::uint8_t version = 0;
  LosslessMode mode = LosslessMode::cr;
  Precision precision = Precision::f32;
  Dims dims;
  double error_bound = 0.0;
  InterpConfig config;
  std::size_t anchor_stride = 16;
  bool raw_codes = false;
  bool row_major = false;
  bool verbatim = false;

  std::uint64_t anchor_count = 0;
  std::uint64_t outlier_count = 0;
  std::uint64_t header_bytes = 0;
  std::uint64_t anchor_bytes = 0;
  std::uint64_t outlier_bytes = 0;
  std::uint64_t stream_bytes = 0;
  /// Size of the Huffman code-length table inside the stream (0 in TP mode).
  std::uint64_t huffman_table_bytes = 0;
  std::uint64_t total_bytes = 0;
};

ArchiveInfo inspect(std::span<const std::uint8_t> archive);

}  // namespace hibound
