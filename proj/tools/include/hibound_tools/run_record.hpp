#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hibound/archive.hpp"
#include "hibound/field.hpp"

namespace hibound::tools {

/// Bumped whenever CSV columns change.
inline constexpr int kRecordVersion = 1;

struct RunRecord {
  std::string dataset;
  Dims dims;
  Precision precision = Precision::f32;
  ErrorBoundSpec bound;
  double error_bound = 0.0;
  LosslessMode mode = LosslessMode::cr;

  std::uint64_t original_bytes = 0;
  std::uint64_t compressed_bytes = 0;
  double compression_ratio = 0.0;
  double bitrate = 0.0;
  double psnr = 0.0;
  double max_abs_error = 0.0;
  double mse = 0.0;
  /// Zero when the step was not timed (analyze never sees the compressor run).
  double compress_seconds = 0.0;
  double decompress_seconds = 0.0;

  std::uint64_t header_bytes = 0;
  std::uint64_t anchor_bytes = 0;
  std::uint64_t outlier_bytes = 0;
  std::uint64_t stream_bytes = 0;
  std::uint64_t huffman_table_bytes = 0;
  std::uint64_t outlier_count = 0;
  bool raw_codes = false;
  bool verbatim = false;
};

std::string csv_header();
std::string to_csv(const RunRecord& record);
std::string to_json(const RunRecord& record);
/// Fixed formatting shared by CSV, JSON and SVG; infinities print as "inf".
std::string format_number(double value);

std::string dims_string(const Dims& dims);
std::string to_string(Precision precision);
std::string to_string(BoundMode mode);

/// Fills every metric from an original field and an archive of it.
RunRecord analyze(const AnyField& original, std::span<const std::uint8_t> archive, std::string dataset);

/// Times compress and decompress of one configuration and reports the result.
RunRecord measure(const AnyField& field, const ErrorBoundSpec& bound, const CompressOptions& options,
                  std::string dataset);

}  // namespace hibound::tools
