#include "hibound/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hibound/error.hpp"

namespace hibound {

Dims Dims::of(std::span<const std::size_t> extents) {
  if (extents.size() != 2 && extents.size() != 3) {
    fail(ErrorCode::invalid_argument,
         "fields must have 2 or 3 dimensions, got " + std::to_string(extents.size()));
  }
  Dims d;
  d.rank = static_cast<int>(extents.size());
  std::size_t total = 1;
  for (std::size_t i = 0; i < extents.size(); ++i) {
    if (extents[i] == 0) fail(ErrorCode::invalid_argument, "dimension extents must be positive");
    if (total > (std::size_t{1} << 48) / extents[i]) {
      fail(ErrorCode::invalid_argument, "field too large");
    }
    total *= extents[i];
    d.extent[i] = extents[i];
  }
  return d;
}

template <class T>
Field<T>::Field(Dims dims, std::vector<T> values) : dims_(dims), values_(std::move(values)) {
  if (dims_.rank != 2 && dims_.rank != 3) fail(ErrorCode::invalid_argument, "rank must be 2 or 3");
  if (dims_.rank == 2 && dims_.extent[2] != 1) {
    fail(ErrorCode::invalid_argument, "rank-2 dims must have a trailing extent of 1");
  }
  if (dims_.count() == 0) fail(ErrorCode::invalid_argument, "dimension extents must be positive");
  if (values_.size() != dims_.count()) {
    fail(ErrorCode::dimension_mismatch, "value count " + std::to_string(values_.size()) +
                                            " does not match dims product " +
                                            std::to_string(dims_.count()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      fail(ErrorCode::invalid_data, "non-finite value at index " + std::to_string(i));
    }
  }
}

template class Field<float>;
template class Field<double>;

Precision precision_of(const AnyField& field) {
  return std::visit([](const auto& f) { return f.precision(); }, field);
}

const Dims& dims_of(const AnyField& field) {
  return std::visit([](const auto& f) -> const Dims& { return f.dims(); }, field);
}

template <class T>
double value_range(std::span<const T> values) {
  if (values.empty()) fail(ErrorCode::invalid_argument, "value range of an empty field");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return static_cast<double>(*hi) - static_cast<double>(*lo);
}

template double value_range<float>(std::span<const float>);
template double value_range<double>(std::span<const double>);

template <class T>
double resolve_error_bound(const ErrorBoundSpec& bound, const Field<T>& field) {
  if (!(bound.magnitude > 0.0) || !std::isfinite(bound.magnitude)) {
    fail(ErrorCode::degenerate_bound, "error bound must be a positive finite number");
  }
  if (bound.mode == BoundMode::absolute) return bound.magnitude;
  const double range = value_range(field);
  if (range == 0.0) {
    fail(ErrorCode::degenerate_bound, "relative error bound on a constant field (value range is 0)");
  }
  const double eb = bound.magnitude * range;
  if (!(eb > 0.0) || !std::isfinite(eb)) {
    fail(ErrorCode::degenerate_bound, "resolved error bound is not a positive finite number");
  }
  return eb;
}

template double resolve_error_bound<float>(const ErrorBoundSpec&, const Field<float>&);
template double resolve_error_bound<double>(const ErrorBoundSpec&, const Field<double>&);

template <class T>
ErrorStats compare(const Field<T>& original, const Field<T>& reconstructed) {
  if (original.dims() != reconstructed.dims()) {
    fail(ErrorCode::dimension_mismatch, "compared fields have different dimensions");
  }
  ErrorStats stats;
  const auto a = original.values();
  const auto b = reconstructed.values();
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    stats.max_abs_error = std::max(stats.max_abs_error, std::abs(diff));
    sum_sq += diff * diff;
  }
  stats.mse = sum_sq / static_cast<double>(a.size());
  return stats;
}

template ErrorStats compare<float>(const Field<float>&, const Field<float>&);
template ErrorStats compare<double>(const Field<double>&, const Field<double>&);

double psnr_from(double range, double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(range) - 10.0 * std::log10(mse);
}

template <class T>
double psnr(const Field<T>& original, const Field<T>& reconstructed) {
  const ErrorStats stats = compare(original, reconstructed);
  return psnr_from(value_range(original), stats.mse);
}

template double psnr<float>(const Field<float>&, const Field<float>&);
template double psnr<double>(const Field<double>&, const Field<double>&);

SizeMetrics size_metrics(std::uint64_t original_bytes, std::uint64_t compressed_bytes,
                         unsigned element_bits) {
  if (compressed_bytes == 0) fail(ErrorCode::invalid_argument, "compressed size must be positive");
  if (original_bytes == 0) fail(ErrorCode::invalid_argument, "original size must be positive");
  SizeMetrics m;
  m.compression_ratio = static_cast<double>(original_bytes) / static_cast<double>(compressed_bytes);
  m.bitrate = static_cast<double>(element_bits) / m.compression_ratio;
  return m;
}

template <class T>
QualityReport evaluate_quality(const Field<T>& original, const Field<T>& reconstructed,
                               std::uint64_t compressed_bytes) {
  const ErrorStats stats = compare(original, reconstructed);
  const SizeMetrics sizes =
      size_metrics(original.byte_size(), compressed_bytes, element_bits(original.precision()));
  QualityReport r;
  r.psnr = psnr_from(value_range(original), stats.mse);
  r.max_abs_error = stats.max_abs_error;
  r.mse = stats.mse;
  r.compression_ratio = sizes.compression_ratio;
  r.bitrate = sizes.bitrate;
  return r;
}

template QualityReport evaluate_quality<float>(const Field<float>&, const Field<float>&, std::uint64_t);
template QualityReport evaluate_quality<double>(const Field<double>&, const Field<double>&,
                                                std::uint64_t);

}  // namespace hibound
