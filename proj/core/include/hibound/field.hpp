#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace hibound {

enum class Precision : std::uint8_t { f32 = 0, f64 = 1 };

template <class T>
constexpr Precision precision_of() {
  static_assert(std::is_same_v<T, float> || std::is_same_v<T, double>);
  return std::is_same_v<T, float> ? Precision::f32 : Precision::f64;
}

constexpr unsigned element_bits(Precision p) { return p == Precision::f32 ? 32u : 64u; }
constexpr unsigned element_bytes(Precision p) { return element_bits(p) / 8u; }

/// Grid extents, slowest axis first. Rank-2 grids carry a trailing extent of 1,
/// so every grid is addressed as (x, y, z) with z fastest-varying.
struct Dims {
  std::array<std::size_t, 3> extent{1, 1, 1};
  int rank = 3;

  /// Builds dims from 2 or 3 positive extents listed slowest-first.
  static Dims of(std::span<const std::size_t> extents);
  static Dims of(std::size_t x, std::size_t y) { return of(std::array<std::size_t, 2>{x, y}); }
  static Dims of(std::size_t x, std::size_t y, std::size_t z) {
    return of(std::array<std::size_t, 3>{x, y, z});
  }

  std::size_t count() const { return extent[0] * extent[1] * extent[2]; }
  std::size_t operator[](int axis) const { return extent[static_cast<std::size_t>(axis)]; }
  std::array<std::size_t, 3> strides() const { return {extent[1] * extent[2], extent[2], 1}; }
  std::size_t index(std::size_t x, std::size_t y, std::size_t z) const {
    return (x * extent[1] + y) * extent[2] + z;
  }

  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Immutable floating-point grid. Values are row-major with z fastest and
/// are guaranteed finite.
template <class T>
class Field {
 public:
  using value_type = T;

  Field(Dims dims, std::vector<T> values);

  static Field filled(Dims dims, T value) { return Field(dims, std::vector<T>(dims.count(), value)); }

  const Dims& dims() const { return dims_; }
  std::span<const T> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  T at(std::size_t x, std::size_t y, std::size_t z) const { return values_[dims_.index(x, y, z)]; }
  std::size_t byte_size() const { return values_.size() * sizeof(T); }
  static constexpr Precision precision() { return precision_of<T>(); }

 private:
  Dims dims_;
  std::vector<T> values_;
};

using AnyField = std::variant<Field<float>, Field<double>>;

Precision precision_of(const AnyField& field);
const Dims& dims_of(const AnyField& field);

enum class BoundMode : std::uint8_t { absolute, relative };

struct ErrorBoundSpec {
  BoundMode mode = BoundMode::absolute;
  double magnitude = 0.0;
};

template <class T>
double value_range(std::span<const T> values);

template <class T>
double value_range(const Field<T>& field) {
  return value_range(field.values());
}

/// Turns an error bound into the absolute point-wise bound. Relative bounds are
/// scaled by the field's value range.
template <class T>
double resolve_error_bound(const ErrorBoundSpec& bound, const Field<T>& field);

struct ErrorStats {
  double max_abs_error = 0.0;
  double mse = 0.0;
};

template <class T>
ErrorStats compare(const Field<T>& original, const Field<T>& reconstructed);

/// PSNR in dB against the original's value range; +infinity when the fields match.
template <class T>
double psnr(const Field<T>& original, const Field<T>& reconstructed);

double psnr_from(double value_range, double mse);

struct SizeMetrics {
  double compression_ratio = 0.0;
  double bitrate = 0.0;
};

SizeMetrics size_metrics(std::uint64_t original_bytes, std::uint64_t compressed_bytes,
                         unsigned element_bits);

struct QualityReport {
  double psnr = 0.0;
  double max_abs_error = 0.0;
  double mse = 0.0;
  double compression_ratio = 0.0;
  double bitrate = 0.0;
};

template <class T>
QualityReport evaluate_quality(const Field<T>& original, const Field<T>& reconstructed,
                               std::uint64_t compressed_bytes);

}  // namespace hibound
