#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "hibound/error.hpp"

namespace hibound {

inline constexpr int kQuantRadius = 128;
inline constexpr std::uint8_t kOutlierCode = 0;
inline constexpr std::uint8_t kZeroCode = 128;

/// Maps a prediction error to a one-byte code q + 128 with
/// q = round(err / (2 eb)), rounding half away from zero. Returns nullopt when
/// |q| > 127.
inline std::optional<std::uint8_t> quantize(double err, double eb) {
  if (!(eb > 0.0)) fail(ErrorCode::degenerate_bound, "quantization bound must be positive");
  if (!std::isfinite(err)) fail(ErrorCode::invalid_argument, "non-finite prediction error");
  const double q = std::round(err / (2.0 * eb));
  if (q < -(kQuantRadius - 1) || q > kQuantRadius - 1) return std::nullopt;
  return static_cast<std::uint8_t>(static_cast<int>(q) + kQuantRadius);
}

/// Error-bounded quantizer used by both compression and decompression, so the
/// reconstructed value is computed by one expression on both sides.
template <class T>
class LinearQuantizer {
 public:
  struct Result {
    std::uint8_t code;
    T reconstructed;
  };

  explicit LinearQuantizer(double eb) : eb_(eb), two_eb_(2.0 * eb) {
    if (!(eb > 0.0) || !std::isfinite(eb)) {
      fail(ErrorCode::degenerate_bound, "error bound must be a positive finite number");
    }
  }

  double error_bound() const { return eb_; }

  Result quantize(T original, T prediction) const {
    const double err = static_cast<double>(original) - static_cast<double>(prediction);
    if (std::isfinite(err)) {
      const double q = std::round(err / two_eb_);
      if (q >= -(kQuantRadius - 1) && q <= kQuantRadius - 1) {
        const auto code = static_cast<std::uint8_t>(static_cast<int>(q) + kQuantRadius);
        const T recon = recover(prediction, code);
        // Rounding to T can push the reconstruction past the bound.
        if (std::abs(static_cast<double>(original) - static_cast<double>(recon)) <= eb_) {
          return {code, recon};
        }
      }
    }
    return {kOutlierCode, original};
  }

  T recover(T prediction, std::uint8_t code) const {
    const int q = static_cast<int>(code) - kQuantRadius;
    return static_cast<T>(static_cast<double>(prediction) + two_eb_ * q);
  }

 private:
  double eb_;
  double two_eb_;
};

}  // namespace hibound
