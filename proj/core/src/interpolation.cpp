#include "hibound/interpolation.hpp"

namespace hibound {

std::string to_string(LevelConfig config) {
  std::string s = config.spline == Spline::cubic ? "cubic" : "linear";
  s += config.scheme == Scheme::multidim ? "/multidim" : "/seq1d";
  return s;
}

std::array<std::uint8_t, kMaxLevels> InterpConfig::serialize() const {
  std::array<std::uint8_t, kMaxLevels> out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(static_cast<unsigned>(levels[i].spline) |
                                       (static_cast<unsigned>(levels[i].scheme) << 1));
  }
  return out;
}

InterpConfig InterpConfig::parse(std::span<const std::uint8_t, kMaxLevels> bytes) {
  InterpConfig c;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (bytes[i] > 3) fail(ErrorCode::corrupt_archive, "invalid interpolation config byte");
    c.levels[i] = {static_cast<Spline>(bytes[i] & 1u), static_cast<Scheme>((bytes[i] >> 1) & 1u)};
  }
  return c;
}

}  // namespace hibound
