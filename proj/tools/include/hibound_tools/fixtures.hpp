#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hibound/field.hpp"

namespace hibound::tools {

enum class FixtureKind { constant, affine, gaussian_mix, spectral, uniform_noise };

std::string to_string(FixtureKind kind);
/// Accepts the canonical names plus "turbulence-like-spectral" for spectral.
std::optional<FixtureKind> parse_fixture_kind(std::string_view text);

/// Synthetic fields, reproducible by seed:
///   constant       one seed-derived value everywhere
///   affine         1 + 2x + 3y + 5z in grid coordinates
///   gaussian_mix   sum of 8 randomly placed anisotropic Gaussians
///   spectral       48 random Fourier modes with amplitude 1/|k|^2
///   uniform_noise  independent samples in [0, 1)
template <class T>
Field<T> make_fixture(FixtureKind kind, const Dims& dims, std::uint64_t seed);
AnyField make_fixture(FixtureKind kind, const Dims& dims, Precision precision, std::uint64_t seed);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::span<const std::uint8_t> bytes);

}  // namespace hibound::tools
