#include "hibound_tools/fixtures.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "hibound/error.hpp"
#include "hibound/parallel.hpp"

namespace hibound::tools {

std::string to_string(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::constant: return "constant";
    case FixtureKind::affine: return "affine";
    case FixtureKind::gaussian_mix: return "gaussian-mix";
    case FixtureKind::spectral: return "spectral";
    case FixtureKind::uniform_noise: return "uniform-noise";
  }
  return "unknown";
}

std::optional<FixtureKind> parse_fixture_kind(std::string_view text) {
  if (text == "constant") return FixtureKind::constant;
  if (text == "affine") return FixtureKind::affine;
  if (text == "gaussian-mix") return FixtureKind::gaussian_mix;
  if (text == "spectral" || text == "turbulence-like-spectral") return FixtureKind::spectral;
  if (text == "uniform-noise") return FixtureKind::uniform_noise;
  return std::nullopt;
}

namespace {

// Distribution objects are implementation-defined; this mapping is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Fills values[i] = f(x, y, z) across rows in parallel.
template <class T, class F>
std::vector<T> tabulate(const Dims& dims, F&& f) {
  std::vector<T> values(dims.count());
  const std::size_t rows = dims[0] * dims[1];
  parallel_for(rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const std::size_t x = r / dims[1], y = r % dims[1];
      T* row = values.data() + r * dims[2];
      for (std::size_t z = 0; z < dims[2]; ++z) row[z] = static_cast<T>(f(x, y, z));
    }
  }, 16);
  return values;
}

double normalized(std::size_t i, std::size_t extent) {
  return extent > 1 ? static_cast<double>(i) / static_cast<double>(extent - 1) : 0.0;
}

template <class T>
std::vector<T> gaussian_mix(const Dims& dims, Rng& rng) {
  constexpr int kComponents = 8;
  // Separable factors exp(-(t - c)^2 / (2 s^2)) per axis.
  std::array<std::array<std::vector<double>, 3>, kComponents> factor;
  std::array<double, kComponents> amplitude{};
  for (int k = 0; k < kComponents; ++k) {
    amplitude[k] = rng.uniform(-1.0, 1.0) + (rng.uniform() < 0.5 ? -0.5 : 0.5);
    for (int a = 0; a < 3; ++a) {
      const double c = rng.uniform();
      const double s = rng.uniform(0.06, 0.25);
      auto& f = factor[k][a];
      f.resize(dims[a]);
      for (std::size_t i = 0; i < dims[a]; ++i) {
        const double t = (normalized(i, dims[a]) - c) / s;
        f[i] = dims[a] > 1 ? std::exp(-0.5 * t * t) : 1.0;
      }
    }
  }
  return tabulate<T>(dims, [&](std::size_t x, std::size_t y, std::size_t z) {
    double v = 0.0;
    for (int k = 0; k < kComponents; ++k) v += amplitude[k] * factor[k][0][x] * factor[k][1][y] * factor[k][2][z];
    return v;
  });
}

template <class T>
std::vector<T> spectral(const Dims& dims, Rng& rng) {
  constexpr int kModes = 48;
  constexpr int kMaxWave = 8;
  using C = std::complex<double>;
  // cos(phi + sum_a 2 pi k_a t_a) = Re(e^{i phi} prod_a e^{i 2 pi k_a t_a}).
  std::array<std::array<std::vector<C>, 3>, kModes> phasor;
  std::array<C, kModes> weight;
  for (int m = 0; m < kModes; ++m) {
    std::array<int, 3> k{};
    do {
      for (int a = 0; a < 3; ++a) k[a] = dims[a] > 1 ? rng.integer(-kMaxWave, kMaxWave) : 0;
    } while (k[0] == 0 && k[1] == 0 && k[2] == 0 && dims.count() > 1);
    const double k2 = static_cast<double>(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    weight[m] = std::polar(k2 > 0 ? 1.0 / k2 : 1.0, phase);
    for (int a = 0; a < 3; ++a) {
      auto& p = phasor[m][a];
      p.resize(dims[a]);
      for (std::size_t i = 0; i < dims[a]; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(dims[a]);
        p[i] = std::polar(1.0, 2.0 * std::numbers::pi * k[a] * t);
      }
    }
  }
  return tabulate<T>(dims, [&](std::size_t x, std::size_t y, std::size_t z) {
    double v = 0.0;
    for (int m = 0; m < kModes; ++m) v += (weight[m] * phasor[m][0][x] * phasor[m][1][y] * phasor[m][2][z]).real();
    return v;
  });
}

}  // namespace

template <class T>
Field<T> make_fixture(FixtureKind kind, const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  switch (kind) {
    case FixtureKind::constant:
      return Field<T>::filled(dims, static_cast<T>(rng.uniform(-100.0, 100.0)));
    case FixtureKind::affine:
      return Field<T>(dims, tabulate<T>(dims, [](std::size_t x, std::size_t y, std::size_t z) {
        return 1.0 + 2.0 * static_cast<double>(x) + 3.0 * static_cast<double>(y) + 5.0 * static_cast<double>(z);
      }));
    case FixtureKind::gaussian_mix:
      return Field<T>(dims, gaussian_mix<T>(dims, rng));
    case FixtureKind::spectral:
      return Field<T>(dims, spectral<T>(dims, rng));
    case FixtureKind::uniform_noise: {
      std::vector<T> values(dims.count());
      for (T& v : values) v = static_cast<T>(rng.uniform());
      return Field<T>(dims, std::move(values));
    }
  }
  fail(ErrorCode::invalid_argument, "unknown fixture kind");
}

template Field<float> make_fixture<float>(FixtureKind, const Dims&, std::uint64_t);
template Field<double> make_fixture<double>(FixtureKind, const Dims&, std::uint64_t);

AnyField make_fixture(FixtureKind kind, const Dims& dims, Precision precision, std::uint64_t seed) {
  if (precision == Precision::f32) return make_fixture<float>(kind, dims, seed);
  return make_fixture<double>(kind, dims, seed);
}

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace hibound::tools
