#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "hibound/archive.hpp"
#include "hibound_tools/fixtures.hpp"
#include "test_support.hpp"

using namespace hibound;
using tools::FixtureKind;
using tools::make_fixture;

namespace {

template <class T>
Field<T> as(const AnyField& f) {
  return std::get<Field<T>>(f);
}

ErrorCode decode_error(std::span<const std::uint8_t> archive) {
  try {
    decompress(archive);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io;  // sentinel: decoded without error
}

}  // namespace

TEST(Archive, RoundTripWithinBound) {
  std::mt19937_64 rng(41);
  const Dims shapes[] = {Dims::of(17, 17, 17), Dims::of(33, 48, 21), Dims::of(128, 96), Dims::of(5, 9, 40)};
  const FixtureKind kinds[] = {FixtureKind::gaussian_mix, FixtureKind::spectral, FixtureKind::uniform_noise};
  for (const Dims& d : shapes) {
    for (FixtureKind k : kinds) {
      const auto f = make_fixture<float>(k, d, rng());
      for (double rel : {1e-1, 1e-3, 1e-5}) {
        for (LosslessMode mode : {LosslessMode::cr, LosslessMode::tp}) {
          const auto z = compress(f, {BoundMode::relative, rel}, {mode});
          const auto g = decompress_as<float>(z);
          const double eb = inspect(z).error_bound;
          EXPECT_DOUBLE_EQ(eb, rel * value_range(f));
          ASSERT_LE(test::max_abs_error(f, g), eb);
        }
      }
    }
  }
}

TEST(Archive, DoublePrecisionRoundTrip) {
  const auto f = make_fixture<double>(FixtureKind::spectral, Dims::of(40, 30, 20), 3);
  const auto z = compress(f, {BoundMode::absolute, 1e-9});
  const AnyField g = decompress(z);
  ASSERT_TRUE(std::holds_alternative<Field<double>>(g));
  EXPECT_LE(test::max_abs_error(f, as<double>(g)), 1e-9);
  EXPECT_EQ(inspect(z).precision, Precision::f64);
  EXPECT_THROW(decompress_as<float>(z), Error);
}

TEST(Archive, ConstantFieldRelativeBoundIsDegenerate) {
  const auto f = make_fixture<float>(FixtureKind::constant, Dims::of(64, 64, 64), 1);
  try {
    compress(f, {BoundMode::relative, 1e-3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_bound);
  }
  const auto z = compress(f, {BoundMode::absolute, 1e-3});
  EXPECT_EQ(test::max_abs_error(f, decompress_as<float>(z)), 0.0);
}

TEST(Archive, AffineFieldCompressesPast100) {
  const auto f = make_fixture<float>(FixtureKind::affine, Dims::of(64, 64, 64), 0);
  const auto z = compress(f, {BoundMode::absolute, 1e-3}, {LosslessMode::cr});
  const double cr = static_cast<double>(f.byte_size()) / static_cast<double>(z.size());
  EXPECT_GT(cr, 100.0);
  const auto info = inspect(z);
  EXPECT_EQ(info.outlier_count, 0u);
  EXPECT_LE(test::max_abs_error(f, decompress_as<float>(z)), 1e-3);
}

TEST(Archive, IncompressibleInputKeepsRatioNearOne) {
  const auto f = make_fixture<float>(FixtureKind::uniform_noise, Dims::of(64, 64, 64), 2);
  for (LosslessMode mode : {LosslessMode::cr, LosslessMode::tp}) {
    const auto z = compress(f, {BoundMode::absolute, 1e-6}, {mode});
    EXPECT_GE(static_cast<double>(f.byte_size()) / static_cast<double>(z.size()), 0.99);
    EXPECT_LE(test::max_abs_error(f, decompress_as<float>(z)), 1e-6);
    EXPECT_TRUE(inspect(z).verbatim);
  }
}

TEST(Archive, ModesReconstructIdentically) {
  const auto f = make_fixture<float>(FixtureKind::spectral, Dims::of(48, 48, 48), 4);
  const auto cr = compress(f, {BoundMode::relative, 1e-4}, {LosslessMode::cr});
  const auto tp = compress(f, {BoundMode::relative, 1e-4}, {LosslessMode::tp});
  EXPECT_NE(cr, tp);
  EXPECT_EQ(test::max_abs_error(decompress_as<float>(cr), decompress_as<float>(tp)), 0.0);
}

TEST(Archive, ReorderFlagRoundTrips) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(40, 40, 40), 5);
  CompressOptions opts;
  opts.reorder = false;
  const auto z = compress(f, {BoundMode::relative, 1e-3}, opts);
  EXPECT_TRUE(inspect(z).row_major);
  const auto with = compress(f, {BoundMode::relative, 1e-3});
  EXPECT_FALSE(inspect(with).row_major);
  EXPECT_EQ(test::max_abs_error(decompress_as<float>(z), decompress_as<float>(with)), 0.0);
}

TEST(Archive, ExplicitConfigIsStored) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(33, 33, 33), 6);
  CompressOptions opts;
  InterpConfig cfg;
  cfg.at(1) = {Spline::linear, Scheme::seq1d};
  cfg.at(4) = {Spline::cubic, Scheme::seq1d};
  opts.config = cfg;
  const auto z = compress(f, {BoundMode::relative, 1e-3}, opts);
  EXPECT_EQ(inspect(z).config, cfg);
  EXPECT_LE(test::max_abs_error(f, decompress_as<float>(z)), inspect(z).error_bound);
}

TEST(Archive, RecompressingAReconstructionIsIdempotent) {
  const auto f = make_fixture<float>(FixtureKind::spectral, Dims::of(40, 36, 32), 7);
  const auto z = compress(f, {BoundMode::absolute, 1e-3});
  const auto info = inspect(z);
  CompressOptions opts;
  opts.config = info.config;
  const auto g = decompress_as<float>(z);
  EXPECT_EQ(compress(g, {BoundMode::absolute, info.error_bound}, opts), z);
}

TEST(Archive, DeterministicAcrossWorkerCounts) {
  const auto f = make_fixture<float>(FixtureKind::spectral, Dims::of(64, 64, 64), 8);
  setenv("HIBOUND_THREADS", "1", 1);
  const auto a = compress(f, {BoundMode::relative, 1e-4});
  setenv("HIBOUND_THREADS", "8", 1);
  const auto b = compress(f, {BoundMode::relative, 1e-4});
  unsetenv("HIBOUND_THREADS");
  EXPECT_EQ(a, b);
}

TEST(Archive, SectionSizesAddUp) {
  const auto f = make_fixture<float>(FixtureKind::spectral, Dims::of(64, 64, 64), 9);
  const auto z = compress(f, {BoundMode::relative, 1e-4}, {LosslessMode::cr});
  const auto info = inspect(z);
  ASSERT_FALSE(info.verbatim);
  EXPECT_EQ(info.header_bytes, kArchiveHeaderSize);
  EXPECT_EQ(info.header_bytes + info.anchor_bytes + info.outlier_bytes + info.stream_bytes, z.size());
  EXPECT_EQ(info.anchor_count, 64u);
  EXPECT_EQ(info.anchor_bytes, 8 + 64 * sizeof(float));
  EXPECT_EQ(info.huffman_table_bytes, 256u);
  EXPECT_EQ(info.dims.extent, f.dims().extent);
  const auto tp = inspect(compress(f, {BoundMode::relative, 1e-4}, {LosslessMode::tp}));
  EXPECT_EQ(tp.huffman_table_bytes, 0u);
}

TEST(Archive, BadMagicIsRejected) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(20, 20, 20), 10);
  auto z = compress(f, {BoundMode::relative, 1e-3});
  z[0] ^= 0x01;
  EXPECT_EQ(decode_error(z), ErrorCode::corrupt_archive);
}

TEST(Archive, TruncationAndTrailingBytesAreRejected) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(20, 20, 20), 11);
  const auto z = compress(f, {BoundMode::relative, 1e-3});
  for (std::size_t n = 0; n < z.size(); ++n) {
    ASSERT_EQ(decode_error(std::span(z).first(n)), ErrorCode::corrupt_archive) << "prefix " << n;
  }
  auto longer = z;
  longer.push_back(0);
  EXPECT_EQ(decode_error(longer), ErrorCode::corrupt_archive);
}

TEST(Archive, HeaderFieldCorruptionIsRejected) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(20, 20, 20), 12);
  const auto z = compress(f, {BoundMode::relative, 1e-3});
  const std::size_t offsets[] = {4, 5, 6, 7, 8, 40, 44, 45};  // version, mode, precision, ndim, dims, config, stride, flags
  for (std::size_t off : offsets) {
    auto bad = z;
    bad[off] = static_cast<std::uint8_t>(bad[off] + 0x40);
    EXPECT_EQ(decode_error(bad), ErrorCode::corrupt_archive) << "offset " << off;
  }
}

TEST(Archive, RandomCorruptionNeverCrashes) {
  std::mt19937_64 rng(42);
  const auto f = make_fixture<float>(FixtureKind::spectral, Dims::of(24, 24, 24), 13);
  for (LosslessMode mode : {LosslessMode::cr, LosslessMode::tp}) {
    const auto z = compress(f, {BoundMode::relative, 1e-3}, {mode});
    for (int trial = 0; trial < 300; ++trial) {
      auto bad = z;
      for (int k = 0; k < 1 + trial % 4; ++k) bad[rng() % bad.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
      try {
        decompress(bad);
      } catch (const Error&) {
      }
    }
  }
}

TEST(Archive, ModeNames) {
  EXPECT_EQ(parse_mode("cr"), LosslessMode::cr);
  EXPECT_EQ(parse_mode("TP"), LosslessMode::tp);
  EXPECT_FALSE(parse_mode("zip").has_value());
  EXPECT_EQ(to_string(LosslessMode::tp), "tp");
}
