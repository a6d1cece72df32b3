#include <gtest/gtest.h>

#include <sstream>

#include "hibound/raw_io.hpp"
#include "hibound_tools/fixtures.hpp"
#include "hibound_tools/run_record.hpp"
#include "hibound_tools/sweep.hpp"
#include "test_support.hpp"

using namespace hibound;
using namespace hibound::tools;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST(Fixtures, KindNames) {
  for (auto k : {FixtureKind::constant, FixtureKind::affine, FixtureKind::gaussian_mix, FixtureKind::spectral,
                 FixtureKind::uniform_noise}) {
    EXPECT_EQ(parse_fixture_kind(to_string(k)), k);
  }
  EXPECT_EQ(parse_fixture_kind("turbulence-like-spectral"), FixtureKind::spectral);
  EXPECT_FALSE(parse_fixture_kind("lorenz").has_value());
}

TEST(Fixtures, ConstantHasZeroRange) {
  EXPECT_EQ(value_range(make_fixture<float>(FixtureKind::constant, Dims::of(16, 16, 16), 3)), 0.0);
}

TEST(Fixtures, AffineFormula) {
  const auto f = make_fixture<double>(FixtureKind::affine, Dims::of(4, 5, 6), 0);
  EXPECT_EQ(f.at(3, 4, 5), 1.0 + 6.0 + 12.0 + 25.0);
  EXPECT_EQ(f.at(0, 0, 0), 1.0);
}

TEST(Fixtures, ReproducibleBySeed) {
  for (auto k : {FixtureKind::gaussian_mix, FixtureKind::spectral, FixtureKind::uniform_noise}) {
    const auto a = field_to_bytes(make_fixture<float>(k, Dims::of(20, 30, 10), 5));
    const auto b = field_to_bytes(make_fixture<float>(k, Dims::of(20, 30, 10), 5));
    const auto c = field_to_bytes(make_fixture<float>(k, Dims::of(20, 30, 10), 6));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
  }
}

TEST(Fixtures, TwoDimensionalKinds) {
  for (auto k : {FixtureKind::gaussian_mix, FixtureKind::spectral}) {
    const auto f = make_fixture<float>(k, Dims::of(128, 96), 1);
    EXPECT_GT(value_range(f), 0.0);
  }
}

TEST(Fixtures, GaussianMixGoldenChecksum) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(64, 64, 64), 7);
  EXPECT_EQ(fnv1a(field_to_bytes(f)), 0x3cab33670196c302ull);
}

TEST(Fnv1a, ReferenceVectors) {
  EXPECT_EQ(fnv1a({}), 0xcbf29ce484222325ull);
  const std::uint8_t a[] = {'a'};
  EXPECT_EQ(fnv1a(a), 0xaf63dc4c8601ec8cull);
  const std::uint8_t foobar[] = {'f', 'o', 'o', 'b', 'a', 'r'};
  EXPECT_EQ(fnv1a(foobar), 0x85944171f73967e8ull);
}

TEST(RunRecord, MetricsAreConsistent) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(48, 48, 48), 3);
  const auto r = measure(AnyField(f), {BoundMode::relative, 1e-3}, {}, "gm");
  EXPECT_EQ(r.original_bytes, f.byte_size());
  EXPECT_DOUBLE_EQ(r.compression_ratio * static_cast<double>(r.compressed_bytes),
                   static_cast<double>(r.original_bytes));
  EXPECT_DOUBLE_EQ(r.bitrate, 32.0 / r.compression_ratio);
  EXPECT_GE(r.compress_seconds, 0.0);
  EXPECT_GE(r.decompress_seconds, 0.0);
  EXPECT_LE(r.max_abs_error, r.error_bound);
  EXPECT_EQ(r.header_bytes + r.anchor_bytes + r.outlier_bytes + r.stream_bytes, r.compressed_bytes);
  EXPECT_EQ(r.bound.mode, BoundMode::relative);

  const auto header = split(csv_header(), ',');
  const auto row = split(to_csv(r), ',');
  ASSERT_EQ(header.size(), row.size());
  EXPECT_EQ(header[0], "record_version");
  EXPECT_EQ(row[0], std::to_string(kRecordVersion));
  EXPECT_EQ(row[1], "gm");
  EXPECT_EQ(row[2], "48x48x48");
  EXPECT_NE(to_json(r).find("\"cr\":"), std::string::npos);
}

TEST(RunRecord, LosslessReconstructionPrintsInf) {
  const auto f = make_fixture<float>(FixtureKind::constant, Dims::of(32, 32, 32), 3);
  const auto r = measure(AnyField(f), {BoundMode::absolute, 1e-3}, {}, "const");
  EXPECT_TRUE(std::isinf(r.psnr));
  EXPECT_EQ(split(to_csv(r), ',')[12], "inf");
  EXPECT_NE(to_json(r).find("\"psnr\":\"inf\""), std::string::npos);
}

TEST(RunRecord, AnalyzeRejectsMismatchedOriginal) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(20, 20, 20), 3);
  const auto g = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(20, 20, 10), 3);
  const auto z = compress(f, {BoundMode::relative, 1e-3});
  EXPECT_THROW(analyze(AnyField(g), z, "x"), Error);
}

TEST(RunRecord, QualityFromKnownMse) {
  const Dims d = Dims::of(8, 8, 8);
  const auto orig = test::field_from<double>(d, [](auto x, auto, auto) { return x % 2 ? 1.0 : 0.0; });
  const auto recon = test::field_from<double>(d, [](auto x, auto y, auto z) {
    return (x % 2 ? 1.0 : 0.0) + ((x + y + z) % 2 ? 1e-3 : -1e-3);
  });
  const auto q = evaluate_quality(orig, recon, 512);
  EXPECT_NEAR(q.psnr, 60.0, 1e-9);
  EXPECT_DOUBLE_EQ(q.compression_ratio, 8.0);
}

TEST(Sweep, MonotoneOnSmoothFixture) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(64, 64, 64), 7);
  SweepPlan plan;
  plan.error_bounds = {1e-2, 1e-3, 1e-4};
  const auto records = sweep(AnyField(f), plan, "gm");
  ASSERT_EQ(records.size(), 6u);
  for (LosslessMode mode : {LosslessMode::cr, LosslessMode::tp}) {
    std::vector<const RunRecord*> series;
    for (const auto& r : records) if (r.mode == mode) series.push_back(&r);
    ASSERT_EQ(series.size(), 3u);
    for (std::size_t i = 1; i < series.size(); ++i) {
      EXPECT_GT(series[i]->psnr, series[i - 1]->psnr);
      EXPECT_GT(series[i]->bitrate, series[i - 1]->bitrate);
    }
  }
}

TEST(Sweep, EmptyBoundListIsRejected) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(20, 20, 20), 7);
  SweepPlan plan;
  try {
    sweep(AnyField(f), plan, "gm");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
}

TEST(Sweep, SvgIsDeterministic) {
  const auto f = make_fixture<float>(FixtureKind::gaussian_mix, Dims::of(32, 32, 32), 7);
  SweepPlan plan;
  plan.error_bounds = {1e-2, 1e-3};
  auto records = sweep(AnyField(f), plan, "gm");
  const std::string a = render_svg(records, "t");
  for (auto& r : records) r.compress_seconds += 1.0;
  const std::string b = render_svg(records, "t");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("<?xml", 0), 0u);
  EXPECT_NE(a.find("<svg"), std::string::npos);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
  EXPECT_NE(a.find("cr mode"), std::string::npos);
  EXPECT_NE(a.find("tp mode"), std::string::npos);
}
