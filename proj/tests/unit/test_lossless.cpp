#include <gtest/gtest.h>

#include <random>

#include "hibound/lossless/pipeline.hpp"
#include "hibound/lossless/stage.hpp"
#include "hibound/lossless/stages.hpp"
#include "test_support.hpp"

using namespace hibound;
using namespace hibound::lossless;

namespace {

constexpr StageId kAllStages[] = {StageId::huffman, StageId::rre, StageId::rze, StageId::tcms, StageId::bitshuffle};
constexpr unsigned kWidths[] = {1, 2, 4, 8};

std::vector<std::uint8_t> bytes(std::initializer_list<int> v) {
  std::vector<std::uint8_t> out;
  for (int x : v) out.push_back(static_cast<std::uint8_t>(x));
  return out;
}

// Inputs that stress runs, zeros, sign bits and padding.
std::vector<std::vector<std::uint8_t>> adversarial_inputs(std::mt19937_64& rng) {
  std::vector<std::vector<std::uint8_t>> out;
  for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 8u, 9u, 15u, 17u, 63u, 64u, 65u, 255u, 1000u, 4096u}) {
    out.push_back(std::vector<std::uint8_t>(n, 0));
    out.push_back(std::vector<std::uint8_t>(n, 0xFF));
    out.push_back(std::vector<std::uint8_t>(n, 128));
    out.push_back(test::random_bytes(rng, n));
    std::vector<std::uint8_t> runs(n);
    for (std::size_t i = 0; i < n; ++i) runs[i] = static_cast<std::uint8_t>((i / 37) % 3 == 0 ? 0 : 128 + (i / 37) % 5);
    out.push_back(runs);
    std::vector<std::uint8_t> alternating(n);
    for (std::size_t i = 0; i < n; ++i) alternating[i] = i % 2 ? 0x80 : 0x7F;
    out.push_back(alternating);
  }
  return out;
}

}  // namespace

TEST(Tcms, ByteExamples) {
  EXPECT_EQ(tcms_word<std::uint8_t>(0x00), 0x00);
  EXPECT_EQ(tcms_word<std::uint8_t>(0x01), 0x02);
  EXPECT_EQ(tcms_word<std::uint8_t>(0xFF), 0x01);
  EXPECT_EQ(tcms_word<std::uint8_t>(0x80), 0xFF);
}

TEST(Tcms, ExhaustiveBytesAreABijection) {
  std::vector<bool> hit(256, false);
  for (int v = 0; v < 256; ++v) {
    const auto e = tcms_word(static_cast<std::uint8_t>(v));
    EXPECT_FALSE(hit[e]);
    hit[e] = true;
    EXPECT_EQ(tcms_word_inverse(e), v);
    // Magnitude-sign: small signed magnitudes map to small codes.
    const int s = static_cast<std::int8_t>(v);
    EXPECT_EQ(e, s >= 0 ? 2 * s : -2 * s - 1);
  }
}

TEST(Tcms, WideWordsRoundTrip) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t w = rng();
    EXPECT_EQ(tcms_word_inverse(tcms_word(w)), w);
    EXPECT_EQ(tcms_word_inverse(tcms_word(static_cast<std::uint16_t>(w))), static_cast<std::uint16_t>(w));
    EXPECT_EQ(tcms_word_inverse(tcms_word(static_cast<std::uint32_t>(w))), static_cast<std::uint32_t>(w));
  }
  // Little-endian words: -1 as a 16-bit word becomes 1.
  const auto enc = tcms_encode(bytes({0xFF, 0xFF}), 2);
  EXPECT_EQ(std::vector<std::uint8_t>(enc.end() - 2, enc.end()), bytes({0x01, 0x00}));
}

TEST(BitShuffle, Examples) {
  const auto ones = bit_shuffle(std::vector<std::uint8_t>(8, 0xFF), 1);
  EXPECT_EQ(std::vector<std::uint8_t>(ones.end() - 8, ones.end()), std::vector<std::uint8_t>(8, 0xFF));
  const auto msb = bit_shuffle(std::vector<std::uint8_t>(8, 0x80), 1);
  EXPECT_EQ(std::vector<std::uint8_t>(msb.end() - 8, msb.end()), bytes({0xFF, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(BitShuffle, PlaneOrderOracle) {
  std::mt19937_64 rng(32);
  for (unsigned w : kWidths) {
    const auto in = test::random_bytes(rng, 16 * w);
    const auto enc = bit_shuffle(in, w);
    const std::span<const std::uint8_t> planes(enc.data() + StageHeader::kSize, enc.size() - StageHeader::kSize);
    const std::size_t n = in.size() / w, bits = 8 * w;
    ASSERT_EQ(planes.size(), in.size());
    for (std::size_t k = 0; k < bits; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        // Bit (bits-1-k) of little-endian symbol i.
        const std::size_t b = bits - 1 - k;
        const int expected = (in[i * w + b / 8] >> (b % 8)) & 1;
        const std::size_t pos = k * n + i;
        ASSERT_EQ((planes[pos / 8] >> (7 - pos % 8)) & 1, expected);
      }
    }
  }
}

TEST(Reducers, DefinitionalExamples) {
  auto r = reduce_repeats(bytes({'A'}), 1);
  EXPECT_EQ(r.bitmap, bytes({0x80}));
  EXPECT_EQ(r.payload, bytes({'A'}));
  r = reduce_repeats(bytes({'A', 'A', 'B', 'B'}), 1);
  EXPECT_EQ(r.bitmap, bytes({0xA0}));
  EXPECT_EQ(r.payload, bytes({'A', 'B'}));
  r = reduce_zeros(bytes({0, 0, 5, 0, 7}), 1);
  EXPECT_EQ(r.bitmap, bytes({0x28}));
  EXPECT_EQ(r.payload, bytes({5, 7}));
  r = reduce_zeros(std::vector<std::uint8_t>(20, 0), 1);
  EXPECT_TRUE(r.payload.empty());
  r = reduce_zeros(bytes({1, 2, 3, 4, 5, 6, 7, 8, 9}), 1);
  EXPECT_EQ(r.payload, bytes({1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(r.bitmap, bytes({0xFF, 0x80}));
  // Wide symbols compare whole words.
  r = reduce_repeats(bytes({1, 0, 1, 0, 0, 1}), 2);
  EXPECT_EQ(r.bitmap, bytes({0xA0}));
  EXPECT_EQ(r.payload, bytes({1, 0, 0, 1}));
}

TEST(Reducers, ConstantWordsCollapse) {
  std::vector<std::uint8_t> words;
  for (int i = 0; i < 1024; ++i) words.insert(words.end(), {0x12, 0x34, 0x56, 0x78});
  const auto enc = rre_encode(words, 4);
  EXPECT_LT(enc.size(), words.size() / 8);
  EXPECT_EQ(rre_decode(enc), words);
}

TEST(Huffman, SingleSymbolUsesOneBit) {
  const std::vector<std::uint8_t> zeros(256, 0);
  const auto enc = huffman_encode(zeros);
  EXPECT_EQ(enc.size() - StageHeader::kSize - 256 - 8, 32u);
  EXPECT_EQ(huffman_decode(enc), zeros);
}

TEST(Huffman, TwoEqualSymbolsUseOneBitEach) {
  std::vector<std::uint8_t> in;
  for (int i = 0; i < 400; ++i) in.push_back(i % 2 ? 'x' : 'y');
  const auto enc = huffman_encode(in);
  EXPECT_EQ(enc.size() - StageHeader::kSize - 256 - 8, 400u / 8);
  EXPECT_EQ(huffman_decode(enc), in);
}

TEST(Huffman, LengthsAreLimitedAndComplete) {
  // Fibonacci frequencies force a maximally skewed tree.
  std::array<std::uint64_t, 256> hist{};
  std::uint64_t a = 1, b = 1;
  for (int s = 0; s < 40; ++s) {
    hist[static_cast<std::size_t>(s)] = a;
    const auto c = a + b;
    a = b;
    b = c;
  }
  const auto lengths = huffman_code_lengths(hist);
  double kraft = 0.0;
  for (int s = 0; s < 256; ++s) {
    EXPECT_LE(lengths[s], kMaxHuffmanCodeLength);
    EXPECT_EQ(lengths[s] == 0, hist[s] == 0);
    if (lengths[s]) kraft += std::ldexp(1.0, -lengths[s]);
  }
  EXPECT_LE(kraft, 1.0);
  std::vector<std::uint8_t> in;
  for (int s = 0; s < 40; ++s) in.insert(in.end(), std::min<std::uint64_t>(hist[s], 5000), static_cast<std::uint8_t>(s));
  EXPECT_EQ(huffman_decode(huffman_encode(in)), in);
}

TEST(Huffman, RejectsNonByteWidth) { EXPECT_THROW(encode_stage(StageId::huffman, 2, bytes({1, 2})), Error); }

TEST(Stages, EveryStageAndWidthRoundTrips) {
  std::mt19937_64 rng(33);
  const auto inputs = adversarial_inputs(rng);
  for (StageId id : kAllStages) {
    for (unsigned w : kWidths) {
      if (id == StageId::huffman && w != 1) continue;
      for (const auto& in : inputs) {
        const auto enc = encode_stage(id, w, in);
        const auto h = peek_header(enc);
        EXPECT_EQ(h.id, id);
        EXPECT_EQ(h.width, w);
        EXPECT_EQ(h.original_length, in.size());
        ASSERT_EQ(decode_stage(enc), in) << stage_name(id, w) << " n=" << in.size();
      }
    }
  }
}

TEST(Stages, CorruptInputFailsCleanly) {
  std::mt19937_64 rng(34);
  int rejected = 0;
  for (StageId id : kAllStages) {
    for (unsigned w : kWidths) {
      if (id == StageId::huffman && w != 1) continue;
      for (int trial = 0; trial < 200; ++trial) {
        const auto in = test::random_bytes(rng, rng() % 300);
        auto enc = encode_stage(id, w, in);
        switch (trial % 3) {
          case 0: enc.resize(rng() % enc.size()); break;
          case 1: enc[rng() % enc.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8)); break;
          default: enc.push_back(static_cast<std::uint8_t>(rng())); break;
        }
        try {
          decode_stage(enc);
        } catch (const Error& e) {
          ++rejected;
          EXPECT_TRUE(e.code() == ErrorCode::corrupt_archive) << e.what();
        }
      }
    }
  }
  EXPECT_GT(rejected, 0);
}

TEST(Pipelines, NamesAndRoundTrip) {
  EXPECT_EQ(ratio_pipeline().name(), "HF-RRE4-TCMS8-RZE1");
  EXPECT_EQ(throughput_pipeline().name(), "TCMS1-BIT1-RRE1");
  std::mt19937_64 rng(35);
  for (const auto& in : adversarial_inputs(rng)) {
    ASSERT_EQ(ratio_pipeline().decode(ratio_pipeline().encode(in)), in);
    ASSERT_EQ(throughput_pipeline().decode(throughput_pipeline().encode(in)), in);
  }
}

TEST(Pipelines, EmptyInputIsHeadersOnly) {
  for (const Pipeline* p : {&ratio_pipeline(), &throughput_pipeline()}) {
    const auto enc = p->encode({});
    EXPECT_LT(enc.size(), 400u);
    EXPECT_TRUE(p->decode(enc).empty());
  }
}

TEST(Pipelines, ConstantCodeStreamCollapses) {
  const std::vector<std::uint8_t> codes(1 << 20, 128);
  for (const Pipeline* p : {&ratio_pipeline(), &throughput_pipeline()}) {
    const auto enc = p->encode(codes);
    EXPECT_LT(enc.size(), codes.size() / 100) << p->name() << " " << enc.size();
    EXPECT_EQ(p->decode(enc), codes);
  }
}

TEST(Pipelines, DecodeRejectsForeignStream) {
  const auto in = bytes({1, 2, 3, 4, 5});
  EXPECT_THROW(ratio_pipeline().decode(throughput_pipeline().encode(in)), Error);
  EXPECT_THROW(throughput_pipeline().decode(ratio_pipeline().encode(in)), Error);
}
