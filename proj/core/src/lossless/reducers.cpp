#include <bit>
#include <cstring>
#include <string>

#include "hibound/error.hpp"
#include "hibound/lossless/stages.hpp"

namespace hibound::lossless {

namespace {

// Bitmap layout for both reducers: bit i = 1 keeps symbol i. The bitmap is
// itself reduced with RRE1 while that shrinks it, at most kMaxBitmapDepth
// times. Serialized as
//   header | depth:u8 | B_depth | P_depth .. P_1 | kept symbols
// where B_k is the bitmap after k reductions and P_k the bytes kept by the
// k-th reduction. All lengths follow from the original length and depth.

bool bit_at(std::span<const std::uint8_t> bitmap, std::size_t i) {
  return (bitmap[i >> 3] >> (7 - (i & 7))) & 1u;
}

std::size_t count_bits(std::span<const std::uint8_t> bitmap, std::size_t nbits) {
  std::size_t full = nbits / 8, count = 0;
  for (std::size_t i = 0; i < full; ++i) count += static_cast<std::size_t>(std::popcount(bitmap[i]));
  if (nbits % 8) {
    const auto mask = static_cast<std::uint8_t>(0xFF00u >> (nbits % 8));
    count += static_cast<std::size_t>(std::popcount(static_cast<std::uint8_t>(bitmap[full] & mask)));
  }
  return count;
}

template <bool Repeats>
Reduction reduce(std::span<const std::uint8_t> symbols, unsigned width) {
  const std::size_t n = symbols.size() / width;
  Reduction r;
  r.bitmap.assign((n + 7) / 8, 0);
  r.payload.reserve(symbols.size());
  const std::uint8_t* data = symbols.data();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* cur = data + i * width;
    bool keep;
    if constexpr (Repeats) {
      keep = i == 0 || std::memcmp(cur, cur - width, width) != 0;
    } else {
      keep = false;
      for (unsigned b = 0; b < width; ++b) keep = keep || cur[b] != 0;
    }
    if (keep) {
      r.bitmap[i >> 3] = static_cast<std::uint8_t>(r.bitmap[i >> 3] | (0x80u >> (i & 7)));
      r.payload.insert(r.payload.end(), cur, cur + width);
    }
  }
  return r;
}

template <StageId Id>
std::vector<std::uint8_t> encode_reducer(std::span<const std::uint8_t> input, unsigned width) {
  const StageStream s = StageStream::padded(input, width);
  Reduction main = Id == StageId::rre ? reduce<true>(s.bytes, width) : reduce<false>(s.bytes, width);

  std::vector<std::vector<std::uint8_t>> kept;
  std::vector<std::uint8_t> bitmap = std::move(main.bitmap);
  while (kept.size() < static_cast<std::size_t>(kMaxBitmapDepth) && !bitmap.empty()) {
    Reduction next = reduce<true>(bitmap, 1);
    if (next.bitmap.size() + next.payload.size() >= bitmap.size()) break;
    kept.push_back(std::move(next.payload));
    bitmap = std::move(next.bitmap);
  }

  ByteWriter out(StageHeader::kSize + 1 + bitmap.size() + main.payload.size());
  StageHeader{Id, width, input.size()}.write(out);
  out.put(static_cast<std::uint8_t>(kept.size()));
  out.put_bytes(bitmap);
  for (auto it = kept.rbegin(); it != kept.rend(); ++it) out.put_bytes(*it);
  out.put_bytes(main.payload);
  return std::move(out).take();
}

template <StageId Id>
std::vector<std::uint8_t> decode_reducer(std::span<const std::uint8_t> encoded) {
  ByteReader in(encoded);
  const StageHeader h = StageHeader::read(in);
  if (h.id != Id) fail(ErrorCode::corrupt_archive, "unexpected stage id for reducer");
  const int depth = in.get<std::uint8_t>("bitmap depth");
  if (depth > kMaxBitmapDepth) fail(ErrorCode::corrupt_archive, "bitmap recursion depth out of range");

  const unsigned w = h.width;
  const std::uint64_t padded = (h.original_length + w - 1) / w * w;
  const std::uint64_t n = padded / w;
  // Each bitmap level covers at most 8x its own size, which bounds n.
  const std::uint64_t max_symbols = (std::uint64_t{8} << (3 * depth)) * (in.remaining() + 1);
  if (n > max_symbols) fail(ErrorCode::corrupt_archive, "reducer symbol count exceeds payload");

  std::array<std::size_t, kMaxBitmapDepth + 1> len{};
  len[0] = static_cast<std::size_t>((n + 7) / 8);
  for (int i = 1; i <= depth; ++i) len[static_cast<std::size_t>(i)] = (len[static_cast<std::size_t>(i - 1)] + 7) / 8;

  auto top = in.get_bytes(len[static_cast<std::size_t>(depth)], "reducer bitmap");
  std::vector<std::uint8_t> bitmap(top.begin(), top.end());
  for (int i = depth; i >= 1; --i) {
    const std::size_t count = len[static_cast<std::size_t>(i - 1)];
    const auto payload = in.get_bytes(count_bits(bitmap, count), "reducer bitmap payload");
    std::vector<std::uint8_t> expanded(count);
    std::size_t k = 0;
    for (std::size_t j = 0; j < count; ++j) {
      if (bit_at(bitmap, j)) {
        expanded[j] = payload[k++];
      } else {
        if (j == 0) fail(ErrorCode::corrupt_archive, "bitmap drops its first byte");
        expanded[j] = expanded[j - 1];
      }
    }
    bitmap = std::move(expanded);
  }

  const auto kept = count_bits(bitmap, static_cast<std::size_t>(n));
  const auto payload = in.get_bytes(kept * w, "reducer payload");
  if (!in.done()) fail(ErrorCode::corrupt_archive, "trailing bytes after reducer payload");

  std::vector<std::uint8_t> out(static_cast<std::size_t>(padded), 0);
  const std::uint8_t* src = payload.data();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t* dst = out.data() + i * w;
    if (bit_at(bitmap, i)) {
      std::memcpy(dst, src, w);
      src += w;
    } else if constexpr (Id == StageId::rre) {
      if (i == 0) fail(ErrorCode::corrupt_archive, "RRE bitmap drops the first symbol");
      std::memcpy(dst, dst - w, w);
    }
  }
  out.resize(static_cast<std::size_t>(h.original_length));
  return out;
}

}  // namespace

Reduction reduce_repeats(std::span<const std::uint8_t> symbols, unsigned width) {
  if (!valid_width(width) || symbols.size() % width) {
    fail(ErrorCode::invalid_argument, "reducer input must be whole symbols");
  }
  return reduce<true>(symbols, width);
}

Reduction reduce_zeros(std::span<const std::uint8_t> symbols, unsigned width) {
  if (!valid_width(width) || symbols.size() % width) {
    fail(ErrorCode::invalid_argument, "reducer input must be whole symbols");
  }
  return reduce<false>(symbols, width);
}

std::vector<std::uint8_t> rre_encode(std::span<const std::uint8_t> input, unsigned width) {
  return encode_reducer<StageId::rre>(input, width);
}
std::vector<std::uint8_t> rre_decode(std::span<const std::uint8_t> encoded) {
  return decode_reducer<StageId::rre>(encoded);
}
std::vector<std::uint8_t> rze_encode(std::span<const std::uint8_t> input, unsigned width) {
  return encode_reducer<StageId::rze>(input, width);
}
std::vector<std::uint8_t> rze_decode(std::span<const std::uint8_t> encoded) {
  return decode_reducer<StageId::rze>(encoded);
}

}  // namespace hibound::lossless
