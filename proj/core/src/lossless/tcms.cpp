#include <cstring>

#include "hibound/error.hpp"
#include "hibound/lossless/stages.hpp"

namespace hibound::lossless {

namespace {

template <class U, bool Forward>
void transform_words(std::span<std::uint8_t> bytes) {
  for (std::size_t off = 0; off < bytes.size(); off += sizeof(U)) {
    U word = 0;
    for (std::size_t b = 0; b < sizeof(U); ++b) word |= static_cast<U>(static_cast<U>(bytes[off + b]) << (8 * b));
    word = Forward ? tcms_word(word) : tcms_word_inverse(word);
    for (std::size_t b = 0; b < sizeof(U); ++b) bytes[off + b] = static_cast<std::uint8_t>(word >> (8 * b));
  }
}

template <bool Forward>
void transform(std::span<std::uint8_t> bytes, unsigned width) {
  switch (width) {
    case 1: transform_words<std::uint8_t, Forward>(bytes); break;
    case 2: transform_words<std::uint16_t, Forward>(bytes); break;
    case 4: transform_words<std::uint32_t, Forward>(bytes); break;
    case 8: transform_words<std::uint64_t, Forward>(bytes); break;
    default: fail(ErrorCode::invalid_argument, "symbol width must be 1, 2, 4 or 8");
  }
}

}  // namespace

std::vector<std::uint8_t> tcms_encode(std::span<const std::uint8_t> input, unsigned width) {
  StageStream s = StageStream::padded(input, width);
  transform<true>(s.bytes, width);
  ByteWriter out(StageHeader::kSize + s.bytes.size());
  StageHeader{StageId::tcms, width, input.size()}.write(out);
  out.put_bytes(s.bytes);
  return std::move(out).take();
}

std::vector<std::uint8_t> tcms_decode(std::span<const std::uint8_t> encoded) {
  ByteReader in(encoded);
  const StageHeader h = StageHeader::read(in);
  if (h.id != StageId::tcms) fail(ErrorCode::corrupt_archive, "not a TCMS stage");
  const std::size_t padded = (h.original_length + h.width - 1) / h.width * h.width;
  if (h.original_length > in.remaining() || padded != in.remaining()) {
    fail(ErrorCode::corrupt_archive, "TCMS payload length mismatch");
  }
  auto body = in.get_bytes(padded, "TCMS payload");
  std::vector<std::uint8_t> out(body.begin(), body.end());
  transform<false>(out, h.width);
  out.resize(h.original_length);
  return out;
}

}  // namespace hibound::lossless
