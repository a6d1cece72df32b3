#include "hibound/error.hpp"
#include "hibound/lossless/stages.hpp"

namespace hibound::lossless {

// Symbols are grouped eight at a time so every plane is a whole number of bytes.

std::vector<std::uint8_t> bit_shuffle(std::span<const std::uint8_t> input, unsigned width) {
  const StageStream s = StageStream::padded(input, width, std::size_t{8} * width);
  const std::size_t groups = s.symbols() / 8;
  const std::size_t planes = std::size_t{8} * width;
  std::vector<std::uint8_t> shuffled(s.bytes.size(), 0);

  for (std::size_t g = 0; g < groups; ++g) {
    const std::uint8_t* sym = s.bytes.data() + g * 8 * width;
    for (unsigned byte = 0; byte < width; ++byte) {
      for (unsigned bit = 0; bit < 8; ++bit) {
        std::uint8_t packed = 0;
        for (unsigned j = 0; j < 8; ++j) {
          packed = static_cast<std::uint8_t>(packed | (((sym[j * width + byte] >> bit) & 1u) << (7 - j)));
        }
        const std::size_t plane = planes - 1 - (8 * byte + bit);
        shuffled[plane * groups + g] = packed;
      }
    }
  }

  ByteWriter out(StageHeader::kSize + shuffled.size());
  StageHeader{StageId::bitshuffle, width, input.size()}.write(out);
  out.put_bytes(shuffled);
  return std::move(out).take();
}

std::vector<std::uint8_t> bit_unshuffle(std::span<const std::uint8_t> encoded) {
  ByteReader in(encoded);
  const StageHeader h = StageHeader::read(in);
  if (h.id != StageId::bitshuffle) fail(ErrorCode::corrupt_archive, "not a bit-shuffle stage");
  const std::size_t tile = std::size_t{8} * h.width;
  if (h.original_length > in.remaining()) fail(ErrorCode::corrupt_archive, "bit-shuffle length mismatch");
  const std::size_t padded = (h.original_length + tile - 1) / tile * tile;
  if (padded != in.remaining()) fail(ErrorCode::corrupt_archive, "bit-shuffle length mismatch");
  const auto body = in.get_bytes(padded, "bit-shuffle payload");

  const unsigned width = h.width;
  const std::size_t groups = padded / tile;
  const std::size_t planes = tile;
  std::vector<std::uint8_t> out(padded, 0);
  for (std::size_t g = 0; g < groups; ++g) {
    std::uint8_t* sym = out.data() + g * 8 * width;
    for (unsigned byte = 0; byte < width; ++byte) {
      for (unsigned bit = 0; bit < 8; ++bit) {
        const std::size_t plane = planes - 1 - (8 * byte + bit);
        const std::uint8_t packed = body[plane * groups + g];
        for (unsigned j = 0; j < 8; ++j) {
          sym[j * width + byte] = static_cast<std::uint8_t>(sym[j * width + byte] | (((packed >> (7 - j)) & 1u) << bit));
        }
      }
    }
  }
  out.resize(h.original_length);
  return out;
}

}  // namespace hibound::lossless
