#include "hibound/lossless/stage.hpp"

#include "hibound/error.hpp"
#include "hibound/lossless/stages.hpp"

namespace hibound::lossless {

std::string stage_name(StageId id, unsigned width) {
  std::string base;
  switch (id) {
    case StageId::huffman: return "HF";
    case StageId::rre: base = "RRE"; break;
    case StageId::rze: base = "RZE"; break;
    case StageId::tcms: base = "TCMS"; break;
    case StageId::bitshuffle: base = "BIT"; break;
  }
  return base + std::to_string(width);
}

bool valid_width(unsigned width) { return width == 1 || width == 2 || width == 4 || width == 8; }

StageStream StageStream::padded(std::span<const std::uint8_t> data, unsigned width, std::size_t multiple) {
  if (!valid_width(width)) fail(ErrorCode::invalid_argument, "symbol width must be 1, 2, 4 or 8");
  if (multiple == 0) multiple = width;
  StageStream s;
  s.width = width;
  s.padding = (multiple - data.size() % multiple) % multiple;
  s.bytes.reserve(data.size() + s.padding);
  s.bytes.assign(data.begin(), data.end());
  s.bytes.resize(data.size() + s.padding, 0);
  return s;
}

void StageHeader::write(ByteWriter& out) const {
  out.put(static_cast<std::uint8_t>(id));
  out.put(static_cast<std::uint8_t>(width));
  out.put(original_length);
}

StageHeader StageHeader::read(ByteReader& in) {
  StageHeader h;
  const auto id = in.get<std::uint8_t>("stage id");
  if (id < 1 || id > 5) fail(ErrorCode::corrupt_archive, "unknown lossless stage id " + std::to_string(id));
  h.id = static_cast<StageId>(id);
  h.width = in.get<std::uint8_t>("stage width");
  if (!valid_width(h.width) || (h.id == StageId::huffman && h.width != 1)) {
    fail(ErrorCode::corrupt_archive, "invalid stage symbol width");
  }
  h.original_length = in.get<std::uint64_t>("stage length");
  return h;
}

StageHeader peek_header(std::span<const std::uint8_t> encoded) {
  ByteReader in(encoded);
  return StageHeader::read(in);
}

std::vector<std::uint8_t> encode_stage(StageId id, unsigned width, std::span<const std::uint8_t> input) {
  switch (id) {
    case StageId::huffman:
      if (width != 1) fail(ErrorCode::invalid_argument, "Huffman stage works on bytes only");
      return huffman_encode(input);
    case StageId::rre: return rre_encode(input, width);
    case StageId::rze: return rze_encode(input, width);
    case StageId::tcms: return tcms_encode(input, width);
    case StageId::bitshuffle: return bit_shuffle(input, width);
  }
  fail(ErrorCode::invalid_argument, "unknown stage");
}

std::vector<std::uint8_t> decode_stage(std::span<const std::uint8_t> encoded) {
  switch (peek_header(encoded).id) {
    case StageId::huffman: return huffman_decode(encoded);
    case StageId::rre: return rre_decode(encoded);
    case StageId::rze: return rze_decode(encoded);
    case StageId::tcms: return tcms_decode(encoded);
    case StageId::bitshuffle: return bit_unshuffle(encoded);
  }
  fail(ErrorCode::corrupt_archive, "unknown stage");
}

}  // namespace hibound::lossless
