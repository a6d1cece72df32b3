#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hibound/bytes.hpp"

namespace hibound::lossless {

enum class StageId : std::uint8_t {
  huffman = 1,
  rre = 2,
  rze = 3,
  tcms = 4,
  bitshuffle = 5,
};

std::string stage_name(StageId id, unsigned width);

bool valid_width(unsigned width);

/// Bytes tagged with the symbol width a stage operates on. The tail is
/// zero-padded up to a multiple of `width`; `padding` counts those bytes.
struct StageStream {
  std::vector<std::uint8_t> bytes;
  unsigned width = 1;
  std::size_t padding = 0;

  /// Copies `data` and pads it to a multiple of `multiple` bytes (defaults to the width).
  static StageStream padded(std::span<const std::uint8_t> data, unsigned width, std::size_t multiple = 0);

  std::size_t symbols() const { return bytes.size() / width; }
  std::span<const std::uint8_t> content() const {
    return std::span(bytes).first(bytes.size() - padding);
  }
};

/// Common prefix of every stage output: id, width, and the unpadded input length.
struct StageHeader {
  StageId id = StageId::rre;
  unsigned width = 1;
  std::uint64_t original_length = 0;

  static constexpr std::size_t kSize = 1 + 1 + 8;

  void write(ByteWriter& out) const;
  static StageHeader read(ByteReader& in);
};

/// Encodes with one stage; the output starts with that stage's header.
std::vector<std::uint8_t> encode_stage(StageId id, unsigned width, std::span<const std::uint8_t> input);

/// Decodes one stage output, dispatching on the id in its header.
std::vector<std::uint8_t> decode_stage(std::span<const std::uint8_t> encoded);

StageHeader peek_header(std::span<const std::uint8_t> encoded);

}  // namespace hibound::lossless
