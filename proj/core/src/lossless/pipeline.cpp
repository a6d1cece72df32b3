#include "hibound/lossless/pipeline.hpp"

#include "hibound/error.hpp"

namespace hibound::lossless {

Pipeline::Pipeline(std::vector<StageSpec> stages) : stages_(std::move(stages)) {
  for (const auto& s : stages_) {
    if (!valid_width(s.width)) fail(ErrorCode::invalid_argument, "invalid stage width in pipeline");
  }
}

std::vector<std::uint8_t> Pipeline::encode(std::span<const std::uint8_t> input) const {
  std::vector<std::uint8_t> data(input.begin(), input.end());
  for (const auto& s : stages_) data = encode_stage(s.id, s.width, data);
  return data;
}

std::vector<std::uint8_t> Pipeline::decode(std::span<const std::uint8_t> encoded) const {
  std::vector<std::uint8_t> data(encoded.begin(), encoded.end());
  for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
    const StageHeader h = peek_header(data);
    if (h.id != it->id || h.width != it->width) {
      fail(ErrorCode::corrupt_archive, "expected stage " + stage_name(it->id, it->width) + ", found " +
                                           stage_name(h.id, h.width));
    }
    data = decode_stage(data);
  }
  return data;
}

std::string Pipeline::name() const {
  std::string n;
  for (const auto& s : stages_) {
    if (!n.empty()) n += '-';
    n += stage_name(s.id, s.width);
  }
  return n;
}

const Pipeline& ratio_pipeline() {
  static const Pipeline p({{StageId::huffman, 1}, {StageId::rre, 4}, {StageId::tcms, 8}, {StageId::rze, 1}});
  return p;
}

const Pipeline& throughput_pipeline() {
  static const Pipeline p({{StageId::tcms, 1}, {StageId::bitshuffle, 1}, {StageId::rre, 1}});
  return p;
}

}  // namespace hibound::lossless
