#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hibound/lossless/stage.hpp"

namespace hibound::lossless {

struct StageSpec {
  StageId id;
  unsigned width;
};

/// A fixed chain of stages. Each stage consumes the full output (header
/// included) of the previous one.
class Pipeline {
 public:
  explicit Pipeline(std::vector<StageSpec> stages);

  std::vector<std::uint8_t> encode(std::span<const std::uint8_t> input) const;
  std::vector<std::uint8_t> decode(std::span<const std::uint8_t> encoded) const;

  const std::vector<StageSpec>& stages() const { return stages_; }
  std::string name() const;

 private:
  std::vector<StageSpec> stages_;
};

/// HF-RRE4-TCMS8-RZE1, the ratio-preferred pipeline.
const Pipeline& ratio_pipeline();
/// TCMS1-BIT1-RRE1, the throughput-preferred pipeline.
const Pipeline& throughput_pipeline();

}  // namespace hibound::lossless
