#pragma once

#include <string>
#include <vector>

#include "hibound_tools/run_record.hpp"

namespace hibound::tools {

struct SweepPlan {
  BoundMode bound_mode = BoundMode::relative;
  std::vector<double> error_bounds;
  std::vector<LosslessMode> modes{LosslessMode::cr, LosslessMode::tp};
  bool reorder = true;
};

/// One record per (bound, mode), bounds outermost in the given order.
std::vector<RunRecord> sweep(const AnyField& field, const SweepPlan& plan, const std::string& dataset);

/// Bitrate (x) against PSNR (y), one polyline per lossless mode. Byte-identical
/// for identical records; wall times do not enter the drawing.
std::string render_svg(const std::vector<RunRecord>& records, const std::string& title);

}  // namespace hibound::tools
