#include "hibound/autotune.hpp"

#include <cmath>
#include <json.hpp>

#include "hibound/level_pass.hpp"
#include "hibound/parallel.hpp"
#include "hibound/predictor.hpp"
#include "hibound/quantizer.hpp"

namespace hibound {

BlockSampling sample_blocks(const Dims& dims) {
  BlockSampling s;
  bool fits = true;
  for (std::size_t a = 0; a < 3; ++a) {
    if (dims.extent[a] > 1 && dims.extent[a] < kTuneBlockExtent) fits = false;
  }
  if (!fits) {
    s.extent = dims.extent;
    s.anchor_stride = anchor_stride_for(dims);
    s.origins.push_back({0, 0, 0});
    s.whole_field = true;
    return s;
  }

  // Blocks one lattice step apart would share a face; two steps keep them disjoint.
  constexpr std::size_t lattice = kTuneBlockExtent - 1;
  constexpr std::size_t min_gap = 2 * lattice;
  std::array<std::size_t, 3> available{1, 1, 1};
  std::array<std::size_t, 3> last_origin{0, 0, 0};
  for (std::size_t a = 0; a < 3; ++a) {
    if (dims.extent[a] > 1) {
      s.extent[a] = kTuneBlockExtent;
      available[a] = (dims.extent[a] - kTuneBlockExtent) / min_gap + 1;
      last_origin[a] = (dims.extent[a] - kTuneBlockExtent) / lattice * lattice;
    }
  }
  s.anchor_stride = lattice;
  const std::size_t total_available = available[0] * available[1] * available[2];
  const double wanted = std::ceil(kTuneSampleFraction * static_cast<double>(dims.count()) /
                                  static_cast<double>(s.block_points()));
  std::size_t count = wanted < 1.0 ? 1 : static_cast<std::size_t>(wanted);
  count = std::min(count, total_available);

  // Grow the per-axis cell counts, coarsest axis first, until the cells hold count blocks.
  std::array<std::size_t, 3> cells{1, 1, 1};
  while (cells[0] * cells[1] * cells[2] < count) {
    std::size_t grow = 3;
    for (std::size_t a = 0; a < 3; ++a) {
      if (cells[a] == available[a]) continue;
      if (grow == 3 || dims.extent[a] * cells[grow] > dims.extent[grow] * cells[a]) grow = a;
    }
    ++cells[grow];
  }

  // One origin per cell, centred in the cell and snapped to the lattice, then
  // pushed apart to min_gap (feasible because cells <= available).
  std::array<std::vector<std::size_t>, 3> axis_origins;
  for (std::size_t a = 0; a < 3; ++a) {
    const std::size_t c = cells[a];
    auto& o = axis_origins[a];
    o.resize(c, 0);
    if (dims.extent[a] == 1) continue;
    for (std::size_t j = 0; j < c; ++j) {
      const double centre = (static_cast<double>(j) + 0.5) * static_cast<double>(dims.extent[a]) /
                                static_cast<double>(c) -
                            0.5 * static_cast<double>(kTuneBlockExtent);
      const double snapped = std::round(std::max(0.0, centre) / static_cast<double>(lattice));
      o[j] = std::min(static_cast<std::size_t>(snapped) * lattice, last_origin[a]);
      if (j > 0) o[j] = std::max(o[j], o[j - 1] + min_gap);
    }
    for (std::size_t j = c; j-- > 0;) {
      o[j] = std::min(o[j], last_origin[a] - (c - 1 - j) * min_gap);
    }
  }

  const std::size_t total_cells = cells[0] * cells[1] * cells[2];
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t pick = (2 * i + 1) * total_cells / (2 * count);
    const std::size_t bx = pick / (cells[1] * cells[2]);
    const std::size_t by = (pick / cells[2]) % cells[1];
    const std::size_t bz = pick % cells[2];
    s.origins.push_back({axis_origins[0][bx], axis_origins[1][by], axis_origins[2][bz]});
  }
  return s;
}

LevelConfig select_config(const std::array<double, 4>& error) {
  int best = 0;
  for (int r = 1; r < 4; ++r) {
    if (error[static_cast<std::size_t>(r)] < error[static_cast<std::size_t>(best)]) best = r;
  }
  return LevelConfig::from_rank(best);
}

namespace {

template <class T>
struct BlockTrial {
  Dims dims;
  std::vector<T> original;
  std::vector<T> work;
  std::array<std::vector<T>, 4> candidates;
};

template <class T>
BlockTrial<T> extract_block(const Field<T>& field, const BlockSampling& s,
                            const std::array<std::size_t, 3>& origin) {
  BlockTrial<T> b;
  b.dims.extent = s.extent;
  b.dims.rank = field.dims().rank;
  b.original.reserve(b.dims.count());
  for (std::size_t x = 0; x < s.extent[0]; ++x) {
    for (std::size_t y = 0; y < s.extent[1]; ++y) {
      for (std::size_t z = 0; z < s.extent[2]; ++z) {
        b.original.push_back(field.at(origin[0] + x, origin[1] + y, origin[2] + z));
      }
    }
  }
  b.work = b.original;
  return b;
}

}  // namespace

template <class T>
TuneReport tune_report(const Field<T>& field, double eb) {
  const LinearQuantizer<T> quantizer(eb);
  TuneReport report;
  report.sampling = sample_blocks(field.dims());
  report.config = InterpConfig::uniform({Spline::cubic, Scheme::multidim});
  for (int l = 1; l <= kMaxLevels; ++l) report.levels[static_cast<std::size_t>(l - 1)].level = l;

  const int levels = level_count(report.sampling.anchor_stride);
  if (levels == 0) return report;

  std::vector<BlockTrial<T>> blocks;
  blocks.reserve(report.sampling.origins.size());
  for (const auto& origin : report.sampling.origins) {
    blocks.push_back(extract_block(field, report.sampling, origin));
  }
  // per block, per config
  std::vector<std::array<double, 4>> block_error(blocks.size());

  for (int level = levels; level >= 1; --level) {
    parallel_for(blocks.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t bi = begin; bi < end; ++bi) {
        auto& b = blocks[bi];
        for (int r = 0; r < 4; ++r) {
          auto& trial = b.candidates[static_cast<std::size_t>(r)];
          trial = b.work;
          double sum = 0.0;
          predict_level<T>(
              trial, b.dims, level, LevelConfig::from_rank(r),
              [&](std::size_t i, T prediction) {
                sum += std::abs(static_cast<double>(b.original[i]) - static_cast<double>(prediction));
                return quantizer.quantize(b.original[i], prediction).reconstructed;
              },
              /*parallel=*/false);
          block_error[bi][static_cast<std::size_t>(r)] = sum;
        }
      }
    });

    auto& lt = report.levels[static_cast<std::size_t>(level - 1)];
    lt.evaluated = true;
    lt.error = {};
    for (const auto& e : block_error) {
      for (std::size_t r = 0; r < 4; ++r) lt.error[r] += e[r];
    }
    lt.chosen = select_config(lt.error);
    report.config.at(level) = lt.chosen;
    for (auto& b : blocks) b.work = std::move(b.candidates[static_cast<std::size_t>(lt.chosen.rank())]);
  }
  return report;
}

template TuneReport tune_report<float>(const Field<float>&, double);
template TuneReport tune_report<double>(const Field<double>&, double);

std::string TuneReport::to_json() const {
  using nlohmann::json;
  json j;
  j["anchor_stride"] = sampling.anchor_stride;
  j["block_extent"] = sampling.extent;
  j["whole_field"] = sampling.whole_field;
  j["block_origins"] = sampling.origins;
  json levels_json = json::array();
  for (const auto& lt : levels) {
    if (!lt.evaluated) continue;
    json l;
    l["level"] = lt.level;
    json errors = json::object();
    for (int r = 0; r < 4; ++r) errors[to_string(LevelConfig::from_rank(r))] = lt.error[static_cast<std::size_t>(r)];
    l["error"] = errors;
    l["chosen"] = to_string(lt.chosen);
    levels_json.push_back(l);
  }
  j["levels"] = levels_json;
  return j.dump(2);
}

}  // namespace hibound
