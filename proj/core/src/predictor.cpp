#include "hibound/predictor.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hibound/error.hpp"
#include "hibound/level_pass.hpp"
#include "hibound/quantizer.hpp"

namespace hibound {

std::size_t anchor_stride_for(const Dims& dims) {
  std::size_t smallest = 0;
  for (std::size_t e : dims.extent) {
    if (e > 1 && (smallest == 0 || e < smallest)) smallest = e;
  }
  if (smallest == 0) return 1;
  return std::min(kAnchorStride, std::bit_floor(smallest - 1));
}

int level_count(std::size_t anchor_stride) {
  if (anchor_stride == 0 || !std::has_single_bit(anchor_stride) || anchor_stride > kAnchorStride) {
    fail(ErrorCode::invalid_argument, "anchor stride must be a power of two no larger than 16");
  }
  return std::countr_zero(anchor_stride);
}

std::array<std::size_t, 3> anchor_counts(const Dims& dims, std::size_t stride) {
  return {(dims[0] + stride - 1) / stride, (dims[1] + stride - 1) / stride,
          (dims[2] + stride - 1) / stride};
}

template <class T>
AnchorGrid<T> extract_anchors(const Field<T>& field, std::size_t stride) {
  level_count(stride);
  AnchorGrid<T> grid;
  grid.stride = stride;
  grid.counts = anchor_counts(field.dims(), stride);
  grid.values.reserve(grid.size());
  const auto& d = field.dims();
  for (std::size_t x = 0; x < d[0]; x += stride) {
    for (std::size_t y = 0; y < d[1]; y += stride) {
      for (std::size_t z = 0; z < d[2]; z += stride) grid.values.push_back(field.at(x, y, z));
    }
  }
  return grid;
}

namespace {

template <class T, class F>
void for_each_anchor(const Dims& d, std::size_t stride, F&& f) {
  for (std::size_t x = 0; x < d[0]; x += stride) {
    for (std::size_t y = 0; y < d[1]; y += stride) {
      for (std::size_t z = 0; z < d[2]; z += stride) f(d.index(x, y, z));
    }
  }
}

}  // namespace

template <class T>
Decomposition<T> decompose(const Field<T>& field, double eb, const InterpConfig& config,
                           std::optional<std::size_t> anchor_stride) {
  const LinearQuantizer<T> quantizer(eb);
  const Dims& dims = field.dims();
  const std::size_t stride = anchor_stride.value_or(anchor_stride_for(dims));
  const int levels = level_count(stride);

  const auto original = field.values();
  std::vector<T> work(original.begin(), original.end());
  std::vector<std::uint8_t> codes(dims.count(), kZeroCode);

  for (int level = levels; level >= 1; --level) {
    predict_level<T>(work, dims, level, config.at(level), [&](std::size_t i, T prediction) {
      const auto r = quantizer.quantize(original[i], prediction);
      codes[i] = r.code;
      return r.reconstructed;
    });
  }

  QuantizedField<T> q;
  q.dims = dims;
  q.anchors = extract_anchors(field, stride);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == kOutlierCode) q.outliers.push_back({i, original[i]});
  }
  q.codes = std::move(codes);
  return {std::move(q), Field<T>(dims, std::move(work))};
}

template <class T>
Field<T> reconstruct(const QuantizedField<T>& q, double eb, const InterpConfig& config) {
  const LinearQuantizer<T> quantizer(eb);
  const Dims& dims = q.dims;
  const std::size_t n = dims.count();
  const std::size_t stride = q.anchors.stride;
  const int levels = level_count(stride);

  if (q.codes.size() != n) fail(ErrorCode::corrupt_archive, "code count does not match dims");
  if (q.anchors.counts != anchor_counts(dims, stride) || q.anchors.values.size() != q.anchors.size()) {
    fail(ErrorCode::corrupt_archive, "anchor count does not match dims");
  }
  std::size_t marked = 0;
  for (auto c : q.codes) marked += c == kOutlierCode;
  if (marked != q.outliers.size()) {
    fail(ErrorCode::corrupt_archive, std::to_string(marked) + " outlier markers but " +
                                         std::to_string(q.outliers.size()) + " stored outliers");
  }
  for (std::size_t k = 0; k < q.outliers.size(); ++k) {
    const auto idx = q.outliers[k].index;
    if (idx >= n || q.codes[idx] != kOutlierCode || (k > 0 && q.outliers[k - 1].index >= idx)) {
      fail(ErrorCode::corrupt_archive, "outlier entry without a matching marker");
    }
  }

  std::vector<T> work(n, T{0});
  std::size_t next_anchor = 0;
  for_each_anchor<T>(dims, stride, [&](std::size_t idx) {
    if (q.codes[idx] != kZeroCode) fail(ErrorCode::corrupt_archive, "anchor position carries a code");
    work[idx] = q.anchors.values[next_anchor++];
  });

  auto outlier_value = [&](std::size_t idx) {
    const auto it = std::lower_bound(q.outliers.begin(), q.outliers.end(), idx,
                                     [](const Outlier<T>& o, std::size_t i) { return o.index < i; });
    return it->value;
  };

  for (int level = levels; level >= 1; --level) {
    predict_level<T>(work, dims, level, config.at(level), [&](std::size_t i, T prediction) {
      const std::uint8_t code = q.codes[i];
      return code == kOutlierCode ? outlier_value(i) : quantizer.recover(prediction, code);
    });
  }
  return Field<T>(dims, std::move(work));
}

template AnchorGrid<float> extract_anchors<float>(const Field<float>&, std::size_t);
template AnchorGrid<double> extract_anchors<double>(const Field<double>&, std::size_t);
template Decomposition<float> decompose<float>(const Field<float>&, double, const InterpConfig&,
                                               std::optional<std::size_t>);
template Decomposition<double> decompose<double>(const Field<double>&, double, const InterpConfig&,
                                                 std::optional<std::size_t>);
template Field<float> reconstruct<float>(const QuantizedField<float>&, double, const InterpConfig&);
template Field<double> reconstruct<double>(const QuantizedField<double>&, double,
                                           const InterpConfig&);

}  // namespace hibound
