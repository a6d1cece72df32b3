#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <span>

#include "hibound/field.hpp"
#include "hibound/interpolation.hpp"
#include "hibound/parallel.hpp"

namespace hibound {

struct AxisLattice {
  std::size_t start = 0;
  std::size_t step = 1;
  std::size_t count = 0;
};

inline AxisLattice make_lattice(std::size_t extent, std::size_t start, std::size_t step) {
  return {start, step, start < extent ? (extent - 1 - start) / step + 1 : 0};
}

/// Visits every point of a 3-axis lattice. Rows (x, y) are partitioned across
/// workers when parallel is set.
template <class F>
void for_each_lattice_point(const std::array<AxisLattice, 3>& lat, bool parallel, F&& f) {
  const std::size_t rows = lat[0].count * lat[1].count;
  if (rows == 0 || lat[2].count == 0) return;
  auto body = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const std::size_t x = lat[0].start + (r / lat[1].count) * lat[0].step;
      const std::size_t y = lat[1].start + (r % lat[1].count) * lat[1].step;
      for (std::size_t k = 0; k < lat[2].count; ++k) f(x, y, lat[2].start + k * lat[2].step);
    }
  };
  if (parallel) {
    parallel_for(rows, body, std::max<std::size_t>(1, 8192 / lat[2].count));
  } else {
    body(0, rows);
  }
}

/// seq1d pass order: decreasing extent, ties by axis index.
inline std::array<int, 3> seq1d_axis_order(const Dims& dims) {
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dims[a] > dims[b]; });
  return order;
}

/// Predicts every point first known on interpolation level `level`, i.e. the
/// points on the 2^(level-1) lattice that are not on the 2^level lattice.
/// For each such point, visit(index, prediction) returns the value to store in
/// the grid; later stencils read that stored value. Points within one pass are
/// independent, so visit may be invoked concurrently for distinct indices.
template <class T, class Visit>
void predict_level(std::span<T> grid, const Dims& dims, int level, LevelConfig config,
                   Visit&& visit, bool parallel = true) {
  const std::size_t s = std::size_t{1} << (level - 1);
  const auto& ext = dims.extent;
  const auto str = dims.strides();

  auto along = [&](std::size_t idx, std::size_t c, int axis) {
    const std::size_t d = ext[static_cast<std::size_t>(axis)];
    const std::size_t step = str[static_cast<std::size_t>(axis)] * s;
    StencilSamples<T> st;
    st.present[1] = true;
    st.value[1] = grid[idx - step];
    if (c >= 3 * s) {
      st.present[0] = true;
      st.value[0] = grid[idx - 3 * step];
    }
    if (c + s < d) {
      st.present[2] = true;
      st.value[2] = grid[idx + step];
      if (c + 3 * s < d) {
        st.present[3] = true;
        st.value[3] = grid[idx + 3 * step];
      }
    }
    return interpolate_1d(st, config.spline);
  };

  if (config.scheme == Scheme::seq1d) {
    const auto order = seq1d_axis_order(dims);
    for (std::size_t pass = 0; pass < 3; ++pass) {
      const int axis = order[pass];
      if (ext[static_cast<std::size_t>(axis)] <= s) continue;
      std::array<AxisLattice, 3> lat;
      for (std::size_t q = 0; q < 3; ++q) {
        const auto b = static_cast<std::size_t>(order[q]);
        if (q == pass) {
          lat[b] = make_lattice(ext[b], s, 2 * s);
        } else if (q < pass) {
          lat[b] = make_lattice(ext[b], 0, s);
        } else {
          lat[b] = make_lattice(ext[b], 0, 2 * s);
        }
      }
      for_each_lattice_point(lat, parallel, [&](std::size_t x, std::size_t y, std::size_t z) {
        const std::array<std::size_t, 3> c{x, y, z};
        const std::size_t idx = dims.index(x, y, z);
        grid[idx] = visit(idx, along(idx, c[static_cast<std::size_t>(axis)], axis).value);
      });
    }
    return;
  }

  // multidim: points with one, then two, then three odd coordinates.
  for (int odd_count = 1; odd_count <= 3; ++odd_count) {
    for (unsigned mask = 1; mask < 8; ++mask) {
      if (std::popcount(mask) != odd_count) continue;
      bool feasible = true;
      std::array<AxisLattice, 3> lat;
      for (std::size_t b = 0; b < 3; ++b) {
        if (mask & (1u << b)) {
          lat[b] = make_lattice(ext[b], s, 2 * s);
          feasible = feasible && lat[b].count > 0;
        } else {
          lat[b] = make_lattice(ext[b], 0, 2 * s);
        }
      }
      if (!feasible) continue;
      for_each_lattice_point(lat, parallel, [&](std::size_t x, std::size_t y, std::size_t z) {
        const std::array<std::size_t, 3> c{x, y, z};
        const std::size_t idx = dims.index(x, y, z);
        std::array<Interpolated<T>, 3> parts;
        std::size_t n = 0;
        for (int b = 0; b < 3; ++b) {
          if (mask & (1u << b)) parts[n++] = along(idx, c[static_cast<std::size_t>(b)], b);
        }
        grid[idx] = visit(idx, combine_axis_predictions<T>(std::span(parts.data(), n)));
      });
    }
  }
}

}  // namespace hibound
