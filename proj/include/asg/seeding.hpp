#ifndef ASG_SEEDING_HPP
#define ASG_SEEDING_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "asg/types.hpp"

namespace asg {

/// Exact squared Euclidean distance to the nearest background pixel.
/// Positions outside the grid count as background, so the transform is
/// computed on a one-pixel zero-padded grid and cropped; the nearest outside
/// position to any pixel always lies on that ring. Two passes: a vertical
/// scan per column, then a lower envelope of parabolas per row.
inline ArrayXX<std::int64_t> distance_transform_squared(const BinaryMask& mask) {
  const Index h = mask.height();
  const Index w = mask.width();
  ArrayXX<std::int64_t> out(h, w);
  if (h == 0 || w == 0) return out;

  const Index hp = h + 2;
  const Index wp = w + 2;
  const double inf = std::numeric_limits<double>::infinity();

  // Vertical pass: row distance to the nearest background in each padded
  // column. Pad rows are background, so every distance is finite.
  ArrayXX<std::int64_t> vert(hp, wp);
  for (Index c = 0; c < wp; ++c) {
    vert(0, c) = 0;
    for (Index r = 1; r < hp; ++r) {
      const bool fg =
          r >= 1 && r <= h && c >= 1 && c <= w && mask.bits(r - 1, c - 1);
      vert(r, c) = fg ? vert(r - 1, c) + 1 : 0;
    }
    for (Index r = hp - 2; r >= 0; --r)
      vert(r, c) = std::min(vert(r, c), vert(r + 1, c) + 1);
  }

  // Horizontal pass per row: min over c' of (c - c')^2 + vert(r, c')^2.
  std::vector<Index> apex(static_cast<std::size_t>(wp));
  std::vector<double> boundary(static_cast<std::size_t>(wp) + 1);
  std::vector<std::int64_t> f(static_cast<std::size_t>(wp));
  for (Index r = 1; r <= h; ++r) {
    for (Index c = 0; c < wp; ++c) f[c] = vert(r, c) * vert(r, c);
    Index k = 0;
    apex[0] = 0;
    boundary[0] = -inf;
    boundary[1] = inf;
    for (Index q = 1; q < wp; ++q) {
      double s;
      for (;;) {
        const Index p = apex[k];
        s = (static_cast<double>(f[q] - f[p]) + static_cast<double>(q * q - p * p)) /
            static_cast<double>(2 * (q - p));
        if (s > boundary[k]) break;
        --k;
      }
      ++k;
      apex[k] = q;
      boundary[k] = s;
      boundary[k + 1] = inf;
    }
    k = 0;
    for (Index q = 1; q <= w; ++q) {
      while (boundary[k + 1] < static_cast<double>(q)) ++k;
      const Index p = apex[k];
      out(r - 1, q - 1) = (q - p) * (q - p) + f[p];
    }
  }
  return out;
}

/// Euclidean distance to the nearest background pixel (sqrt of the exact
/// squared transform). Background pixels map to 0.
template <class Scalar = double>
ArrayXX<Scalar> distance_transform(const BinaryMask& mask) {
  return distance_transform_squared(mask).template cast<Scalar>().sqrt();
}

/// Iterative seed placement: repeatedly take the foreground pixel farthest
/// from background (ties broken by smallest row, then column), record it,
/// and flip that single pixel to background before recomputing the
/// transform. Seeds are returned in placement order.
inline SeedList place_seeds(const BinaryMask& mask, int count) {
  if (count < 0) fail(errc::invalid_value, "place_seeds: negative seed count");
  if (mask.foreground_count() < count)
    fail(errc::insufficient_foreground,
         "place_seeds: mask has fewer foreground pixels than requested seeds");

  SeedList seeds;
  seeds.coords.reserve(static_cast<std::size_t>(count));
  BinaryMask working = mask;
  for (int k = 0; k < count; ++k) {
    const ArrayXX<std::int64_t> d2 = distance_transform_squared(working);
    Index best_row = 0;
    Index best_col = 0;
    std::int64_t best = -1;
    for (Index r = 0; r < working.height(); ++r)
      for (Index c = 0; c < working.width(); ++c)
        if (d2(r, c) > best) {
          best = d2(r, c);
          best_row = r;
          best_col = c;
        }
    seeds.coords.emplace_back(best_row, best_col);
    working.set(best_row, best_col, false);
  }
  return seeds;
}

}  // namespace asg

#endif  // ASG_SEEDING_HPP
