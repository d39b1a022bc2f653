#ifndef ASG_TESTS_HELPERS_HPP
#define ASG_TESTS_HELPERS_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "asg/types.hpp"

namespace testutil {

using asg::Index;

template <class Scalar = double>
asg::FeatureMap<Scalar> random_feature_map(std::mt19937& rng, Index c, Index h,
                                           Index w, double lo = -2.0,
                                           double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  asg::FeatureMap<Scalar> feat(c, h, w);
  for (Index p = 0; p < feat.pixel_count(); ++p)
    for (Index ch = 0; ch < c; ++ch)
      feat.values(p, ch) = static_cast<Scalar>(dist(rng));
  return feat;
}

inline asg::BinaryMask random_mask(std::mt19937& rng, Index h, Index w,
                                   double density, Index min_foreground = 0) {
  std::bernoulli_distribution bit(density);
  asg::BinaryMask mask(h, w);
  for (Index r = 0; r < h; ++r)
    for (Index c = 0; c < w; ++c) mask.bits(r, c) = bit(rng);
  std::uniform_int_distribution<Index> row(0, h - 1), col(0, w - 1);
  while (mask.foreground_count() < min_foreground)
    mask.bits(row(rng), col(rng)) = true;
  return mask;
}

inline asg::BinaryMask full_mask(Index h, Index w) {
  asg::BinaryMask mask(h, w);
  mask.bits.setConstant(true);
  return mask;
}

inline asg::BinaryMask rect_mask(Index h, Index w, Index r0, Index r1, Index c0,
                                 Index c1) {
  asg::BinaryMask mask(h, w);
  for (Index r = r0; r <= r1; ++r)
    for (Index c = c0; c <= c1; ++c) mask.bits(r, c) = true;
  return mask;
}

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& prefix) {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           (prefix + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::vector<unsigned char> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::vector<unsigned char>((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
}

}  // namespace testutil

#endif  // ASG_TESTS_HELPERS_HPP
