#ifndef ASG_TYPES_HPP
#define ASG_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace asg {

using Index = Eigen::Index;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using ArrayXX = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class errc {
  empty_mask,
  dim_mismatch,
  non_positive_factor,
  seed_outside_mask,
  insufficient_foreground,
  empty_prototype_set,
  index_out_of_range,
  projection_shape_mismatch,
  empty_list,
  invalid_value,
  bad_magic,
  unsupported_version,
  truncated_payload,
  shape_overflow,
  io_failure,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

/// h x w boolean foreground mask.
struct BinaryMask {
  ArrayXX<bool> bits;  // (row, col)

  BinaryMask() = default;
  BinaryMask(Index height, Index width)
      : bits(ArrayXX<bool>::Constant(height, width, false)) {}
  explicit BinaryMask(ArrayXX<bool> b) : bits(std::move(b)) {}

  Index height() const { return bits.rows(); }
  Index width() const { return bits.cols(); }
  Index size() const { return bits.size(); }
  bool at(Index row, Index col) const { return bits(row, col); }
  void set(Index row, Index col, bool value) { bits(row, col) = value; }

  Index foreground_count() const { return bits.count(); }

  /// Linear pixel ids (row * width + col) of true bits, row-major order.
  std::vector<Index> foreground_indices() const {
    std::vector<Index> ids;
    ids.reserve(static_cast<std::size_t>(foreground_count()));
    for (Index r = 0; r < height(); ++r)
      for (Index c = 0; c < width(); ++c)
        if (bits(r, c)) ids.push_back(r * width() + c);
    return ids;
  }
};

/// Dense c-channel map over an h x w pixel grid. Pixel vectors are the rows
/// of `values`, in row-major pixel order (pixel id = row * width + col).
template <class Scalar>
struct FeatureMap {
  Index channels = 0;
  Index height = 0;
  Index width = 0;
  MatrixX<Scalar> values;  // (height * width) x channels

  FeatureMap() = default;

  FeatureMap(Index c, Index h, Index w)
      : channels(c), height(h), width(w), values(MatrixX<Scalar>::Zero(h * w, c)) {
    if (c < 1 || h < 1 || w < 1)
      fail(errc::invalid_value, "FeatureMap: dimensions must be positive");
  }

  FeatureMap(Index c, Index h, Index w, MatrixX<Scalar> data)
      : channels(c), height(h), width(w), values(std::move(data)) {
    if (c < 1 || h < 1 || w < 1)
      fail(errc::invalid_value, "FeatureMap: dimensions must be positive");
    if (values.rows() != h * w || values.cols() != c)
      fail(errc::dim_mismatch, "FeatureMap: data shape does not match dimensions");
    if (!values.allFinite())
      fail(errc::invalid_value, "FeatureMap: values must be finite");
  }

  Index pixel_count() const { return height * width; }
  Scalar at(Index channel, Index row, Index col) const {
    return values(row * width + col, channel);
  }
  Scalar& at(Index channel, Index row, Index col) {
    return values(row * width + col, channel);
  }

  bool same_grid(const BinaryMask& mask) const {
    return mask.height() == height && mask.width() == width;
  }
};

/// Ordered superpixel centroids in feature space, one per row.
template <class Scalar>
struct PrototypeSet {
  MatrixX<Scalar> vectors;  // count x dim
  std::vector<int> shot;    // source shot per vector

  PrototypeSet() = default;
  explicit PrototypeSet(MatrixX<Scalar> v, int shot_index = 0)
      : vectors(std::move(v)),
        shot(static_cast<std::size_t>(vectors.rows()), shot_index) {
    if (!vectors.allFinite())
      fail(errc::invalid_value, "PrototypeSet: vectors must be finite");
  }

  Index count() const { return vectors.rows(); }
  Index dim() const { return vectors.cols(); }
};

/// Soft pixel-to-superpixel assignment weights; rows follow the masked-pixel
/// order of extract_masked, columns follow centroid order.
template <class Scalar>
struct AssociationMatrix {
  MatrixX<Scalar> weights;  // masked pixels x centroids
};

/// Cosine similarity per (prototype, pixel); values in [-1, 1].
template <class Scalar>
struct SimilarityStack {
  Index height = 0;
  Index width = 0;
  MatrixX<Scalar> values;  // (height * width) x count, pixel-major rows

  Index count() const { return values.cols(); }
  Scalar at(Index prototype, Index row, Index col) const {
    return values(row * width + col, prototype);
  }
};

/// Per-pixel index of the best-matching prototype.
struct GuideMap {
  Index height = 0;
  Index width = 0;
  Eigen::VectorXi indices;  // height * width, row-major

  int at(Index row, Index col) const { return indices(row * width + col); }
};

/// Per-pixel sum of cosine similarities over all prototypes.
template <class Scalar>
struct ProbabilityMap {
  Index height = 0;
  Index width = 0;
  VectorX<Scalar> values;  // height * width, row-major

  Scalar at(Index row, Index col) const { return values(row * width + col); }
};

/// Ordered (row, col) seed positions inside the mask foreground.
struct SeedList {
  std::vector<std::pair<Index, Index>> coords;

  std::size_t size() const { return coords.size(); }
};

/// Clustering configuration. spatial_factor weights coordinate distance
/// against feature distance and defaults to sqrt(seed_area).
struct SgcConfig {
  int seed_area = 100;      // target foreground pixels per initial seed
  int max_prototypes = 5;
  int iterations = 5;
  double spatial_factor = 10.0;
  double epsilon = 1e-12;   // normalizer guard for dead centroids

  static SgcConfig for_seed_area(int area) {
    SgcConfig cfg;
    cfg.seed_area = area;
    cfg.spatial_factor = std::sqrt(static_cast<double>(area));
    return cfg;
  }

  void validate() const {
    if (seed_area < 1) fail(errc::invalid_value, "SgcConfig: seed_area must be >= 1");
    if (max_prototypes < 1)
      fail(errc::invalid_value, "SgcConfig: max_prototypes must be >= 1");
    if (iterations < 1) fail(errc::invalid_value, "SgcConfig: iterations must be >= 1");
    if (!(spatial_factor > 0.0))
      fail(errc::non_positive_factor, "SgcConfig: spatial_factor must be > 0");
  }
};

/// User-supplied per-pixel linear map (1x1 convolution semantics).
template <class Scalar>
struct ProjectionWeights {
  MatrixX<Scalar> weight;               // out_channels x in_channels
  std::optional<VectorX<Scalar>> bias;  // out_channels

  Index out_channels() const { return weight.rows(); }
  Index in_channels() const { return weight.cols(); }

  static ProjectionWeights identity(Index n) {
    ProjectionWeights p;
    p.weight = MatrixX<Scalar>::Identity(n, n);
    return p;
  }
};

}  // namespace asg

#endif  // ASG_TYPES_HPP
