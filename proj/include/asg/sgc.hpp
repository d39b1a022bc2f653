#ifndef ASG_SGC_HPP
#define ASG_SGC_HPP

#include <string>
#include <vector>

#include "asg/core.hpp"
#include "asg/seeding.hpp"
#include "asg/types.hpp"

namespace asg {

/// Appends two channels holding (row / spatial_factor, col / spatial_factor)
/// per pixel. Squared Euclidean distance in the augmented space is the
/// feature distance plus the spatial distance scaled by 1/spatial_factor.
template <class Scalar>
FeatureMap<Scalar> augment_coordinates(const FeatureMap<Scalar>& feat,
                                       double spatial_factor) {
  if (!(spatial_factor > 0.0))
    fail(errc::non_positive_factor, "augment_coordinates: factor must be > 0");
  const Scalar inv = Scalar(1) / static_cast<Scalar>(spatial_factor);

  MatrixX<Scalar> values(feat.pixel_count(), feat.channels + 2);
  values.leftCols(feat.channels) = feat.values;
  for (Index r = 0; r < feat.height; ++r)
    for (Index c = 0; c < feat.width; ++c) {
      const Index p = r * feat.width + c;
      values(p, feat.channels) = static_cast<Scalar>(r) * inv;
      values(p, feat.channels + 1) = static_cast<Scalar>(c) * inv;
    }
  return FeatureMap<Scalar>(feat.channels + 2, feat.height, feat.width,
                            std::move(values));
}

/// Gathers the pixel vectors at true mask bits, one row per masked pixel in
/// row-major mask order. This order defines the association-matrix rows.
template <class Scalar>
MatrixX<Scalar> extract_masked(const FeatureMap<Scalar>& feat,
                               const BinaryMask& mask) {
  detail::require_same_grid(feat.height, feat.width, mask.height(), mask.width(),
                            "extract_masked");
  const std::vector<Index> ids = mask.foreground_indices();
  if (ids.empty()) fail(errc::empty_mask, "extract_masked: empty mask");

  MatrixX<Scalar> rows(static_cast<Index>(ids.size()), feat.channels);
  for (Index i = 0; i < rows.rows(); ++i)
    rows.row(i) = feat.values.row(ids[static_cast<std::size_t>(i)]);
  return rows;
}

/// Initial centroids: the masked-feature rows at the seed positions.
template <class Scalar>
MatrixX<Scalar> init_centroids(const MatrixX<Scalar>& masked,
                               const SeedList& seeds, const BinaryMask& mask) {
  // Rank of each foreground pixel within the row-major masked order.
  Eigen::VectorXi rank = Eigen::VectorXi::Constant(mask.size(), -1);
  Index next = 0;
  for (Index r = 0; r < mask.height(); ++r)
    for (Index c = 0; c < mask.width(); ++c)
      if (mask.bits(r, c)) rank(r * mask.width() + c) = static_cast<int>(next++);
  if (masked.rows() != next)
    fail(errc::dim_mismatch, "init_centroids: masked rows do not match mask");

  MatrixX<Scalar> centroids(static_cast<Index>(seeds.size()), masked.cols());
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const auto [row, col] = seeds.coords[k];
    if (row < 0 || row >= mask.height() || col < 0 || col >= mask.width() ||
        !mask.bits(row, col))
      fail(errc::seed_outside_mask,
           "init_centroids: seed " + std::to_string(k) + " is not foreground");
    centroids.row(static_cast<Index>(k)) = masked.row(rank(row * mask.width() + col));
  }
  return centroids;
}

/// Soft assignment weights exp(-||pixel - centroid||^2). The global maximum
/// exponent is subtracted before exponentiation: a single positive scale on
/// all weights, which cancels in the centroid update.
template <class Scalar>
AssociationMatrix<Scalar> association(const MatrixX<Scalar>& masked,
                                      const MatrixX<Scalar>& centroids) {
  if (masked.cols() != centroids.cols())
    fail(errc::dim_mismatch, "association: feature dimensions disagree");

  AssociationMatrix<Scalar> assoc;
  if (masked.rows() == 0 || centroids.rows() == 0) {
    assoc.weights.resize(masked.rows(), centroids.rows());
    return assoc;
  }
  MatrixX<Scalar> dist2(masked.rows(), centroids.rows());
  for (Index i = 0; i < centroids.rows(); ++i)
    dist2.col(i) = (masked.rowwise() - centroids.row(i)).rowwise().squaredNorm();
  const Scalar shift = dist2.minCoeff();
  assoc.weights = (shift - dist2.array()).exp().matrix();
  return assoc;
}

/// Weighted mean of masked rows per centroid. A centroid whose total weight
/// falls below `epsilon` keeps its previous value.
template <class Scalar>
MatrixX<Scalar> update_centroids(const MatrixX<Scalar>& masked,
                                 const AssociationMatrix<Scalar>& assoc,
                                 const MatrixX<Scalar>& prev, double epsilon) {
  if (assoc.weights.rows() != masked.rows() || assoc.weights.cols() != prev.rows() ||
      prev.cols() != masked.cols())
    fail(errc::dim_mismatch, "update_centroids: inconsistent shapes");

  MatrixX<Scalar> next(prev.rows(), prev.cols());
  VectorX<Scalar> weights(masked.rows());
  for (Index i = 0; i < prev.rows(); ++i) {
    // copy into an aligned buffer so the reduction order, and hence the
    // result bits, do not depend on where column i sits in memory
    weights = assoc.weights.col(i);
    const Scalar z = weights.sum();
    if (z < static_cast<Scalar>(epsilon))
      next.row(i) = prev.row(i);
    else
      next.row(i) = (weights.transpose() * masked) / z;
  }
  return next;
}

/// Superpixel-guided clustering of the masked support feature. Chooses the
/// prototype count adaptively; a count of 0 or 1 routes to
/// masked_average_pool. Otherwise places seeds by distance transform, runs
/// the configured number of association/update rounds in coordinate-augmented
/// space, and strips the two coordinate channels from the result.
template <class Scalar>
PrototypeSet<Scalar> sgc_cluster(const FeatureMap<Scalar>& feat,
                                 const BinaryMask& mask, const SgcConfig& cfg) {
  cfg.validate();
  detail::require_same_grid(feat.height, feat.width, mask.height(), mask.width(),
                            "sgc_cluster");
  const Index n_masked = mask.foreground_count();
  if (n_masked == 0) fail(errc::empty_mask, "sgc_cluster: empty mask");

  const int n = adaptive_prototype_count(n_masked, cfg);
  if (n <= 1) return masked_average_pool(feat, mask);

  const SeedList seeds = place_seeds(mask, n);
  const FeatureMap<Scalar> augmented = augment_coordinates(feat, cfg.spatial_factor);
  const MatrixX<Scalar> masked = extract_masked(augmented, mask);
  MatrixX<Scalar> centroids = init_centroids(masked, seeds, mask);
  for (int t = 0; t < cfg.iterations; ++t) {
    const AssociationMatrix<Scalar> assoc = association(masked, centroids);
    centroids = update_centroids(masked, assoc, centroids, cfg.epsilon);
  }
  return PrototypeSet<Scalar>(centroids.leftCols(feat.channels));
}

}  // namespace asg

#endif  // ASG_SGC_HPP
