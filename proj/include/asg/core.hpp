#ifndef ASG_CORE_HPP
#define ASG_CORE_HPP

#include <algorithm>
#include <string>

#include "asg/types.hpp"

namespace asg {

namespace detail {

inline void require_same_grid(Index h1, Index w1, Index h2, Index w2,
                              const std::string& where) {
  if (h1 != h2 || w1 != w2)
    fail(errc::dim_mismatch, where + ": grid dimensions disagree");
}

}  // namespace detail

/// Mean feature vector over the mask foreground; the single-prototype
/// degenerate form of clustering.
template <class Scalar>
PrototypeSet<Scalar> masked_average_pool(const FeatureMap<Scalar>& feat,
                                         const BinaryMask& mask) {
  detail::require_same_grid(feat.height, feat.width, mask.height(), mask.width(),
                            "masked_average_pool");
  const std::vector<Index> ids = mask.foreground_indices();
  if (ids.empty()) fail(errc::empty_mask, "masked_average_pool: empty mask");

  VectorX<Scalar> sum = VectorX<Scalar>::Zero(feat.channels);
  for (Index p : ids) sum += feat.values.row(p).transpose();
  MatrixX<Scalar> proto = (sum / static_cast<Scalar>(ids.size())).transpose();
  return PrototypeSet<Scalar>(std::move(proto));
}

/// Number of superpixel centroids for a mask of `masked_pixels` foreground
/// pixels: min(floor(N_m / seed_area), max_prototypes). A result of 0
/// signals the masked_average_pool fallback (effective count 1).
inline int adaptive_prototype_count(Index masked_pixels, const SgcConfig& cfg) {
  cfg.validate();
  if (masked_pixels < 0)
    fail(errc::invalid_value, "adaptive_prototype_count: negative pixel count");
  const Index q = masked_pixels / cfg.seed_area;
  return static_cast<int>(std::min<Index>(q, cfg.max_prototypes));
}

/// Intersection over union of two masks; 1.0 when both are empty.
inline double iou(const BinaryMask& pred, const BinaryMask& gt) {
  detail::require_same_grid(pred.height(), pred.width(), gt.height(), gt.width(),
                            "iou");
  const Index inter = (pred.bits && gt.bits).count();
  const Index uni = (pred.bits || gt.bits).count();
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

/// Mean of foreground IoU and background IoU.
inline double fb_iou(const BinaryMask& pred, const BinaryMask& gt) {
  detail::require_same_grid(pred.height(), pred.width(), gt.height(), gt.width(),
                            "fb_iou");
  const BinaryMask pred_bg(ArrayXX<bool>(!pred.bits));
  const BinaryMask gt_bg(ArrayXX<bool>(!gt.bits));
  return 0.5 * (iou(pred, gt) + iou(pred_bg, gt_bg));
}

}  // namespace asg

#endif  // ASG_CORE_HPP
