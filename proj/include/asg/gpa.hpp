#ifndef ASG_GPA_HPP
#define ASG_GPA_HPP

#include <string>

#include "asg/core.hpp"
#include "asg/types.hpp"

namespace asg {

/// Cosine similarity between every prototype and every query pixel vector.
/// A vector whose norm falls below 1e-12 gets similarity 0. Each prototype's
/// plane is computed independently, so adding prototypes never perturbs the
/// planes of existing ones.
template <class Scalar>
SimilarityStack<Scalar> similarity_stack(const PrototypeSet<Scalar>& protos,
                                         const FeatureMap<Scalar>& query) {
  if (protos.count() < 1)
    fail(errc::empty_prototype_set, "similarity_stack: no prototypes");
  if (protos.dim() != query.channels)
    fail(errc::dim_mismatch, "similarity_stack: channel counts disagree");
  const Scalar cutoff = static_cast<Scalar>(1e-12);

  const VectorX<Scalar> pixel_norm = query.values.rowwise().norm();
  SimilarityStack<Scalar> stack;
  stack.height = query.height;
  stack.width = query.width;
  stack.values.resize(query.pixel_count(), protos.count());
  for (Index i = 0; i < protos.count(); ++i) {
    const Scalar proto_norm = protos.vectors.row(i).norm();
    if (proto_norm < cutoff) {
      stack.values.col(i).setZero();
      continue;
    }
    const VectorX<Scalar> dots = query.values * protos.vectors.row(i).transpose();
    for (Index p = 0; p < dots.size(); ++p)
      stack.values(p, i) = pixel_norm(p) < cutoff
                               ? Scalar(0)
                               : dots(p) / (proto_norm * pixel_norm(p));
  }
  return stack;
}

/// Index of the most similar prototype per pixel; ties keep the lowest index.
template <class Scalar>
GuideMap guide_map(const SimilarityStack<Scalar>& stack) {
  if (stack.count() < 1) fail(errc::empty_prototype_set, "guide_map: empty stack");
  GuideMap guide;
  guide.height = stack.height;
  guide.width = stack.width;
  guide.indices.resize(stack.values.rows());
  for (Index p = 0; p < stack.values.rows(); ++p) {
    Index best = 0;
    for (Index i = 1; i < stack.count(); ++i)
      if (stack.values(p, i) > stack.values(p, best)) best = i;
    guide.indices(p) = static_cast<int>(best);
  }
  return guide;
}

/// Scatters each pixel's selected prototype into a c-channel map.
template <class Scalar>
FeatureMap<Scalar> guide_feature(const PrototypeSet<Scalar>& protos,
                                 const GuideMap& guide) {
  MatrixX<Scalar> values(guide.height * guide.width, protos.dim());
  for (Index p = 0; p < guide.indices.size(); ++p) {
    const int i = guide.indices(p);
    if (i < 0 || i >= protos.count())
      fail(errc::index_out_of_range,
           "guide_feature: index " + std::to_string(i) + " out of range");
    values.row(p) = protos.vectors.row(i);
  }
  return FeatureMap<Scalar>(protos.dim(), guide.height, guide.width,
                            std::move(values));
}

/// Sum of the similarity planes over all prototypes, without normalization.
template <class Scalar>
ProbabilityMap<Scalar> probability_map(const SimilarityStack<Scalar>& stack) {
  if (stack.count() < 1)
    fail(errc::empty_prototype_set, "probability_map: empty stack");
  ProbabilityMap<Scalar> prob;
  prob.height = stack.height;
  prob.width = stack.width;
  prob.values = stack.values.rowwise().sum();
  return prob;
}

/// Channel concatenation [query | guide feature | probability], width 2c+1.
/// When a projection is supplied, applies the per-pixel linear map to yield
/// its out_channels.
template <class Scalar>
FeatureMap<Scalar> assemble_query(const FeatureMap<Scalar>& query,
                                  const FeatureMap<Scalar>& guide,
                                  const ProbabilityMap<Scalar>& prob,
                                  const ProjectionWeights<Scalar>* projection = nullptr) {
  if (guide.height != query.height || guide.width != query.width ||
      prob.height != query.height || prob.width != query.width)
    fail(errc::dim_mismatch, "assemble_query: spatial dimensions disagree");
  if (guide.channels != query.channels)
    fail(errc::dim_mismatch, "assemble_query: guide channels disagree");

  const Index c = query.channels;
  MatrixX<Scalar> merged(query.pixel_count(), 2 * c + 1);
  merged.leftCols(c) = query.values;
  merged.middleCols(c, c) = guide.values;
  merged.col(2 * c) = prob.values;
  if (projection == nullptr)
    return FeatureMap<Scalar>(2 * c + 1, query.height, query.width,
                              std::move(merged));

  if (projection->in_channels() != 2 * c + 1)
    fail(errc::projection_shape_mismatch,
         "assemble_query: projection expects " +
             std::to_string(projection->in_channels()) + " channels, merged has " +
             std::to_string(2 * c + 1));
  if (projection->bias && projection->bias->size() != projection->out_channels())
    fail(errc::projection_shape_mismatch, "assemble_query: bias length mismatch");
  MatrixX<Scalar> projected = merged * projection->weight.transpose();
  if (projection->bias)
    projected.rowwise() += projection->bias->transpose();
  return FeatureMap<Scalar>(projection->out_channels(), query.height, query.width,
                            std::move(projected));
}

template <class Scalar>
struct AllocationResult {
  SimilarityStack<Scalar> similarity;
  GuideMap guide;
  ProbabilityMap<Scalar> probability;
  FeatureMap<Scalar> merged;
};

/// Full allocation pass: similarity stack, guide map, guide feature,
/// probability map, merged query feature.
template <class Scalar>
AllocationResult<Scalar> allocate(const PrototypeSet<Scalar>& protos,
                                  const FeatureMap<Scalar>& query,
                                  const ProjectionWeights<Scalar>* projection = nullptr) {
  AllocationResult<Scalar> result;
  result.similarity = similarity_stack(protos, query);
  result.guide = guide_map(result.similarity);
  const FeatureMap<Scalar> guided = guide_feature(protos, result.guide);
  result.probability = probability_map(result.similarity);
  result.merged = assemble_query(query, guided, result.probability, projection);
  return result;
}

}  // namespace asg

#endif  // ASG_GPA_HPP
