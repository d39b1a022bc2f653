#ifndef ASG_TESTS_ORACLES_HPP
#define ASG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "asg/types.hpp"

// Naive reference implementations used as independent oracles. Everything is
// straight scalar loops over the raw data; nothing here calls the library
// operations it is used to check.

namespace oracle {

using asg::BinaryMask;
using asg::FeatureMap;
using asg::Index;

inline std::vector<double> masked_mean(const FeatureMap<double>& feat,
                                       const BinaryMask& mask) {
  std::vector<double> sum(static_cast<std::size_t>(feat.channels), 0.0);
  long n = 0;
  for (Index r = 0; r < mask.height(); ++r)
    for (Index c = 0; c < mask.width(); ++c)
      if (mask.at(r, c)) {
        for (Index ch = 0; ch < feat.channels; ++ch)
          sum[static_cast<std::size_t>(ch)] += feat.at(ch, r, c);
        ++n;
      }
  for (auto& v : sum) v /= static_cast<double>(n);
  return sum;
}

inline double iou_counts(const BinaryMask& a, const BinaryMask& b) {
  long inter = 0;
  long uni = 0;
  for (Index r = 0; r < a.height(); ++r)
    for (Index c = 0; c < a.width(); ++c) {
      if (a.at(r, c) && b.at(r, c)) ++inter;
      if (a.at(r, c) || b.at(r, c)) ++uni;
    }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

inline double fb_iou_counts(const BinaryMask& a, const BinaryMask& b) {
  long fg_i = 0, fg_u = 0, bg_i = 0, bg_u = 0;
  for (Index r = 0; r < a.height(); ++r)
    for (Index c = 0; c < a.width(); ++c) {
      if (a.at(r, c) && b.at(r, c)) ++fg_i;
      if (a.at(r, c) || b.at(r, c)) ++fg_u;
      if (!a.at(r, c) && !b.at(r, c)) ++bg_i;
      if (!a.at(r, c) || !b.at(r, c)) ++bg_u;
    }
  const double fg = fg_u == 0 ? 1.0 : static_cast<double>(fg_i) / fg_u;
  const double bg = bg_u == 0 ? 1.0 : static_cast<double>(bg_i) / bg_u;
  return 0.5 * (fg + bg);
}

// All-pairs squared distance to the nearest background position, where every
// position of the one-pixel virtual padding ring counts as background.
inline asg::ArrayXX<std::int64_t> brute_force_dt2(const BinaryMask& mask) {
  const Index h = mask.height();
  const Index w = mask.width();
  asg::ArrayXX<std::int64_t> out(h, w);
  for (Index r = 0; r < h; ++r)
    for (Index c = 0; c < w; ++c) {
      if (!mask.at(r, c)) {
        out(r, c) = 0;
        continue;
      }
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (Index rr = -1; rr <= h; ++rr)
        for (Index cc = -1; cc <= w; ++cc) {
          const bool background =
              rr < 0 || rr >= h || cc < 0 || cc >= w || !mask.at(rr, cc);
          if (!background) continue;
          const std::int64_t d2 = (r - rr) * (r - rr) + (c - cc) * (c - cc);
          best = std::min(best, d2);
        }
      out(r, c) = best;
    }
  return out;
}

inline std::pair<Index, Index> argmax_lex(const asg::ArrayXX<std::int64_t>& d2) {
  std::pair<Index, Index> best{0, 0};
  std::int64_t value = -1;
  for (Index r = 0; r < d2.rows(); ++r)
    for (Index c = 0; c < d2.cols(); ++c)
      if (d2(r, c) > value) {
        value = d2(r, c);
        best = {r, c};
      }
  return best;
}

inline std::vector<std::pair<Index, Index>> place_seeds_ref(const BinaryMask& mask,
                                                            int count) {
  std::vector<std::pair<Index, Index>> seeds;
  BinaryMask work = mask;
  for (int k = 0; k < count; ++k) {
    const auto p = argmax_lex(brute_force_dt2(work));
    seeds.push_back(p);
    work.set(p.first, p.second, false);
  }
  return seeds;
}

namespace detail {

struct Prepared {
  std::vector<std::vector<double>> points;     // masked augmented vectors
  std::vector<std::vector<double>> centroids;  // initial, from seeds
  Index n = 0;                                 // prototype count
};

inline Prepared prepare(const FeatureMap<double>& feat, const BinaryMask& mask,
                        const asg::SgcConfig& cfg) {
  Prepared prep;
  std::vector<std::pair<Index, Index>> fg;
  for (Index r = 0; r < mask.height(); ++r)
    for (Index c = 0; c < mask.width(); ++c)
      if (mask.at(r, c)) fg.emplace_back(r, c);
  const Index nm = static_cast<Index>(fg.size());
  prep.n = std::min<Index>(nm / cfg.seed_area, cfg.max_prototypes);
  if (prep.n <= 1) return prep;

  const Index c = feat.channels;
  prep.points.assign(fg.size(), std::vector<double>(static_cast<std::size_t>(c + 2)));
  for (std::size_t k = 0; k < fg.size(); ++k) {
    for (Index ch = 0; ch < c; ++ch)
      prep.points[k][static_cast<std::size_t>(ch)] =
          feat.at(ch, fg[k].first, fg[k].second);
    prep.points[k][static_cast<std::size_t>(c)] =
        static_cast<double>(fg[k].first) / cfg.spatial_factor;
    prep.points[k][static_cast<std::size_t>(c) + 1] =
        static_cast<double>(fg[k].second) / cfg.spatial_factor;
  }
  const auto seeds = place_seeds_ref(mask, static_cast<int>(prep.n));
  for (const auto& seed : seeds)
    for (std::size_t k = 0; k < fg.size(); ++k)
      if (fg[k] == seed) {
        prep.centroids.push_back(prep.points[k]);
        break;
      }
  return prep;
}

inline std::vector<std::vector<double>> one_round(
    const std::vector<std::vector<double>>& pts,
    const std::vector<std::vector<double>>& cent, double eps) {
  const std::size_t n = cent.size();
  const std::size_t d = pts.front().size();
  std::vector<std::vector<double>> q(pts.size(), std::vector<double>(n));
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (std::size_t i = 0; i < n; ++i) {
      double dist2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = pts[p][k] - cent[i][k];
        dist2 += diff * diff;
      }
      q[p][i] = std::exp(-dist2);
    }
  std::vector<std::vector<double>> next(n, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double z = 0.0;
    for (std::size_t p = 0; p < pts.size(); ++p) z += q[p][i];
    if (z < eps) {
      next[i] = cent[i];
      continue;
    }
    for (std::size_t k = 0; k < d; ++k) {
      double s = 0.0;
      for (std::size_t p = 0; p < pts.size(); ++p) s += q[p][i] * pts[p][k];
      next[i][k] = s / z;
    }
  }
  return next;
}

inline Eigen::MatrixXd strip_coords(const std::vector<std::vector<double>>& cent,
                                    Index channels) {
  Eigen::MatrixXd out(static_cast<Index>(cent.size()), channels);
  for (std::size_t i = 0; i < cent.size(); ++i)
    for (Index ch = 0; ch < channels; ++ch)
      out(static_cast<Index>(i), ch) = cent[i][static_cast<std::size_t>(ch)];
  return out;
}

}  // namespace detail

// Straight-line reference of the full clustering pass, association weights
// left unstabilized.
inline Eigen::MatrixXd sgc_reference(const FeatureMap<double>& feat,
                                     const BinaryMask& mask,
                                     const asg::SgcConfig& cfg) {
  auto prep = detail::prepare(feat, mask, cfg);
  if (prep.n <= 1) {
    const auto mean = masked_mean(feat, mask);
    Eigen::MatrixXd out(1, feat.channels);
    for (Index ch = 0; ch < feat.channels; ++ch)
      out(0, ch) = mean[static_cast<std::size_t>(ch)];
    return out;
  }
  auto cent = prep.centroids;
  for (int t = 0; t < cfg.iterations; ++t)
    cent = detail::one_round(prep.points, cent, cfg.epsilon);
  return detail::strip_coords(cent, feat.channels);
}

// Same pass iterated until the largest centroid displacement drops below
// `tol` (or max_rounds), for convergence baselines.
inline Eigen::MatrixXd sgc_reference_converged(const FeatureMap<double>& feat,
                                               const BinaryMask& mask,
                                               const asg::SgcConfig& cfg,
                                               double tol, int max_rounds) {
  auto prep = detail::prepare(feat, mask, cfg);
  if (prep.n <= 1) return sgc_reference(feat, mask, cfg);
  auto cent = prep.centroids;
  for (int t = 0; t < max_rounds; ++t) {
    const auto next = detail::one_round(prep.points, cent, cfg.epsilon);
    double moved = 0.0;
    for (std::size_t i = 0; i < cent.size(); ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < cent[i].size(); ++k) {
        const double diff = next[i][k] - cent[i][k];
        d2 += diff * diff;
      }
      moved = std::max(moved, std::sqrt(d2));
    }
    cent = next;
    if (moved < tol) break;
  }
  return detail::strip_coords(cent, feat.channels);
}

inline Eigen::MatrixXd cosine_ref(const Eigen::MatrixXd& protos,
                                  const FeatureMap<double>& query) {
  const Index n = protos.rows();
  Eigen::MatrixXd out(query.pixel_count(), n);
  for (Index p = 0; p < query.pixel_count(); ++p)
    for (Index i = 0; i < n; ++i) {
      double dot = 0.0, np = 0.0, nq = 0.0;
      for (Index ch = 0; ch < query.channels; ++ch) {
        dot += protos(i, ch) * query.values(p, ch);
        np += protos(i, ch) * protos(i, ch);
        nq += query.values(p, ch) * query.values(p, ch);
      }
      np = std::sqrt(np);
      nq = std::sqrt(nq);
      out(p, i) = (np < 1e-12 || nq < 1e-12) ? 0.0 : dot / (np * nq);
    }
  return out;
}

inline Eigen::VectorXi argmax_ref(const Eigen::MatrixXd& values) {
  Eigen::VectorXi out(values.rows());
  for (Index p = 0; p < values.rows(); ++p) {
    Index best = 0;
    for (Index i = 1; i < values.cols(); ++i)
      if (values(p, i) > values(p, best)) best = i;
    out(p) = static_cast<int>(best);
  }
  return out;
}

inline Eigen::VectorXd rowsum_ref(const Eigen::MatrixXd& values) {
  Eigen::VectorXd out(values.rows());
  for (Index p = 0; p < values.rows(); ++p) {
    double s = 0.0;
    for (Index i = 0; i < values.cols(); ++i) s += values(p, i);
    out(p) = s;
  }
  return out;
}

inline Eigen::MatrixXd gather_ref(const Eigen::MatrixXd& protos,
                                  const Eigen::VectorXi& indices) {
  Eigen::MatrixXd out(indices.size(), protos.cols());
  for (Index p = 0; p < indices.size(); ++p)
    for (Index ch = 0; ch < protos.cols(); ++ch)
      out(p, ch) = protos(indices(p), ch);
  return out;
}

}  // namespace oracle

#endif  // ASG_TESTS_ORACLES_HPP
