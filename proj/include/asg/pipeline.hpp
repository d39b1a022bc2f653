#ifndef ASG_PIPELINE_HPP
#define ASG_PIPELINE_HPP

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "asg/core.hpp"
#include "asg/gpa.hpp"
#include "asg/kshot.hpp"
#include "asg/sgc.hpp"
#include "asg/tensor_io.hpp"
#include "asg/types.hpp"

namespace asg {

struct ShotPaths {
  std::string feature;
  std::string mask;
};

struct RunManifest {
  std::vector<ShotPaths> supports;  // one feature/mask pair per shot
  std::string query;
  SgcConfig config;
  std::string projection;       // optional weight tensor (out x in)
  std::string projection_bias;  // optional bias tensor (out x 1)
  std::string output_dir;
  bool write_csv_planes = false;
};

struct ShotReport {
  Index masked_pixels = 0;
  Index prototypes = 0;
  bool average_pool = false;  // degenerate single-prototype route
};

struct PipelineReport {
  std::vector<ShotReport> shots;
  Index total_prototypes = 0;
  PrototypeSet<float> prototypes;
  AllocationResult<float> allocation;
};

namespace detail {

inline std::string plane_name(const char* stem, Index i, const char* ext) {
  std::ostringstream name;
  name << stem << '_' << std::setw(2) << std::setfill('0') << i << ext;
  return name.str();
}

}  // namespace detail

/// Runs clustering over every support shot, merges the prototypes, allocates
/// them against the query feature, and writes all artifacts into
/// `output_dir`. Per-shot pixel and prototype counts go to `log`.
/// The whole pass is single-precision and deterministic.
inline PipelineReport run_pipeline(const RunManifest& manifest, std::ostream& log) {
  if (manifest.supports.empty())
    fail(errc::empty_list, "run_pipeline: manifest lists no support shots");
  manifest.config.validate();

  PipelineReport report;
  std::vector<PrototypeSet<float>> per_shot;
  per_shot.reserve(manifest.supports.size());
  for (std::size_t k = 0; k < manifest.supports.size(); ++k) {
    const FeatureMap<float> feat =
        to_feature_map<float>(read_tensor(manifest.supports[k].feature));
    const BinaryMask mask = to_mask(read_tensor(manifest.supports[k].mask));
    if (!feat.same_grid(mask))
      fail(errc::dim_mismatch,
           "run_pipeline: support feature and mask shapes disagree for shot " +
               std::to_string(k));

    ShotReport shot;
    shot.masked_pixels = mask.foreground_count();
    shot.average_pool =
        adaptive_prototype_count(shot.masked_pixels, manifest.config) <= 1;
    per_shot.push_back(sgc_cluster(feat, mask, manifest.config));
    shot.prototypes = per_shot.back().count();
    report.shots.push_back(shot);

    log << "shot " << k << ": N_m=" << shot.masked_pixels
        << " N_sp=" << shot.prototypes
        << (shot.average_pool ? " (masked average pooling)" : "") << "\n";
  }

  report.prototypes = merge_shots(per_shot);
  report.total_prototypes = report.prototypes.count();
  log << "total: N_sp=" << report.total_prototypes << "\n";

  const FeatureMap<float> query = to_feature_map<float>(read_tensor(manifest.query));
  std::optional<ProjectionWeights<float>> projection;
  if (!manifest.projection.empty()) {
    ProjectionWeights<float> p;
    p.weight = to_matrix<float>(read_tensor(manifest.projection));
    if (!manifest.projection_bias.empty()) {
      const MatrixX<float> b = to_matrix<float>(read_tensor(manifest.projection_bias));
      if (b.cols() != 1)
        fail(errc::projection_shape_mismatch,
             "run_pipeline: projection bias must be a column (out x 1)");
      p.bias = b.col(0);
    }
    projection = std::move(p);
  }
  report.allocation =
      allocate(report.prototypes, query, projection ? &*projection : nullptr);

  const std::filesystem::path out(manifest.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) fail(errc::io_failure, "run_pipeline: cannot create " + out.string());

  write_tensor(out / "prototypes.asgt", from_matrix(report.prototypes.vectors));
  write_pgm16(out / "guide_map.pgm", report.allocation.guide);
  const auto& prob = report.allocation.probability;
  write_tensor(out / "probability_map.asgt",
               from_plane(prob.height, prob.width, prob.values));
  write_pgm8(out / "probability_map.pgm", prob.height, prob.width, prob.values);
  const auto& sim = report.allocation.similarity;
  for (Index i = 0; i < sim.count(); ++i) {
    const VectorX<float> plane = sim.values.col(i);
    write_tensor(out / detail::plane_name("similarity", i, ".asgt"),
                 from_plane(sim.height, sim.width, plane));
    write_pgm8(out / detail::plane_name("similarity", i, ".pgm"), sim.height,
               sim.width, plane);
    if (manifest.write_csv_planes)
      write_csv(out / detail::plane_name("similarity", i, ".csv"), sim.height,
                sim.width, plane);
  }
  write_tensor(out / "merged.asgt", from_feature_map(report.allocation.merged));
  return report;
}

/// Prints iou and fb_iou between two mask files, four decimals each.
inline void compare_masks(const std::filesystem::path& pred_path,
                          const std::filesystem::path& gt_path, std::ostream& out) {
  const BinaryMask pred = to_mask(read_tensor(pred_path));
  const BinaryMask gt = to_mask(read_tensor(gt_path));
  const double foreground = iou(pred, gt);
  const double both = fb_iou(pred, gt);
  std::ostringstream text;
  text << std::fixed << std::setprecision(4);
  text << "iou " << foreground << "\n";
  text << "fb_iou " << both << "\n";
  out << text.str();
}

}  // namespace asg

#endif  // ASG_PIPELINE_HPP
