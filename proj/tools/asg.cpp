// Command-line driver: `run` clusters support shots into prototypes and
// allocates them against a query feature map; `compare` scores two masks.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "asg/asg.hpp"

namespace {

// 0 ok, 1 usage, 2 I/O, 3 shape/validation.
int exit_code_for(asg::errc code) {
  switch (code) {
    case asg::errc::bad_magic:
    case asg::errc::unsupported_version:
    case asg::errc::truncated_payload:
    case asg::errc::io_failure:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superpixel prototype extraction and allocation for dense feature maps"};
  app.require_subcommand(1);

  asg::RunManifest manifest;
  std::vector<std::string> support_args;
  double spatial_factor = 0.0;

  CLI::App* run = app.add_subcommand("run", "cluster support shots and allocate against a query");
  run->add_option("--query", manifest.query, "query feature tensor (.asgt, 3-dim f32)")
      ->required();
  run->add_option("--support", support_args,
                  "support shot as FEATURE MASK tensor paths; repeatable")
      ->type_size(2)
      ->required();
  run->add_option("--out", manifest.output_dir, "output directory")->required();
  run->add_option("--s-sp", manifest.config.seed_area,
                  "target foreground pixels per seed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--n-max", manifest.config.max_prototypes, "prototype count cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--iters", manifest.config.iterations, "clustering iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  CLI::Option* r_opt =
      run->add_option("--r", spatial_factor,
                      "spatial weighting factor; defaults to sqrt of --s-sp")
          ->check(CLI::PositiveNumber);
  run->add_option("--proj", manifest.projection,
                  "projection weight tensor (.asgt, out x in)");
  run->add_option("--proj-bias", manifest.projection_bias,
                  "projection bias tensor (.asgt, out x 1)");
  run->add_flag("--csv", manifest.write_csv_planes, "also write similarity planes as CSV");

  std::string pred_path, gt_path;
  CLI::App* compare = app.add_subcommand("compare", "print iou and fb_iou of two masks");
  compare->add_option("pred", pred_path, "predicted mask tensor")->required();
  compare->add_option("gt", gt_path, "ground-truth mask tensor")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) {
      manifest.config.spatial_factor =
          r_opt->count() ? spatial_factor
                         : std::sqrt(static_cast<double>(manifest.config.seed_area));
      for (std::size_t i = 0; i + 1 < support_args.size(); i += 2)
        manifest.supports.push_back({support_args[i], support_args[i + 1]});
      asg::run_pipeline(manifest, std::cout);
      std::cout << "artifacts written to " << manifest.output_dir << "\n";
    } else if (compare->parsed()) {
      asg::compare_masks(pred_path, gt_path, std::cout);
    }
  } catch (const asg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
