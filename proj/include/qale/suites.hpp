// Verification suites and the analyze command, shared by the command-line
// tool and the test programs.
#pragma once

#include "qale/config.hpp"
#include "qale/curvature.hpp"
#include "qale/metrics.hpp"
#include "qale/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qale {

/// Group, lattice and weights built from a config.
struct Example {
  GroupConfig config;
  MatrixGroup group;
  StratPoset poset;
  MobiusWeights weights;
};

Example build_example(const GroupConfig& config);
/// Loads configs/<name>.json from the bundled directory.
Example bundled_example(const std::string& name);

/// Stratification summary: strata, order relation, weights, orbits.
nlohmann::json stratification_json(const Example& ex);

RunReport cmd_analyze(const GroupConfig& config);

struct LaplacianOptions {
  std::optional<int> m, n;
  int draws = 20;
  std::uint64_t seed = 0;
};
RunReport verify_laplacian(const LaplacianOptions& opt);

struct EhOptions {
  double a = 1.0;
  int points = 20;
  std::uint64_t seed = 0;
};
RunReport verify_eh(const EhOptions& opt);

struct GlueOptions {
  /// "c3_z22", "c3_z4" or "all".
  std::string example = "all";
  int rays = 5;
  int points = 20;
  std::uint64_t seed = 0;
};
RunReport verify_glue(const GlueOptions& opt);

struct RegionOptions {
  int draws = 200;
  std::uint64_t seed = 0;
};
RunReport verify_region(const RegionOptions& opt);

struct S3Options {
  std::uint64_t seed = 0;
  int points = 1000;
};
RunReport verify_s3(const S3Options& opt);

/// Generic ray directions for the glued C^3/Z2^2 decay: unit vectors whose
/// distance to every singular line is at least half their length.
std::vector<ComplexVector> generic_directions(const Example& ex, int count, std::uint64_t seed);

/// |f| for the glued Eguchi-Hanson potential of `ex` along a ray.
DecayReport glued_f_decay(const Example& ex, const Ray& ray, const std::vector<double>& radii);

/// sup |g - g_flat| for Eguchi-Hanson along a ray in C^2.
DecayReport eh_metric_decay(double a, const Ray& ray, const std::vector<double>& radii);

/// Radii used for decay fits: 5R to 250R, geometric.
std::vector<double> decay_radii(double R, int count = 12);

}  // namespace qale
