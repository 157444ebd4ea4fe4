#include "qale/cli.hpp"

#include "qale/analysis.hpp"
#include "qale/error.hpp"
#include "qale/format.hpp"
#include "qale/random.hpp"
#include "qale/suites.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qale {

namespace {

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, what + ": '" + item + "' is not a number");
    }
  }
  return out;
}

std::pair<double, double> parse_range(const std::string& text, const std::string& what) {
  const auto v = parse_reals(text, what);
  if (v.size() != 2) fail(ErrorKind::BadRange, what + " must be lo,hi");
  if (!(v[0] <= v[1])) fail(ErrorKind::BadRange, what + " needs lo <= hi");
  return {v[0], v[1]};
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::ParseError, "cannot write " + path);
  f << text;
}

GroupConfig resolve_config(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_group_config(arg);
  const auto bundled = bundled_config(arg);
  if (std::filesystem::exists(bundled)) return load_group_config(bundled);
  fail(ErrorKind::ParseError, "no config file '" + arg + "'");
}

int emit(const RunReport& rep, const std::string& out_path, std::ostream& out) {
  write_text(out_path, dump_json(rep.to_json()), out);
  return rep.all_pass() ? kExitPass : kExitCheckFailed;
}

bool usage_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownSuite:
    case ErrorKind::BadRange:
    case ErrorKind::NonUnitaryGenerator:
    case ErrorKind::OrderCapExceeded:
    case ErrorKind::DimensionMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-ALE stratification and curvature checks", "qale"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  std::string out_path;

  auto* analyze = app.add_subcommand("analyze", "Lattice, poset, weights and orbits of a group");
  std::string cfg;
  analyze->add_option("config", cfg, "Config path or bundled example name")->required();
  analyze->add_option("--out", out_path, "Write the report here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "laplacian | eh | glue | region | s3")->required();
  std::optional<int> vm, vn;
  int draws = -1, points = -1, rays = 5;
  std::uint64_t seed = 0;
  double a = 1.0;
  std::string example = "all";
  verify->add_option("--m", vm, "Complex dimension (laplacian)");
  verify->add_option("--n", vn, "Codimension (laplacian)");
  verify->add_option("--draws", draws, "Random draws (laplacian, region)");
  verify->add_option("--points", points, "Sample points (eh, glue, s3)");
  verify->add_option("--rays", rays, "Decay rays (glue)");
  verify->add_option("--a", a, "Eguchi-Hanson parameter (eh)");
  verify->add_option("--example", example, "c3_z22 | c3_z4 | all (glue)");
  verify->add_option("--seed", seed, "Seed; QALE_SEED overrides");
  verify->add_option("--out", out_path, "Write the report here instead of stdout");

  auto* region = app.add_subcommand("region", "Classify a (beta, gamma) grid as CSV");
  int rm = 3, rn = 2, grid = 100;
  std::string beta_range = "-6,0", gamma_range = "-4,0";
  region->add_option("--m", rm, "Complex dimension");
  region->add_option("--n", rn, "Codimension of the singular set");
  region->add_option("--beta-range", beta_range, "lo,hi");
  region->add_option("--gamma-range", gamma_range, "lo,hi");
  region->add_option("--grid", grid, "Points per axis");
  region->add_option("--out", out_path, "Write the CSV here instead of stdout");

  auto* decay = app.add_subcommand("decay", "Sample a decaying field along a ray");
  std::string decay_example, ray_text, csv_path;
  double rmin = 0.0, rmax = 0.0;
  int count = 12;
  decay->add_option("--example", decay_example, "eh | c3_z22 | c3_z4")->required();
  decay->add_option("--ray", ray_text, "Direction as real coordinates x1,y1,x2,y2,...");
  decay->add_option("--a", a, "Eguchi-Hanson parameter (eh)");
  decay->add_option("--rmin", rmin, "Smallest radius");
  decay->add_option("--rmax", rmax, "Largest radius");
  decay->add_option("--count", count, "Number of radii");
  decay->add_option("--seed", seed, "Seed for the default ray; QALE_SEED overrides");
  decay->add_option("--csv", csv_path, "Write the samples as CSV");
  decay->add_option("--out", out_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      const auto config = resolve_config(cfg);
      auto rep = cmd_analyze(config);
      rep.set_seed(effective_seed(config.seed));
      return emit(rep, out_path, out);
    }
    if (verify->parsed()) {
      seed = effective_seed(seed);
      if (suite == "laplacian") {
        LaplacianOptions o{vm, vn, draws < 0 ? 20 : draws, seed};
        return emit(verify_laplacian(o), out_path, out);
      }
      if (suite == "eh") return emit(verify_eh({a, points < 0 ? 20 : points, seed}), out_path, out);
      if (suite == "glue")
        return emit(verify_glue({example, rays, points < 0 ? 20 : points, seed}), out_path, out);
      if (suite == "region") return emit(verify_region({draws < 0 ? 200 : draws, seed}), out_path, out);
      if (suite == "s3") return emit(verify_s3({seed, points < 0 ? 1000 : points}), out_path, out);
      fail(ErrorKind::UnknownSuite, "unknown suite '" + suite + "'");
    }
    if (region->parsed()) {
      const auto [blo, bhi] = parse_range(beta_range, "--beta-range");
      const auto [glo, ghi] = parse_range(gamma_range, "--gamma-range");
      write_text(out_path, region_csv(region_scan({rm, rn}, blo, bhi, glo, ghi, grid)), out);
      return kExitPass;
    }
    if (decay->parsed()) {
      seed = effective_seed(seed);
      RunReport rep("decay");
      rep.set_seed(seed);
      int m = 0;
      std::optional<Example> ex;
      if (decay_example == "eh") {
        m = 2;
      } else if (decay_example == "c3_z22" || decay_example == "c3_z4") {
        ex = bundled_example(decay_example);
        rep.set_config(ex->config.name, ex->config.source_text);
        m = 3;
      } else {
        fail(ErrorKind::BadRange, "--example must be eh, c3_z22 or c3_z4");
      }
      ComplexVector dir(m);
      if (!ray_text.empty()) {
        const auto v = parse_reals(ray_text, "--ray");
        if (static_cast<int>(v.size()) != 2 * m)
          fail(ErrorKind::BadRange, "--ray needs " + std::to_string(2 * m) + " real coordinates");
        for (int j = 0; j < m; ++j) dir(j) = Complex(v[2 * j], v[2 * j + 1]);
        if (!(dir.norm() > 0.0)) fail(ErrorKind::BadRange, "--ray must be nonzero");
      } else if (ex) {
        dir = generic_directions(*ex, 1, seed).front();
      } else {
        Rng rng(seed);
        dir = rng.complex_normal(2);
      }
      const double scale = ex ? ex->config.cutoff_R : a;
      if (rmin == 0.0) rmin = 5.0 * scale;
      if (rmax == 0.0) rmax = (ex ? 250.0 : 500.0) * scale;
      const auto radii = geometric_radii(rmin, rmax, count);
      const Ray ray{ComplexVector::Zero(m), dir / dir.norm()};
      const auto rpt = ex ? glued_f_decay(*ex, ray, radii) : eh_metric_decay(a, ray, radii);
      rep.metric("field", ex ? "ricci_potential_f" : "metric_minus_flat_sup");
      rep.metric("summary", decay_summary(rpt));
      rep.check("fit_available", rpt.exponent.has_value() || rpt.exact_zero);
      if (!csv_path.empty()) {
        write_text(csv_path, decay_csv(rpt), out);
        rep.artifact("samples_csv", csv_path);
      }
      return emit(rep, out_path, out);
    }
  } catch (const Error& e) {
    err << "qale: " << e.what() << '\n';
    return usage_kind(e.kind()) ? kExitUsage : kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "qale: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace qale
