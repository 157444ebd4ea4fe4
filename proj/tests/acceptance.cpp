// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "qale/cli.hpp"
#include "qale/config.hpp"
#include "qale/strata.hpp"
#include "qale/suites.hpp"

#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace qale;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool check_passes(const RunReport& rep, const std::string& name) {
  const auto& c = rep.checks();
  return c.contains(name) && c.at(name).at("pass").get<bool>();
}

Outcome require_checks(const RunReport& rep, const std::vector<std::string>& names) {
  Outcome o{true, ""};
  for (const auto& n : names)
    if (!check_passes(rep, n)) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "failed: " : ", ") + n;
    }
  return o;
}

const std::vector<std::string> kBundled{"c2_z2", "c3_z4", "c3_z22", "c4_z23", "c4_s3"};

Outcome lattice_counts() {
  const auto z4 = bundled_example("c3_z4");
  const auto alpha = *z4.group.find(z4.config.generators[0]);
  const auto alpha2 = z4.group.multiply(alpha, alpha);
  IndexSet want{MatrixGroup::identity(), alpha2};
  std::sort(want.begin(), want.end());
  bool ok = z4.poset.size() == 3 && z4.poset[1].A == want;

  const auto z22 = bundled_example("c3_z22");
  const auto& p = z22.poset;
  ok = ok && p.size() == 5 && p[p.idx_zero()].A.size() == 1 &&
       p[p.idx_infinity()].A.size() == z22.group.order();
  std::set<std::size_t> involutions;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    ok = ok && p[i].A.size() == 2;
    involutions.insert(p[i].A.back());
  }
  ok = ok && involutions.size() == 3;
  return {ok, "|I| = " + std::to_string(z4.poset.size()) + " and " + std::to_string(p.size())};
}

Outcome oracle_equivalence() {
  bool ok = true;
  std::string detail;
  for (const auto& name : kBundled) {
    const auto ex = bundled_example(name);
    std::vector<Subspace> built;
    for (const auto& s : ex.poset.strata()) built.push_back(s.V);
    ok = ok && ex.group.order() <= 48 && same_subspace_sets(built, lattice_by_subgroups(ex.group), 1e-8);
  }
  const auto z23 = bundled_example("c4_z23");
  const auto rep = cmd_analyze(z23.config);
  int axes = 0;
  for (const auto& s : z23.poset.strata()) axes += s.V.dim() == 1;
  const bool flagged = !rep.flags().empty();
  ok = ok && axes == 4 && flagged && rep.metrics().contains("stratification");
  detail = "c4_z23 derived " + std::to_string(z23.poset.size()) + " strata (" +
           std::to_string(axes) + " axes), flagged: " + (flagged ? "yes" : "no");
  return {ok, detail};
}

Outcome mobius() {
  bool ok = true;
  for (const auto& name : kBundled) {
    const auto ex = bundled_example(name);
    ok = ok && mobius_equations_hold(ex.poset, ex.weights);
  }
  const auto z22 = bundled_example("c3_z22");
  const auto iso = bundled_example("c2_z2");
  const auto k22 = z22.weights.at(z22.poset.idx_zero());
  const auto kiso = iso.weights.at(iso.poset.idx_zero());
  ok = ok && k22 == -2 && kiso == 1;
  return {ok, "k0 = " + std::to_string(k22) + " (C3/Z2^2), " + std::to_string(kiso) + " (isolated)"};
}

Outcome laplacian() {
  const auto rep = verify_laplacian({std::nullopt, std::nullopt, 20, kSeed});
  auto o = require_checks(rep, {"closed_form_matches_automatic"});
  if (o.pass)
    o.detail = "max relative error " +
               rep.checks()["closed_form_matches_automatic"]["max_relative_error"].dump();
  return o;
}

Outcome eguchi_hanson() {
  const auto rep = verify_eh({1.0, 20, kSeed});
  auto o = require_checks(rep, {"ricci_flat", "metric_decay_exponent"});
  if (o.pass) o.detail = "decay exponent " + rep.metrics()["metric_decay"]["exponent"].dump();
  return o;
}

Outcome monge_ampere() {
  GlueOptions opt;
  opt.example = "c3_z4";
  opt.seed = kSeed;
  const auto rep = verify_glue(opt);
  auto o = require_checks(rep, {"c3_z4.product_f_zero", "c3_z4.glued_f_vanishes_beyond_tube"});
  if (o.pass)
    o.detail = "sup|f| product " + rep.checks()["c3_z4.product_f_zero"]["sup_abs_f"].dump() +
               ", glued " + rep.checks()["c3_z4.glued_f_vanishes_beyond_tube"]["sup_abs_f"].dump();
  return o;
}

Outcome interference() {
  GlueOptions opt;
  opt.example = "c3_z22";
  opt.rays = 5;
  opt.seed = kSeed;
  const auto rep = verify_glue(opt);
  auto o = require_checks(rep, {"c3_z22.f_decay_exponent"});
  std::ostringstream ss;
  ss << "exponents";
  for (const auto& r : rep.metrics()["c3_z22.f_decay_rays"]) ss << ' ' << r["exponent"].dump();
  if (o.pass) o.detail = ss.str();
  return o;
}

Outcome region() {
  const auto rep = verify_region({200, kSeed});
  Outcome o{rep.all_pass(), rep.all_pass() ? "200 draws" : ""};
  for (auto it = rep.checks().begin(); it != rep.checks().end(); ++it)
    if (!it.value()["pass"].get<bool>()) o.detail += it.key() + " ";
  return o;
}

Outcome barrier() {
  const auto rep = verify_eh({1.0, 20, kSeed});
  auto o = require_checks(rep, {"poisson_residual", "poisson_correction_exponent",
                                "four_u_minus_grad_bounded", "barrier_eh"});
  if (o.pass) o.detail = "delta = -1/2, a = 1";
  return o;
}

Outcome s3() {
  const auto rep = verify_s3({kSeed, 1000});
  Outcome o{rep.all_pass(), rep.all_pass() ? "1000 equivariance points" : ""};
  for (auto it = rep.checks().begin(); it != rep.checks().end(); ++it)
    if (!it.value()["pass"].get<bool>()) o.detail += it.key() + " ";
  return o;
}

std::string run_once(const std::vector<std::string>& args, int& code) {
  std::vector<const char*> argv{"qale"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Outcome determinism() {
  std::vector<std::vector<std::string>> commands;
  for (const auto& name : kBundled) commands.push_back({"analyze", name});
  for (const char* suite : {"laplacian", "eh", "glue", "region", "s3"})
    commands.push_back({"verify", suite, "--seed", "7"});
  commands.push_back({"region", "--m", "3", "--n", "2", "--grid", "9"});
  commands.push_back({"decay", "--example", "eh", "--seed", "7"});
  commands.push_back({"decay", "--example", "c3_z22", "--seed", "7"});
  commands.push_back({"decay", "--example", "c3_z4", "--seed", "7"});
  std::size_t same = 0;
  std::string bad;
  for (const auto& c : commands) {
    int c1 = 0, c2 = 0;
    const auto a = run_once(c, c1), b = run_once(c, c2);
    if (a == b && c1 == c2 && !a.empty()) {
      ++same;
    } else {
      bad += " " + c[0] + (c.size() > 1 ? " " + c[1] : "");
    }
  }
  Outcome o{same == commands.size(),
            std::to_string(same) + "/" + std::to_string(commands.size()) + " commands identical"};
  if (!bad.empty()) o.detail += "; differs:" + bad;
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double time_limit;  // seconds, 0 = none
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "lattice counts", lattice_counts, 1.0},
      {2, "lattice oracle equivalence", oracle_equivalence, 0.0},
      {3, "Mobius weights", mobius, 0.0},
      {4, "Laplacian identity", laplacian, 10.0},
      {5, "Eguchi-Hanson certificate", eguchi_hanson, 0.0},
      {6, "Monge-Ampere exactness of products", monge_ampere, 0.0},
      {7, "interference decay", interference, 60.0},
      {8, "isomorphism region", region, 0.0},
      {9, "barrier construction", barrier, 0.0},
      {10, "S3 certificate", s3, 0.0},
      {11, "determinism", determinism, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.time_limit)) + " s limit)";
    }
    failed += !o.pass;
    std::printf("%s criterion %2d %-36s %7.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
