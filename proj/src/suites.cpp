#include "qale/suites.hpp"

#include "qale/analysis.hpp"
#include "qale/error.hpp"
#include "qale/random.hpp"
#include "qale/s3cert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qale {

namespace {

using nlohmann::json;

constexpr double kTinyFloor = std::numeric_limits<double>::min();

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(std::floor(rng.uniform() * (hi - lo + 1)));
}

ComplexVector unit(ComplexVector v) { return v / v.norm(); }

json exponent_json(const DecayReport& r) {
  return r.exponent ? json(*r.exponent) : json(nullptr);
}

bool within(const std::optional<double>& x, double target, double tol) {
  return x && std::abs(*x - target) <= tol;
}

}  // namespace

Example build_example(const GroupConfig& config) {
  MatrixGroup group = close_group(config.generators, 64, config.dimension);
  StratPoset poset = build_lattice(group);
  MobiusWeights weights = mobius_weights(poset);
  return {config, std::move(group), std::move(poset), std::move(weights)};
}

Example bundled_example(const std::string& name) {
  return build_example(load_group_config(bundled_config(name)));
}

json stratification_json(const Example& ex) {
  const auto& p = ex.poset;
  json strata = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& s = p[i];
    json entry = {{"label", p.label(i)},
                  {"dim_V", s.V.dim()},
                  {"dim_W", s.W.dim()},
                  {"order_A", s.A.size()},
                  {"order_N", s.N.size()},
                  {"order_B", s.B.order()},
                  {"d", s.d},
                  {"A", s.A}};
    entry["k"] = ex.weights.k.count(i) ? json(ex.weights.at(i)) : json(nullptr);
    strata.push_back(entry);
  }
  json order = json::array();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (i != j && p.geq(i, j)) order.push_back({p.label(i), p.label(j)});
  json orbits = json::array();
  for (const auto& orbit : g_action(ex.group, p).orbits()) {
    json o = json::array();
    for (std::size_t i : orbit) o.push_back(p.label(i));
    orbits.push_back(o);
  }
  const auto n = p.codimension();
  return {{"group_order", ex.group.order()},
          {"dimension", p.ambient_dim()},
          {"strata_count", p.size()},
          {"codimension_n", n ? json(*n) : json(nullptr)},
          {"strata", strata},
          {"order_relation", order},
          {"g_orbits", orbits}};
}

RunReport cmd_analyze(const GroupConfig& config) {
  RunReport rep("analyze");
  rep.set_config(config.name, config.source_text);
  const Example ex = build_example(config);
  rep.metric("stratification", stratification_json(ex));

  const auto oracle = lattice_by_subgroups(ex.group);
  std::vector<Subspace> built;
  for (const auto& s : ex.poset.strata()) built.push_back(s.V);
  rep.check("lattice_matches_subgroup_oracle", same_subspace_sets(built, oracle),
            {{"closure_size", built.size()}, {"oracle_size", oracle.size()}});
  rep.check("mobius_equations", mobius_equations_hold(ex.poset, ex.weights));
  rep.check("g_action_invariants",
            g_action_invariants_hold(ex.group, ex.poset, g_action(ex.group, ex.poset)));
  rep.check("intersection_closed", intersection_closed(ex.poset));
  bool restricted = true;
  for (std::size_t i = 0; i < ex.poset.size(); ++i)
    restricted = restricted && restriction_closed(ex.poset, i);
  rep.check("restriction_closed", restricted);

  if (config.expected_strata) {
    const bool same = *config.expected_strata == ex.poset.size();
    rep.metric("published_strata_count", {{"published", *config.expected_strata},
                                          {"derived", ex.poset.size()},
                                          {"agrees", same}});
    if (!same)
      rep.flag("derived lattice has " + std::to_string(ex.poset.size()) +
               " members but the published count is " + std::to_string(*config.expected_strata) +
               "; the derived lattice is reported");
  }
  return rep;
}

// ---------------------------------------------------------------------------

RunReport verify_laplacian(const LaplacianOptions& opt) {
  RunReport rep("verify laplacian");
  rep.set_seed(opt.seed);
  if (opt.m.has_value() != opt.n.has_value())
    fail(ErrorKind::BadRange, "--m and --n must be given together");
  if (opt.m) validate({*opt.m, *opt.n});
  if (opt.draws < 1) fail(ErrorKind::BadRange, "--draws must be positive");

  Rng rng(opt.seed);
  double worst = 0.0;
  json draws = json::array();
  for (int k = 0; k < opt.draws; ++k) {
    const int m = opt.m ? *opt.m : uniform_int(rng, 2, 4);
    const int n = opt.n ? *opt.n : uniform_int(rng, 2, m);
    const double beta = rng.uniform(-3.0, -0.1), gamma = rng.uniform(-3.0, -0.1);
    const ComplexVector z = rng.complex_normal(m);
    const double r = z.norm(), s = z.tail(n).norm();
    const double closed = laplacian_identity(m, n, beta, gamma, r, s);
    const double ad =
        kahler_laplacian(euclidean_potential(m), power_weight_field(m, n, beta, gamma), z);
    const double rel = std::abs(ad - closed) / std::abs(closed);
    worst = std::max(worst, rel);
    draws.push_back({{"m", m}, {"n", n}, {"beta", beta}, {"gamma", gamma}, {"r", r}, {"s", s},
                     {"closed_form", closed}, {"automatic", ad}, {"relative_error", rel}});
  }
  rep.metric("draws", draws);
  rep.check("closed_form_matches_automatic", worst <= 1e-6, {{"max_relative_error", worst}});

  const double zero = laplacian_identity(3, 2, 0.0, 0.0, 2.0, 1.0);
  rep.check("constant_function", zero == 0.0, {{"value", zero}});
  const double worked = laplacian_identity(3, 2, -2.0, -1.0, 2.0, 1.0);
  rep.check("worked_value", std::abs(worked - 0.125) <= 1e-15, {{"value", worked}});
  return rep;
}

// ---------------------------------------------------------------------------

DecayReport eh_metric_decay(double a, const Ray& ray, const std::vector<double>& radii) {
  const auto k = eguchi_hanson_potential(a);
  return decay_fit([&](const ComplexVector& z) { return sup_norm(metric_perturbation(k, z)); },
                   ray, radii, kTinyFloor);
}

std::vector<double> decay_radii(double R, int count) {
  return geometric_radii(5.0 * R, 250.0 * R, count);
}

RunReport verify_eh(const EhOptions& opt) {
  RunReport rep("verify eh");
  rep.set_seed(opt.seed);
  if (!(opt.a > 0.0)) fail(ErrorKind::BadRange, "--a must be positive");
  Rng rng(opt.seed);
  const auto k = eguchi_hanson_potential(opt.a);

  std::vector<ComplexVector> pts;
  for (int i = 0; i < opt.points; ++i)
    pts.push_back(unit(rng.complex_normal(2)) * std::sqrt(rng.log_uniform(0.5, 50.0)));
  double ric = 0.0, f = 0.0;
  for (const auto& z : pts) {
    ric = std::max(ric, sup_norm(ricci_form(k, z)));
    f = std::max(f, std::abs(ricci_potential_f(k, z)));
  }
  rep.check("ricci_flat", ric <= 1e-8, {{"sup_ricci", ric}, {"points", pts.size()}});
  rep.check("volume_form_exact", f <= 1e-8, {{"sup_abs_f", f}});
  const auto pos = positivity_check(k, pts);
  rep.check("metric_positive", pos.pass, {{"min_eigenvalue", pos.overall_min}});

  const Ray ray{ComplexVector::Zero(2), unit(rng.complex_normal(2))};
  const auto decay = eh_metric_decay(opt.a, ray, geometric_radii(5.0 * opt.a, 500.0 * opt.a, 12));
  rep.check("metric_decay_exponent", within(decay.exponent, -4.0, 0.1),
            {{"exponent", exponent_json(decay)}, {"target", -4.0}, {"tolerance", 0.1}});
  rep.metric("metric_decay", decay_summary(decay));

  const auto prof = eh_radial_poisson(opt.a);
  rep.check("poisson_residual", prof.max_laplacian_residual <= 1e-6,
            {{"max_abs_laplacian_plus_4", prof.max_laplacian_residual}});
  rep.check("poisson_correction_exponent", within(prof.correction_exponent, -2.0, 0.2),
            {{"exponent", prof.correction_exponent ? json(*prof.correction_exponent) : json(nullptr)},
             {"target", -2.0},
             {"tolerance", 0.2}});
  // Bounded: finite, and the last decade of the grid adds nothing above the
  // running supremum before it.
  double head = -std::numeric_limits<double>::infinity(), tail = head;
  for (std::size_t i = 0; i < prof.q.size(); ++i) {
    double& slot = prof.q[i] < prof.q.back() / 10.0 ? head : tail;
    slot = std::max(slot, 4.0 * prof.u[i] - prof.grad_sq[i]);
  }
  rep.check("four_u_minus_grad_bounded", std::isfinite(prof.sup_4u_minus_grad) && tail <= head,
            {{"sup", prof.sup_4u_minus_grad},
             {"sup_rho_1_to_100", prof.sup_4u_minus_grad_window},
             {"sup_last_decade", tail}});

  auto barrier_json = [](const BarrierFromU& b) {
    return json{{"feasible", b.feasible}, {"min_margin", b.min_margin}, {"c1", b.c1},
                {"c2", b.c2}, {"lower_bound_holds", b.lower_bound_holds},
                {"constants_settle", b.constants_settle}, {"reason", b.reason}};
  };
  const auto barrier = barrier_from_u(prof, -0.5, 1.0);
  rep.check("barrier_eh", barrier.feasible, barrier_json(barrier));
  const auto flat = barrier_from_u(eh_radial_poisson(0.0), -0.5, 1.0);
  rep.check("barrier_flat", flat.feasible, barrier_json(flat));
  const auto zero = barrier_from_u(prof, 0.0, 1.0);
  rep.check("barrier_delta_zero_rejected", !zero.feasible, {{"reason", zero.reason}});
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<ComplexVector> generic_directions(const Example& ex, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ComplexVector> out;
  const int m = ex.poset.ambient_dim();
  while (static_cast<int>(out.size()) < count) {
    const ComplexVector d = unit(rng.complex_normal(m));
    if (singular_distance_s(d, ex.poset, ex.group) >= 0.5) out.push_back(d);
  }
  return out;
}

DecayReport glued_f_decay(const Example& ex, const Ray& ray, const std::vector<double>& radii) {
  const auto glued = glued_potential(ex.poset, ex.group, ex.weights,
                                     eguchi_hanson_components(ex.poset, ex.group, ex.config.eh_a),
                                     ex.config.cutoff_R);
  const auto k = glued.potential();
  return decay_fit([&](const ComplexVector& z) { return ricci_potential_f(k, z); }, ray, radii,
                   kTinyFloor);
}

namespace {

RunReport glue_z22(const GlueOptions& opt) {
  RunReport rep("c3_z22");
  const Example ex = bundled_example("c3_z22");
  const double R = ex.config.cutoff_R;
  const auto glued = glued_potential(ex.poset, ex.group, ex.weights,
                                     eguchi_hanson_components(ex.poset, ex.group, ex.config.eh_a),
                                     R);
  const auto k = glued.potential();

  const auto radii = decay_radii(R);
  json rays = json::array();
  bool all_ok = true;
  for (const auto& d : generic_directions(ex, opt.rays, opt.seed)) {
    const auto rpt = glued_f_decay(ex, Ray{ComplexVector::Zero(3), d}, radii);
    all_ok = all_ok && within(rpt.exponent, -8.0, 0.5);
    rays.push_back(decay_summary(rpt));
  }
  rep.metric("f_decay_rays", rays);
  rep.check("f_decay_exponent", all_ok,
            {{"target", -8.0}, {"tolerance", 0.5}, {"rays", opt.rays},
             {"radius_min", radii.front()}, {"radius_max", radii.back()}});

  Rng rng(opt.seed + 1);
  std::vector<ComplexVector> far;
  while (static_cast<int>(far.size()) < opt.points) {
    const ComplexVector z = unit(rng.complex_normal(3)) * rng.uniform(5.0 * R, 50.0 * R);
    if (singular_distance_s(z, ex.poset, ex.group) >= 2.5 * R) far.push_back(z);
  }
  double equi = 0.0;
  for (const auto& z : far)
    for (const auto& g : ex.group.elements())
      equi = std::max(equi, std::abs(glued.phi(g * z) - glued.phi(z)));
  rep.check("g_equivariant", equi <= 1e-10, {{"max_difference", equi}});
  const auto pos = positivity_check(k, far);
  rep.check("metric_positive_far_field", pos.pass, {{"min_eigenvalue", pos.overall_min}});
  return rep;
}

RunReport glue_z4(const GlueOptions& opt) {
  RunReport rep("c3_z4");
  const Example ex = bundled_example("c3_z4");
  const double R = ex.config.cutoff_R, a = ex.config.eh_a;
  Rng rng(opt.seed + 2);

  const auto prod = product_potential(euclidean_potential(1), eguchi_hanson_potential(a));
  double fprod = 0.0;
  for (int i = 0; i < opt.points; ++i) {
    ComplexVector z(3);
    z(0) = rng.complex_normal(1)(0) * 3.0;
    z.tail(2) = unit(rng.complex_normal(2)) * std::sqrt(rng.log_uniform(0.5, 50.0));
    fprod = std::max(fprod, std::abs(ricci_potential_f(prod, z)));
  }
  rep.check("product_f_zero", fprod <= 1e-8, {{"sup_abs_f", fprod}});

  const auto comps = eguchi_hanson_components(ex.poset, ex.group, a);
  const auto glued = glued_potential(ex.poset, ex.group, ex.weights, comps, R);
  const auto k = glued.potential();
  std::size_t line = 0;
  for (std::size_t i = 0; i < ex.poset.size(); ++i)
    if (i != ex.poset.idx_zero() && i != ex.poset.idx_infinity()) line = i;

  double fmax = 0.0, pull = 0.0;
  std::vector<ComplexVector> pts;
  while (static_cast<int>(pts.size()) < opt.points) {
    const ComplexVector z = unit(rng.complex_normal(3)) * rng.uniform(2.0 * R + 1.0, 50.0 * R);
    if (singular_distance_s(z, ex.poset, ex.group) < 0.5) continue;
    pts.push_back(z);
    fmax = std::max(fmax, std::abs(ricci_potential_f(k, z)));
    const ComplexVector y = ex.poset[line].W.basis().adjoint() * z;
    pull = std::max(pull, std::abs(glued.phi(z) - comps.at(line).perturbation_jet(y, 0).value()));
  }
  rep.check("glued_f_vanishes_beyond_tube", fmax <= 1e-9,
            {{"sup_abs_f", fmax}, {"min_radius", 2.0 * R + 1.0}});
  rep.check("glued_equals_component", pull <= 1e-12, {{"max_difference", pull}});

  const Ray ray{ComplexVector::Zero(3), generic_directions(ex, 1, opt.seed).front()};
  const auto zero = decay_fit([&](const ComplexVector& z) { return ricci_potential_f(k, z); }, ray,
                              decay_radii(R), 1e-9);
  rep.check("f_exact_zero_along_ray", zero.exact_zero);
  rep.metric("f_along_ray", decay_summary(zero));
  return rep;
}

}  // namespace

RunReport verify_glue(const GlueOptions& opt) {
  if (opt.example != "all" && opt.example != "c3_z22" && opt.example != "c3_z4")
    fail(ErrorKind::BadRange, "--example must be c3_z22, c3_z4 or all");
  if (opt.rays < 1 || opt.points < 1) fail(ErrorKind::BadRange, "--rays and --points must be positive");
  RunReport rep("verify glue");
  rep.set_seed(opt.seed);
  if (opt.example != "c3_z4") rep.absorb("c3_z22", glue_z22(opt));
  if (opt.example != "c3_z22") rep.absorb("c3_z4", glue_z4(opt));
  return rep;
}

// ---------------------------------------------------------------------------

RunReport verify_region(const RegionOptions& opt) {
  RunReport rep("verify region");
  rep.set_seed(opt.seed);
  if (opt.draws < 1) fail(ErrorKind::BadRange, "--draws must be positive");

  for (int m : {3, 4}) {
    const auto v = region_membership({m, 2}, 1.0 - m, -0.1);
    rep.check("inside_at_1_minus_m.m" + std::to_string(m),
              v.sufficient == RegionClass::InsideSufficient,
              {{"class", to_string(v.sufficient)}});
  }
  bool any_inside = false;
  for (int m = 1; m <= 4; ++m)
    for (const auto& row : region_scan({m, 1}, -2.0 * m, 1.0, -3.0, 1.0, 60))
      any_inside = any_inside || row.inside_sufficient;
  rep.check("n1_grid_empty", !any_inside);
  std::size_t inside = 0;
  for (const auto& row : region_scan({3, 2}, -5.0, 0.0, -2.0, 0.0, 100))
    inside += row.inside_sufficient ? 1 : 0;
  rep.check("m3_n2_grid_nonempty", inside > 0, {{"inside_cells", inside}});

  Rng rng(opt.seed);
  const auto samples = barrier_samples(200);
  std::size_t agree = 0, feasible = 0, skipped = 0;
  double worst_identity = 0.0;
  bool roots_ok = true, sums_ok = true, nested_ok = true;
  for (int k = 0; k < opt.draws;) {
    const int m = uniform_int(rng, 2, 4);
    const int n = uniform_int(rng, 2, m);
    const double beta = rng.uniform(-2.0 * m, 1.0);
    const double gamma = rng.uniform(-2.0 * n, 0.5);
    const auto v = region_membership({m, n}, beta, gamma);
    if (v.inequalities_boundary) {
      ++skipped;
      continue;
    }
    ++k;
    const auto b = barrier_check({m, n}, beta, gamma, samples);
    if (b.feasible == v.inequalities_hold()) ++agree;
    if (v.sufficient == RegionClass::InsideSufficient && !v.inequalities_hold()) nested_ok = false;
    if (!b.feasible) continue;
    ++feasible;
    const auto id = region_identities({m, n}, gamma);
    worst_identity = std::max(worst_identity, std::abs(id.expansion_residual));
    roots_ok = roots_ok && id.root_bounds;
    sums_ok = sums_ok && 2.0 - 2.0 * m < beta + gamma && beta + gamma < 0.0;
  }
  rep.check("barrier_iff_inequalities", agree == static_cast<std::size_t>(opt.draws),
            {{"draws", opt.draws}, {"agree", agree}, {"feasible", feasible},
             {"boundary_redraws", skipped}});
  rep.check("expansion_identity", worst_identity <= 1e-12, {{"max_residual", worst_identity}});
  rep.check("root_bounds", roots_ok);
  rep.check("beta_plus_gamma_bounds", sums_ok);
  rep.check("sufficient_region_inside_inequalities", nested_ok);
  return rep;
}

// ---------------------------------------------------------------------------

RunReport verify_s3(const S3Options& opt) {
  RunReport rep("verify s3");
  rep.set_seed(opt.seed);
  if (opt.points < 1) fail(ErrorKind::BadRange, "--points must be positive");
  Rng rng(opt.seed);
  const auto p = static_cast<std::size_t>(opt.points);
  const auto cert = s3_certificate(rng, p, 200, p, 500);
  rep.metric("certificate", cert.to_json());
  rep.check("order", cert.order == 6, {{"order", cert.order}});
  rep.check("nonabelian", cert.nonabelian);
  rep.check("symplectic", cert.symplectic_defect <= 1e-12, {{"defect", cert.symplectic_defect}});
  rep.check("equivariance", cert.equivariance_defect <= 1e-10,
            {{"defect", cert.equivariance_defect}, {"points", cert.equivariance_points}});
  rep.check("vanishing_iff_singular", cert.vanishing_consistent());
  rep.check("psi_weighted_scaling", cert.psi_scaling_defect <= 1e-10,
            {{"defect", cert.psi_scaling_defect}});
  rep.check("psi_separates_samples", cert.psi_min_separation > 1e-8,
            {{"min_separation", cert.psi_min_separation}});
  bool has_triple = false;
  for (const auto& o : cert.orbits) has_triple = has_triple || o.size() == 3;
  rep.check("lattice", cert.lattice_size == 5 && has_triple,
            {{"size", cert.lattice_size}, {"orbits", cert.orbits}});
  return rep;
}

}  // namespace qale
