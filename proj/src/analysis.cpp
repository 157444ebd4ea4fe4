#include "qale/analysis.hpp"

#include "qale/error.hpp"
#include "qale/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qale {

void validate(const RegionSpec& spec) {
  if (spec.n < 1 || spec.n > spec.m)
    fail(ErrorKind::BadRange, "region spec needs 1 <= n <= m, got m=" + std::to_string(spec.m) +
                                  " n=" + std::to_string(spec.n));
}

namespace {

double coeff_a(int n, double gamma) { return gamma * (gamma + 2.0 * n - 2.0); }
double coeff_b(int m, double beta, double gamma) {
  return beta * (2.0 * m - 2.0 + beta + 2.0 * gamma);
}

}  // namespace

double laplacian_identity(int m, int n, double beta, double gamma, double r, double s) {
  validate({m, n});
  if (!(s > 0.0) || !(s <= r))
    fail(ErrorKind::DomainError, "laplacian_identity needs 0 < s <= r");
  const double bracket = coeff_a(n, gamma) * r * r + coeff_b(m, beta, gamma) * s * s;
  return -0.5 * std::pow(r, beta - 2.0) * std::pow(s, gamma - 2.0) * bracket;
}

JetField power_weight_field(int m, int n, double beta, double gamma) {
  validate({m, n});
  return [m, n, beta, gamma](std::span<const Jet> c) {
    Jet r2(c.front().space(), 0.0), s2(c.front().space(), 0.0);
    for (int j = 0; j < 2 * m; ++j) {
      const Jet sq = square(c[static_cast<std::size_t>(j)]);
      r2 += sq;
      if (j >= 2 * (m - n)) s2 += sq;
    }
    return pow(r2, 0.5 * beta) * pow(s2, 0.5 * gamma);
  };
}

std::string to_string(RegionClass c) {
  switch (c) {
    case RegionClass::InsideSufficient: return "inside_sufficient";
    case RegionClass::Outside: return "outside";
    case RegionClass::Boundary: return "boundary";
  }
  return "unknown";
}

RegionVerdict region_membership(const RegionSpec& spec, double beta, double gamma) {
  validate(spec);
  const int m = spec.m, n = spec.n;
  const double tol = kRegionBoundaryTol;
  RegionVerdict v;

  const double first = coeff_a(n, gamma);
  const double second = first + coeff_b(m, beta, gamma);
  v.first_inequality = first < 0.0;
  v.second_inequality = second < 0.0;
  v.inequalities_boundary = std::abs(first) <= tol || std::abs(second) <= tol;

  // Each entry is a quantity required to be strictly positive.
  std::vector<double> margins{-beta, gamma - (2.0 - 2.0 * n), -gamma};
  const double rad = (m - 1.0) * (m - 1.0) + 2.0 * gamma * (m - n);
  const double lhs = std::abs(beta + gamma + m - 1.0);
  margins.push_back(rad >= 0.0 ? std::sqrt(rad) - lhs : -lhs - 1.0);

  bool inside = true, near = false;
  for (double x : margins) {
    if (std::abs(x) <= tol) near = true;
    if (!(x > 0.0)) inside = false;
  }
  v.sufficient = near ? RegionClass::Boundary
                      : (inside ? RegionClass::InsideSufficient : RegionClass::Outside);
  v.inside_conjectured =
      beta < 0.0 && 2.0 - 2.0 * n < gamma && gamma < 0.0 && beta + gamma > 2.0 - 2.0 * m;
  return v;
}

RegionIdentityResiduals region_identities(const RegionSpec& spec, double gamma) {
  validate(spec);
  const double m = spec.m, n = spec.n;
  const double lhs = (m - 1) * (m - 1) + 2 * gamma * (m - n);
  const double rhs = (m + 1 - 2 * n) * (m + 1 - 2 * n) + 2 * (gamma + 2 * n - 2) * (m - n);
  RegionIdentityResiduals out;
  out.expansion_residual = lhs - rhs;
  const double tol = kRegionBoundaryTol;
  if (lhs >= 0.0) {
    const double root = std::sqrt(lhs);
    out.root_bounds = std::abs(m + 1 - 2 * n) <= root + tol && root <= m - 1 + tol;
  }
  return out;
}

std::vector<RegionRow> region_scan(const RegionSpec& spec, double beta_lo, double beta_hi,
                                   double gamma_lo, double gamma_hi, int steps) {
  validate(spec);
  if (steps < 2 || !(beta_hi >= beta_lo) || !(gamma_hi >= gamma_lo))
    fail(ErrorKind::BadRange, "region scan needs lo <= hi and at least 2 steps");
  auto axis = [steps](double lo, double hi) {
    std::vector<double> v;
    if (lo == hi) return std::vector<double>{lo};
    for (int i = 0; i < steps; ++i) v.push_back(lo + (hi - lo) * i / (steps - 1));
    return v;
  };
  std::vector<RegionRow> rows;
  for (double beta : axis(beta_lo, beta_hi))
    for (double gamma : axis(gamma_lo, gamma_hi)) {
      const auto v = region_membership(spec, beta, gamma);
      rows.push_back({beta, gamma, v.sufficient == RegionClass::InsideSufficient,
                      v.inside_conjectured});
    }
  return rows;
}

std::string region_csv(const std::vector<RegionRow>& rows) {
  std::ostringstream os;
  os << "beta,gamma,inside_sufficient,inside_conjectured\n";
  for (const auto& r : rows)
    os << format_double(r.beta) << ',' << format_double(r.gamma) << ','
       << (r.inside_sufficient ? 1 : 0) << ',' << (r.inside_conjectured ? 1 : 0) << '\n';
  return os.str();
}

std::vector<RadialSample> barrier_samples(int count) {
  if (count < 2) fail(ErrorKind::BadRange, "barrier_samples needs at least 2 samples");
  std::vector<RadialSample> out;
  const double lo = std::log(1e-9);
  for (int i = 0; i < count; ++i) {
    const double t = i == count - 1 ? 1.0 : std::exp(lo * (1.0 - double(i) / (count - 1)));
    out.push_back({1.0, t});
  }
  return out;
}

BarrierReport barrier_check(const RegionSpec& spec, double beta, double gamma,
                            std::span<const RadialSample> samples) {
  validate(spec);
  if (samples.empty()) fail(ErrorKind::InsufficientSamples, "barrier_check needs samples");
  BarrierReport rep;
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples[i];
    const double lap = laplacian_identity(spec.m, spec.n, beta, gamma, p.r, p.s);
    const double target = std::pow(p.r, beta) * std::pow(p.s, gamma - 2.0);
    if (!(lap > 0.0)) {
      rep.feasible = false;
      rep.worst_sample = i;
      return rep;
    }
    const double c = target / lap;
    if (c > worst) {
      worst = c;
      rep.worst_sample = i;
    }
  }
  rep.feasible = true;
  rep.constant = worst;
  rep.diverging = worst > 1e12;
  return rep;
}

HolderNorm weighted_holder_norm(std::span<const HolderSample> samples, double beta, double gamma,
                                int k, double alpha) {
  if (samples.empty()) fail(ErrorKind::InsufficientSamples, "no samples for the Holder norm");
  if (k < 0 || !(alpha > 0.0 && alpha < 1.0))
    fail(ErrorKind::BadRange, "Holder norm needs k >= 0 and 0 < alpha < 1");
  for (const auto& s : samples)
    if (s.deriv_norms.size() < static_cast<std::size_t>(k + 1))
      fail(ErrorKind::InsufficientSamples, "sample lacks derivatives up to order k");

  HolderNorm out;
  for (int j = 0; j <= k; ++j) {
    double sup = 0.0;
    for (const auto& s : samples)
      sup = std::max(sup, std::pow(s.rho, -beta) * std::pow(s.sigma, j - gamma) *
                              s.deriv_norms[static_cast<std::size_t>(j)]);
    out.ck_part += sup;
  }
  for (std::size_t a = 0; a < samples.size(); ++a)
    for (std::size_t b = a + 1; b < samples.size(); ++b) {
      const auto& x = samples[a];
      const auto& y = samples[b];
      const double dist = (x.x - y.x).norm();
      const double smin = std::min(x.sigma, y.sigma);
      if (!(dist > 0.0) || dist >= smin / 4.0) continue;
      if (x.top.size() != y.top.size())
        fail(ErrorKind::DimensionMismatch, "Holder samples disagree on tensor size");
      ++out.pairs;
      if (x.region_label != y.region_label) ++out.straddling_pairs;
      const double w = std::pow(std::min(x.rho, y.rho), -beta) * std::pow(smin, k + alpha - gamma);
      out.seminorm = std::max(out.seminorm, w * (x.top - y.top).norm() / std::pow(dist, alpha));
    }
  out.total = out.ck_part + out.seminorm;
  return out;
}

std::vector<HolderSample> holder_samples(const JetField& field,
                                         std::span<const ComplexVector> points,
                                         const RadiusPair& radii, int k) {
  if (k < 0 || k > 4) fail(ErrorKind::BadRange, "holder_samples supports 0 <= k <= 4");
  std::vector<HolderSample> out;
  for (const auto& z : points) {
    const auto& space = JetSpace::get(2 * static_cast<int>(z.size()), k);
    const Jet f = field(Jet::variables(space, real_coordinates(z)));
    HolderSample s;
    s.x = z;
    s.rho = radii.rho(z);
    s.sigma = radii.sigma(z);
    std::vector<double> sq(static_cast<std::size_t>(k + 1), 0.0);
    std::vector<double> top;
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
      const int deg = space.degree(idx);
      double afact = 1.0;
      for (int e : space.exponents(idx)) afact *= std::tgamma(e + 1.0);
      // Component of the symmetric tensor, counted with its multiplicity.
      const double comp = std::sqrt(std::tgamma(deg + 1.0) * afact) * f.coeff(idx);
      sq[static_cast<std::size_t>(deg)] += comp * comp;
      if (deg == k) top.push_back(comp);
    }
    for (double v : sq) s.deriv_norms.push_back(std::sqrt(v));
    s.top = Eigen::Map<Eigen::VectorXd>(top.data(), static_cast<Eigen::Index>(top.size()));
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct RadialState {
  double w;  // q du/dq
  double u;
};

RadialState radial_rhs(double q, const RadialState& y, double a4) {
  const double S = std::sqrt(q * q + a4);
  // (S w)' = 2q, expanded; du/dq = w / q with limit 0 at q = 0.
  return {2.0 * q / S - q * y.w / (S * S), q > 0.0 ? y.w / q : 0.0};
}

RadialState rk4_step(double q, double h, const RadialState& y, double a4) {
  auto add = [](const RadialState& s, const RadialState& d, double f) {
    return RadialState{s.w + f * d.w, s.u + f * d.u};
  };
  const auto k1 = radial_rhs(q, y, a4);
  const auto k2 = radial_rhs(q + h / 2, add(y, k1, h / 2), a4);
  const auto k3 = radial_rhs(q + h / 2, add(y, k2, h / 2), a4);
  const auto k4 = radial_rhs(q + h, add(y, k3, h), a4);
  return {y.w + h / 6 * (k1.w + 2 * k2.w + 2 * k3.w + k4.w),
          y.u + h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u)};
}

std::optional<double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  if (lx.size() < 5) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  return sxy / sxx;
}

}  // namespace

RadialProfile eh_radial_poisson(double a) {
  if (!(a >= 0.0)) fail(ErrorKind::DomainError, "Eguchi-Hanson parameter must be >= 0");
  RadialProfile p;
  p.a = a;
  const double scale = a > 0.0 ? a * a : 1.0;
  const double a4 = a * a * a * a;

  std::vector<double> grid{0.0};
  const int n_lin = 1000, n_log = 20000;
  const double q_lin = scale / 10.0, q_max = 1e4 * scale;
  for (int i = 1; i <= n_lin; ++i) grid.push_back(q_lin * i / n_lin);
  const double ratio = std::log(q_max / q_lin) / n_log;
  for (int i = 1; i <= n_log; ++i) grid.push_back(q_lin * std::exp(ratio * i));
  grid.back() = q_max;

  std::vector<RadialState> sol{{0.0, 0.0}};
  if (a == 0.0) {
    for (std::size_t i = 1; i < grid.size(); ++i) sol.push_back({grid[i], grid[i]});
  } else {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      sol.push_back(rk4_step(grid[i - 1], grid[i] - grid[i - 1], sol.back(), a4));
      if (!std::isfinite(sol.back().w) || !std::isfinite(sol.back().u))
        fail(ErrorKind::IntegrationFailure, "radial solution is not finite");
    }
    // Fix the additive constant: past q_max, du/dq - 1 = O(q^-2), so the
    // remaining integral of (du/dq - 1) is about -(du/dq - 1) q.
    const double qn = grid.back();
    const double dun = sol.back().w / qn;
    const double shift = qn - sol.back().u - (dun - 1.0) * qn;
    for (auto& s : sol) s.u += shift;
  }

  // Drop q = 0, where the radial formulas degenerate.
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double q = grid[i];
    p.q.push_back(q);
    p.u.push_back(sol[i].u);
    p.du.push_back(sol[i].w / q);
  }
  const std::size_t n = p.q.size();
  p.sup_4u_minus_grad = -std::numeric_limits<double>::infinity();
  p.sup_4u_minus_grad_window = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double q = p.q[i];
    const double S = std::sqrt(q * q + a4);
    // Delta F = -2 [F' / K' + (q F')' / (q K')'], K' = S / q, (q K')' = q / S.
    double dw;
    if (i == 0 || i + 1 == n) {
      dw = radial_rhs(q, sol[i + 1], a4).w;
    } else {
      const double hm = q - p.q[i - 1], hp = p.q[i + 1] - q;
      const double wm = sol[i].w, w0 = sol[i + 1].w, wp = sol[i + 2].w;
      dw = (hm * hm * wp - hp * hp * wm - (hm * hm - hp * hp) * w0) / (hm * hp * (hm + hp));
    }
    const double lap = -2.0 * (p.du[i] * q / S + dw * S / q);
    p.laplacian.push_back(lap);
    p.max_laplacian_residual = std::max(p.max_laplacian_residual, std::abs(lap + 4.0));
    const double g2 = 4.0 * p.du[i] * p.du[i] * S;
    p.grad_sq.push_back(g2);
    const double excess = 4.0 * p.u[i] - g2;
    p.sup_4u_minus_grad = std::max(p.sup_4u_minus_grad, excess);
    if (q >= 1.0 && q <= 1e4) p.sup_4u_minus_grad_window = std::max(p.sup_4u_minus_grad_window, excess);
  }

  std::vector<double> r, corr;
  for (std::size_t i = 0; i < n; ++i)
    if (p.q[i] >= 10.0 * scale) {
      r.push_back(std::sqrt(p.q[i]));
      corr.push_back(std::abs(p.u[i] - p.q[i]));
    }
  if (a > 0.0) p.correction_exponent = log_log_slope(r, corr);
  return p;
}

BarrierFromU barrier_from_u(const RadialProfile& profile, double delta, double k_shift) {
  const int m = 2;
  BarrierFromU out;
  out.delta = delta;
  out.k_shift = k_shift;
  if (!(delta > 1.0 - m && delta < 0.0)) {
    out.reason = "delta must lie in (1 - m, 0)";
    return out;
  }
  const std::size_t n = profile.q.size();
  if (n < 10) fail(ErrorKind::InsufficientSamples, "radial profile grid is too short");
  for (std::size_t i = 0; i < n; ++i) {
    const double v = profile.u[i] + k_shift;
    if (v < 1.0 || profile.grad_sq[i] > 4.0 * v * (1.0 + 1e-12))
      fail(ErrorKind::PreconditionFailed,
           "barrier precondition fails at q = " + format_double(profile.q[i]) +
               " (u + K = " + format_double(v) + ", |grad u|^2 = " +
               format_double(profile.grad_sq[i]) + ")");
  }

  out.min_margin = std::numeric_limits<double>::infinity();
  out.lower_bound_holds = true;
  bool positive = true;
  std::vector<double> r1(n), r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = profile.u[i] + k_shift;
    const double lap = delta * std::pow(v, delta - 1.0) * profile.laplacian[i] -
                       0.5 * delta * (delta - 1.0) * std::pow(v, delta - 2.0) * profile.grad_sq[i];
    const double bound = -2.0 * delta * (delta + m - 1.0) * std::pow(v, delta - 1.0);
    const double margin = lap - bound;
    out.min_margin = std::min(out.min_margin, margin);
    if (margin < -1e-9 * std::abs(bound)) out.lower_bound_holds = false;
    if (!(lap > 0.0)) positive = false;
    const double rho = RadiusPair::rho_of_r(std::sqrt(profile.q[i]));
    r1[i] = std::pow(rho, 2.0 * delta - 2.0) / lap;
    r2[i] = std::pow(v, delta) / std::pow(rho, 2.0 * delta);
  }
  out.c1 = positive ? *std::max_element(r1.begin(), r1.end())
                    : std::numeric_limits<double>::infinity();
  out.c2 = *std::max_element(r2.begin(), r2.end());

  // The ratios converge: the change over the last decade of q is at most
  // half the change over the decade before it.
  auto at_q = [&](double q) {
    const auto it = std::lower_bound(profile.q.begin(), profile.q.end(), q);
    return static_cast<std::size_t>(it - profile.q.begin());
  };
  const std::size_t j1 = at_q(profile.q.back() / 10.0), j2 = at_q(profile.q.back() / 100.0);
  auto settled = [&](const std::vector<double>& r) {
    const double late = std::abs(r[n - 1] - r[j1]), early = std::abs(r[j1] - r[j2]);
    return late <= 0.5 * early || late <= 1e-9 * std::abs(r[n - 1]);
  };
  out.constants_settle = positive && settled(r1) && settled(r2);
  out.feasible = out.lower_bound_holds && positive && std::isfinite(out.c1) &&
                 std::isfinite(out.c2) && out.constants_settle;
  if (!out.feasible)
    out.reason = !out.lower_bound_holds ? "lower bound for Delta F fails"
                 : !positive            ? "Delta F is not positive"
                                        : "barrier constants do not settle";
  return out;
}

}  // namespace qale
