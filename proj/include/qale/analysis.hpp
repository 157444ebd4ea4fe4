// Weighted analysis on QALE model spaces: the Laplacian of r^beta s^gamma,
// the isomorphism region for the weighted Laplacian, barrier functions,
// weighted Holder norms and the radial solution of Delta u = -2m on
// Eguchi-Hanson.
//
// Conventions: Delta = -2 tr(g^{-1} dd-bar), so Delta |z|^2 = -2m on C^m.
// r = |x| and s = distance to the singular set; on the flat model
// C^{m-n} x C^n the singular set is C^{m-n} x {0}.
#pragma once

#include "qale/potential.hpp"
#include "qale/strata.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qale {

inline constexpr double kRegionBoundaryTol = 1e-12;

struct RegionSpec {
  int m = 0;
  int n = 0;
};

/// Throws BadRange unless 1 <= n <= m.
void validate(const RegionSpec& spec);

/// Closed form of Delta(r^beta s^gamma) on C^{m-n} x C^n:
///   -1/2 r^{beta-2} s^{gamma-2} [A r^2 + B s^2],
///   A = gamma(gamma + 2n - 2),  B = beta(2m - 2 + beta + 2 gamma).
/// Throws DomainError unless 0 < s <= r.
double laplacian_identity(int m, int n, double beta, double gamma, double r, double s);

/// r^beta s^gamma on flat C^m as a jet field, s measured to C^{m-n} x {0}.
JetField power_weight_field(int m, int n, double beta, double gamma);

enum class RegionClass { InsideSufficient, Outside, Boundary };

std::string to_string(RegionClass c);

struct RegionVerdict {
  RegionClass sufficient = RegionClass::Outside;
  /// gamma(gamma + 2n - 2) < 0
  bool first_inequality = false;
  /// gamma(gamma + 2n - 2) + beta(2m - 2 + beta + 2 gamma) < 0
  bool second_inequality = false;
  /// Either of the two inequalities is within kRegionBoundaryTol of equality.
  bool inequalities_boundary = false;
  /// beta < 0, 2 - 2n < gamma < 0, beta + gamma > 2 - 2m.
  bool inside_conjectured = false;

  bool inequalities_hold() const { return first_inequality && second_inequality; }
};

/// Sufficient region: beta < 0, 2 - 2n < gamma < 0 and
/// |beta + gamma + m - 1| < sqrt((m-1)^2 + 2 gamma (m - n)).
RegionVerdict region_membership(const RegionSpec& spec, double beta, double gamma);

struct RegionIdentityResiduals {
  /// (m-1)^2 + 2g(m-n) - [(m+1-2n)^2 + 2(g+2n-2)(m-n)]
  double expansion_residual = 0.0;
  /// |m+1-2n| <= sqrt((m-1)^2 + 2g(m-n)) <= m-1; meaningful for 2-2n < g < 0.
  bool root_bounds = false;
};

RegionIdentityResiduals region_identities(const RegionSpec& spec, double gamma);

struct RegionRow {
  double beta = 0.0;
  double gamma = 0.0;
  bool inside_sufficient = false;
  bool inside_conjectured = false;
};

/// Uniform grid over [beta_lo, beta_hi] x [gamma_lo, gamma_hi], beta-major.
/// A range with lo == hi contributes a single value.
std::vector<RegionRow> region_scan(const RegionSpec& spec, double beta_lo, double beta_hi,
                                   double gamma_lo, double gamma_hi, int steps);

/// Header: beta,gamma,inside_sufficient,inside_conjectured
std::string region_csv(const std::vector<RegionRow>& rows);

struct RadialSample {
  double r = 0.0;
  double s = 0.0;
};

/// r = 1 and s = t for t log-uniform on [1e-9, 1], endpoints included.
std::vector<RadialSample> barrier_samples(int count);

struct BarrierReport {
  bool feasible = false;
  /// Smallest C with C Delta(r^beta s^gamma) >= r^beta s^{gamma-2} on the samples.
  std::optional<double> constant;
  /// Feasible but with C above 1e12.
  bool diverging = false;
  /// Sample with the largest required C, or the first one where Delta <= 0.
  std::size_t worst_sample = 0;
};

BarrierReport barrier_check(const RegionSpec& spec, double beta, double gamma,
                            std::span<const RadialSample> samples);

/// Values at one point for the weighted Holder norm.
struct HolderSample {
  ComplexVector x;
  double rho = 1.0;
  double sigma = 1.0;
  /// |nabla^j f|, j = 0..k.
  std::vector<double> deriv_norms;
  /// Components of nabla^k f in the chart, scaled so their Euclidean norm is
  /// |nabla^k f|.
  Eigen::VectorXd top;
  /// Nearest singular stratum, if known; pairs across differing labels are
  /// counted as straddling.
  int region_label = -1;
};

struct HolderNorm {
  double ck_part = 0.0;
  double seminorm = 0.0;
  double total = 0.0;
  std::size_t pairs = 0;
  std::size_t straddling_pairs = 0;
};

/// sum_j sup rho^{-beta} sigma^{j-gamma} |nabla^j f| plus
///   sup over pairs of min(rho)^{-beta} min(sigma)^{k+alpha-gamma}
///   |nabla^k f(x) - nabla^k f(y)| / |x - y|^alpha,
/// over pairs with |x - y| < min(sigma(x), sigma(y)) / 4.
/// Throws InsufficientSamples if there are no samples or a sample lacks
/// derivatives up to order k.
HolderNorm weighted_holder_norm(std::span<const HolderSample> samples, double beta, double gamma,
                                int k, double alpha);

/// Samples `field` with flat-chart derivatives up to order k <= 4.
std::vector<HolderSample> holder_samples(const JetField& field,
                                         std::span<const ComplexVector> points,
                                         const RadiusPair& radii, int k);

/// Radial solution of Delta u = -4 on Eguchi-Hanson in the chart variable
/// q = |z|^2, regular at the exceptional set and normalized so that
/// u - q -> 0 at infinity.
struct RadialProfile {
  double a = 0.0;
  std::vector<double> q;
  std::vector<double> u;
  std::vector<double> du;
  /// Delta u from the discrete solution; should equal -4.
  std::vector<double> laplacian;
  std::vector<double> grad_sq;
  double sup_4u_minus_grad = 0.0;
  /// Over rho in [1, 100].
  double sup_4u_minus_grad_window = 0.0;
  double max_laplacian_residual = 0.0;
  /// Fitted exponent of |u - q| against sqrt(q) on the tail; empty when the
  /// correction vanishes identically.
  std::optional<double> correction_exponent;
};

/// a = 0 gives the flat profile u = q. Throws DomainError for a < 0 and
/// IntegrationFailure if the solution is not finite.
RadialProfile eh_radial_poisson(double a);

struct BarrierFromU {
  bool feasible = false;
  std::string reason;
  double delta = 0.0;
  double k_shift = 0.0;
  /// min over the grid of Delta F + 2 delta (delta + m - 1)(u + K)^{delta - 1}
  double min_margin = 0.0;
  bool lower_bound_holds = false;
  /// Smallest C1 with C1 Delta F >= rho^{2 delta - 2}.
  double c1 = 0.0;
  /// Smallest C2 with F <= C2 rho^{2 delta}.
  double c2 = 0.0;
  /// The ratios defining C1 and C2 converge: their change shrinks by at
  /// least half from one decade of q to the next at the end of the grid.
  bool constants_settle = false;
};

/// F = (u + K)^delta on the radial grid of `profile` (m = 2). Returns an
/// infeasible report unless 1 - m < delta < 0. Throws PreconditionFailed,
/// naming the grid point, if u + K < 1 or |grad u|^2 > 4(u + K).
BarrierFromU barrier_from_u(const RadialProfile& profile, double delta, double k_shift);

}  // namespace qale
