// The C^4/S3 example: S3 acting on C^4 = C^2 (+) C^2 preserving
// dz1^dz2 + dz3^dz4, its five relative invariants, and the map into
// weighted projective space.
#pragma once

#include "qale/random.hpp"
#include "qale/strata.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <optional>

namespace qale {

/// alpha = diag(w, w^2, w^2, w), w = exp(2 pi i / 3); beta swaps (z1, z2) with (z3, z4).
ComplexMatrix s3_alpha();
ComplexMatrix s3_beta();
MatrixGroup s3_group();

/// Matrix of dz1^dz2 + dz3^dz4.
ComplexMatrix s3_symplectic_form();

/// max over group elements of |g^T J g - J|.
double symplectic_defect(const MatrixGroup& group);

using InvariantVector = std::array<Complex, 5>;

/// z1 z2 - z3 z4, z1^3 - z3^3, z1^2 z4 - z2 z3^2, z1 z4^2 - z2^2 z3, z2^3 - z4^3.
InvariantVector phi_invariants(const ComplexVector& z);

/// +1 on the index-2 subgroup generated by alpha, -1 otherwise.
int sign_character(const MatrixGroup& group, std::size_t g);

/// max over g, samples of |p(g z) - chi(g) p(z)|.
double equivariance_defect(const MatrixGroup& group, std::span<const ComplexVector> points);

struct VanishingVerdict {
  bool vanishing = false;
  bool singular = false;
  bool consistent() const { return vanishing == singular; }
};

VanishingVerdict vanishing_vs_singular(const ComplexVector& z, const StratPoset& poset,
                                       const MatrixGroup& group, double tol = 1e-9);

/// [x0, x1^3, x1^2 x2, x1 x2^2, x2^3], scaled so the first coordinate of
/// largest modulus equals 1. Throws ZeroVector for x = 0.
ComplexVector psi_embedding(Complex x0, Complex x1, Complex x2);

struct S3Certificate {
  std::size_t order = 0;
  bool nonabelian = false;
  double symplectic_defect = 0.0;
  double equivariance_defect = 0.0;
  std::size_t equivariance_points = 0;
  /// Per stratum label: {consistent, violating} sample counts.
  std::map<std::string, std::array<std::size_t, 2>> stratum_counts;
  std::array<std::size_t, 2> random_counts{0, 0};
  double psi_scaling_defect = 0.0;
  double psi_min_separation = 0.0;
  std::size_t lattice_size = 0;
  /// Orbits of the G-action on strata, as labels.
  std::vector<std::vector<std::string>> orbits;

  bool vanishing_consistent() const;
  nlohmann::json to_json() const;
};

/// Sampled certificate; all draws come from `rng`.
S3Certificate s3_certificate(Rng& rng, std::size_t equivariance_points = 1000,
                             std::size_t per_stratum = 200, std::size_t random_points = 1000,
                             std::size_t psi_trials = 500);

}  // namespace qale
