// Explicit Kahler potentials and the cutoff-and-sum gluing of stratum
// potentials into one potential on C^m/G.
#pragma once

#include "qale/potential.hpp"
#include "qale/strata.hpp"

#include <map>
#include <memory>
#include <span>
#include <vector>

namespace qale {

/// K = |z|^2 on C^m.
KahlerPotential euclidean_potential(int m);

/// Eguchi-Hanson on the Z2-quotient chart C^2 \ {0}, u = |z|^2:
///   K = sqrt(a^4 + u^2) + a^2 log u - a^2 log(a^2 + sqrt(a^4 + u^2)).
/// Stored as u plus a perturbation that decays like -a^4 / (2u). a = 0 gives
/// the flat metric. Throws DomainError at u = 0.
KahlerPotential eguchi_hanson_potential(double a);

/// K - u for Eguchi-Hanson, written without cancellation so that it keeps
/// relative precision at large u.
Jet eguchi_hanson_perturbation(const Jet& u, double a);

/// K(v, y) = K1(v) + K2(y) on the product chart.
KahlerPotential product_potential(const KahlerPotential& first, const KahlerPotential& second);

/// Smooth step: 0 on [0, R], 1 on [2R, inf), exp(-1/t) profile in between.
class Cutoff {
 public:
  explicit Cutoff(double R);

  double R() const { return R_; }
  double operator()(double x) const;
  Jet operator()(const Jet& x) const;
  double derivative(double x) const;

 private:
  double R_;
};

Cutoff cutoff_eta(double R);

/// Sum over strata i != inf of k_i |A_i| / |G| times the sum of the cut-off
/// component Phi_i over the chart preimages of x. On the C^m chart the
/// preimage sum is an average over G:
///   phi(x) = sum_i k_i / |G| sum_{g in G} Phi_i(g x),
///   Phi_i(x) = phi_i(W_i^* x) prod_{j : i not >= j} eta(mu_{i,j}(x)).
class GluedPotential {
 public:
  GluedPotential(StratPoset poset, MatrixGroup group, MobiusWeights weights,
                 std::map<std::size_t, KahlerPotential> components, double R);

  /// Euclidean |z|^2 plus the glued perturbation phi.
  KahlerPotential potential() const;

  double phi(const ComplexVector& x) const;
  /// Phi_i(x) for a single stratum, without weights or averaging.
  double component_term(std::size_t i, const ComplexVector& x) const;
  double cutoff_product(std::size_t i, const ComplexVector& x) const;

  const StratPoset& poset() const { return data_->poset; }
  const MatrixGroup& group() const { return data_->group; }
  const MobiusWeights& weights() const { return data_->weights; }
  const Cutoff& cutoff() const { return data_->cutoff; }

  /// True when every cutoff factor of every weighted component equals 1 at x.
  bool outside_all_tubes(const ComplexVector& x) const;

  struct Data {
    StratPoset poset;
    MatrixGroup group;
    MobiusWeights weights;
    std::map<std::size_t, KahlerPotential> components;
    Cutoff cutoff;
  };

 private:
  std::shared_ptr<const Data> data_;
};

GluedPotential glued_potential(const StratPoset& poset, const MatrixGroup& group,
                               const MobiusWeights& weights,
                               std::map<std::size_t, KahlerPotential> components, double R);

/// Eguchi-Hanson components for every stratum other than 0 and inf. Each such
/// stratum must have dim W = 2 with A = {1, -1 on W}; otherwise throws
/// PreconditionFailed.
std::map<std::size_t, KahlerPotential> eguchi_hanson_components(const StratPoset& poset,
                                                                const MatrixGroup& group,
                                                                double a);

struct PositivityReport {
  std::vector<double> min_eigenvalues;
  double overall_min = 0.0;
  bool pass = false;
};

PositivityReport positivity_check(const KahlerPotential& k,
                                  std::span<const ComplexVector> points);

}  // namespace qale
