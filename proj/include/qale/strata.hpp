// The fixed-subspace lattice of a finite group G in U(m), the poset it
// induces, per-stratum data, the G-action on strata, Mobius weights and the
// distance functions (r, s, mu, nu) together with smoothed radius functions.
#pragma once

#include "qale/matgroup.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qale {

struct Stratum {
  std::size_t index = 0;
  Subspace V;
  /// Orthogonal complement of V.
  Subspace W;
  /// Pointwise stabilizer C(V).
  IndexSet A;
  /// Setwise stabilizer N(V).
  IndexSet N;
  /// N / A.
  QuotientGroup B;
  /// 2 - 2 dim W.
  int d = 0;
};

class StratPoset {
 public:
  StratPoset(std::vector<Stratum> strata, std::size_t idx_zero, std::size_t idx_infinity);

  std::size_t size() const { return strata_.size(); }
  const Stratum& operator[](std::size_t i) const { return strata_[i]; }
  const std::vector<Stratum>& strata() const { return strata_; }
  int ambient_dim() const { return strata_.front().V.ambient_dim(); }

  std::size_t idx_zero() const { return idx_zero_; }
  std::size_t idx_infinity() const { return idx_infinity_; }

  /// i >= j in the stratum order, i.e. V_i is contained in V_j.
  bool geq(std::size_t i, std::size_t j) const { return geq_[i][j]; }
  const std::vector<std::vector<bool>>& relation() const { return geq_; }

  /// Complex codimension n of the singular set; empty for the trivial group.
  std::optional<int> codimension() const { return n_; }

  /// "0", "inf", or the 1-based position among the remaining strata.
  std::string label(std::size_t i) const;

  /// Index whose V matches `v`, if any.
  std::optional<std::size_t> find(const Subspace& v, double tol = kMembershipTol) const;

 private:
  std::vector<Stratum> strata_;
  std::vector<std::vector<bool>> geq_;
  std::size_t idx_zero_;
  std::size_t idx_infinity_;
  std::optional<int> n_;
};

/// Intersection closure of {Fix(g)} together with C^m. Strata are ordered by
/// decreasing dim V with ties broken by the rounded projector, so index 0 is
/// C^m and the last index is Fix(G).
StratPoset build_lattice(const MatrixGroup& group);

/// {Fix(A) : A a subgroup of G}, deduplicated, from subgroup enumeration.
/// Independent of build_lattice; used as its oracle.
std::vector<Subspace> lattice_by_subgroups(const MatrixGroup& group);

/// True if both lists contain the same subspaces up to `tol`.
bool same_subspace_sets(const std::vector<Subspace>& a, const std::vector<Subspace>& b,
                        double tol = kMembershipTol);

struct MobiusWeights {
  /// Keyed by stratum index; idx_infinity is absent.
  std::map<std::size_t, long long> k;

  long long at(std::size_t i) const { return k.at(i); }
};

/// Integers k_i with sum_{i >= j, i != inf} k_i = 1 for every j != inf.
MobiusWeights mobius_weights(const StratPoset& poset);

/// Exact integer check of the defining equations.
bool mobius_equations_hold(const StratPoset& poset, const MobiusWeights& w);

struct GActionOnI {
  /// perm[g][i] = g.i
  std::vector<std::vector<std::size_t>> perm;

  /// Orbits of the action, each sorted, ordered by smallest member.
  std::vector<std::vector<std::size_t>> orbits() const;
};

GActionOnI g_action(const MatrixGroup& group, const StratPoset& poset);

/// Verifies V_{g.i} = gV_i, W_{g.i} = gW_i and A_{g.i} = g A_i g^{-1}.
bool g_action_invariants_hold(const MatrixGroup& group, const StratPoset& poset,
                              const GActionOnI& action);

/// For all i, j: V_i intersect V_j is again a stratum.
bool intersection_closed(const StratPoset& poset);

/// For stratum i, the induced family {V_j intersect W_i : i >= j} is closed
/// under intersection.
bool restriction_closed(const StratPoset& poset, std::size_t i);

/// min over a in A of |(I - P_V)(a x)|: the distance from xA to VA/A in C^m/A.
double quotient_distance(const ComplexVector& x, const Subspace& v, const IndexSet& a,
                         const MatrixGroup& group);

/// mu_{i,j}(x), evaluated on the chart where C^m/A_i is identified with C^m.
double mu(const ComplexVector& x, std::size_t i, std::size_t j, const StratPoset& poset,
          const MatrixGroup& group);

/// 1 + min_{j != 0} mu_{i,j}(x).
double nu(const ComplexVector& x, std::size_t i, const StratPoset& poset,
          const MatrixGroup& group);

/// Distance to the origin in C^m/G.
double radius_r(const ComplexVector& x);

/// Distance to the singular set in C^m/G; +infinity when there is none.
double singular_distance_s(const ComplexVector& x, const StratPoset& poset,
                           const MatrixGroup& group);

/// U_i membership: mu_{i,j}(x) <= R for some j with i not >= j.
bool in_exclusion_tube(const ComplexVector& x, std::size_t i, double R,
                       const StratPoset& poset, const MatrixGroup& group);

/// rho = sqrt(r^2 + 1) + 1 and sigma = sqrt(s^2 / 4 + 1) + 1.
class RadiusPair {
 public:
  RadiusPair(const StratPoset& poset, const MatrixGroup& group)
      : poset_(&poset), group_(&group) {}

  double rho(const ComplexVector& x) const;
  double sigma(const ComplexVector& x) const;

  static double rho_of_r(double r);
  static double sigma_of_s(double s);

 private:
  const StratPoset* poset_;
  const MatrixGroup* group_;
};

}  // namespace qale
