#include "qale/strata.hpp"

#include "qale/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qale {

StratPoset::StratPoset(std::vector<Stratum> strata, std::size_t idx_zero,
                       std::size_t idx_infinity)
    : strata_(std::move(strata)), idx_zero_(idx_zero), idx_infinity_(idx_infinity) {
  const std::size_t k = strata_.size();
  geq_.assign(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      geq_[i][j] = strata_[i].V.is_contained_in(strata_[j].V);
  for (std::size_t i = 0; i < k; ++i) {
    if (i == idx_zero_) continue;
    const int w = strata_[i].W.dim();
    n_ = n_ ? std::min(*n_, w) : w;
  }
}

std::string StratPoset::label(std::size_t i) const {
  if (i == idx_zero_) return "0";
  if (i == idx_infinity_) return "inf";
  return std::to_string(i);
}

std::optional<std::size_t> StratPoset::find(const Subspace& v, double tol) const {
  for (std::size_t i = 0; i < strata_.size(); ++i)
    if (strata_[i].V.same_as(v, tol)) return i;
  return std::nullopt;
}

namespace {

void insert_unique(std::vector<Subspace>& list, const Subspace& v) {
  for (const auto& u : list)
    if (u.same_as(v)) return;
  list.push_back(v);
}

void sort_subspaces(std::vector<Subspace>& list) {
  std::sort(list.begin(), list.end(), [](const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() > b.dim();
    return a.canonical_key() < b.canonical_key();
  });
}

}  // namespace

StratPoset build_lattice(const MatrixGroup& group) {
  const int m = group.dim();
  std::vector<Subspace> lattice{Subspace::whole(m)};
  for (const auto& g : group.elements()) insert_unique(lattice, element_fixed_space(g));

  // Intersection closure; each pass only needs pairs involving new members.
  std::size_t done = 0;
  while (done < lattice.size()) {
    const std::size_t end = lattice.size();
    for (std::size_t i = done; i < end; ++i)
      for (std::size_t j = 0; j < end; ++j) insert_unique(lattice, lattice[i].intersect(lattice[j]));
    done = end;
  }
  sort_subspaces(lattice);

  std::vector<Stratum> strata;
  strata.reserve(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Subspace& v = lattice[i];
    IndexSet a = centralizer_of_subspace(group, v);
    IndexSet n = normalizer_of_subspace(group, v);
    if (!fix_of_indices(group, a).same_as(v))
      fail(ErrorKind::NonUniqueOrInconsistent, "lattice member is not Fix(C(V))");
    QuotientGroup b = quotient_group(n, a, group);
    Subspace w = v.orthogonal_complement();
    const int d = 2 - 2 * w.dim();
    strata.push_back(Stratum{i, v, std::move(w), std::move(a), std::move(n), std::move(b), d});
  }
  // Fix(G) is the unique smallest member, hence last after sorting.
  const std::size_t inf = strata.size() - 1;
  return StratPoset(std::move(strata), 0, inf);
}

std::vector<Subspace> lattice_by_subgroups(const MatrixGroup& group) {
  std::vector<Subspace> out;
  for (const auto& sub : subgroup_enumeration(group)) insert_unique(out, fix_of_indices(group, sub));
  sort_subspaces(out);
  return out;
}

bool same_subspace_sets(const std::vector<Subspace>& a, const std::vector<Subspace>& b,
                        double tol) {
  auto covered = [tol](const std::vector<Subspace>& x, const std::vector<Subspace>& y) {
    return std::all_of(x.begin(), x.end(), [&](const Subspace& u) {
      return std::any_of(y.begin(), y.end(), [&](const Subspace& v) { return u.same_as(v, tol); });
    });
  };
  return a.size() == b.size() && covered(a, b) && covered(b, a);
}

MobiusWeights mobius_weights(const StratPoset& poset) {
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < poset.size(); ++j)
    if (j != poset.idx_infinity()) order.push_back(j);
  // Smallest V first: every i strictly above j has smaller dim V, so each
  // equation has a single unknown when reached.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return poset[a].V.dim() < poset[b].V.dim();
  });

  MobiusWeights w;
  for (std::size_t j : order) {
    long long rest = 0;
    for (std::size_t i : order) {
      if (i == j || !poset.geq(i, j)) continue;
      auto it = w.k.find(i);
      if (it == w.k.end())
        fail(ErrorKind::NonUniqueOrInconsistent, "Mobius system is not triangular");
      rest += it->second;
    }
    w.k[j] = 1 - rest;
  }
  if (!mobius_equations_hold(poset, w))
    fail(ErrorKind::NonUniqueOrInconsistent, "Mobius equations fail after solve");
  return w;
}

bool mobius_equations_hold(const StratPoset& poset, const MobiusWeights& w) {
  for (std::size_t j = 0; j < poset.size(); ++j) {
    if (j == poset.idx_infinity()) continue;
    long long sum = 0;
    for (const auto& [i, k] : w.k)
      if (i != poset.idx_infinity() && poset.geq(i, j)) sum += k;
    if (sum != 1) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> GActionOnI::orbits() const {
  std::vector<std::vector<std::size_t>> out;
  if (perm.empty()) return out;
  const std::size_t k = perm.front().size();
  std::vector<char> seen(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> orbit;
    for (const auto& p : perm) orbit.push_back(p[i]);
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    for (std::size_t j : orbit) seen[j] = 1;
    out.push_back(std::move(orbit));
  }
  return out;
}

GActionOnI g_action(const MatrixGroup& group, const StratPoset& poset) {
  GActionOnI action;
  action.perm.assign(group.order(), std::vector<std::size_t>(poset.size(), 0));
  for (std::size_t g = 0; g < group.order(); ++g)
    for (std::size_t i = 0; i < poset.size(); ++i) {
      auto target = poset.find(poset[i].V.transformed(group.element(g)));
      if (!target)
        fail(ErrorKind::OrbitResolutionFailure,
             "g V_i matches no stratum (g=" + std::to_string(g) + ", i=" + poset.label(i) + ")");
      action.perm[g][i] = *target;
    }
  if (!g_action_invariants_hold(group, poset, action))
    fail(ErrorKind::OrbitResolutionFailure, "G-action invariants fail");
  return action;
}

bool g_action_invariants_hold(const MatrixGroup& group, const StratPoset& poset,
                              const GActionOnI& action) {
  for (std::size_t g = 0; g < group.order(); ++g) {
    const ComplexMatrix& mg = group.element(g);
    for (std::size_t i = 0; i < poset.size(); ++i) {
      const std::size_t gi = action.perm[g][i];
      const auto& si = poset[i];
      const auto& sgi = poset[gi];
      if (sup_norm(mg * si.V.projector() * mg.adjoint() - sgi.V.projector()) > kMembershipTol)
        return false;
      if (sup_norm(mg * si.W.projector() * mg.adjoint() - sgi.W.projector()) > kMembershipTol)
        return false;
      IndexSet conj;
      for (std::size_t a : si.A) conj.push_back(group.multiply(group.multiply(g, a), group.inverse(g)));
      std::sort(conj.begin(), conj.end());
      if (conj != sgi.A) return false;
    }
  }
  return true;
}

bool intersection_closed(const StratPoset& poset) {
  for (std::size_t i = 0; i < poset.size(); ++i)
    for (std::size_t j = i + 1; j < poset.size(); ++j)
      if (!poset.find(poset[i].V.intersect(poset[j].V))) return false;
  return true;
}

bool restriction_closed(const StratPoset& poset, std::size_t i) {
  std::vector<Subspace> family;
  for (std::size_t j = 0; j < poset.size(); ++j)
    if (poset.geq(i, j)) insert_unique(family, poset[j].V.intersect(poset[i].W));
  for (const auto& a : family)
    for (const auto& b : family) {
      const Subspace c = a.intersect(b);
      if (std::none_of(family.begin(), family.end(), [&](const Subspace& u) { return u.same_as(c); }))
        return false;
    }
  return true;
}

double quotient_distance(const ComplexVector& x, const Subspace& v, const IndexSet& a,
                         const MatrixGroup& group) {
  if (x.size() != v.ambient_dim() || v.ambient_dim() != group.dim())
    fail(ErrorKind::DimensionMismatch, "quotient_distance dimensions differ");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k : a) best = std::min(best, v.distance(group.element(k) * x));
  return best;
}

double mu(const ComplexVector& x, std::size_t i, std::size_t j, const StratPoset& poset,
          const MatrixGroup& group) {
  return quotient_distance(x, poset[j].V, poset[i].A, group);
}

double nu(const ComplexVector& x, std::size_t i, const StratPoset& poset,
          const MatrixGroup& group) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < poset.size(); ++j)
    if (j != poset.idx_zero()) best = std::min(best, mu(x, i, j, poset, group));
  return 1.0 + best;
}

double radius_r(const ComplexVector& x) { return x.norm(); }

double singular_distance_s(const ComplexVector& x, const StratPoset& poset,
                           const MatrixGroup& group) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < group.order(); ++g) {
    const ComplexVector gx = group.element(g) * x;
    for (std::size_t i = 0; i < poset.size(); ++i)
      if (i != poset.idx_zero()) best = std::min(best, poset[i].V.distance(gx));
  }
  return best;
}

bool in_exclusion_tube(const ComplexVector& x, std::size_t i, double R,
                       const StratPoset& poset, const MatrixGroup& group) {
  for (std::size_t j = 0; j < poset.size(); ++j)
    if (!poset.geq(i, j) && mu(x, i, j, poset, group) <= R) return true;
  return false;
}

double RadiusPair::rho_of_r(double r) { return std::sqrt(r * r + 1.0) + 1.0; }

double RadiusPair::sigma_of_s(double s) {
  if (std::isinf(s)) return s;
  return std::sqrt(0.25 * s * s + 1.0) + 1.0;
}

double RadiusPair::rho(const ComplexVector& x) const { return rho_of_r(radius_r(x)); }

double RadiusPair::sigma(const ComplexVector& x) const {
  return sigma_of_s(singular_distance_s(x, *poset_, *group_));
}

}  // namespace qale
