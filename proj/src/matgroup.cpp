#include "qale/matgroup.hpp"

#include "qale/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>

namespace qale {

double sup_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s = std::max(s, std::abs(m(i, j)));
  return s;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix defect =
      m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return sup_norm(defect) <= tol;
}

ComplexMatrix kernel_basis(const ComplexMatrix& m) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return ComplexMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankCutoff) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

namespace {

std::int64_t snap(double x) { return std::llround(x / kKeyGrid); }

ComplexMatrix orthonormal_columns(int m, const ComplexMatrix& spanning) {
  if (spanning.cols() == 0) return ComplexMatrix(m, 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(spanning, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankCutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

std::vector<std::int64_t> canonical_key(const ComplexMatrix& m) {
  std::vector<std::int64_t> key;
  key.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      key.push_back(snap(m(i, j).real()));
      key.push_back(snap(m(i, j).imag()));
    }
  return key;
}

Subspace::Subspace(int ambient_dim, const ComplexMatrix& spanning)
    : ambient_dim_(ambient_dim) {
  if (spanning.rows() != ambient_dim && spanning.cols() > 0)
    fail(ErrorKind::DimensionMismatch, "spanning set has wrong row count");
  basis_ = orthonormal_columns(ambient_dim, spanning);
  projector_ = basis_ * basis_.adjoint();
  if (basis_.cols() == 0) projector_ = ComplexMatrix::Zero(ambient_dim, ambient_dim);
}

Subspace Subspace::whole(int m) { return Subspace(m, ComplexMatrix::Identity(m, m)); }

Subspace Subspace::zero(int m) { return Subspace(m, ComplexMatrix(m, 0)); }

Subspace Subspace::orthogonal_complement() const {
  return Subspace(ambient_dim_, kernel_basis(projector_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_)
    fail(ErrorKind::DimensionMismatch, "intersecting subspaces of different ambient dimension");
  const auto id = ComplexMatrix::Identity(ambient_dim_, ambient_dim_);
  ComplexMatrix stacked(2 * ambient_dim_, ambient_dim_);
  stacked << id - projector_, id - other.projector_;
  return Subspace(ambient_dim_, kernel_basis(stacked));
}

Subspace Subspace::transformed(const ComplexMatrix& g) const {
  if (g.rows() != ambient_dim_)
    fail(ErrorKind::DimensionMismatch, "transforming subspace by matrix of wrong size");
  if (dim() == 0) return *this;
  return Subspace(ambient_dim_, g * basis_);
}

bool Subspace::is_contained_in(const Subspace& other, double tol) const {
  if (dim() == 0) return true;
  const ComplexMatrix residual = basis_ - other.projector_ * basis_;
  return sup_norm(residual) <= tol;
}

bool Subspace::same_as(const Subspace& other, double tol) const {
  return dim() == other.dim() && sup_norm(projector_ - other.projector_) <= tol;
}

double Subspace::distance(const ComplexVector& x) const {
  return (x - projector_ * x).norm();
}

std::vector<std::int64_t> Subspace::canonical_key() const {
  return qale::canonical_key(projector_);
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> MatrixGroup::find(const ComplexMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) return std::nullopt;
  auto it = index_of_key_.find(canonical_key(m));
  if (it == index_of_key_.end()) return std::nullopt;
  return it->second;
}

IndexSet MatrixGroup::subgroup_generated(std::span<const std::size_t> gens) const {
  std::vector<char> seen(order(), 0);
  std::deque<std::size_t> queue{identity()};
  seen[identity()] = 1;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t g : gens) {
      const std::size_t y = multiply(x, g);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  IndexSet out;
  for (std::size_t i = 0; i < order(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

bool MatrixGroup::is_subgroup(const IndexSet& s) const {
  if (s.empty() || !std::binary_search(s.begin(), s.end(), identity())) return false;
  for (std::size_t a : s) {
    if (!std::binary_search(s.begin(), s.end(), inverse(a))) return false;
    for (std::size_t b : s)
      if (!std::binary_search(s.begin(), s.end(), multiply(a, b))) return false;
  }
  return true;
}

bool MatrixGroup::is_normal_in(const IndexSet& sub, const IndexSet& super) const {
  for (std::size_t n : super)
    for (std::size_t a : sub) {
      const std::size_t c = multiply(multiply(n, a), inverse(n));
      if (!std::binary_search(sub.begin(), sub.end(), c)) return false;
    }
  return true;
}

IndexSet MatrixGroup::all() const {
  IndexSet out(order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

MatrixGroup close_group(std::span<const ComplexMatrix> generators, std::size_t max_order,
                        int dim) {
  if (max_order < 1) fail(ErrorKind::OrderCapExceeded, "max_order must be at least 1");
  if (!generators.empty()) dim = static_cast<int>(generators.front().rows());
  if (dim < 1) fail(ErrorKind::DimensionMismatch, "group dimension must be positive");
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& g = generators[k];
    if (g.rows() != dim || g.cols() != dim)
      fail(ErrorKind::DimensionMismatch, "generator " + std::to_string(k) + " is not " +
                                             std::to_string(dim) + "x" + std::to_string(dim));
    if (!is_unitary(g))
      fail(ErrorKind::NonUnitaryGenerator, "generator " + std::to_string(k) + " is not unitary");
  }

  std::map<std::vector<std::int64_t>, ComplexMatrix> found;
  std::deque<ComplexMatrix> queue;
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  found.emplace(canonical_key(id), id);
  queue.push_back(id);
  while (!queue.empty()) {
    ComplexMatrix x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      ComplexMatrix y = x * g;
      auto key = canonical_key(y);
      if (found.count(key)) continue;
      if (found.size() >= max_order)
        fail(ErrorKind::OrderCapExceeded,
             "closure exceeds max_order = " + std::to_string(max_order));
      found.emplace(std::move(key), y);
      queue.push_back(std::move(y));
    }
  }

  MatrixGroup group;
  group.dim_ = dim;
  const auto id_key = canonical_key(id);
  group.elements_.push_back(id);
  for (auto& [key, m] : found)
    if (key != id_key) group.elements_.push_back(m);
  for (std::size_t i = 0; i < group.elements_.size(); ++i)
    group.index_of_key_.emplace(canonical_key(group.elements_[i]), i);

  const std::size_t n = group.elements_.size();
  group.mul_table_.assign(n, std::vector<std::size_t>(n, 0));
  group.inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto idx = group.find(group.elements_[a] * group.elements_[b]);
      if (!idx)
        fail(ErrorKind::OrderCapExceeded, "product left the closed set (rounding-grid split)");
      group.mul_table_[a][b] = *idx;
      if (*idx == MatrixGroup::identity()) group.inverse_[a] = b;
    }
  for (const auto& g : generators) group.generators_.push_back(*group.find(g));
  return group;
}

Subspace element_fixed_space(const ComplexMatrix& g) {
  const int m = static_cast<int>(g.rows());
  return Subspace(m, kernel_basis(g - ComplexMatrix::Identity(m, m)));
}

Subspace fix_of_subset(std::span<const ComplexMatrix> elements, int dim) {
  Subspace v = Subspace::whole(dim);
  for (const auto& a : elements) {
    if (a.rows() != dim || a.cols() != dim)
      fail(ErrorKind::DimensionMismatch, "element of wrong size in fix_of_subset");
    v = v.intersect(element_fixed_space(a));
  }
  return v;
}

Subspace fix_of_indices(const MatrixGroup& group, const IndexSet& indices) {
  Subspace v = Subspace::whole(group.dim());
  for (std::size_t i : indices) v = v.intersect(element_fixed_space(group.element(i)));
  return v;
}

IndexSet centralizer_of_subspace(const MatrixGroup& group, const Subspace& v) {
  if (v.ambient_dim() != group.dim())
    fail(ErrorKind::DimensionMismatch, "subspace and group dimensions differ");
  IndexSet out;
  const auto id = ComplexMatrix::Identity(group.dim(), group.dim());
  for (std::size_t i = 0; i < group.order(); ++i)
    if (sup_norm((group.element(i) - id) * v.projector()) <= kMembershipTol) out.push_back(i);
  return out;
}

IndexSet normalizer_of_subspace(const MatrixGroup& group, const Subspace& v) {
  if (v.ambient_dim() != group.dim())
    fail(ErrorKind::DimensionMismatch, "subspace and group dimensions differ");
  IndexSet out;
  const auto& p = v.projector();
  for (std::size_t i = 0; i < group.order(); ++i) {
    const auto& g = group.element(i);
    if (sup_norm(g * p - p * g) <= kMembershipTol) out.push_back(i);
  }
  return out;
}

QuotientGroup quotient_group(const IndexSet& normalizer, const IndexSet& sub,
                             const MatrixGroup& group) {
  if (!group.is_subgroup(normalizer) || !group.is_subgroup(sub) ||
      !std::includes(normalizer.begin(), normalizer.end(), sub.begin(), sub.end()) ||
      !group.is_normal_in(sub, normalizer))
    fail(ErrorKind::NotNormal, "subgroup is not normal in the given supergroup");

  QuotientGroup q;
  std::map<std::size_t, std::size_t> coset_of;
  for (std::size_t n : normalizer) {
    if (coset_of.count(n)) continue;
    IndexSet coset;
    for (std::size_t a : sub) coset.push_back(group.multiply(n, a));
    std::sort(coset.begin(), coset.end());
    const std::size_t idx = q.cosets.size();
    for (std::size_t c : coset) coset_of[c] = idx;
    q.representatives.push_back(coset.front());
    q.cosets.push_back(std::move(coset));
  }
  const std::size_t k = q.representatives.size();
  q.table.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      q.table[a][b] = coset_of.at(group.multiply(q.representatives[a], q.representatives[b]));
  return q;
}

std::vector<IndexSet> subgroup_enumeration(const MatrixGroup& group) {
  if (group.order() > 64)
    fail(ErrorKind::OrderCapExceeded, "subgroup enumeration is limited to |G| <= 64");
  std::set<IndexSet> subgroups;
  for (std::size_t g = 0; g < group.order(); ++g) {
    const std::size_t gens[] = {g};
    subgroups.insert(group.subgroup_generated(gens));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<IndexSet> current(subgroups.begin(), subgroups.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        IndexSet gens;
        std::set_union(current[i].begin(), current[i].end(), current[j].begin(),
                       current[j].end(), std::back_inserter(gens));
        if (subgroups.insert(group.subgroup_generated(gens)).second) grew = true;
      }
  }
  std::vector<IndexSet> out(subgroups.begin(), subgroups.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const IndexSet& a, const IndexSet& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace qale
