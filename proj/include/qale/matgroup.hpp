// Finite subgroups of U(m): closure from generators, fixed subspaces,
// centralizers, normalizers and quotients.
//
// Arithmetic is double-precision complex. Elements are deduplicated on a
// 1e-6 rounding grid (the canonical key), which is robust for the groups we
// target: tiny orders, entries that are roots of unity.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace qale {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Sorted list of group element indices.
using IndexSet = std::vector<std::size_t>;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kRankCutoff = 1e-8;
inline constexpr double kMembershipTol = 1e-8;
inline constexpr double kKeyGrid = 1e-6;

/// Sup-norm (largest entry modulus).
double sup_norm(const ComplexMatrix& m);

bool is_unitary(const ComplexMatrix& m, double tol = kUnitaryTol);

/// Orthonormal basis of the kernel of `m`; singular values below
/// kRankCutoff count as zero.
ComplexMatrix kernel_basis(const ComplexMatrix& m);

/// A linear subspace of C^m, stored as an orthonormal basis together with
/// its orthogonal projector.
class Subspace {
 public:
  /// Columns of `spanning` need not be orthonormal; they are re-orthonormalized
  /// and rank-truncated.
  Subspace(int ambient_dim, const ComplexMatrix& spanning);

  static Subspace whole(int m);
  static Subspace zero(int m);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const ComplexMatrix& basis() const { return basis_; }
  const ComplexMatrix& projector() const { return projector_; }

  Subspace orthogonal_complement() const;
  Subspace intersect(const Subspace& other) const;
  /// Image g(V) for an invertible g.
  Subspace transformed(const ComplexMatrix& g) const;

  /// True if this subspace lies inside `other`.
  bool is_contained_in(const Subspace& other, double tol = kMembershipTol) const;
  bool same_as(const Subspace& other, double tol = kMembershipTol) const;

  /// Euclidean distance from x to the subspace.
  double distance(const ComplexVector& x) const;

  /// Rounded projector entries; a total order used for deterministic sorting.
  std::vector<std::int64_t> canonical_key() const;

 private:
  int ambient_dim_;
  ComplexMatrix basis_;
  ComplexMatrix projector_;
};

/// Per-element hash: real and imaginary parts rounded to the 1e-6 grid,
/// row-major.
std::vector<std::int64_t> canonical_key(const ComplexMatrix& m);

/// Coset structure of N/A.
struct QuotientGroup {
  /// Smallest element index of each coset, in increasing order.
  std::vector<std::size_t> representatives;
  std::vector<IndexSet> cosets;
  /// table[a][b] = coset index of (rep a)(rep b).
  std::vector<std::vector<std::size_t>> table;

  std::size_t order() const { return representatives.size(); }
};

class MatrixGroup {
 public:
  int dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const ComplexMatrix& element(std::size_t i) const { return elements_[i]; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const std::vector<std::size_t>& generator_indices() const { return generators_; }

  /// The identity is always stored at index 0.
  static constexpr std::size_t identity() { return 0; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return mul_table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& mul_table() const { return mul_table_; }

  std::optional<std::size_t> find(const ComplexMatrix& m) const;

  /// Subgroup generated by the given elements.
  IndexSet subgroup_generated(std::span<const std::size_t> gens) const;
  bool is_subgroup(const IndexSet& s) const;
  bool is_normal_in(const IndexSet& sub, const IndexSet& super) const;

  IndexSet all() const;

  friend MatrixGroup close_group(std::span<const ComplexMatrix>, std::size_t, int);

 private:
  int dim_ = 0;
  std::vector<ComplexMatrix> elements_;
  std::vector<std::size_t> generators_;
  std::vector<std::vector<std::size_t>> mul_table_;
  std::vector<std::size_t> inverse_;
  std::map<std::vector<std::int64_t>, std::size_t> index_of_key_;
};

/// Smallest closed set containing the generators and the identity.
/// `dim` is only consulted when the generator list is empty.
MatrixGroup close_group(std::span<const ComplexMatrix> generators,
                        std::size_t max_order, int dim = -1);

Subspace element_fixed_space(const ComplexMatrix& g);
Subspace fix_of_subset(std::span<const ComplexMatrix> elements, int dim);
Subspace fix_of_indices(const MatrixGroup& group, const IndexSet& indices);

/// Elements fixing V pointwise.
IndexSet centralizer_of_subspace(const MatrixGroup& group, const Subspace& v);
/// Elements mapping V onto itself.
IndexSet normalizer_of_subspace(const MatrixGroup& group, const Subspace& v);

QuotientGroup quotient_group(const IndexSet& normalizer, const IndexSet& sub,
                             const MatrixGroup& group);

/// Every subgroup of a group of order <= 64, as sorted index sets in a
/// deterministic order (by size, then lexicographically).
std::vector<IndexSet> subgroup_enumeration(const MatrixGroup& group);

}  // namespace qale
