#include "support.hpp"

#include "qale/error.hpp"
#include "qale/matgroup.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <set>

using namespace qale;
using namespace qale::test;

namespace {

// Dimension of the eigenvalue-1 eigenspace from the characteristic data of g,
// independent of the SVD-based kernel code.
int fixed_dim_by_eigenvalues(const ComplexMatrix& g) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(g);
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) - 1.0) < 1e-8) ++count;
  return count;
}

ComplexMatrix s3_alpha() {
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  return diag({w, w * w, w * w, w});
}

ComplexMatrix s3_beta() {
  ComplexMatrix b = ComplexMatrix::Zero(4, 4);
  b(0, 2) = b(1, 3) = b(2, 0) = b(3, 1) = 1.0;
  return b;
}

}  // namespace

TEST_CASE("unitarity check") {
  CHECK(is_unitary(diag({1.0, I})));
  CHECK_FALSE(is_unitary(diag({1.0, 2.0})));
  ComplexMatrix rot(2, 2);
  rot << std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3);
  CHECK(is_unitary(rot));
}

TEST_CASE("closure orders") {
  CHECK(c3_z4().order() == 4);
  CHECK(c3_z22().order() == 4);
  CHECK(c4_z23().order() == 8);
  CHECK(c2_z2().order() == 2);
  const std::vector<ComplexMatrix> s3{s3_alpha(), s3_beta()};
  CHECK(close_group(s3, 64).order() == 6);
  const std::vector<ComplexMatrix> none;
  const auto trivial = close_group(none, 64, 3);
  CHECK(trivial.order() == 1);
  CHECK(sup_norm(trivial.element(0) - ComplexMatrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("identity first and multiplication table agrees with matrix products") {
  const std::vector<ComplexMatrix> s3{s3_alpha(), s3_beta()};
  const auto g = close_group(s3, 64);
  CHECK(sup_norm(g.element(0) - ComplexMatrix::Identity(4, 4)) < 1e-12);
  for (std::size_t a = 0; a < g.order(); ++a) {
    CHECK(sup_norm(g.element(a) * g.element(g.inverse(a)) - ComplexMatrix::Identity(4, 4)) <
          1e-10);
    for (std::size_t b = 0; b < g.order(); ++b)
      CHECK(sup_norm(g.element(g.multiply(a, b)) - g.element(a) * g.element(b)) < 1e-10);
  }
}

TEST_CASE("closure is deterministic") {
  const std::vector<ComplexMatrix> ab{s3_alpha(), s3_beta()};
  const std::vector<ComplexMatrix> ba{s3_beta(), s3_alpha()};
  const auto g1 = close_group(ab, 64), g2 = close_group(ba, 64);
  REQUIRE(g1.order() == g2.order());
  for (std::size_t i = 0; i < g1.order(); ++i)
    CHECK(sup_norm(g1.element(i) - g2.element(i)) < 1e-12);
}

TEST_CASE("closure errors") {
  const std::vector<ComplexMatrix> bad{diag({1.0, 2.0})};
  CHECK_THROWS_AS(close_group(bad, 64), Error);
  try {
    close_group(bad, 64);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonUnitaryGenerator);
  }
  const std::vector<ComplexMatrix> big{diag({std::polar(1.0, 2 * std::numbers::pi / 100), 1.0})};
  try {
    close_group(big, 64);
    FAIL("expected OrderCapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderCapExceeded);
  }
  const std::vector<ComplexMatrix> mixed{diag({1.0, -1.0}), diag({1.0, -1.0, 1.0})};
  try {
    close_group(mixed, 64);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("fixed spaces match eigenvalue counts") {
  for (const auto& g : {c3_z4(), c3_z22(), c4_z23()})
    for (const auto& e : g.elements()) {
      const auto v = element_fixed_space(e);
      CHECK(v.dim() == fixed_dim_by_eigenvalues(e));
      CHECK(sup_norm(e * v.basis() - v.basis()) < 1e-10);
    }
  const std::vector<ComplexMatrix> s3{s3_alpha(), s3_beta()};
  const auto g = close_group(s3, 64);
  for (const auto& e : g.elements()) CHECK(element_fixed_space(e).dim() == fixed_dim_by_eigenvalues(e));
}

TEST_CASE("subspace operations") {
  ComplexMatrix span(3, 2);
  span << 1, 1, 0, 1, 0, 0;
  const Subspace v(3, span);
  CHECK(v.dim() == 2);
  CHECK(v.orthogonal_complement().dim() == 1);
  CHECK(sup_norm(v.projector() * v.projector() - v.projector()) < 1e-12);

  ComplexMatrix other(3, 2);
  other << 0, 0, 1, 0, 0, 1;
  const Subspace w(3, other);
  const auto both = v.intersect(w);
  // dim(U cap V) = dim U + dim V - dim(U + V) = 2 + 2 - 3.
  CHECK(both.dim() == 1);
  CHECK(both.is_contained_in(v));
  CHECK(both.is_contained_in(w));
  ComplexVector e2 = ComplexVector::Zero(3);
  e2(1) = 1.0;
  CHECK(both.distance(e2) < 1e-12);

  CHECK(Subspace::whole(3).dim() == 3);
  CHECK(Subspace::zero(3).dim() == 0);
  CHECK(v.same_as(v.transformed(ComplexMatrix::Identity(3, 3))));
  ComplexVector x(3);
  x << 0, 0, Complex(3, 4);
  CHECK(v.distance(x) == doctest::Approx(5.0));
}

TEST_CASE("canonical keys are stable under rounding noise") {
  const ComplexMatrix a = diag({1.0, I});
  ComplexMatrix b = a;
  b(0, 0) += 1e-10;
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(a) != canonical_key(diag({1.0, -I})));
}

TEST_CASE("subgroup enumeration against brute force") {
  const auto g = c3_z22();
  const auto subs = subgroup_enumeration(g);
  // Brute force: every subset closed under multiplication.
  std::size_t closed = 0;
  for (unsigned mask = 1; mask < (1u << g.order()); ++mask) {
    IndexSet s;
    for (std::size_t i = 0; i < g.order(); ++i)
      if (mask & (1u << i)) s.push_back(i);
    if (g.is_subgroup(s)) ++closed;
  }
  CHECK(subs.size() == closed);
  CHECK(subs.size() == 5);

  const std::vector<ComplexMatrix> s3{s3_alpha(), s3_beta()};
  CHECK(subgroup_enumeration(close_group(s3, 64)).size() == 6);
  CHECK(subgroup_enumeration(c4_z23()).size() == 16);
}

TEST_CASE("centralizer, normalizer and quotient") {
  const std::vector<ComplexMatrix> s3{s3_alpha(), s3_beta()};
  const auto g = close_group(s3, 64);
  const auto beta = *g.find(s3_beta());
  const std::size_t gens[] = {beta};
  const auto fix = fix_of_indices(g, g.subgroup_generated(gens));
  CHECK(fix.dim() == 2);
  const auto c = centralizer_of_subspace(g, fix);
  CHECK(c.size() == 2);
  const auto n = normalizer_of_subspace(g, fix);
  CHECK(n.size() == 2);
  const auto q = quotient_group(n, c, g);
  CHECK(q.order() == 1);

  const auto alpha = *g.find(s3_alpha());
  const std::size_t agen[] = {alpha};
  const auto rot = g.subgroup_generated(agen);
  CHECK(rot.size() == 3);
  CHECK(g.is_normal_in(rot, g.all()));
  CHECK_FALSE(g.is_normal_in(c, g.all()));
  const auto q2 = quotient_group(g.all(), rot, g);
  CHECK(q2.order() == 2);
  CHECK(q2.table[1][1] == 0);
  try {
    quotient_group(g.all(), c, g);
    FAIL("expected NotNormal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormal);
  }
}
