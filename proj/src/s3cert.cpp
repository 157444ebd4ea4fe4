#include "qale/s3cert.hpp"

#include "qale/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qale {

ComplexMatrix s3_alpha() {
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a.diagonal() << w, w * w, w * w, w;
  return a;
}

ComplexMatrix s3_beta() {
  ComplexMatrix b = ComplexMatrix::Zero(4, 4);
  b(0, 2) = b(1, 3) = b(2, 0) = b(3, 1) = 1.0;
  return b;
}

MatrixGroup s3_group() {
  const std::vector<ComplexMatrix> gens{s3_alpha(), s3_beta()};
  return close_group(gens, 64, 4);
}

ComplexMatrix s3_symplectic_form() {
  ComplexMatrix j = ComplexMatrix::Zero(4, 4);
  j(0, 1) = j(2, 3) = 1.0;
  j(1, 0) = j(3, 2) = -1.0;
  return j;
}

double symplectic_defect(const MatrixGroup& group) {
  const ComplexMatrix j = s3_symplectic_form();
  double worst = 0.0;
  for (const auto& g : group.elements())
    worst = std::max(worst, sup_norm(g.transpose() * j * g - j));
  return worst;
}

InvariantVector phi_invariants(const ComplexVector& z) {
  if (z.size() != 4) fail(ErrorKind::DimensionMismatch, "phi_invariants needs a point in C^4");
  const Complex z1 = z(0), z2 = z(1), z3 = z(2), z4 = z(3);
  return {z1 * z2 - z3 * z4, z1 * z1 * z1 - z3 * z3 * z3, z1 * z1 * z4 - z2 * z3 * z3,
          z1 * z4 * z4 - z2 * z2 * z3, z2 * z2 * z2 - z4 * z4 * z4};
}

int sign_character(const MatrixGroup& group, std::size_t g) {
  const auto a = group.find(s3_alpha());
  if (!a) fail(ErrorKind::PreconditionFailed, "group does not contain alpha");
  const std::size_t gens[] = {*a};
  const IndexSet sub = group.subgroup_generated(gens);
  return std::binary_search(sub.begin(), sub.end(), g) ? 1 : -1;
}

double equivariance_defect(const MatrixGroup& group, std::span<const ComplexVector> points) {
  double worst = 0.0;
  for (std::size_t g = 0; g < group.order(); ++g) {
    const double chi = sign_character(group, g);
    for (const auto& z : points) {
      const auto p = phi_invariants(z);
      const auto pg = phi_invariants(group.element(g) * z);
      for (std::size_t k = 0; k < 5; ++k) worst = std::max(worst, std::abs(pg[k] - chi * p[k]));
    }
  }
  return worst;
}

VanishingVerdict vanishing_vs_singular(const ComplexVector& z, const StratPoset& poset,
                                       const MatrixGroup& group, double tol) {
  VanishingVerdict v;
  double biggest = 0.0;
  for (const auto& p : phi_invariants(z)) biggest = std::max(biggest, std::abs(p));
  v.vanishing = biggest <= tol;
  v.singular = singular_distance_s(z, poset, group) <= tol;
  return v;
}

ComplexVector psi_embedding(Complex x0, Complex x1, Complex x2) {
  if (x0 == 0.0 && x1 == 0.0 && x2 == 0.0)
    fail(ErrorKind::ZeroVector, "psi_embedding at the zero vector");
  ComplexVector out(5);
  out << x0, x1 * x1 * x1, x1 * x1 * x2, x1 * x2 * x2, x2 * x2 * x2;
  Eigen::Index lead = 0;
  for (Eigen::Index i = 1; i < 5; ++i)
    if (std::abs(out(i)) > std::abs(out(lead))) lead = i;
  const Complex c = out(lead);
  out /= c;
  out(lead) = 1.0;
  return out;
}

bool S3Certificate::vanishing_consistent() const {
  for (const auto& [label, c] : stratum_counts)
    if (c[1] != 0) return false;
  return random_counts[1] == 0;
}

nlohmann::json S3Certificate::to_json() const {
  nlohmann::json j;
  j["order"] = order;
  j["nonabelian"] = nonabelian;
  j["symplectic_defect"] = symplectic_defect;
  j["equivariance_defect"] = equivariance_defect;
  j["equivariance_points"] = equivariance_points;
  nlohmann::json strata = nlohmann::json::object();
  for (const auto& [label, c] : stratum_counts)
    strata[label] = {{"consistent", c[0]}, {"violating", c[1]}};
  j["stratum_samples"] = strata;
  j["random_samples"] = {{"consistent", random_counts[0]}, {"violating", random_counts[1]}};
  j["psi_scaling_defect"] = psi_scaling_defect;
  j["psi_min_separation"] = psi_min_separation;
  j["lattice_size"] = lattice_size;
  j["orbits"] = orbits;
  return j;
}

S3Certificate s3_certificate(Rng& rng, std::size_t equivariance_points, std::size_t per_stratum,
                             std::size_t random_points, std::size_t psi_trials) {
  S3Certificate cert;
  const MatrixGroup g = s3_group();
  const StratPoset poset = build_lattice(g);
  cert.order = g.order();
  cert.lattice_size = poset.size();
  const ComplexMatrix a = s3_alpha(), b = s3_beta();
  cert.nonabelian = sup_norm(a * b - b * a) > kMembershipTol;
  cert.symplectic_defect = symplectic_defect(g);

  std::vector<ComplexVector> pts;
  for (std::size_t i = 0; i < equivariance_points; ++i) pts.push_back(rng.complex_normal(4));
  cert.equivariance_points = pts.size();
  cert.equivariance_defect = equivariance_defect(g, pts);

  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (i == poset.idx_zero()) continue;
    auto& counts = cert.stratum_counts[poset.label(i)];
    const auto& v = poset[i].V;
    for (std::size_t k = 0; k < per_stratum; ++k) {
      ComplexVector z = ComplexVector::Zero(4);
      if (v.dim() > 0) z = v.basis() * rng.complex_normal(v.dim()) * rng.uniform(0.1, 3.0);
      ++counts[vanishing_vs_singular(z, poset, g).consistent() ? 0 : 1];
    }
  }
  for (std::size_t k = 0; k < random_points; ++k) {
    const ComplexVector z = rng.complex_normal(4) * rng.uniform(0.1, 3.0);
    ++cert.random_counts[vanishing_vs_singular(z, poset, g).consistent() ? 0 : 1];
  }

  cert.psi_min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < psi_trials; ++k) {
    const ComplexVector x = rng.complex_normal(3);
    const Complex t(rng.normal(), rng.normal());
    const ComplexVector base = psi_embedding(x(0), x(1), x(2));
    const ComplexVector scaled = psi_embedding(t * t * t * x(0), t * x(1), t * x(2));
    cert.psi_scaling_defect = std::max(cert.psi_scaling_defect, (base - scaled).cwiseAbs().maxCoeff());
    const ComplexVector y = rng.complex_normal(3);
    cert.psi_min_separation = std::min(
        cert.psi_min_separation, (base - psi_embedding(y(0), y(1), y(2))).norm());
  }

  for (const auto& orbit : g_action(g, poset).orbits()) {
    std::vector<std::string> labels;
    for (std::size_t i : orbit) labels.push_back(poset.label(i));
    cert.orbits.push_back(labels);
  }
  return cert;
}

}  // namespace qale
