#include "qale/potential.hpp"

#include "qale/error.hpp"

namespace qale {

std::vector<double> real_coordinates(const ComplexVector& z) {
  std::vector<double> out(static_cast<std::size_t>(2 * z.size()));
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    out[static_cast<std::size_t>(2 * j)] = z(j).real();
    out[static_cast<std::size_t>(2 * j + 1)] = z(j).imag();
  }
  return out;
}

KahlerPotential::KahlerPotential(std::string name, std::vector<double> flat_weights,
                                 JetField perturbation, DomainPredicate domain)
    : name_(std::move(name)),
      flat_weights_(std::move(flat_weights)),
      perturbation_(std::move(perturbation)),
      domain_(std::move(domain)) {
  if (flat_weights_.empty()) fail(ErrorKind::DimensionMismatch, "potential needs chart_dim >= 1");
}

bool KahlerPotential::in_domain(const ComplexVector& z) const {
  if (z.size() != chart_dim()) return false;
  return !domain_ || domain_(z);
}

Jet KahlerPotential::perturbation_on(std::span<const Jet> coords) const {
  if (!perturbation_) return Jet(coords.front().space(), 0.0);
  return perturbation_(coords);
}

Jet KahlerPotential::full_on(std::span<const Jet> coords) const {
  Jet k = perturbation_on(coords);
  for (std::size_t j = 0; j < flat_weights_.size(); ++j)
    k += flat_weights_[j] * (square(coords[2 * j]) + square(coords[2 * j + 1]));
  return k;
}

Jet KahlerPotential::perturbation_jet(const ComplexVector& z, int order) const {
  if (!in_domain(z)) fail(ErrorKind::DomainError, name_ + ": point outside the chart domain");
  const auto coords = Jet::variables(JetSpace::get(2 * chart_dim(), order), real_coordinates(z));
  return perturbation_on(coords);
}

Jet KahlerPotential::jet(const ComplexVector& z, int order) const {
  if (!in_domain(z)) fail(ErrorKind::DomainError, name_ + ": point outside the chart domain");
  const auto coords = Jet::variables(JetSpace::get(2 * chart_dim(), order), real_coordinates(z));
  return full_on(coords);
}

double KahlerPotential::value(const ComplexVector& z) const { return jet(z, 0).value(); }

}  // namespace qale
