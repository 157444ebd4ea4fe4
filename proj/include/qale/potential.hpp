#pragma once

#include "qale/jet.hpp"
#include "qale/matgroup.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qale {

/// Real coordinates (x1, y1, x2, y2, ...) of z = x + iy.
std::vector<double> real_coordinates(const ComplexVector& z);

/// Scalar field on a chart, written in jets of the real coordinates.
using JetField = std::function<Jet(std::span<const Jet> coords)>;
using DomainPredicate = std::function<bool(const ComplexVector&)>;

/// A Kahler potential on a chart of C^m, stored as a flat part
/// sum_j w_j |z_j|^2 plus a perturbation. Keeping the two apart lets the
/// curvature code evaluate quantities like log det g to full relative
/// precision when the perturbation is tiny.
class KahlerPotential {
 public:
  /// A null `perturbation` means zero; a null `domain` accepts every point.
  KahlerPotential(std::string name, std::vector<double> flat_weights, JetField perturbation,
                  DomainPredicate domain = {});

  const std::string& name() const { return name_; }
  int chart_dim() const { return static_cast<int>(flat_weights_.size()); }
  const std::vector<double>& flat_weights() const { return flat_weights_; }
  bool has_perturbation() const { return static_cast<bool>(perturbation_); }

  bool in_domain(const ComplexVector& z) const;

  /// Both throw DomainError outside the domain.
  Jet perturbation_jet(const ComplexVector& z, int order) const;
  Jet jet(const ComplexVector& z, int order) const;

  double value(const ComplexVector& z) const;

  /// Perturbation evaluated on already-built coordinate jets; used when a
  /// potential is composed into another (products, gluing).
  Jet perturbation_on(std::span<const Jet> coords) const;
  Jet full_on(std::span<const Jet> coords) const;

 private:
  std::string name_;
  std::vector<double> flat_weights_;
  JetField perturbation_;
  DomainPredicate domain_;
};

}  // namespace qale
