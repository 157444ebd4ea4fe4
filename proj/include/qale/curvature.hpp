// Kahler geometry from potentials via jets: metric g_{jk} = d_j dbar_k K,
// Ricci form, the Ricci potential f = -log det g, the Kahler Laplacian and
// log-log decay fits along rays.
//
// Sign convention: Delta f = -2 g^{jk} d_j dbar_k f, so that on flat C^m
// Delta(|z|^2) = -2m. This is minus one half of the Euclidean Laplacian on
// R^{2m}. Gradient norms use |grad f|^2 = 4 g^{jk} d_j f dbar_k f, which
// gives |grad |z|^2|^2 = 4|z|^2 on flat space.
#pragma once

#include "qale/potential.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qale {

struct MetricSample {
  ComplexVector point;
  ComplexMatrix g;
  double det_g = 0.0;
  ComplexMatrix ricci;
  double scalar_curv = 0.0;
};

/// Wirtinger Hessian d_j dbar_k of a real jet over 2m coordinates, as a
/// complex matrix of values.
ComplexMatrix wirtinger_hessian(const Jet& f);

ComplexMatrix metric_from_potential(const KahlerPotential& k, const ComplexVector& z);

/// g minus its flat part diag(w_j); computed from the perturbation alone.
ComplexMatrix metric_perturbation(const KahlerPotential& k, const ComplexVector& z);

/// log det g evaluated as sum log w_j + sum log1p(eigenvalues of the
/// rescaled perturbation), which keeps relative precision when g is near
/// its flat part. Throws DegenerateMetric if g is not positive.
double log_det_metric(const KahlerPotential& k, const ComplexVector& z);

/// Ric_{jk} = -d_j dbar_k log det g, from order-4 jets.
ComplexMatrix ricci_form(const KahlerPotential& k, const ComplexVector& z);

/// f = -log det g: the Ricci potential for the holomorphic volume form
/// dz^1 ^ ... ^ dz^m of the chart.
double ricci_potential_f(const KahlerPotential& k, const ComplexVector& z);

MetricSample metric_sample(const KahlerPotential& k, const ComplexVector& z);

double kahler_laplacian(const KahlerPotential& k, const JetField& field, const ComplexVector& z);
double gradient_norm_sq(const KahlerPotential& k, const JetField& field, const ComplexVector& z);

struct Ray {
  ComplexVector origin;
  ComplexVector direction;

  /// origin + t * direction / |direction|
  ComplexVector at(double t) const;
};

struct DecayReport {
  Ray ray;
  std::vector<double> radii;
  std::vector<double> field_norms;
  /// Log-log least-squares slope; empty when every sample vanishes.
  std::optional<double> exponent;
  std::optional<double> intercept;
  double residual_rms = 0.0;
  /// All samples below 1e-14: exact-zero decay, not fitted.
  bool exact_zero = false;
};

inline constexpr double kVanishingField = 1e-14;

/// Samples |field| at ray.at(r) for each radius and fits log|field| against
/// log r. Radii must be strictly increasing, at least five. Samples below
/// `floor` count as vanishing and are left out of the fit.
DecayReport decay_fit(const std::function<double(const ComplexVector&)>& field, const Ray& ray,
                      std::vector<double> radii, double floor = kVanishingField);

/// `count` geometrically spaced radii from r_min to r_max inclusive.
std::vector<double> geometric_radii(double r_min, double r_max, int count);

/// Columns: radius,field_norm,log_radius,log_field_norm.
std::string decay_csv(const DecayReport& report);
nlohmann::json decay_summary(const DecayReport& report);

}  // namespace qale
