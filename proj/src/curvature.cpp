#include "qale/curvature.hpp"

#include "qale/error.hpp"
#include "qale/format.hpp"

#include <cmath>
#include <sstream>

namespace qale {

namespace {

// Complex-valued jet, used for the Hermitian metric entries.
struct CJet {
  Jet re, im;

  CJet operator+(const CJet& o) const { return {re + o.re, im + o.im}; }
  CJet operator-(const CJet& o) const { return {re - o.re, im - o.im}; }
  CJet operator*(const CJet& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CJet operator/(const CJet& o) const {
    const Jet inv = 1.0 / (square(o.re) + square(o.im));
    return {(re * o.re + im * o.im) * inv, (im * o.re - re * o.im) * inv};
  }
};

int xi(int j) { return 2 * j; }
int yi(int j) { return 2 * j + 1; }

// d_j dbar_k f = 1/4 [(f_{x_j x_k} + f_{y_j y_k}) + i (f_{x_j y_k} - f_{y_j x_k})],
// as jets two orders lower.
std::vector<std::vector<CJet>> wirtinger_hessian_jets(const Jet& f, int m) {
  std::vector<Jet> dx, dy;
  for (int j = 0; j < m; ++j) {
    dx.push_back(f.partial(xi(j)));
    dy.push_back(f.partial(yi(j)));
  }
  std::vector<std::vector<CJet>> h;
  for (int j = 0; j < m; ++j) {
    std::vector<CJet> row;
    for (int k = 0; k < m; ++k) {
      Jet re = dx[j].partial(xi(k)) + dy[j].partial(yi(k));
      Jet im = dx[j].partial(yi(k)) - dy[j].partial(xi(k));
      row.push_back({re * 0.25, im * 0.25});
    }
    h.push_back(std::move(row));
  }
  return h;
}

// log det of a Hermitian positive matrix of jets via elimination without
// pivoting; the pivots of a positive Hermitian matrix are real and positive.
Jet log_det_jets(std::vector<std::vector<CJet>> a) {
  const std::size_t m = a.size();
  Jet acc(a[0][0].re.space(), 0.0);
  for (std::size_t p = 0; p < m; ++p) {
    if (!(a[p][p].re.value() > 0.0))
      fail(ErrorKind::DegenerateMetric, "metric is not positive definite");
    acc += log(a[p][p].re);
    for (std::size_t r = p + 1; r < m; ++r) {
      const CJet factor = a[r][p] / a[p][p];
      for (std::size_t c = p + 1; c < m; ++c) a[r][c] = a[r][c] - factor * a[p][c];
    }
  }
  return acc;
}

ComplexMatrix values_of(const std::vector<std::vector<CJet>>& h) {
  const auto m = static_cast<Eigen::Index>(h.size());
  ComplexMatrix out(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k)
      out(j, k) = Complex(h[j][k].re.value(), h[j][k].im.value());
  return out;
}

ComplexMatrix flat_part(const KahlerPotential& k) {
  const int m = k.chart_dim();
  ComplexMatrix d = ComplexMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j) d(j, j) = k.flat_weights()[static_cast<std::size_t>(j)];
  return d;
}

Jet field_jet(const JetField& field, const ComplexVector& z, int order) {
  const auto coords =
      Jet::variables(JetSpace::get(2 * static_cast<int>(z.size()), order), real_coordinates(z));
  return field(coords);
}

ComplexMatrix inverse_metric(const KahlerPotential& k, const ComplexVector& z) {
  const ComplexMatrix g = metric_from_potential(k, z);
  Eigen::LLT<ComplexMatrix> llt(g);
  if (llt.info() != Eigen::Success) fail(ErrorKind::DegenerateMetric, "metric is not positive");
  return llt.solve(ComplexMatrix::Identity(g.rows(), g.cols()));
}

}  // namespace

ComplexMatrix wirtinger_hessian(const Jet& f) {
  const int m = f.space().nvars() / 2;
  return values_of(wirtinger_hessian_jets(f.truncated(2), m));
}

ComplexMatrix metric_perturbation(const KahlerPotential& k, const ComplexVector& z) {
  if (!k.has_perturbation()) {
    if (!k.in_domain(z)) fail(ErrorKind::DomainError, k.name() + ": point outside the chart domain");
    return ComplexMatrix::Zero(k.chart_dim(), k.chart_dim());
  }
  return wirtinger_hessian(k.perturbation_jet(z, 2));
}

ComplexMatrix metric_from_potential(const KahlerPotential& k, const ComplexVector& z) {
  return flat_part(k) + metric_perturbation(k, z);
}

double log_det_metric(const KahlerPotential& k, const ComplexVector& z) {
  const ComplexMatrix e = metric_perturbation(k, z);
  const int m = k.chart_dim();
  Eigen::VectorXd scale(m);
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    const double w = k.flat_weights()[static_cast<std::size_t>(j)];
    if (!(w > 0.0)) {
      // No usable flat part; fall back to a direct factorization.
      Eigen::LLT<ComplexMatrix> llt(metric_from_potential(k, z));
      if (llt.info() != Eigen::Success) fail(ErrorKind::DegenerateMetric, "metric is not positive");
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += 2.0 * std::log(llt.matrixLLT()(i, i).real());
      return s;
    }
    scale(j) = 1.0 / std::sqrt(w);
    acc += std::log(w);
  }
  const ComplexMatrix scaled = scale.asDiagonal() * e * scale.asDiagonal();
  const ComplexMatrix herm = 0.5 * (scaled + scaled.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lambda = eig.eigenvalues()(i);
    if (!(lambda > -1.0)) fail(ErrorKind::DegenerateMetric, "metric is not positive definite");
    acc += std::log1p(lambda);
  }
  return acc;
}

ComplexMatrix ricci_form(const KahlerPotential& k, const ComplexVector& z) {
  const int m = k.chart_dim();
  const Jet kjet = k.jet(z, 4);
  const Jet logdet = log_det_jets(wirtinger_hessian_jets(kjet, m));
  return -values_of(wirtinger_hessian_jets(logdet, m));
}

double ricci_potential_f(const KahlerPotential& k, const ComplexVector& z) {
  return -log_det_metric(k, z);
}

MetricSample metric_sample(const KahlerPotential& k, const ComplexVector& z) {
  MetricSample s;
  s.point = z;
  s.g = metric_from_potential(k, z);
  s.det_g = std::exp(log_det_metric(k, z));
  s.ricci = ricci_form(k, z);
  s.scalar_curv = (s.g.llt().solve(s.ricci)).trace().real();
  return s;
}

double kahler_laplacian(const KahlerPotential& k, const JetField& field, const ComplexVector& z) {
  const ComplexMatrix ginv = inverse_metric(k, z);
  const ComplexMatrix h = wirtinger_hessian(field_jet(field, z, 2));
  return -2.0 * (ginv * h).trace().real();
}

double gradient_norm_sq(const KahlerPotential& k, const JetField& field, const ComplexVector& z) {
  const ComplexMatrix ginv = inverse_metric(k, z);
  const Jet f = field_jet(field, z, 1);
  const Eigen::Index m = z.size();
  ComplexVector a(m);
  for (Eigen::Index j = 0; j < m; ++j)
    a(j) = 0.5 * Complex(f.d(xi(static_cast<int>(j))), -f.d(yi(static_cast<int>(j))));
  return 4.0 * (a.adjoint() * ginv * a)(0, 0).real();
}

ComplexVector Ray::at(double t) const { return origin + t * direction / direction.norm(); }

DecayReport decay_fit(const std::function<double(const ComplexVector&)>& field, const Ray& ray,
                      std::vector<double> radii, double floor) {
  if (radii.size() < 5) fail(ErrorKind::InsufficientSamples, "decay fit needs at least 5 radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      fail(ErrorKind::InsufficientSamples, "decay fit radii must be strictly increasing");
  if (!(ray.direction.norm() > 0.0)) fail(ErrorKind::ZeroVector, "decay ray has zero direction");

  DecayReport rep;
  rep.ray = ray;
  rep.radii = std::move(radii);
  for (double r : rep.radii) {
    const double v = std::abs(field(ray.at(r)));
    if (!std::isfinite(v)) fail(ErrorKind::DomainError, "field is not finite along the ray");
    rep.field_norms.push_back(v);
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.radii.size(); ++i)
    if (rep.field_norms[i] >= floor) {
      lx.push_back(std::log(rep.radii[i]));
      ly.push_back(std::log(rep.field_norms[i]));
    }
  if (lx.empty()) {
    rep.exact_zero = true;
    return rep;
  }
  if (lx.size() < 5)
    fail(ErrorKind::InsufficientSamples, "fewer than 5 samples above the vanishing threshold");

  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  const double icept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (icept + slope * lx[i]);
    ss += r * r;
  }
  rep.exponent = slope;
  rep.intercept = icept;
  rep.residual_rms = std::sqrt(ss / n);
  return rep;
}

std::vector<double> geometric_radii(double r_min, double r_max, int count) {
  if (count < 2 || !(r_min > 0.0) || !(r_max > r_min))
    fail(ErrorKind::BadRange, "geometric_radii needs 0 < r_min < r_max and count >= 2");
  std::vector<double> out;
  const double ratio = std::log(r_max / r_min) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(r_min * std::exp(ratio * i));
  out.back() = r_max;
  return out;
}

std::string decay_csv(const DecayReport& report) {
  std::ostringstream os;
  os << "radius,field_norm,log_radius,log_field_norm\n";
  for (std::size_t i = 0; i < report.radii.size(); ++i) {
    const double r = report.radii[i], v = report.field_norms[i];
    os << format_double(r) << ',' << format_double(v) << ',' << format_double(std::log(r)) << ','
       << (v > 0.0 ? format_double(std::log(v)) : std::string("-inf")) << '\n';
  }
  return os.str();
}

nlohmann::json decay_summary(const DecayReport& report) {
  nlohmann::json j;
  j["samples"] = report.radii.size();
  j["radius_min"] = report.radii.front();
  j["radius_max"] = report.radii.back();
  j["exact_zero"] = report.exact_zero;
  j["exponent"] = report.exponent ? nlohmann::json(*report.exponent) : nlohmann::json(nullptr);
  j["intercept"] = report.intercept ? nlohmann::json(*report.intercept) : nlohmann::json(nullptr);
  j["residual_rms"] = report.residual_rms;
  std::vector<double> dir;
  for (Eigen::Index i = 0; i < report.ray.direction.size(); ++i) {
    dir.push_back(report.ray.direction(i).real());
    dir.push_back(report.ray.direction(i).imag());
  }
  j["direction"] = dir;
  return j;
}

}  // namespace qale
