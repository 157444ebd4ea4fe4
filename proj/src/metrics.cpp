#include "qale/metrics.hpp"

#include "qale/curvature.hpp"
#include "qale/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qale {

KahlerPotential euclidean_potential(int m) {
  if (m < 1) fail(ErrorKind::DimensionMismatch, "euclidean_potential needs m >= 1");
  return KahlerPotential("euclidean", std::vector<double>(static_cast<std::size_t>(m), 1.0), {});
}

Jet eguchi_hanson_perturbation(const Jet& u, double a) {
  if (!(u.value() > 0.0)) fail(ErrorKind::DomainError, "Eguchi-Hanson potential at u = 0");
  if (a == 0.0) return Jet(u.space(), 0.0);
  const double a2 = a * a, a4 = a2 * a2;
  const Jet s = sqrt(square(u) + a4);
  // sqrt(a^4+u^2) - u = a^4 / (s + u), and
  // a^2 log u - a^2 log(a^2 + s) = -a^2 log1p((a^2 + s - u) / u).
  const Jet gap = a4 / (s + u);
  return gap - a2 * log1p((gap + a2) / u);
}

KahlerPotential eguchi_hanson_potential(double a) {
  if (!(a >= 0.0)) fail(ErrorKind::DomainError, "Eguchi-Hanson parameter must be >= 0");
  auto pert = [a](std::span<const Jet> c) {
    const Jet u = square(c[0]) + square(c[1]) + square(c[2]) + square(c[3]);
    return eguchi_hanson_perturbation(u, a);
  };
  auto domain = [](const ComplexVector& z) { return z.squaredNorm() > 0.0; };
  return KahlerPotential("eguchi_hanson", {1.0, 1.0}, pert, domain);
}

KahlerPotential product_potential(const KahlerPotential& first, const KahlerPotential& second) {
  std::vector<double> w = first.flat_weights();
  w.insert(w.end(), second.flat_weights().begin(), second.flat_weights().end());
  const auto n1 = static_cast<std::size_t>(2 * first.chart_dim());
  JetField pert;
  if (first.has_perturbation() || second.has_perturbation())
    pert = [first, second, n1](std::span<const Jet> c) {
      return first.perturbation_on(c.subspan(0, n1)) + second.perturbation_on(c.subspan(n1));
    };
  const int m1 = first.chart_dim(), m2 = second.chart_dim();
  auto domain = [first, second, m1, m2](const ComplexVector& z) {
    return first.in_domain(z.head(m1)) && second.in_domain(z.tail(m2));
  };
  return KahlerPotential(first.name() + "x" + second.name(), std::move(w), pert, domain);
}

// ---------------------------------------------------------------------------

Cutoff::Cutoff(double R) : R_(R) {
  if (!(R > 0.0)) fail(ErrorKind::DomainError, "cutoff radius must be positive");
}

Jet Cutoff::operator()(const Jet& x) const {
  const double v = x.value();
  if (v <= R_) return Jet(x.space(), 0.0);
  if (v >= 2.0 * R_) return Jet(x.space(), 1.0);
  const Jet t = (x - R_) / R_;
  const Jet a = exp(-1.0 / t);
  const Jet b = exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double Cutoff::operator()(double x) const {
  return (*this)(Jet::constant(JetSpace::get(1, 0), x)).value();
}

double Cutoff::derivative(double x) const {
  return (*this)(Jet::variable(JetSpace::get(1, 1), 0, x)).d(0);
}

Cutoff cutoff_eta(double R) { return Cutoff(R); }

// ---------------------------------------------------------------------------

namespace {

struct ComplexJet {
  Jet re, im;
};

std::vector<ComplexJet> map_linear(const ComplexMatrix& m, const std::vector<ComplexJet>& w) {
  std::vector<ComplexJet> out;
  const Jet zero(w.front().re.space(), 0.0);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Jet re = zero, im = zero;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double mr = m(r, c).real(), mi = m(r, c).imag();
      const auto& x = w[static_cast<std::size_t>(c)];
      if (mr != 0.0) {
        re += mr * x.re;
        im += mr * x.im;
      }
      if (mi != 0.0) {
        re -= mi * x.im;
        im += mi * x.re;
      }
    }
    out.push_back({std::move(re), std::move(im)});
  }
  return out;
}

ComplexVector values(const std::vector<ComplexJet>& w) {
  ComplexVector v(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = Complex(w[i].re.value(), w[i].im.value());
  return v;
}

Jet norm_of(const std::vector<ComplexJet>& w) {
  Jet acc(w.front().re.space(), 0.0);
  for (const auto& c : w) acc += square(c.re) + square(c.im);
  return sqrt(acc);
}

// Cut-off factor prod_j eta(mu_{i,j}) at the point with coordinate jets x.
// Returns nullopt when some factor is identically zero near x.
std::optional<Jet> cutoff_factor(const GluedPotential::Data& d, std::size_t i,
                                 const std::vector<ComplexJet>& x) {
  const auto& poset = d.poset;
  const auto& group = d.group;
  const int m = poset.ambient_dim();
  const ComplexVector xv = values(x);
  Jet prod(x.front().re.space(), 1.0);
  for (std::size_t j = 0; j < poset.size(); ++j) {
    if (poset.geq(i, j)) continue;
    const ComplexMatrix q = ComplexMatrix::Identity(m, m) - poset[j].V.projector();
    // The minimizing branch of mu_{i,j} is smooth near x.
    std::size_t best = poset[i].A.front();
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t a : poset[i].A) {
      const double v = (q * group.element(a) * xv).norm();
      if (v < best_val) {
        best_val = v;
        best = a;
      }
    }
    if (best_val <= d.cutoff.R()) return std::nullopt;
    if (best_val >= 2.0 * d.cutoff.R()) continue;
    prod *= d.cutoff(norm_of(map_linear(q * group.element(best), x)));
  }
  return prod;
}

std::optional<Jet> component_jet(const GluedPotential::Data& d, std::size_t i,
                                 const std::vector<ComplexJet>& x) {
  auto factor = cutoff_factor(d, i, x);
  if (!factor) return std::nullopt;
  const auto& comp = d.components.at(i);
  const auto y = map_linear(d.poset[i].W.basis().adjoint(), x);
  if (!comp.in_domain(values(y)))
    fail(ErrorKind::PointTooSingular, "chart preimage lies on the singular set of stratum " +
                                          d.poset.label(i));
  std::vector<Jet> coords;
  for (const auto& c : y) {
    coords.push_back(c.re);
    coords.push_back(c.im);
  }
  return comp.perturbation_on(coords) * *factor;
}

std::vector<ComplexJet> complex_coords(std::span<const Jet> c) {
  std::vector<ComplexJet> x;
  for (std::size_t j = 0; j + 1 < c.size(); j += 2) x.push_back({c[j], c[j + 1]});
  return x;
}

Jet glued_phi(const GluedPotential::Data& d, std::span<const Jet> coords) {
  const auto x = complex_coords(coords);
  Jet phi(coords.front().space(), 0.0);
  const double order = static_cast<double>(d.group.order());
  for (const auto& [i, comp] : d.components) {
    const long long k = d.weights.k.count(i) ? d.weights.at(i) : 0;
    if (k == 0) continue;
    Jet sum(coords.front().space(), 0.0);
    for (std::size_t g = 0; g < d.group.order(); ++g) {
      if (auto term = component_jet(d, i, map_linear(d.group.element(g), x))) sum += *term;
    }
    phi += (static_cast<double>(k) / order) * sum;
  }
  return phi;
}

std::vector<Jet> value_coords(const ComplexVector& x) {
  return Jet::variables(JetSpace::get(2 * static_cast<int>(x.size()), 0), real_coordinates(x));
}

}  // namespace

GluedPotential::GluedPotential(StratPoset poset, MatrixGroup group, MobiusWeights weights,
                               std::map<std::size_t, KahlerPotential> components, double R)
    : data_(std::make_shared<const Data>(Data{std::move(poset), std::move(group),
                                              std::move(weights), std::move(components),
                                              Cutoff(R)})) {
  const auto& d = *data_;
  for (const auto& [i, comp] : d.components) {
    if (i >= d.poset.size()) fail(ErrorKind::PreconditionFailed, "component for unknown stratum");
    if (i == d.poset.idx_infinity())
      fail(ErrorKind::PreconditionFailed, "no component may be given for the stratum inf");
    if (i == d.poset.idx_zero() && comp.has_perturbation())
      fail(ErrorKind::PreconditionFailed, "the component for stratum 0 must vanish");
    if (comp.chart_dim() != d.poset[i].W.dim())
      fail(ErrorKind::DimensionMismatch, "component chart dimension differs from dim W_i");
  }
}

KahlerPotential GluedPotential::potential() const {
  auto data = data_;
  const auto m = static_cast<std::size_t>(data->poset.ambient_dim());
  return KahlerPotential("glued", std::vector<double>(m, 1.0),
                         [data](std::span<const Jet> c) { return glued_phi(*data, c); });
}

double GluedPotential::phi(const ComplexVector& x) const {
  return glued_phi(*data_, value_coords(x)).value();
}

double GluedPotential::component_term(std::size_t i, const ComplexVector& x) const {
  const auto coords = value_coords(x);
  auto term = component_jet(*data_, i, complex_coords(coords));
  return term ? term->value() : 0.0;
}

double GluedPotential::cutoff_product(std::size_t i, const ComplexVector& x) const {
  const auto coords = value_coords(x);
  auto f = cutoff_factor(*data_, i, complex_coords(coords));
  return f ? f->value() : 0.0;
}

bool GluedPotential::outside_all_tubes(const ComplexVector& x) const {
  const auto& d = *data_;
  for (const auto& [i, comp] : d.components) {
    if (!d.weights.k.count(i) || d.weights.at(i) == 0) continue;
    for (std::size_t g = 0; g < d.group.order(); ++g) {
      const ComplexVector gx = d.group.element(g) * x;
      for (std::size_t j = 0; j < d.poset.size(); ++j)
        if (!d.poset.geq(i, j) && mu(gx, i, j, d.poset, d.group) < 2.0 * d.cutoff.R()) return false;
    }
  }
  return true;
}

GluedPotential glued_potential(const StratPoset& poset, const MatrixGroup& group,
                               const MobiusWeights& weights,
                               std::map<std::size_t, KahlerPotential> components, double R) {
  return GluedPotential(poset, group, weights, std::move(components), R);
}

std::map<std::size_t, KahlerPotential> eguchi_hanson_components(const StratPoset& poset,
                                                                const MatrixGroup& group,
                                                                double a) {
  std::map<std::size_t, KahlerPotential> out;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (i == poset.idx_zero() || i == poset.idx_infinity()) continue;
    const auto& s = poset[i];
    bool ok = s.W.dim() == 2 && s.A.size() == 2;
    if (ok) {
      const std::size_t t = s.A[0] == MatrixGroup::identity() ? s.A[1] : s.A[0];
      const ComplexMatrix& pw = s.W.projector();
      ok = sup_norm(group.element(t) * pw + pw) <= kMembershipTol;
    }
    if (!ok)
      fail(ErrorKind::PreconditionFailed, "stratum " + poset.label(i) +
                                              " is not a C^2/{+-1} transversal; no Eguchi-Hanson "
                                              "component available");
    out.emplace(i, eguchi_hanson_potential(a));
  }
  return out;
}

PositivityReport positivity_check(const KahlerPotential& k, std::span<const ComplexVector> points) {
  PositivityReport rep;
  rep.overall_min = std::numeric_limits<double>::infinity();
  for (const auto& z : points) {
    const ComplexMatrix g = metric_from_potential(k, z);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (g + g.adjoint()),
                                                     Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    rep.min_eigenvalues.push_back(lo);
    rep.overall_min = std::min(rep.overall_min, lo);
  }
  rep.pass = !points.empty() && rep.overall_min > 0.0;
  return rep;
}

}  // namespace qale
