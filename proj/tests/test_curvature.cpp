#include "support.hpp"

#include "qale/curvature.hpp"
#include "qale/error.hpp"

#include <doctest.h>

#include <Eigen/Dense>

using namespace qale;
using namespace qale::test;

namespace {

// Potential |z|^2 + eps exp(Re z1) cos(Im z2) + |z1|^4 / 4 on C^2, written
// both as a jet field and as a plain function for the finite-difference oracle.
constexpr double kEps = 0.3;

double k_plain(const std::vector<double>& x) {
  const double r1 = x[0] * x[0] + x[1] * x[1];
  return r1 + x[2] * x[2] + x[3] * x[3] + kEps * std::exp(x[0]) * std::cos(x[3]) + 0.25 * r1 * r1;
}

KahlerPotential test_potential() {
  return KahlerPotential("test", {1.0, 1.0}, [](std::span<const Jet> c) {
    const auto& s = c[0].space();
    const double v = c[3].value();
    const double cd[] = {std::cos(v), -std::sin(v), -std::cos(v), std::sin(v), std::cos(v),
                         -std::sin(v), -std::cos(v)};
    const Jet cos_y2 = c[3].compose(std::span<const double>(cd, static_cast<std::size_t>(s.order()) + 1));
    const Jet r1 = square(c[0]) + square(c[1]);
    return kEps * exp(c[0]) * cos_y2 + 0.25 * r1 * r1;
  });
}

double log_det_plain(const std::vector<double>& x) {
  const ComplexMatrix g = wirtinger_from_real(fd_hessian(k_plain, x, 1e-4));
  return std::log(g.determinant().real());
}

}  // namespace

TEST_CASE("flat metric") {
  const KahlerPotential flat("flat", {1.0, 1.0, 1.0}, nullptr);
  ComplexVector z(3);
  z << Complex(1, 2), Complex(-0.5, 0), Complex(0, 3);
  CHECK(sup_norm(metric_from_potential(flat, z) - ComplexMatrix::Identity(3, 3)) < 1e-14);
  CHECK(log_det_metric(flat, z) == doctest::Approx(0.0));
  CHECK(sup_norm(ricci_form(flat, z)) < 1e-14);
  const JetField r2 = [](std::span<const Jet> c) {
    Jet s = square(c[0]);
    for (std::size_t i = 1; i < c.size(); ++i) s += square(c[i]);
    return s;
  };
  CHECK(kahler_laplacian(flat, r2, z) == doctest::Approx(-6.0));
  CHECK(gradient_norm_sq(flat, r2, z) == doctest::Approx(4.0 * z.squaredNorm()));
}

TEST_CASE("Wirtinger Hessian against finite differences") {
  const auto k = test_potential();
  for (const std::vector<double>& x :
       {std::vector<double>{0.3, -0.2, 0.7, 0.1}, std::vector<double>{-1.0, 0.5, 0.0, 2.0}}) {
    const ComplexMatrix g = metric_from_potential(k, from_real(x));
    const ComplexMatrix oracle = wirtinger_from_real(fd_hessian(k_plain, x, 1e-4));
    CHECK(sup_norm(g - oracle) < 1e-6);
    CHECK(sup_norm(g - g.adjoint()) < 1e-13);
    CHECK(sup_norm(metric_perturbation(k, from_real(x)) - (g - ComplexMatrix::Identity(2, 2))) <
          1e-13);
  }
}

TEST_CASE("Ricci form against differenced log det") {
  const auto k = test_potential();
  const std::vector<double> x{0.2, 0.1, -0.3, 0.4};
  CHECK(log_det_metric(k, from_real(x)) == doctest::Approx(log_det_plain(x)).epsilon(1e-6));
  CHECK(ricci_potential_f(k, from_real(x)) == doctest::Approx(-log_det_metric(k, from_real(x))));
  const ComplexMatrix ric = ricci_form(k, from_real(x));
  const ComplexMatrix oracle = -wirtinger_from_real(fd_hessian(log_det_plain, x, 2e-3));
  CHECK(sup_norm(ric - oracle) < 2e-3);
  const auto sample = metric_sample(k, from_real(x));
  CHECK(sample.det_g == doctest::Approx(std::exp(log_det_plain(x))).epsilon(1e-6));
}

TEST_CASE("Laplacian and gradient against the metric") {
  const auto k = test_potential();
  const ComplexVector z = from_real({0.5, 0.5, -0.2, 0.3});
  const JetField f = [](std::span<const Jet> c) { return square(c[0]) * c[2] + c[3]; };
  const ComplexMatrix ginv = metric_from_potential(k, z).inverse();
  // f = x1^2 x2 + y2; Wirtinger data by hand.
  const double x1 = 0.5, x2 = -0.2;
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 0.25 * 2 * x2;
  h(0, 1) = 0.25 * 2 * x1;
  h(1, 0) = 0.25 * 2 * x1;
  Eigen::VectorXcd a(2);
  a << 0.5 * (2 * x1 * x2), 0.5 * Complex(x1 * x1, -1.0);
  const double lap = -2.0 * (ginv.transpose().cwiseProduct(h)).sum().real();
  CHECK(kahler_laplacian(k, f, z) == doctest::Approx(lap));
  const double grad = 4.0 * (a.adjoint() * ginv * a)(0, 0).real();
  CHECK(gradient_norm_sq(k, f, z) == doctest::Approx(grad));
}

TEST_CASE("decay fit") {
  Ray ray{ComplexVector::Zero(2), ComplexVector::Ones(2)};
  CHECK(ray.at(2.0).norm() == doctest::Approx(2.0));
  const auto radii = geometric_radii(1.0, 1000.0, 10);
  REQUIRE(radii.size() == 10);
  CHECK(radii.front() == doctest::Approx(1.0));
  CHECK(radii.back() == doctest::Approx(1000.0));
  CHECK(radii[1] / radii[0] == doctest::Approx(radii[9] / radii[8]));

  const auto rep = decay_fit([](const ComplexVector& z) { return 3.0 * std::pow(z.norm(), -2.5); },
                             ray, radii);
  REQUIRE(rep.exponent);
  CHECK(*rep.exponent == doctest::Approx(-2.5).epsilon(1e-10));
  CHECK(std::exp(*rep.intercept) == doctest::Approx(3.0));
  CHECK(rep.residual_rms < 1e-10);
  CHECK_FALSE(rep.exact_zero);

  const auto zero = decay_fit([](const ComplexVector&) { return 0.0; }, ray, radii);
  CHECK(zero.exact_zero);
  CHECK_FALSE(zero.exponent);

  const auto tiny = decay_fit([](const ComplexVector& z) { return 1e-20 * std::pow(z.norm(), -1.0); },
                              ray, radii, std::numeric_limits<double>::min());
  REQUIRE(tiny.exponent);
  CHECK(*tiny.exponent == doctest::Approx(-1.0));

  CHECK_THROWS_AS(decay_fit([](const ComplexVector&) { return 1.0; }, ray, {1, 2, 3}), Error);
  const std::string csv = decay_csv(rep);
  CHECK(csv.rfind("radius,field_norm,log_radius,log_field_norm\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
  CHECK(decay_summary(rep).contains("exponent"));
}
