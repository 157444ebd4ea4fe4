#include "qale/jet.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace qale;

namespace {

// f(x, y) = exp(x) sin(y) / (1 + x^2 y^2) via the jet, checked against
// hand-derived partials and central differences.
double f_plain(double x, double y) { return std::exp(x) * std::sin(y) / (1.0 + x * x * y * y); }

double fd(double (*f)(double, double), double x, double y, int i, double h) {
  if (i == 0) return (f(x + h, y) - f(x - h, y)) / (2 * h);
  return (f(x, y + h) - f(x, y - h)) / (2 * h);
}

}  // namespace

TEST_CASE("jet space layout") {
  const auto& s = JetSpace::get(2, 3);
  CHECK(s.size() == 10);
  CHECK(s.degree(0) == 0);
  const int a[] = {1, 2};
  CHECK(s.degree(s.index_of(a)) == 3);
  const int too_big[] = {2, 2};
  CHECK(s.index_of(too_big) == s.size());
  CHECK(&JetSpace::get(2, 3) == &s);
}

TEST_CASE("polynomial derivatives are exact") {
  const auto& s = JetSpace::get(2, 4);
  const double p[] = {0.7, -1.3};
  const auto v = Jet::variables(s, p);
  const Jet f = v[0] * v[0] * v[0] * v[1] + 2.0 * v[1] * v[1];
  const double x = p[0], y = p[1];
  CHECK(f.value() == doctest::Approx(x * x * x * y + 2 * y * y));
  CHECK(f.d(0) == doctest::Approx(3 * x * x * y));
  CHECK(f.d(1) == doctest::Approx(x * x * x + 4 * y));
  CHECK(f.d(0, 0) == doctest::Approx(6 * x * y));
  CHECK(f.d(0, 1) == doctest::Approx(3 * x * x));
  CHECK(f.d(1, 1) == doctest::Approx(4.0));
  const int a31[] = {3, 1};
  CHECK(f.derivative(a31) == doctest::Approx(6.0));
  const int a22[] = {2, 2};
  CHECK(f.derivative(a22) == doctest::Approx(0.0));
}

TEST_CASE("elementary functions against finite differences") {
  const auto& s = JetSpace::get(2, 3);
  for (double x : {-0.8, 0.1, 1.4})
    for (double y : {-2.0, 0.5, 1.1}) {
      const double p[] = {x, y};
      const auto v = Jet::variables(s, p);
      // sin through compose with its derivative sequence
      const double sd[] = {std::sin(y), std::cos(y), -std::sin(y), -std::cos(y)};
      const Jet siny = v[1].compose(sd);
      const Jet f = exp(v[0]) * siny / (1.0 + square(v[0] * v[1]));
      CHECK(f.value() == doctest::Approx(f_plain(x, y)).epsilon(1e-13));
      CHECK(f.d(0) == doctest::Approx(fd(f_plain, x, y, 0, 1e-5)).epsilon(1e-8));
      CHECK(f.d(1) == doctest::Approx(fd(f_plain, x, y, 1, 1e-5)).epsilon(1e-8));
      // Mixed second derivative by differencing the first.
      const double h = 1e-4;
      const double dxy = (fd(f_plain, x, y + h, 0, h) - fd(f_plain, x, y - h, 0, h)) / (2 * h);
      CHECK(f.d(0, 1) == doctest::Approx(dxy).epsilon(1e-5));
    }
}

TEST_CASE("log, sqrt, pow, log1p") {
  const auto& s = JetSpace::get(1, 4);
  const double x0 = 2.3;
  const Jet x = Jet::variable(s, 0, x0);
  const int a1[] = {1}, a2[] = {2}, a3[] = {3}, a4[] = {4};
  const Jet l = log(x);
  CHECK(l.value() == doctest::Approx(std::log(x0)));
  CHECK(l.derivative(a1) == doctest::Approx(1 / x0));
  CHECK(l.derivative(a2) == doctest::Approx(-1 / (x0 * x0)));
  CHECK(l.derivative(a3) == doctest::Approx(2 / std::pow(x0, 3)));
  CHECK(l.derivative(a4) == doctest::Approx(-6 / std::pow(x0, 4)));
  const Jet r = sqrt(x);
  CHECK(r.derivative(a2) == doctest::Approx(-0.25 * std::pow(x0, -1.5)));
  const Jet p = pow(x, -1.7);
  CHECK(p.derivative(a3) == doctest::Approx(-1.7 * -2.7 * -3.7 * std::pow(x0, -4.7)));
  const Jet q = log1p(x * 1e-12);
  CHECK(q.value() == doctest::Approx(x0 * 1e-12).epsilon(1e-12));
  const Jet e = exp(x);
  CHECK(e.derivative(a4) == doctest::Approx(std::exp(x0)));
  const Jet inv = 1.0 / x;
  CHECK(inv.derivative(a2) == doctest::Approx(2 / std::pow(x0, 3)));
  CHECK((x / x).value() == doctest::Approx(1.0));
  CHECK((x / x).derivative(a1) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("partial and truncation") {
  const auto& s = JetSpace::get(2, 3);
  const double p[] = {0.4, 0.9};
  const auto v = Jet::variables(s, p);
  const Jet f = v[0] * v[0] * v[1];
  const Jet fx = f.partial(0);
  CHECK(fx.order() == 2);
  CHECK(fx.value() == doctest::Approx(2 * 0.4 * 0.9));
  CHECK(fx.d(1) == doctest::Approx(2 * 0.4));
  CHECK(fx.d(0, 1) == doctest::Approx(2.0));
  const Jet t = f.truncated(1);
  CHECK(t.order() == 1);
  CHECK(t.d(0) == doctest::Approx(f.d(0)));
}
