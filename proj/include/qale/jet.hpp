// Truncated multivariate Taylor polynomials ("jets") for forward-mode
// differentiation to a fixed total order.
//
// A Jet over `nvars` real variables at order p stores the Taylor coefficients
// c_a of f(x0 + h) = sum_a c_a h^a for all multi-indices |a| <= p. Partial
// derivatives are recovered as a! c_a. Arithmetic truncates at order p, so a
// product or composition is exact up to floating-point rounding.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qale {

class JetSpace {
 public:
  /// Shared, immutable table for (nvars, order); safe to call concurrently.
  static const JetSpace& get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return exponents_.size(); }

  const std::vector<int>& exponents(std::size_t k) const { return exponents_[k]; }
  int degree(std::size_t k) const { return degree_[k]; }
  /// Index of a multi-index, or size() when it is out of range.
  std::size_t index_of(std::span<const int> alpha) const;
  std::size_t variable_index(int var) const { return var_index_[static_cast<std::size_t>(var)]; }

  struct Product {
    std::uint32_t a, b, c;
  };
  /// All (a, b) with deg a + deg b <= order, and c = index of a + b.
  const std::vector<Product>& products() const { return products_; }

  struct DerivTerm {
    std::uint32_t src, dst;
    double factor;
  };
  /// d/dx_var maps coefficient src here to dst in the (nvars, order-1) space.
  const std::vector<DerivTerm>& derivative_terms(int var) const {
    return deriv_[static_cast<std::size_t>(var)];
  }

 private:
  JetSpace(int nvars, int order);

  int nvars_;
  int order_;
  std::vector<std::vector<int>> exponents_;
  std::vector<int> degree_;
  std::vector<std::size_t> var_index_;
  std::vector<Product> products_;
  std::vector<std::vector<DerivTerm>> deriv_;
};

class Jet {
 public:
  Jet(const JetSpace& space, double value);

  static Jet constant(const JetSpace& space, double value) { return Jet(space, value); }
  /// The coordinate function x_var expanded at `value`.
  static Jet variable(const JetSpace& space, int var, double value);
  /// All coordinate jets at a point.
  static std::vector<Jet> variables(const JetSpace& space, std::span<const double> point);

  const JetSpace& space() const { return *space_; }
  int order() const { return space_->order(); }
  double value() const { return c_[0]; }
  double coeff(std::size_t k) const { return c_[k]; }
  std::span<const double> coeffs() const { return c_; }
  std::span<double> coeffs() { return c_; }

  /// Mixed partial derivative d^|a| f / dx^a at the expansion point.
  double derivative(std::span<const int> alpha) const;
  /// d f / dx_i
  double d(int i) const;
  /// d^2 f / dx_i dx_j
  double d(int i, int j) const;

  /// Partial derivative as a jet of one lower order.
  Jet partial(int var) const;

  /// Lower-order truncation.
  Jet truncated(int order) const;

  /// f(this) given f and its first order() derivatives at value().
  Jet compose(std::span<const double> derivs) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }
  Jet& operator*=(double s);
  Jet& operator/=(double s) { return *this *= 1.0 / s; }
  Jet operator-() const;

 private:
  const JetSpace* space_;
  std::vector<double> c_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator-(double s, const Jet& a) { return (-a) += s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(double s, const Jet& a);

Jet square(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet log1p(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double p);

}  // namespace qale
