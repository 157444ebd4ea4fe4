// Shared helpers for the test programs: small groups and finite-difference
// oracles that do not go through the jet code.
#pragma once

#include "qale/error.hpp"
#include "qale/matgroup.hpp"
#include "qale/potential.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

namespace qale::test {

inline ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                                        static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (const auto& x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

inline MatrixGroup group_of(std::vector<ComplexMatrix> gens, int dim) {
  return close_group(gens, 64, dim);
}

inline const Complex I(0.0, 1.0);

inline MatrixGroup c3_z4() { return group_of({diag({-1.0, I, I})}, 3); }
inline MatrixGroup c3_z22() {
  return group_of({diag({1.0, -1.0, -1.0}), diag({-1.0, 1.0, -1.0})}, 3);
}
inline MatrixGroup c4_z23() {
  return group_of({diag({-1.0, -1.0, 1.0, 1.0}), diag({1.0, -1.0, -1.0, 1.0}),
                   diag({1.0, 1.0, -1.0, -1.0})},
                  4);
}
inline MatrixGroup c2_z2() { return group_of({diag({-1.0, -1.0})}, 2); }

using RealFn = std::function<double(const std::vector<double>&)>;

/// Central-difference Hessian in the real coordinates, step h.
inline std::vector<std::vector<double>> fd_hessian(const RealFn& f, std::vector<double> x,
                                                   double h) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto at = [&](double si, double sj) {
        auto y = x;
        y[i] += si * h;
        y[j] += sj * h;
        return f(y);
      };
      out[i][j] = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
    }
  return out;
}

/// d_j dbar_k f from a real Hessian in coordinates (x1, y1, x2, y2, ...).
inline ComplexMatrix wirtinger_from_real(const std::vector<std::vector<double>>& h) {
  const auto m = static_cast<Eigen::Index>(h.size() / 2);
  ComplexMatrix out(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto xj = static_cast<std::size_t>(2 * j), yj = xj + 1;
      const auto xk = static_cast<std::size_t>(2 * k), yk = xk + 1;
      out(j, k) = 0.25 * Complex(h[xj][xk] + h[yj][yk], h[xj][yk] - h[yj][xk]);
    }
  return out;
}

inline ComplexVector from_real(const std::vector<double>& x) {
  ComplexVector z(static_cast<Eigen::Index>(x.size() / 2));
  for (Eigen::Index j = 0; j < z.size(); ++j)
    z(j) = Complex(x[static_cast<std::size_t>(2 * j)], x[static_cast<std::size_t>(2 * j + 1)]);
  return z;
}

/// Kind of the Error thrown by f, or empty if it returns normally.
template <class F>
std::optional<ErrorKind> kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace qale::test
