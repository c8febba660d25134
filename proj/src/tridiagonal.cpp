#include "congestion/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "congestion/errors.hpp"

namespace congestion {

std::vector<double> solve_tridiagonal(std::span<const double> sub,
                                      std::span<const double> diag,
                                      std::span<const double> sup,
                                      std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || rhs.size() != n || sub.size() + 1 != n || sup.size() + 1 != n) {
    throw DimensionError("tridiagonal system has inconsistent band lengths");
  }
  std::vector<double> c(n), x(n);
  double pivot = diag[0];
  if (pivot == 0.0) throw NumericalError("zero pivot in row 0");
  c[0] = n > 1 ? sup[0] / pivot : 0.0;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - sub[i - 1] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw NumericalError("zero pivot in row " + std::to_string(i));
    }
    c[i] = i + 1 < n ? sup[i] / pivot : 0.0;
    x[i] = (rhs[i] - sub[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

std::vector<double> solve_cyclic_tridiagonal(std::span<const double> sub,
                                             std::span<const double> diag,
                                             std::span<const double> sup,
                                             double corner_lo, double corner_hi,
                                             std::span<const double> rhs, double tol) {
  const std::size_t n = diag.size();
  if (n < 3 || rhs.size() != n || sub.size() + 1 != n || sup.size() + 1 != n) {
    throw DimensionError("cyclic tridiagonal system needs n >= 3 and matching bands");
  }
  // A = B + u v^T with u = (s, 0, .., corner_lo), v = (1, 0, .., corner_hi / s).
  const double s = diag[0] == 0.0 ? 1.0 : -diag[0];
  std::vector<double> b(diag.begin(), diag.end());
  b[0] -= s;
  b[n - 1] -= corner_lo * corner_hi / s;

  std::vector<double> u(n, 0.0);
  u[0] = s;
  u[n - 1] = corner_lo;
  const std::vector<double> y = solve_tridiagonal(sub, b, sup, rhs);
  const std::vector<double> z = solve_tridiagonal(sub, b, sup, u);

  const double vy = y[0] + corner_hi / s * y[n - 1];
  const double vz = z[0] + corner_hi / s * z[n - 1];
  const double denom = 1.0 + vz;
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw NumericalError("singular rank-one correction in cyclic solve");
  }
  const double factor = vy / denom;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - factor * z[i];

  double rhs_max = 0.0, res_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ax = diag[i] * x[i];
    ax += i > 0 ? sub[i - 1] * x[i - 1] : corner_hi * x[n - 1];
    ax += i + 1 < n ? sup[i] * x[i + 1] : corner_lo * x[0];
    rhs_max = std::max(rhs_max, std::abs(rhs[i]));
    res_max = std::max(res_max, std::abs(ax - rhs[i]));
  }
  if (!(res_max <= tol * (1.0 + rhs_max))) {
    throw NumericalError("cyclic solve residual " + std::to_string(res_max) +
                         " exceeds tolerance");
  }
  return x;
}

}  // namespace congestion
