#pragma once

#include <span>
#include <vector>

namespace congestion {

// Non-periodic tridiagonal solve (Thomas). sub[i] = A(i+1, i),
// sup[i] = A(i, i+1), both of length n - 1.
std::vector<double> solve_tridiagonal(std::span<const double> sub,
                                      std::span<const double> diag,
                                      std::span<const double> sup,
                                      std::span<const double> rhs);

// Periodic tridiagonal solve by a rank-one (Sherman-Morrison) correction.
// corner_hi = A(0, n-1), corner_lo = A(n-1, 0). The residual is checked
// against tol * (1 + max|rhs|); a larger residual is a NumericalError.
std::vector<double> solve_cyclic_tridiagonal(std::span<const double> sub,
                                             std::span<const double> diag,
                                             std::span<const double> sup,
                                             double corner_lo, double corner_hi,
                                             std::span<const double> rhs,
                                             double tol = 1e-10);

}  // namespace congestion
