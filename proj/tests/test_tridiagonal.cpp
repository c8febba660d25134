#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "congestion/errors.hpp"
#include "congestion/tridiagonal.hpp"
#include "congestion/verify.hpp"

using namespace congestion;

TEST(Thomas, MatchesDenseSolve) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int n : {1, 2, 5, 17}) {
    std::vector<double> sub(n > 0 ? n - 1 : 0), sup(sub.size()), diag(n), rhs(n);
    for (auto& v : sub) v = U(rng);
    for (auto& v : sup) v = U(rng);
    for (auto& v : rhs) v = U(rng);
    for (auto& v : diag) v = 2.5 + std::abs(U(rng));
    Matrix A(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      A[i][i] = diag[i];
      if (i + 1 < n) {
        A[i][i + 1] = sup[i];
        A[i + 1][i] = sub[i];
      }
    }
    const auto x = solve_tridiagonal(sub, diag, sup, rhs);
    const auto ref = dense_solve(A, rhs);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref[i], 1e-13);
  }
}

TEST(Thomas, BandMismatch) {
  std::vector<double> d(4, 1.0), s(2, 0.0), r(4, 1.0);
  EXPECT_THROW(solve_tridiagonal(s, d, s, r), DimensionError);
}

TEST(Cyclic, IdentityReturnsRhs) {
  const int n = 9;
  std::vector<double> zero(n - 1, 0.0), one(n, 1.0), rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = std::sin(i + 0.3);
  const auto x = solve_cyclic_tridiagonal(zero, one, zero, 0.0, 0.0, rhs);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], rhs[i], 1e-15);
}

TEST(Cyclic, CirculantEigenvectorOracle) {
  // diag a, off-diagonals and corners b: eigenvalue a + 2 b cos(2 pi k / n)
  // for the Fourier mode cos(2 pi k i / n).
  const double a = 3.0, b = -1.0;
  for (int n : {6, 16, 33}) {
    for (int k : {0, 1, 2, n / 3}) {
      std::vector<double> off(n - 1, b), diag(n, a), rhs(n);
      for (int i = 0; i < n; ++i) rhs[i] = std::cos(2.0 * M_PI * k * i / n);
      const double eig = a + 2.0 * b * std::cos(2.0 * M_PI * k / n);
      const auto x = solve_cyclic_tridiagonal(off, diag, off, b, b, rhs);
      for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], rhs[i] / eig, 1e-12);
    }
  }
}

TEST(Cyclic, RandomDominantSystemsMatchDense) {
  std::mt19937_64 rng(20241018);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 14;
    std::vector<double> sub(n - 1), sup(n - 1), diag(n), rhs(n);
    for (auto& v : sub) v = U(rng);
    for (auto& v : sup) v = U(rng);
    const double lo = U(rng), hi = U(rng);
    for (auto& v : rhs) v = U(rng);
    Matrix A(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      const double l = i > 0 ? sub[i - 1] : hi;
      const double r = i + 1 < n ? sup[i] : lo;
      diag[i] = std::abs(l) + std::abs(r) + 0.1 + std::abs(U(rng));
      A[i][i] = diag[i];
      if (i + 1 < n) {
        A[i][i + 1] = sup[i];
        A[i + 1][i] = sub[i];
      }
    }
    A[0][n - 1] = hi;
    A[n - 1][0] = lo;
    const auto x = solve_cyclic_tridiagonal(sub, diag, sup, lo, hi, rhs);
    const auto ref = dense_solve(A, rhs);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref[i], 1e-12) << "trial " << trial;
  }
}

TEST(Cyclic, SingularSystemIsNumericalError) {
  // Periodic Laplacian without the identity shift: constants are in the kernel.
  const int n = 8;
  std::vector<double> off(n - 1, -1.0), diag(n, 2.0), rhs(n, 0.0);
  rhs[0] = 1.0;
  EXPECT_THROW(solve_cyclic_tridiagonal(off, diag, off, -1.0, -1.0, rhs), NumericalError);
}

TEST(Cyclic, TooSmall) {
  std::vector<double> off(1, 0.0), diag(2, 1.0), rhs(2, 1.0);
  EXPECT_THROW(solve_cyclic_tridiagonal(off, diag, off, 0.0, 0.0, rhs), DimensionError);
}

TEST(DenseSolve, LinearityOfSolution) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const int n = 7;
  Matrix A(n, std::vector<double>(n));
  for (auto& row : A)
    for (auto& v : row) v = U(rng);
  for (int i = 0; i < n; ++i) A[i][i] += 8.0;
  std::vector<double> b1(n), b2(n), sum(n);
  for (int i = 0; i < n; ++i) {
    b1[i] = U(rng);
    b2[i] = U(rng);
    sum[i] = b1[i] + b2[i];
  }
  const auto x1 = dense_solve(A, b1), x2 = dense_solve(A, b2), xs = dense_solve(A, sum);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(xs[i], x1[i] + x2[i], 1e-13);
}
