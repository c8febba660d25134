#pragma once

#include <vector>

namespace congestion {

// Cell-centre samples of a periodic function. Length must match the grid.
using Field = std::vector<double>;

enum class NormKind { l1, l2, linf };

// Uniform periodic mesh on [0, 1) with cell centres (i + 1/2) dx.
class Grid {
 public:
  explicit Grid(int n_cells);

  int n_cells() const { return n_; }
  double dx() const { return dx_; }
  double length() const { return 1.0; }
  double x(int i) const { return (i + 0.5) * dx_; }
  int wrap(int i) const { return ((i % n_) + n_) % n_; }
  Field centers() const;

  bool operator==(const Grid& other) const { return n_ == other.n_; }

 private:
  int n_;
  double dx_;
};

// Throws DimensionError when f is not defined on g.
void require_on_grid(const Field& f, const Grid& g, const char* what = "field");

// (f[i+1] - f[i-1]) / (2 dx) with periodic wrap.
Field ddx_central(const Field& f, const Grid& g);

// Midpoint rule, dx * sum f.
double integrate(const Field& f, const Grid& g);

double norm(const Field& f, const Grid& g, NormKind kind);

}  // namespace congestion
