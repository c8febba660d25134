#include "congestion/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "congestion/errors.hpp"

namespace congestion {

Grid::Grid(int n_cells) : n_(n_cells), dx_(0.0) {
  if (n_cells < 4) {
    throw DimensionError("grid needs at least 4 cells, got " + std::to_string(n_cells));
  }
  dx_ = 1.0 / n_cells;
}

Field Grid::centers() const {
  Field x(n_);
  for (int i = 0; i < n_; ++i) x[i] = this->x(i);
  return x;
}

void require_on_grid(const Field& f, const Grid& g, const char* what) {
  if (static_cast<int>(f.size()) != g.n_cells()) {
    throw DimensionError(std::string(what) + " has " + std::to_string(f.size()) +
                         " values on a grid of " + std::to_string(g.n_cells()) + " cells");
  }
}

Field ddx_central(const Field& f, const Grid& g) {
  require_on_grid(f, g);
  const int n = g.n_cells();
  const double inv = 1.0 / (2.0 * g.dx());
  Field d(n);
  for (int i = 0; i < n; ++i) {
    const double right = f[i + 1 < n ? i + 1 : 0];
    const double left = f[i > 0 ? i - 1 : n - 1];
    d[i] = (right - left) * inv;
  }
  return d;
}

double integrate(const Field& f, const Grid& g) {
  require_on_grid(f, g);
  double s = 0.0;
  for (double v : f) s += v;
  return s * g.dx();
}

double norm(const Field& f, const Grid& g, NormKind kind) {
  require_on_grid(f, g);
  switch (kind) {
    case NormKind::l1: {
      double s = 0.0;
      for (double v : f) s += std::abs(v);
      return s * g.dx();
    }
    case NormKind::l2: {
      double s = 0.0;
      for (double v : f) s += v * v;
      return std::sqrt(s * g.dx());
    }
    case NormKind::linf: {
      double m = 0.0;
      for (double v : f) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 0.0;
}

}  // namespace congestion
