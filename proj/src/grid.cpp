#include "grid.hpp"

#include <cmath>
#include <sstream>

namespace fdb {

Grid Grid::from_points(Eigen::VectorXd pts) {
  const int m = static_cast<int>(pts.size());
  if (m < 2) fail(ErrorCode::invalid_argument, "grid needs at least 2 points, got " + std::to_string(m));
  for (int l = 0; l < m; ++l) {
    if (!std::isfinite(pts(l))) fail(ErrorCode::invalid_argument, "grid point " + std::to_string(l) + " is not finite");
    if (l > 0 && !(pts(l) > pts(l - 1))) {
      std::ostringstream os;
      os << "grid points must be strictly increasing; points[" << l - 1 << "]=" << pts(l - 1) << " >= points[" << l
         << "]=" << pts(l);
      fail(ErrorCode::invalid_argument, os.str());
    }
  }
  Grid g;
  g.weights.resize(m);
  g.weights(0) = (pts(1) - pts(0)) / 2.0;
  for (int l = 1; l + 1 < m; ++l) g.weights(l) = (pts(l + 1) - pts(l - 1)) / 2.0;
  g.weights(m - 1) = (pts(m - 1) - pts(m - 2)) / 2.0;
  g.points = std::move(pts);
  return g;
}

Grid Grid::uniform(double a, double b, int m) {
  if (!(a < b)) fail(ErrorCode::invalid_argument, "uniform grid needs a < b");
  return from_points(Eigen::VectorXd::LinSpaced(m, a, b));
}

bool same_grid(const Grid& a, const Grid& b) {
  return a.points.size() == b.points.size() && a.points == b.points;
}

double inner_product(const Curve& f, const Curve& g, const Grid& grid) {
  if (f.size() != grid.size() || g.size() != grid.size()) {
    std::ostringstream os;
    os << "inner_product length mismatch: curves " << f.size() << ", " << g.size() << " vs grid " << grid.size();
    fail(ErrorCode::dimension, os.str());
  }
  return (grid.weights.array() * f.array() * g.array()).sum();
}

double l2_norm(const Curve& f, const Grid& grid) { return std::sqrt(inner_product(f, f, grid)); }

int CurveSet::count_label(int k) const {
  int c = 0;
  for (int y : labels)
    if (y == k) ++c;
  return c;
}

void CurveSet::validate() const {
  if (values.cols() != grid.size())
    fail(ErrorCode::dimension, "curve matrix has " + std::to_string(values.cols()) + " columns, grid has " +
                                   std::to_string(grid.size()) + " points");
  if (static_cast<int>(labels.size()) != size())
    fail(ErrorCode::dimension, "label count " + std::to_string(labels.size()) + " does not match curve count " +
                                   std::to_string(size()));
  for (int y : labels)
    if (y != 0 && y != 1 && y != -1) fail(ErrorCode::invalid_argument, "labels must be 0, 1, or -1 (unknown)");
  if (!values.allFinite()) fail(ErrorCode::invalid_argument, "curve values contain non-finite entries");
}

}  // namespace fdb
