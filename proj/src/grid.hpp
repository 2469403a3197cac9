#pragma once

#include <Eigen/Dense>
#include <vector>

#include "errors.hpp"

namespace fdb {

/// A function observed on a grid: values aligned with Grid::points.
using Curve = Eigen::VectorXd;

/// Strictly increasing time points on a compact interval, with trapezoid
/// quadrature weights. All integrals in the library are evaluated as
/// weighted sums over a Grid.
struct Grid {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;

  static Grid from_points(Eigen::VectorXd pts);
  static Grid uniform(double a, double b, int m);

  int size() const { return static_cast<int>(points.size()); }
  double span() const { return points(size() - 1) - points(0); }
};

bool same_grid(const Grid& a, const Grid& b);

/// Trapezoid realization of the L2 inner product; symmetric and bilinear.
double inner_product(const Curve& f, const Curve& g, const Grid& grid);
double l2_norm(const Curve& f, const Grid& grid);

/// Curves on a shared grid with group labels: 0, 1, or -1 for unknown.
struct CurveSet {
  Grid grid;
  Eigen::MatrixXd values;   // n x m, row i = curve i
  std::vector<int> labels;  // size n

  int size() const { return static_cast<int>(values.rows()); }
  int count_label(int k) const;
  void validate() const;
};

}  // namespace fdb
