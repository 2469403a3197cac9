#pragma once

#include <vector>

#include "grid.hpp"

namespace fdb {

/// One subject's noisy discrete observations W_l at times t_l.
struct RawRecord {
  Eigen::VectorXd times;
  Eigen::VectorXd values;

  void validate() const;  // equal lengths >= 3, strictly increasing times, finite
};

/// Epanechnikov kernel, 0.75 (1 - u^2) on |u| < 1.
inline double epanechnikov(double u) {
  const double a = 1.0 - u * u;
  return a > 0.0 ? 0.75 * a : 0.0;
}

/// Local-linear smooth of a record, evaluated on eval_grid. Returns the
/// weighted-least-squares intercept at each eval point; reproduces affine
/// data exactly. Every eval point must have at least two distinct
/// observation times with nonzero kernel weight.
Curve local_linear_fit(const RawRecord& record, double bandwidth, const Grid& eval_grid);

/// Sum of squared leave-one-out prediction errors of the local-linear fit.
double presmooth_loo_score(const RawRecord& record, double bandwidth);

/// Candidate minimizing the leave-one-out score; ties break to the
/// smallest bandwidth. Inadmissible candidates (a degenerate window
/// somewhere) are rejected; all rejected is an error.
double select_presmooth_bandwidth(const RawRecord& record, std::vector<double> candidates);

/// Default candidate grid: 10 log-spaced values from 2 * (mean gap) to range / 4.
std::vector<double> default_presmooth_bandwidths(const RawRecord& record);

/// Smooth every curve of a set back onto its own grid, with a per-curve
/// leave-one-out bandwidth from the default candidate grid.
CurveSet presmooth_curves(const CurveSet& noisy);

}  // namespace fdb
