#pragma once

#include <limits>

#include <Eigen/Dense>

namespace fdb {

/// Lower threshold for densities and regression probabilities: 100 times
/// the gap between 0 and the next representable double.
inline constexpr double kDensityFloor = 100.0 * std::numeric_limits<double>::denorm_min();

inline double floor_density(double v) { return v > kDensityFloor ? v : kDensityFloor; }

/// Gaussian kernel K(z) = exp(-z^2/2) / sqrt(2 pi).
inline double gaussian_kernel(double z) { return 0.3989422804014326779 * std::exp(-0.5 * z * z); }

/// One-dimensional kernel density estimate over a stored score sample.
struct KdeModel {
  Eigen::VectorXd scores;
  double bandwidth = 0.0;
};

/// (1 / (n h)) sum K((u - xi_i) / h); nonnegative, integrates to 1.
double kde_eval(const KdeModel& model, double u);

/// Per-component KDE bandwidth h * sqrt(lambda), with lambda floored so
/// the bandwidth stays positive for degenerate components.
double bandwidth_npd(double h, double lambda, double lambda_floor);

/// Nadaraya-Watson regression of the 0/1 label on one score component,
/// over the pooled training scores.
struct NwModel {
  Eigen::VectorXd scores;      // pooled
  Eigen::VectorXd labels;      // 0/1, aligned with scores
  double bandwidth = 0.0;

  double prior1() const { return labels.size() > 0 ? labels.mean() : 0.5; }
};

/// Kernel-weighted fraction of label-1 points at u, in [0, 1]. A fully
/// underflowed denominator falls back to the sample prior; `far_field`
/// (when given) flags that case.
double nw_eval(const NwModel& model, double u, bool* far_field = nullptr);

/// Kernel sum  sum_i K((u - s_i) / bandwidth) * sqrt(2 pi), underflowing
/// to zero exactly in the far field.
double gaussian_kernel_sum(const double* scores, std::ptrdiff_t n, double u, double bandwidth);

/// Density ratio f1/f0 recovered from a regression value p = P(Y=1|xi=u):
/// pi0 p / (pi1 (1 - p)), with p and 1-p floored. The ratio can overflow
/// for p near 1; criteria use the log form below, which is always finite.
double density_ratio_from_regression(double p, double pi0, double pi1);
double log_density_ratio_from_regression(double p, double pi0, double pi1);

}  // namespace fdb
