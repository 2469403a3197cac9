#include "density.hpp"

#include <cmath>

#include "errors.hpp"

namespace fdb {

// Kernel sums use scalar std::exp: the vectorized variant clamps its
// argument and never underflows to zero, which would defeat the density
// floor and the far-field fallback.
double gaussian_kernel_sum(const double* scores, std::ptrdiff_t n, double u, double bandwidth) {
  double s = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double z = (u - scores[i]) / bandwidth;
    const double a = -0.5 * z * z;
    if (a > -746.0) s += std::exp(a);
  }
  return s;
}

double kde_eval(const KdeModel& model, double u) {
  const auto n = model.scores.size();
  if (n == 0) fail(ErrorCode::invalid_argument, "kde model has no scores");
  if (!(model.bandwidth > 0.0)) fail(ErrorCode::invalid_argument, "kde bandwidth must be positive");
  const double s = gaussian_kernel_sum(model.scores.data(), n, u, model.bandwidth);
  return 0.3989422804014326779 * s / (static_cast<double>(n) * model.bandwidth);
}

double bandwidth_npd(double h, double lambda, double lambda_floor) {
  if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "bandwidth multiplier must be positive");
  return h * std::sqrt(std::max(lambda, lambda_floor));
}

double nw_eval(const NwModel& model, double u, bool* far_field) {
  if (far_field) *far_field = false;
  const auto n = model.scores.size();
  if (n == 0 || model.labels.size() != n) fail(ErrorCode::invalid_argument, "nw model scores/labels mismatch");
  if (!(model.bandwidth > 0.0)) fail(ErrorCode::invalid_argument, "nw bandwidth must be positive");
  double den = 0.0, num = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = (u - model.scores(i)) / model.bandwidth;
    const double a = -0.5 * z * z;
    if (a <= -746.0) continue;
    const double k = std::exp(a);
    den += k;
    num += k * model.labels(i);
  }
  if (!(den > 0.0)) {
    if (far_field) *far_field = true;
    return model.prior1();
  }
  const double p = num / den;
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

double density_ratio_from_regression(double p, double pi0, double pi1) {
  if (!(p >= 0.0) || !(p <= 1.0)) fail(ErrorCode::invalid_argument, "regression value must lie in [0, 1]");
  return pi0 * floor_density(p) / (pi1 * floor_density(1.0 - p));
}

double log_density_ratio_from_regression(double p, double pi0, double pi1) {
  if (!(p >= 0.0) || !(p <= 1.0)) fail(ErrorCode::invalid_argument, "regression value must lie in [0, 1]");
  return std::log(pi0) + std::log(floor_density(p)) - std::log(pi1) - std::log(floor_density(1.0 - p));
}

}  // namespace fdb
