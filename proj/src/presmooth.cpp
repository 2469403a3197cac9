#include "presmooth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fdb {

void RawRecord::validate() const {
  if (times.size() != values.size())
    fail(ErrorCode::dimension, "record times/values length mismatch: " + std::to_string(times.size()) + " vs " +
                                   std::to_string(values.size()));
  if (times.size() < 3) fail(ErrorCode::invalid_argument, "record needs at least 3 observations");
  for (int l = 0; l < times.size(); ++l) {
    if (!std::isfinite(times(l)) || !std::isfinite(values(l)))
      fail(ErrorCode::invalid_argument, "record contains non-finite entries");
    if (l > 0 && !(times(l) > times(l - 1)))
      fail(ErrorCode::invalid_argument, "record times must be strictly increasing");
  }
}

namespace {

// Weighted local-linear intercept at t, skipping observation `skip` (-1 for none).
// Returns false when fewer than two distinct times carry weight.
bool local_fit_at(const RawRecord& rec, double bandwidth, double t, int skip, double* out) {
  double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
  int weighted = 0;
  double first_time = 0;
  bool distinct = false;
  for (int l = 0; l < rec.times.size(); ++l) {
    if (l == skip) continue;
    const double k = epanechnikov((t - rec.times(l)) / bandwidth);
    if (k <= 0.0) continue;
    const double d = rec.times(l) - t;
    s0 += k;
    s1 += k * d;
    s2 += k * d * d;
    t0 += k * rec.values(l);
    t1 += k * rec.values(l) * d;
    if (weighted == 0)
      first_time = rec.times(l);
    else if (rec.times(l) != first_time)
      distinct = true;
    ++weighted;
  }
  if (weighted < 2 || !distinct) return false;
  const double det = s0 * s2 - s1 * s1;
  if (!(det > 0.0)) return false;
  *out = (s2 * t0 - s1 * t1) / det;
  return true;
}

}  // namespace

Curve local_linear_fit(const RawRecord& record, double bandwidth, const Grid& eval_grid) {
  record.validate();
  if (!(bandwidth > 0.0)) fail(ErrorCode::invalid_argument, "bandwidth must be positive");
  Curve out(eval_grid.size());
  for (int i = 0; i < eval_grid.size(); ++i) {
    const double t = eval_grid.points(i);
    if (!local_fit_at(record, bandwidth, t, -1, &out(i))) {
      std::ostringstream os;
      os << "degenerate local-linear window at eval point t=" << t << " with bandwidth " << bandwidth
         << ": fewer than 2 distinct observation times carry weight";
      fail(ErrorCode::numeric, os.str());
    }
  }
  return out;
}

double presmooth_loo_score(const RawRecord& record, double bandwidth) {
  double score = 0;
  for (int l = 0; l < record.times.size(); ++l) {
    double pred;
    if (!local_fit_at(record, bandwidth, record.times(l), l, &pred)) {
      std::ostringstream os;
      os << "degenerate leave-one-out window at t=" << record.times(l) << " with bandwidth " << bandwidth;
      fail(ErrorCode::numeric, os.str());
    }
    const double r = record.values(l) - pred;
    score += r * r;
  }
  return score;
}

double select_presmooth_bandwidth(const RawRecord& record, std::vector<double> candidates) {
  record.validate();
  if (candidates.empty()) fail(ErrorCode::invalid_argument, "no bandwidth candidates given");
  std::sort(candidates.begin(), candidates.end());
  double best = -1, best_score = 0;
  std::ostringstream rejected;
  for (double w : candidates) {
    if (!(w > 0.0)) {
      rejected << " " << w << " (not positive)";
      continue;
    }
    double score;
    try {
      score = presmooth_loo_score(record, w);
    } catch (const Error& e) {
      rejected << " " << w << " (" << e.what() << ")";
      continue;
    }
    if (best < 0 || score < best_score) {  // ties keep the smaller bandwidth
      best = w;
      best_score = score;
    }
  }
  if (best < 0)
    fail(ErrorCode::numeric, "no admissible pre-smoothing bandwidth; rejected candidates:" + rejected.str());
  return best;
}

std::vector<double> default_presmooth_bandwidths(const RawRecord& record) {
  record.validate();
  const int m = static_cast<int>(record.times.size());
  const double range = record.times(m - 1) - record.times(0);
  const double mean_gap = range / (m - 1);
  double lo = 2.0 * mean_gap, hi = range / 4.0;
  if (!(lo < hi)) return {std::max(lo, hi)};
  std::vector<double> out(10);
  for (int i = 0; i < 10; ++i) out[i] = lo * std::pow(hi / lo, i / 9.0);
  return out;
}

CurveSet presmooth_curves(const CurveSet& noisy) {
  noisy.validate();
  CurveSet smooth = noisy;
  for (int i = 0; i < noisy.size(); ++i) {
    RawRecord rec{noisy.grid.points, noisy.values.row(i).transpose()};
    const double w = select_presmooth_bandwidth(rec, default_presmooth_bandwidths(rec));
    smooth.values.row(i) = local_linear_fit(rec, w, noisy.grid).transpose();
  }
  return smooth;
}

}  // namespace fdb
