#include "tune.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rng.hpp"

namespace fdb {

std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed) {
  const int n = static_cast<int>(labels.size());
  if (folds < 2) fail(ErrorCode::invalid_argument, "folds must be >= 2");
  if (folds > n) fail(ErrorCode::invalid_argument, "folds=" + std::to_string(folds) + " exceeds n=" + std::to_string(n));
  std::vector<int> fold_of(n, -1);
  for (int k = 0; k < 2; ++k) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (labels[i] == k) idx.push_back(i);
    Rng rng(derive_seed(seed, 101 + k));
    rng.shuffle(idx);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) fold_of[idx[pos]] = static_cast<int>(pos % folds);
  }
  return fold_of;
}

namespace {

std::vector<double> default_h_grid() {
  std::vector<double> h(10);
  for (int i = 0; i < 10; ++i) h[i] = 0.1 * std::pow(20.0, i / 9.0);
  return h;
}

CurveSet subset(const CurveSet& data, const std::vector<int>& rows) {
  CurveSet out;
  out.grid = data.grid;
  out.values.resize(rows.size(), data.values.cols());
  out.labels.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.values.row(r) = data.values.row(rows[r]);
    out.labels[r] = data.labels[rows[r]];
  }
  return out;
}

bool uses_bandwidth(Method m) { return m == Method::npd || m == Method::npr; }

}  // namespace

CvResult cross_validate(const CurveSet& data, Method method, const TuneConfig& cfg) {
  data.validate();
  const int n = data.size();
  for (int y : data.labels)
    if (y == -1) fail(ErrorCode::invalid_argument, "cross-validation needs every curve labeled 0 or 1");
  const std::vector<int> fold_of = stratified_folds(data.labels, cfg.folds, cfg.seed);

  // Fold membership and the smallest training part across folds.
  std::vector<std::vector<int>> held(cfg.folds), train(cfg.folds);
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < cfg.folds; ++f) (f == fold_of[i] ? held[f] : train[f]).push_back(i);
  }
  int min_train = n;
  for (int f = 0; f < cfg.folds; ++f)
    if (!held[f].empty()) min_train = std::min(min_train, static_cast<int>(train[f].size()));

  std::vector<int> J_cands = cfg.J_candidates;
  const int fold_cap = std::min(min_train - 2, static_cast<int>(data.grid.size()));
  if (J_cands.empty()) {
    const int cap = std::min({20, fold_cap, fit_eigenmodel(data).jmax()});
    if (cap < 1) fail(ErrorCode::invalid_argument, "set too small to cross-validate any component count");
    for (int j = 1; j <= cap; ++j) J_cands.push_back(j);
  } else {
    std::sort(J_cands.begin(), J_cands.end());
    J_cands.erase(std::unique(J_cands.begin(), J_cands.end()), J_cands.end());
    if (J_cands.front() < 1 || J_cands.back() > fold_cap)
      fail(ErrorCode::invalid_argument, "J candidate " + std::to_string(J_cands.back()) +
                                            " exceeds fold capacity " + std::to_string(fold_cap));
  }
  std::vector<double> h_cands;
  if (uses_bandwidth(method)) {
    h_cands = cfg.h_candidates.empty() ? default_h_grid() : cfg.h_candidates;
    std::sort(h_cands.begin(), h_cands.end());
    for (double h : h_cands)
      if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "bandwidth candidates must be positive");
  } else {
    h_cands = {0.0};
  }

  const int Jc = J_cands.back();
  const int nJ = static_cast<int>(J_cands.size());
  const int nH = static_cast<int>(h_cands.size());

  // errors[(jc * nH + hc) * folds + f]
  std::vector<double> errors(static_cast<std::size_t>(nJ) * nH * cfg.folds, 0.0);
  std::vector<char> fold_used(cfg.folds, 0);

  for (int f = 0; f < cfg.folds; ++f) {
    if (held[f].empty()) continue;  // possible only when folds ~ n
    fold_used[f] = 1;
    const CurveSet ftrain = subset(data, train[f]);
    if (ftrain.count_label(0) == 0 || ftrain.count_label(1) == 0)
      fail(ErrorCode::invalid_argument, "fold " + std::to_string(f) + " training part lost a label stratum");
    const EigenModel fm = fit_eigenmodel(ftrain, Jc);
    const Eigen::MatrixXd strain = project_all(fm, ftrain, Jc);
    const int n0 = ftrain.count_label(0), n1 = ftrain.count_label(1);
    Eigen::MatrixXd s0(n0, Jc), s1(n1, Jc);
    {
      int i0 = 0, i1 = 0;
      for (int i = 0; i < ftrain.size(); ++i)
        (ftrain.labels[i] == 0 ? s0.row(i0++) : s1.row(i1++)) = strain.row(i);
    }
    const double prior_term = prior_log_ratio(fm);

    Eigen::MatrixXd sheld(held[f].size(), Jc);
    std::vector<int> yheld(held[f].size());
    for (std::size_t r = 0; r < held[f].size(); ++r) {
      sheld.row(r) = data.values.row(held[f][r]) * (fm.grid.weights.asDiagonal() * fm.eigenfunctions.transpose());
      yheld[r] = data.labels[held[f][r]];
    }
    const double inv_held = 1.0 / static_cast<double>(held[f].size());

    if (method == Method::logistic) {
      for (int jc = 0; jc < nJ; ++jc) {
        const int J = J_cands[jc];
        const Eigen::VectorXd beta = fit_logistic_coefficients(strain.leftCols(J), ftrain.labels);
        int wrong = 0;
        for (std::size_t r = 0; r < held[f].size(); ++r) {
          const double eta = beta(0) + beta.tail(J).dot(sheld.row(r).head(J));
          wrong += ((eta >= 0.0 ? 1 : 0) != yheld[r]);
        }
        errors[(static_cast<std::size_t>(jc) * nH + 0) * cfg.folds + f] = wrong * inv_held;
      }
      continue;
    }

    for (int hc = 0; hc < nH; ++hc) {
      const double h = h_cands[hc];
      std::vector<int> wrong(nJ, 0);
      for (std::size_t r = 0; r < held[f].size(); ++r) {
        const Eigen::VectorXd xs = sheld.row(r).transpose();
        Eigen::VectorXd summands;
        double base = prior_term;
        switch (method) {
          case Method::npd: summands = npd_summands(fm, s0, s1, h, Jc, xs); break;
          case Method::npr: summands = npr_summands(fm, s0, s1, h, Jc, xs); break;
          case Method::gaussian: summands = gaussian_summands(fm, Jc, xs); break;
          case Method::centroid:
            summands = centroid_summands(fm, Jc, xs);
            base = 0.0;
            break;
          default: fail(ErrorCode::internal, "unexpected method");
        }
        double cum = base;
        int jc = 0;
        for (int j = 1; j <= Jc; ++j) {
          cum += summands(j - 1);
          if (jc < nJ && J_cands[jc] == j) {
            wrong[jc] += ((cum >= 0.0 ? 1 : 0) != yheld[r]);
            ++jc;
          }
        }
      }
      for (int jc = 0; jc < nJ; ++jc)
        errors[(static_cast<std::size_t>(jc) * nH + hc) * cfg.folds + f] = wrong[jc] * inv_held;
    }
  }

  CvResult cv;
  int used = 0;
  for (int f = 0; f < cfg.folds; ++f) used += fold_used[f];
  if (used == 0) fail(ErrorCode::internal, "no usable folds");

  double best = 2.0;
  for (int jc = 0; jc < nJ; ++jc) {
    for (int hc = 0; hc < nH; ++hc) {
      double mean = 0.0;
      for (int f = 0; f < cfg.folds; ++f) {
        if (!fold_used[f]) continue;
        const double e = errors[(static_cast<std::size_t>(jc) * nH + hc) * cfg.folds + f];
        mean += e;
        cv.table.push_back({J_cands[jc], h_cands[hc], f, e});
      }
      mean /= used;
      if (mean < best) {  // candidates scanned in (J asc, h asc) order: ties keep the earlier pair
        best = mean;
        cv.J = J_cands[jc];
        cv.h = h_cands[hc];
        cv.cv_error = mean;
      }
    }
  }
  return cv;
}

std::string cv_table_csv(const CvResult& cv) {
  std::string out = "J,h,fold,error\n";
  char buf[128];
  for (const CvEntry& e : cv.table) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%d,%.17g\n", e.J, e.h, e.fold, e.error);
    out += buf;
  }
  return out;
}

TrainReport train_with_cv(const CurveSet& data, Method method, const TuneConfig& cfg) {
  TuneConfig cfg2 = cfg;
  cfg2.folds = std::min(cfg.folds, data.size());

  // A fold's training part must support at least one component; the largest
  // stratified fold holds at most ceil(n_k / folds) curves per stratum.
  const auto ceil_div = [](int a, int b) { return (a + b - 1) / b; };
  const int max_fold = ceil_div(data.count_label(0), cfg2.folds) + ceil_div(data.count_label(1), cfg2.folds);
  const int worst_train = data.size() - max_fold - 2;
  TrainReport rep;
  if (cfg2.folds >= 2 && worst_train >= 1) {
    rep.cv = cross_validate(data, method, cfg2);
  } else {
    rep.cv.tuned = false;
    rep.cv.J = std::min(fit_eigenmodel(data).jmax(), 20);
    rep.cv.h = uses_bandwidth(method) ? 0.5 : 0.0;
    rep.cv.cv_error = std::nan("");
  }
  rep.clf = fit_classifier(data, method, rep.cv.J, rep.cv.h);
  return rep;
}

}  // namespace fdb
