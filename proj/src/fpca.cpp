#include "fpca.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace fdb {

namespace {

void check_training_set(const CurveSet& data) {
  data.validate();
  if (data.size() < 1) fail(ErrorCode::invalid_argument, "empty curve set");
  for (int y : data.labels)
    if (y == -1) fail(ErrorCode::invalid_argument, "training curves must carry a 0/1 label");
  if (data.count_label(0) == 0 || data.count_label(1) == 0)
    fail(ErrorCode::invalid_argument, "training needs both groups nonempty (n0=" +
                                          std::to_string(data.count_label(0)) +
                                          ", n1=" + std::to_string(data.count_label(1)) + ")");
}

// Sample covariance matrix of the group's rows; zero when n_k == 1.
Eigen::MatrixXd group_covariance(const Eigen::MatrixXd& rows, const Eigen::VectorXd& mean) {
  const int nk = static_cast<int>(rows.rows());
  const int m = static_cast<int>(rows.cols());
  if (nk < 2) return Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd centered = rows.rowwise() - mean.transpose();
  return centered.transpose() * centered / static_cast<double>(nk - 1);
}

}  // namespace

int component_cap(const CurveSet& data) {
  return std::min(data.size() - 2, static_cast<int>(data.grid.size()));
}

EigenModel fit_eigenmodel(const CurveSet& data, int jmax) {
  check_training_set(data);
  const int cap = component_cap(data);
  if (jmax < 1 || jmax > cap) {
    std::ostringstream os;
    os << "jmax=" << jmax << " out of range [1, " << cap << "] = [1, min(n-2, m)] for n=" << data.size()
       << ", m=" << data.grid.size();
    fail(ErrorCode::invalid_argument, os.str());
  }

  const int m = data.grid.size();
  EigenModel mdl;
  mdl.grid = data.grid;
  mdl.mean_curves.resize(2, m);

  Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(m, m);
  std::array<Eigen::MatrixXd, 2> cov;
  for (int k = 0; k < 2; ++k) {
    std::vector<int> idx;
    for (int i = 0; i < data.size(); ++i)
      if (data.labels[i] == k) idx.push_back(i);
    Eigen::MatrixXd rows(idx.size(), m);
    for (std::size_t r = 0; r < idx.size(); ++r) rows.row(r) = data.values.row(idx[r]);
    mdl.mean_curves.row(k) = rows.colwise().mean();
    cov[k] = group_covariance(rows, mdl.mean_curves.row(k).transpose());
    mdl.priors(k) = static_cast<double>(idx.size()) / data.size();
    pooled += mdl.priors(k) * cov[k];
  }

  // Discretize the pooled operator with the quadrature weights so the
  // eigenvectors map back to functions orthonormal under inner_product.
  const Eigen::VectorXd sqw = data.grid.weights.cwiseSqrt();
  Eigen::MatrixXd sym = sqw.asDiagonal() * pooled * sqw.asDiagonal();
  sym = ((sym + sym.transpose()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) fail(ErrorCode::numeric, "eigendecomposition of pooled covariance failed");

  mdl.eigenfunctions.resize(jmax, m);
  mdl.pooled_eigenvalues.resize(jmax);
  mdl.group_eigenvalues.resize(jmax, 2);
  mdl.mean_projections.resize(jmax, 2);

  for (int j = 0; j < jmax; ++j) {
    const int src = m - 1 - j;  // solver sorts ascending
    mdl.pooled_eigenvalues(j) = std::max(solver.eigenvalues()(src), 0.0);
    Curve phi = solver.eigenvectors().col(src).cwiseQuotient(sqw);
    // Sign convention: the (earliest) grid point of maximum |phi| is positive.
    int arg = 0;
    for (int l = 1; l < m; ++l)
      if (std::abs(phi(l)) > std::abs(phi(arg))) arg = l;
    if (phi(arg) < 0.0) phi = -phi;
    mdl.eigenfunctions.row(j) = phi.transpose();

    const Eigen::VectorXd wphi = data.grid.weights.asDiagonal() * phi;
    for (int k = 0; k < 2; ++k) {
      mdl.group_eigenvalues(j, k) = std::max(wphi.dot(cov[k] * wphi), 0.0);
      mdl.mean_projections(j, k) = wphi.dot(mdl.mean_curves.row(k).transpose());
    }
  }
  return mdl;
}

EigenModel fit_eigenmodel(const CurveSet& data) {
  check_training_set(data);
  EigenModel full = fit_eigenmodel(data, component_cap(data));
  int keep = 0;
  const double cutoff = 1e-10 * full.pooled_eigenvalues(0);
  for (int j = 0; j < full.jmax(); ++j)
    if (full.pooled_eigenvalues(j) > cutoff) keep = j + 1;
  keep = std::max(keep, 1);
  if (keep == full.jmax()) return full;
  EigenModel mdl = full;
  mdl.eigenfunctions = full.eigenfunctions.topRows(keep);
  mdl.pooled_eigenvalues = full.pooled_eigenvalues.head(keep);
  mdl.group_eigenvalues = full.group_eigenvalues.topRows(keep);
  mdl.mean_projections = full.mean_projections.topRows(keep);
  return mdl;
}

Eigen::VectorXd project(const EigenModel& model, const Curve& x, int J) {
  if (x.size() != model.grid.size())
    fail(ErrorCode::dimension, "curve length " + std::to_string(x.size()) + " does not match model grid " +
                                   std::to_string(model.grid.size()));
  if (J < 1 || J > model.jmax())
    fail(ErrorCode::invalid_argument,
         "J=" + std::to_string(J) + " out of range [1, " + std::to_string(model.jmax()) + "]");
  return model.eigenfunctions.topRows(J) * (model.grid.weights.asDiagonal() * x);
}

Eigen::MatrixXd project_all(const EigenModel& model, const CurveSet& data, int J) {
  if (!same_grid(model.grid, data.grid))
    fail(ErrorCode::dimension, "curve set grid (" + std::to_string(data.grid.size()) +
                                   " points) does not match model grid (" + std::to_string(model.grid.size()) + ")");
  if (J < 1 || J > model.jmax())
    fail(ErrorCode::invalid_argument,
         "J=" + std::to_string(J) + " out of range [1, " + std::to_string(model.jmax()) + "]");
  return data.values * (model.grid.weights.asDiagonal() * model.eigenfunctions.topRows(J).transpose());
}

double lambda_floor(const EigenModel& model) {
  const double top = model.pooled_eigenvalues.size() > 0 ? model.pooled_eigenvalues(0) : 0.0;
  return 1e-12 * (top > 0.0 ? top : 1.0);
}

DivergenceDiagnostics divergence_diagnostics(const EigenModel& model, int J) {
  if (J < 1 || J > model.jmax())
    fail(ErrorCode::invalid_argument,
         "J=" + std::to_string(J) + " out of range [1, " + std::to_string(model.jmax()) + "]");
  DivergenceDiagnostics d;
  std::vector<double> m, r, cm, cr;
  double sum_m2 = 0, sum_r1 = 0;
  for (int j = 0; j < J; ++j) {
    const double l0 = model.group_eigenvalues(j, 0);
    const double l1 = model.group_eigenvalues(j, 1);
    if (!(l0 > 0.0) || !(l1 > 0.0)) {
      d.skipped.push_back(j + 1);
      continue;
    }
    const double mj = (model.mean_projections(j, 1) - model.mean_projections(j, 0)) / std::sqrt(l0);
    const double rj = l0 / l1;
    sum_m2 += mj * mj;
    sum_r1 += (rj - 1.0) * (rj - 1.0);
    d.components.push_back(j + 1);
    m.push_back(mj);
    r.push_back(rj);
    cm.push_back(sum_m2);
    cr.push_back(sum_r1);
  }
  d.m = Eigen::Map<Eigen::VectorXd>(m.data(), m.size());
  d.r = Eigen::Map<Eigen::VectorXd>(r.data(), r.size());
  d.cum_m2 = Eigen::Map<Eigen::VectorXd>(cm.data(), cm.size());
  d.cum_r1sq = Eigen::Map<Eigen::VectorXd>(cr.data(), cr.size());
  return d;
}

}  // namespace fdb
