#pragma once

#include <vector>

#include "grid.hpp"

namespace fdb {

/// Pooled-covariance eigenbasis shared by both groups, with pooled and
/// per-group eigenvalues and the mean projections. Immutable after fit.
struct EigenModel {
  Grid grid;
  Eigen::Vector2d priors;              // n_k / n
  Eigen::MatrixXd mean_curves;         // 2 x m, row k = group-k sample mean
  Eigen::MatrixXd eigenfunctions;      // jmax x m, row j = phi_j on the grid
  Eigen::VectorXd pooled_eigenvalues;  // nonincreasing, >= 0
  Eigen::MatrixXd group_eigenvalues;   // jmax x 2, lambda_{jk} = <phi_j, G_k phi_j>
  Eigen::MatrixXd mean_projections;    // jmax x 2, mu_{jk} = <mean_k, phi_j>

  int jmax() const { return static_cast<int>(pooled_eigenvalues.size()); }
};

/// Largest admissible component count for a training set: min(n - 2, m).
int component_cap(const CurveSet& data);

/// Fit with an explicit number of components (1 <= jmax <= component_cap).
EigenModel fit_eigenmodel(const CurveSet& data, int jmax);

/// Fit with the default truncation: components with pooled eigenvalue
/// above 1e-10 * lambda_1, at least one, capped at component_cap.
EigenModel fit_eigenmodel(const CurveSet& data);

/// Projection scores <x, phi_j> for j = 1..J.
Eigen::VectorXd project(const EigenModel& model, const Curve& x, int J);

/// Scores for every curve of a set (n x J).
Eigen::MatrixXd project_all(const EigenModel& model, const CurveSet& data, int J);

/// Variance floor used wherever a positive eigenvalue is required.
double lambda_floor(const EigenModel& model);

/// Per-component separation diagnostics m_j, r_j and their running sums.
/// Components with a nonpositive group eigenvalue are skipped and listed.
struct DivergenceDiagnostics {
  std::vector<int> components;  // 1-based indices of retained components
  Eigen::VectorXd m;            // (mu_{j1} - mu_{j0}) / sqrt(lambda_{j0})
  Eigen::VectorXd r;            // lambda_{j0} / lambda_{j1}
  Eigen::VectorXd cum_m2;       // running sum of m_j^2
  Eigen::VectorXd cum_r1sq;     // running sum of (r_j - 1)^2
  std::vector<int> skipped;     // 1-based indices of skipped components
};

DivergenceDiagnostics divergence_diagnostics(const EigenModel& model, int J);

}  // namespace fdb
