#include "classifier.hpp"

#include <cmath>
#include <sstream>

namespace fdb {

Method method_from_string(const std::string& s) {
  if (s == "npd") return Method::npd;
  if (s == "npr") return Method::npr;
  if (s == "gaussian") return Method::gaussian;
  if (s == "centroid") return Method::centroid;
  if (s == "logistic") return Method::logistic;
  fail(ErrorCode::invalid_argument, "unknown method '" + s + "' (expected npd, npr, gaussian, centroid, logistic)");
}

std::string method_to_string(Method m) {
  switch (m) {
    case Method::npd: return "npd";
    case Method::npr: return "npr";
    case Method::gaussian: return "gaussian";
    case Method::centroid: return "centroid";
    case Method::logistic: return "logistic";
  }
  fail(ErrorCode::internal, "bad method enum");
}

namespace {

double kernel_mean(const Eigen::Ref<const Eigen::VectorXd>& sample, double u, double bw) {
  // mean of K((u - s_i)/bw) over the sample
  return (-0.5 * ((u - sample.array()) / bw).square()).exp().sum() * 0.3989422804014326779 /
         static_cast<double>(sample.size());
}

void require_method(const TrainedClassifier& clf, Method m) {
  if (clf.method != m)
    fail(ErrorCode::invalid_argument, "classifier method is " + method_to_string(clf.method) + ", expected " +
                                          method_to_string(m));
}

Eigen::VectorXd scores_on_model_grid(const TrainedClassifier& clf, const Curve& x) {
  return project(clf.model, x, clf.J);
}

}  // namespace

Eigen::VectorXd npd_summands(const EigenModel& model, const Eigen::MatrixXd& scores0, const Eigen::MatrixXd& scores1,
                             double h, int J, const Eigen::VectorXd& x_scores) {
  const double lfloor = lambda_floor(model);
  Eigen::VectorXd s(J);
  for (int j = 0; j < J; ++j) {
    const double h0 = bandwidth_npd(h, model.group_eigenvalues(j, 0), lfloor);
    const double h1 = bandwidth_npd(h, model.group_eigenvalues(j, 1), lfloor);
    const double f0 = kernel_mean(scores0.col(j), x_scores(j), h0) / h0;
    const double f1 = kernel_mean(scores1.col(j), x_scores(j), h1) / h1;
    s(j) = std::log(floor_density(f1)) - std::log(floor_density(f0));
  }
  return s;
}

Eigen::VectorXd npr_summands(const EigenModel& model, const Eigen::MatrixXd& scores0, const Eigen::MatrixXd& scores1,
                             double h, int J, const Eigen::VectorXd& x_scores) {
  const double lfloor = lambda_floor(model);
  const double pi0 = model.priors(0), pi1 = model.priors(1);
  const double n0 = static_cast<double>(scores0.rows()), n1 = static_cast<double>(scores1.rows());
  Eigen::VectorXd s(J);
  for (int j = 0; j < J; ++j) {
    const double lbar = (model.group_eigenvalues(j, 0) + model.group_eigenvalues(j, 1)) / 2.0;
    const double hj = bandwidth_npd(h, lbar, lfloor);
    const double k0 = kernel_mean(scores0.col(j), x_scores(j), hj) * n0;
    const double k1 = kernel_mean(scores1.col(j), x_scores(j), hj) * n1;
    const double den = k0 + k1;
    const double p = den > 0.0 ? k1 / den : n1 / (n0 + n1);  // far-field: fall back to the prior
    s(j) = std::log(density_ratio_from_regression(std::min(p, 1.0), pi0, pi1));
  }
  return s;
}

Eigen::VectorXd gaussian_summands(const EigenModel& model, int J, const Eigen::VectorXd& x_scores) {
  const double lfloor = lambda_floor(model);
  Eigen::VectorXd s(J);
  for (int j = 0; j < J; ++j) {
    const double l0 = std::max(model.group_eigenvalues(j, 0), lfloor);
    const double l1 = std::max(model.group_eigenvalues(j, 1), lfloor);
    const double d0 = x_scores(j) - model.mean_projections(j, 0);
    const double d1 = x_scores(j) - model.mean_projections(j, 1);
    s(j) = 0.5 * ((std::log(l0) - std::log(l1)) - (d1 * d1 / l1 - d0 * d0 / l0));
  }
  return s;
}

Eigen::VectorXd centroid_summands(const EigenModel& model, int J, const Eigen::VectorXd& x_scores) {
  const double lfloor = lambda_floor(model);
  Eigen::VectorXd s(J);
  for (int j = 0; j < J; ++j) {
    const double lam = std::max(model.pooled_eigenvalues(j), lfloor);
    const double d0 = x_scores(j) - model.mean_projections(j, 0);
    const double d1 = x_scores(j) - model.mean_projections(j, 1);
    s(j) = (d0 * d0 - d1 * d1) / lam;  // nearer group-1 mean => positive
  }
  return s;
}

TrainedClassifier fit_classifier(const CurveSet& data, Method method, int J, double h) {
  TrainedClassifier clf;
  clf.method = method;
  clf.model = fit_eigenmodel(data);
  if (J < 1 || J > clf.model.jmax())
    fail(ErrorCode::invalid_argument,
         "J=" + std::to_string(J) + " out of range [1, " + std::to_string(clf.model.jmax()) + "]");
  clf.J = J;
  clf.h = h;
  if (method == Method::npd || method == Method::npr) {
    if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "nonparametric methods need a positive bandwidth multiplier");
    const Eigen::MatrixXd scores = project_all(clf.model, data, J);
    const int n0 = data.count_label(0), n1 = data.count_label(1);
    clf.scores0.resize(n0, J);
    clf.scores1.resize(n1, J);
    int i0 = 0, i1 = 0;
    for (int i = 0; i < data.size(); ++i) {
      if (data.labels[i] == 0)
        clf.scores0.row(i0++) = scores.row(i);
      else
        clf.scores1.row(i1++) = scores.row(i);
    }
  } else if (method == Method::logistic) {
    const Eigen::MatrixXd scores = project_all(clf.model, data, J);
    clf.logistic_coef = fit_logistic_coefficients(scores, data.labels);
  }
  return clf;
}

Eigen::VectorXd fit_logistic_coefficients(const Eigen::MatrixXd& scores, const std::vector<int>& labels,
                                          double ridge, int max_iter) {
  const int n = static_cast<int>(scores.rows());
  const int p = static_cast<int>(scores.cols());
  if (n != static_cast<int>(labels.size())) fail(ErrorCode::dimension, "scores/labels size mismatch");
  Eigen::MatrixXd X(n, p + 1);
  X.col(0).setOnes();
  X.rightCols(p) = scores;
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = labels[i];
  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(p + 1, 2.0 * ridge);
  penalty(0) = 0.0;  // intercept unpenalized

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p + 1);
  for (int iter = 1; iter <= max_iter; ++iter) {
    const Eigen::VectorXd eta = X * beta;
    const Eigen::VectorXd prob = (1.0 / (1.0 + (-eta.array()).exp())).matrix();
    const Eigen::VectorXd grad = X.transpose() * (y - prob) - penalty.asDiagonal() * beta;
    Eigen::VectorXd w = (prob.array() * (1.0 - prob.array())).max(1e-12).matrix();
    Eigen::MatrixXd hess = X.transpose() * w.asDiagonal() * X;
    hess += Eigen::MatrixXd(penalty.asDiagonal());
    Eigen::VectorXd step = hess.ldlt().solve(grad);
    const double mag = step.lpNorm<Eigen::Infinity>();
    if (mag > 20.0) step *= 20.0 / mag;  // keep near-separated fits from overshooting
    beta += step;
    if (step.lpNorm<Eigen::Infinity>() < 1e-10) return beta;
  }
  fail(ErrorCode::numeric,
       "logistic fit did not converge after " + std::to_string(max_iter) + " Newton iterations");
}

double criterion_npd(const TrainedClassifier& clf, const Curve& x) {
  require_method(clf, Method::npd);
  const Eigen::VectorXd xs = scores_on_model_grid(clf, x);
  return prior_log_ratio(clf.model) + npd_summands(clf.model, clf.scores0, clf.scores1, clf.h, clf.J, xs).sum();
}

double criterion_npr(const TrainedClassifier& clf, const Curve& x) {
  require_method(clf, Method::npr);
  const Eigen::VectorXd xs = scores_on_model_grid(clf, x);
  return prior_log_ratio(clf.model) + npr_summands(clf.model, clf.scores0, clf.scores1, clf.h, clf.J, xs).sum();
}

double criterion_gaussian(const TrainedClassifier& clf, const Curve& x) {
  require_method(clf, Method::gaussian);
  const Eigen::VectorXd xs = scores_on_model_grid(clf, x);
  return prior_log_ratio(clf.model) + gaussian_summands(clf.model, clf.J, xs).sum();
}

double criterion_centroid(const TrainedClassifier& clf, const Curve& x) {
  require_method(clf, Method::centroid);
  const Eigen::VectorXd xs = scores_on_model_grid(clf, x);
  return centroid_summands(clf.model, clf.J, xs).sum();
}

double criterion_logistic(const TrainedClassifier& clf, const Curve& x) {
  require_method(clf, Method::logistic);
  const Eigen::VectorXd xs = scores_on_model_grid(clf, x);
  return clf.logistic_coef(0) + clf.logistic_coef.tail(clf.J).dot(xs);
}

double criterion_value(const TrainedClassifier& clf, const Curve& x) {
  switch (clf.method) {
    case Method::npd: return criterion_npd(clf, x);
    case Method::npr: return criterion_npr(clf, x);
    case Method::gaussian: return criterion_gaussian(clf, x);
    case Method::centroid: return criterion_centroid(clf, x);
    case Method::logistic: return criterion_logistic(clf, x);
  }
  fail(ErrorCode::internal, "bad method enum");
}

Classification classify(const TrainedClassifier& clf, const Curve& x) {
  const double v = criterion_value(clf, x);
  return {v >= 0.0 ? 1 : 0, v};
}

}  // namespace fdb
