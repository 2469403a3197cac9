#pragma once

#include <string>
#include <vector>

#include "density.hpp"
#include "fpca.hpp"

namespace fdb {

enum class Method { npd, npr, gaussian, centroid, logistic };

Method method_from_string(const std::string& s);
std::string method_to_string(Method m);

/// A fitted classifier: the eigenbasis plus whatever the method needs.
/// npd/npr keep the training scores (per group, J components); logistic
/// keeps its coefficients; gaussian and centroid read the score moments
/// already stored in the eigenmodel.
struct TrainedClassifier {
  Method method = Method::gaussian;
  EigenModel model;
  int J = 0;
  double h = 0.0;                     // bandwidth multiplier (npd/npr)
  Eigen::MatrixXd scores0, scores1;   // n_k x J training scores (npd/npr)
  Eigen::VectorXd logistic_coef;      // intercept + J slopes (logistic)
};

TrainedClassifier fit_classifier(const CurveSet& data, Method method, int J, double h = 0.0);

/// Ridge-penalized logistic fit on raw scores; throws after `max_iter`
/// Newton steps without convergence.
Eigen::VectorXd fit_logistic_coefficients(const Eigen::MatrixXd& scores, const std::vector<int>& labels,
                                          double ridge = 1e-6, int max_iter = 100);

/// Per-component criterion summands evaluated at a score vector; the
/// criterion is the prior log-ratio (where applicable) plus their sum.
/// Exposed so tuning can reuse prefix sums across candidate J.
Eigen::VectorXd npd_summands(const EigenModel& model, const Eigen::MatrixXd& scores0, const Eigen::MatrixXd& scores1,
                             double h, int J, const Eigen::VectorXd& x_scores);
Eigen::VectorXd npr_summands(const EigenModel& model, const Eigen::MatrixXd& scores0, const Eigen::MatrixXd& scores1,
                             double h, int J, const Eigen::VectorXd& x_scores);
Eigen::VectorXd gaussian_summands(const EigenModel& model, int J, const Eigen::VectorXd& x_scores);
Eigen::VectorXd centroid_summands(const EigenModel& model, int J, const Eigen::VectorXd& x_scores);

inline double prior_log_ratio(const EigenModel& model) {
  return std::log(model.priors(1)) - std::log(model.priors(0));
}

double criterion_npd(const TrainedClassifier& clf, const Curve& x);
double criterion_npr(const TrainedClassifier& clf, const Curve& x);
double criterion_gaussian(const TrainedClassifier& clf, const Curve& x);
double criterion_centroid(const TrainedClassifier& clf, const Curve& x);
double criterion_logistic(const TrainedClassifier& clf, const Curve& x);

/// Criterion for the classifier's own method.
double criterion_value(const TrainedClassifier& clf, const Curve& x);

struct Classification {
  int label;     // 1 iff value >= 0
  double value;
};

Classification classify(const TrainedClassifier& clf, const Curve& x);

}  // namespace fdb
