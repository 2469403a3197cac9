#include "serialize.hpp"

#include <json.hpp>

#include "csv.hpp"

namespace fdb {

using nlohmann::json;

namespace {

json vec_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat_to_json(const Eigen::MatrixXd& m) {  // row-major nested arrays
  json a = json::array();
  for (int r = 0; r < m.rows(); ++r) a.push_back(vec_to_json(m.row(r).transpose()));
  return a;
}

Eigen::VectorXd vec_from_json(const json& a, const std::string& what) {
  if (!a.is_array()) fail(ErrorCode::parse, what + " must be an array");
  Eigen::VectorXd v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) fail(ErrorCode::parse, what + " must hold numbers");
    v(i) = a[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd mat_from_json(const json& a, const std::string& what) {
  if (!a.is_array() || a.empty()) fail(ErrorCode::parse, what + " must be a nonempty array of rows");
  const Eigen::VectorXd first = vec_from_json(a[0], what);
  Eigen::MatrixXd m(a.size(), first.size());
  m.row(0) = first.transpose();
  for (std::size_t r = 1; r < a.size(); ++r) {
    const Eigen::VectorXd row = vec_from_json(a[r], what);
    if (row.size() != m.cols()) fail(ErrorCode::parse, what + " rows have uneven lengths");
    m.row(r) = row.transpose();
  }
  return m;
}

json eigenmodel_json(const EigenModel& model) {
  json j;
  j["grid"] = vec_to_json(model.grid.points);
  j["priors"] = {model.priors(0), model.priors(1)};
  j["means"] = mat_to_json(model.mean_curves);
  j["eigenfunctions"] = mat_to_json(model.eigenfunctions);
  j["pooled_eigenvalues"] = vec_to_json(model.pooled_eigenvalues);
  j["group_eigenvalues"] = {vec_to_json(model.group_eigenvalues.col(0)), vec_to_json(model.group_eigenvalues.col(1))};
  j["mean_projections"] = {vec_to_json(model.mean_projections.col(0)), vec_to_json(model.mean_projections.col(1))};
  return j;
}

EigenModel eigenmodel_from(const json& j) {
  EigenModel m;
  m.grid = Grid::from_points(vec_from_json(j.at("grid"), "grid"));
  const auto& pr = j.at("priors");
  if (!pr.is_array() || pr.size() != 2) fail(ErrorCode::parse, "priors must be a pair");
  m.priors << pr[0].get<double>(), pr[1].get<double>();
  m.mean_curves = mat_from_json(j.at("means"), "means");
  m.eigenfunctions = mat_from_json(j.at("eigenfunctions"), "eigenfunctions");
  m.pooled_eigenvalues = vec_from_json(j.at("pooled_eigenvalues"), "pooled_eigenvalues");
  const auto two_cols = [&](const json& a, const std::string& what) {
    if (!a.is_array() || a.size() != 2) fail(ErrorCode::parse, what + " must hold two per-group arrays");
    Eigen::MatrixXd out(vec_from_json(a[0], what).size(), 2);
    out.col(0) = vec_from_json(a[0], what);
    out.col(1) = vec_from_json(a[1], what);
    return out;
  };
  m.group_eigenvalues = two_cols(j.at("group_eigenvalues"), "group_eigenvalues");
  m.mean_projections = two_cols(j.at("mean_projections"), "mean_projections");

  const int jmax = m.jmax();
  const int grid_m = m.grid.size();
  if (m.mean_curves.rows() != 2 || m.mean_curves.cols() != grid_m || m.eigenfunctions.rows() != jmax ||
      m.eigenfunctions.cols() != grid_m || m.group_eigenvalues.rows() != jmax || m.mean_projections.rows() != jmax)
    fail(ErrorCode::parse, "eigenmodel fields have inconsistent shapes");
  if (!(m.priors(0) > 0.0) || !(m.priors(1) > 0.0)) fail(ErrorCode::parse, "priors must be positive");
  return m;
}

json parse(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::parse, what + ": invalid JSON");
  return j;
}

}  // namespace

std::string eigenmodel_to_json(const EigenModel& model) { return eigenmodel_json(model).dump(); }

EigenModel eigenmodel_from_json(const std::string& text) {
  return eigenmodel_from(parse(text, "eigenmodel"));
}

std::string classifier_to_json(const TrainedClassifier& clf) {
  json j;
  j["format"] = "fdbayes-classifier";
  j["version"] = 1;
  j["method"] = method_to_string(clf.method);
  j["J"] = clf.J;
  j["h"] = clf.h;
  j["eigenmodel"] = eigenmodel_json(clf.model);
  if (clf.method == Method::npd || clf.method == Method::npr) {
    j["train_scores"] = {mat_to_json(clf.scores0), mat_to_json(clf.scores1)};
  }
  if (clf.method == Method::logistic) j["logistic_coef"] = vec_to_json(clf.logistic_coef);
  return j.dump();
}

TrainedClassifier classifier_from_json(const std::string& text) {
  const json j = parse(text, "classifier");
  if (!j.is_object() || j.value("format", "") != "fdbayes-classifier")
    fail(ErrorCode::parse, "not a classifier file (missing format tag)");
  TrainedClassifier clf;
  clf.method = method_from_string(j.at("method").get<std::string>());
  clf.model = eigenmodel_from(j.at("eigenmodel"));
  clf.J = j.at("J").get<int>();
  clf.h = j.at("h").get<double>();
  if (clf.J < 1 || clf.J > clf.model.jmax()) fail(ErrorCode::parse, "classifier J out of range");
  if (clf.method == Method::npd || clf.method == Method::npr) {
    const auto& ts = j.at("train_scores");
    if (!ts.is_array() || ts.size() != 2) fail(ErrorCode::parse, "train_scores must hold two per-group matrices");
    clf.scores0 = mat_from_json(ts[0], "train_scores");
    clf.scores1 = mat_from_json(ts[1], "train_scores");
    if (clf.scores0.cols() != clf.J || clf.scores1.cols() != clf.J)
      fail(ErrorCode::parse, "train_scores width does not match J");
    if (!(clf.h > 0.0)) fail(ErrorCode::parse, "nonparametric classifier needs h > 0");
  }
  if (clf.method == Method::logistic) {
    clf.logistic_coef = vec_from_json(j.at("logistic_coef"), "logistic_coef");
    if (clf.logistic_coef.size() != clf.J + 1) fail(ErrorCode::parse, "logistic_coef length must be J + 1");
  }
  return clf;
}

void save_classifier(const TrainedClassifier& clf, const std::string& path) {
  write_text_file(path, classifier_to_json(clf) + "\n");
}

TrainedClassifier load_classifier(const std::string& path) {
  return classifier_from_json(read_text_file(path));
}

namespace {

Eigen::VectorXd eigenvalue_sequence(const json& spec, int components, const std::string& what) {
  if (spec.is_array()) {
    const Eigen::VectorXd v = vec_from_json(spec, what);
    if (v.size() != components)
      fail(ErrorCode::parse, what + " array length " + std::to_string(v.size()) + " != components " +
                                 std::to_string(components));
    return v;
  }
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    // accepted form: exp(-j/D)
    if (s.rfind("exp(-j/", 0) == 0 && s.back() == ')') {
      const std::string d = s.substr(7, s.size() - 8);
      try {
        const double denom = std::stod(d);
        if (denom > 0.0) return exp_decay_eigenvalues(components, 1.0 / denom);
      } catch (const std::exception&) {
      }
    }
    fail(ErrorCode::parse, what + ": unrecognized eigenvalue formula '" + s + "' (expected exp(-j/D) or an array)");
  }
  fail(ErrorCode::parse, what + " must be an array or a formula string");
}

}  // namespace

SimScenario scenario_from_json(const std::string& text) {
  const json j = parse(text, "scenario");
  if (!j.is_object()) fail(ErrorCode::parse, "scenario must be a JSON object");
  SimScenario s;
  s.components = j.value("components", 50);
  s.lambda0 = eigenvalue_sequence(j.at("lambda0"), s.components, "lambda0");
  s.lambda1 = eigenvalue_sequence(j.at("lambda1"), s.components, "lambda1");
  const std::string mean1 = j.value("mean1", "zero");
  if (mean1 == "zero")
    s.mean1_linear = false;
  else if (mean1 == "linear")
    s.mean1_linear = true;
  else
    fail(ErrorCode::parse, "mean1 must be 'zero' or 'linear'");
  s.score_law = score_law_from_string(j.value("score_law", "gaussian"));
  s.noise_sd = j.value("noise_sd", 0.1);
  s.grid_points = j.value("grid_points", 51);
  s.n_train = j.value("n_train", 100);
  s.n_test = j.value("n_test", 500);
  s.seed = j.value("seed", 0ull);
  s.validate();
  return s;
}

std::string scenario_to_json(const SimScenario& scn) {
  json j;
  j["components"] = scn.components;
  j["lambda0"] = vec_to_json(scn.lambda0);
  j["lambda1"] = vec_to_json(scn.lambda1);
  j["mean1"] = scn.mean1_linear ? "linear" : "zero";
  j["score_law"] = score_law_to_string(scn.score_law);
  j["noise_sd"] = scn.noise_sd;
  j["grid_points"] = scn.grid_points;
  j["n_train"] = scn.n_train;
  j["n_test"] = scn.n_test;
  j["seed"] = scn.seed;
  return j.dump(2);
}

}  // namespace fdb
