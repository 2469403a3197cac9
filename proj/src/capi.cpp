#include "fdbayes.h"

#include <cstring>
#include <optional>
#include <string>

#include <json.hpp>

#include "csv.hpp"
#include "presmooth.hpp"
#include "reproduce.hpp"
#include "serialize.hpp"
#include "simulate.hpp"
#include "tune.hpp"

struct fdb_curveset {
  fdb::CurveSet cs;
};

struct fdb_model {
  fdb::TrainedClassifier clf;
  std::optional<fdb::CvResult> cv;  // present only when trained in-process
};

namespace {

thread_local std::string g_last_error = "no error";

fdb_status translate(const fdb::Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case fdb::ErrorCode::invalid_argument: return FDB_ERROR_INVALID_ARGUMENT;
    case fdb::ErrorCode::parse: return FDB_ERROR_PARSE;
    case fdb::ErrorCode::dimension: return FDB_ERROR_DIMENSION;
    case fdb::ErrorCode::numeric: return FDB_ERROR_NUMERIC;
    case fdb::ErrorCode::io: return FDB_ERROR_IO;
    case fdb::ErrorCode::internal: return FDB_ERROR_INTERNAL;
  }
  return FDB_ERROR_INTERNAL;
}

template <typename Fn>
fdb_status guarded(Fn&& fn) {
  try {
    fn();
    return FDB_OK;
  } catch (const fdb::Error& e) {
    return translate(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FDB_ERROR_INTERNAL;
  }
}

fdb_status require(bool cond, const char* msg) {
  if (cond) return FDB_OK;
  g_last_error = msg;
  return FDB_ERROR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* fdb_version(void) { return "fdbayes 1.0.0"; }

const char* fdb_last_error(void) { return g_last_error.c_str(); }

void fdb_string_free(char* s) { delete[] s; }

fdb_status fdb_curveset_create(const double* times, int32_t m, const double* values, const int32_t* labels,
                               int32_t n, fdb_curveset** out) {
  if (fdb_status s = require(times && values && out && m >= 2 && n >= 0, "fdb_curveset_create: bad arguments"))
    return s;
  return guarded([&] {
    fdb::CurveSet cs;
    cs.grid = fdb::Grid::from_points(Eigen::Map<const Eigen::VectorXd>(times, m));
    cs.values = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(values, n, m);
    cs.labels.assign(n, -1);
    if (labels)
      for (int32_t i = 0; i < n; ++i) cs.labels[i] = labels[i];
    cs.validate();
    *out = new fdb_curveset{std::move(cs)};
  });
}

fdb_status fdb_curveset_read_csv(const char* path, fdb_curveset** out) {
  if (fdb_status s = require(path && out, "fdb_curveset_read_csv: bad arguments")) return s;
  return guarded([&] { *out = new fdb_curveset{fdb::read_curveset_csv_file(path)}; });
}

fdb_status fdb_curveset_write_csv(const fdb_curveset* cs, const char* path) {
  if (fdb_status s = require(cs && path, "fdb_curveset_write_csv: bad arguments")) return s;
  return guarded([&] { fdb::write_curveset_csv_file(cs->cs, path); });
}

int32_t fdb_curveset_n(const fdb_curveset* cs) { return cs ? cs->cs.size() : -1; }

int32_t fdb_curveset_m(const fdb_curveset* cs) { return cs ? cs->cs.grid.size() : -1; }

fdb_status fdb_curveset_presmooth(const fdb_curveset* cs, fdb_curveset** out) {
  if (fdb_status s = require(cs && out, "fdb_curveset_presmooth: bad arguments")) return s;
  return guarded([&] { *out = new fdb_curveset{fdb::presmooth_curves(cs->cs)}; });
}

void fdb_curveset_free(fdb_curveset* cs) { delete cs; }

fdb_status fdb_simulate_json(const char* scenario_json, fdb_curveset** train, fdb_curveset** test) {
  if (fdb_status s = require(scenario_json && train && test, "fdb_simulate_json: bad arguments")) return s;
  return guarded([&] {
    const fdb::SimScenario scn = fdb::scenario_from_json(scenario_json);
    auto [tr, te] = fdb::generate(scn);
    *train = new fdb_curveset{std::move(tr)};
    *test = new fdb_curveset{std::move(te)};
  });
}

fdb_status fdb_train(const fdb_curveset* train, const char* options_json, fdb_model** out) {
  if (fdb_status s = require(train && options_json && out, "fdb_train: bad arguments")) return s;
  return guarded([&] {
    nlohmann::json j = nlohmann::json::parse(options_json, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fdb::fail(fdb::ErrorCode::parse, "options must be a JSON object");
    if (!j.contains("method") || !j["method"].is_string())
      fdb::fail(fdb::ErrorCode::parse, "options need a \"method\" string");
    const fdb::Method method = fdb::method_from_string(j["method"].get<std::string>());
    fdb::TuneConfig cfg;
    cfg.folds = j.value("folds", 10);
    cfg.seed = j.value("seed", 0ull);
    if (j.contains("J_candidates")) cfg.J_candidates = j["J_candidates"].get<std::vector<int>>();
    if (j.contains("h_candidates")) cfg.h_candidates = j["h_candidates"].get<std::vector<double>>();
    fdb::TrainReport rep = fdb::train_with_cv(train->cs, method, cfg);
    *out = new fdb_model{std::move(rep.clf), std::move(rep.cv)};
  });
}

fdb_status fdb_model_summary_json(const fdb_model* mdl, char** json_out) {
  if (fdb_status s = require(mdl && json_out, "fdb_model_summary_json: bad arguments")) return s;
  return guarded([&] {
    nlohmann::json j;
    j["method"] = fdb::method_to_string(mdl->clf.method);
    j["J"] = mdl->clf.J;
    j["h"] = mdl->clf.h;
    j["jmax"] = mdl->clf.model.jmax();
    j["priors"] = {mdl->clf.model.priors(0), mdl->clf.model.priors(1)};
    if (mdl->cv) {
      j["cv_error"] = mdl->cv->cv_error;
      j["tuned"] = mdl->cv->tuned;
    }
    *json_out = copy_string(j.dump());
  });
}

fdb_status fdb_model_cv_table_csv(const fdb_model* mdl, char** csv_out) {
  if (fdb_status s = require(mdl && csv_out, "fdb_model_cv_table_csv: bad arguments")) return s;
  return guarded([&] {
    if (!mdl->cv) fdb::fail(fdb::ErrorCode::invalid_argument, "model was loaded from file; no tuning table");
    *csv_out = copy_string(fdb::cv_table_csv(*mdl->cv));
  });
}

fdb_status fdb_model_save(const fdb_model* mdl, const char* path) {
  if (fdb_status s = require(mdl && path, "fdb_model_save: bad arguments")) return s;
  return guarded([&] { fdb::save_classifier(mdl->clf, path); });
}

fdb_status fdb_model_load(const char* path, fdb_model** out) {
  if (fdb_status s = require(path && out, "fdb_model_load: bad arguments")) return s;
  return guarded([&] { *out = new fdb_model{fdb::load_classifier(path), std::nullopt}; });
}

fdb_status fdb_model_predict(const fdb_model* mdl, const fdb_curveset* cs, double* criteria, int32_t* labels) {
  if (fdb_status s = require(mdl && cs && criteria && labels, "fdb_model_predict: bad arguments")) return s;
  return guarded([&] {
    if (!fdb::same_grid(mdl->clf.model.grid, cs->cs.grid))
      fdb::fail(fdb::ErrorCode::dimension,
                "curve grid (" + std::to_string(cs->cs.grid.size()) + " points) does not match model grid (" +
                    std::to_string(mdl->clf.model.grid.size()) + " points)");
    for (int i = 0; i < cs->cs.size(); ++i) {
      const fdb::Classification c = fdb::classify(mdl->clf, cs->cs.values.row(i).transpose());
      criteria[i] = c.value;
      labels[i] = c.label;
    }
  });
}

fdb_status fdb_model_diagnostics_csv(const fdb_model* mdl, int32_t max_components, char** csv_out) {
  if (fdb_status s = require(mdl && csv_out, "fdb_model_diagnostics_csv: bad arguments")) return s;
  return guarded([&] {
    const int J = max_components > 0 ? max_components : mdl->clf.model.jmax();
    const fdb::DivergenceDiagnostics d = fdb::divergence_diagnostics(mdl->clf.model, J);
    std::string out = "j,m_j,r_j,cum_m2,cum_r1sq\n";
    for (std::size_t i = 0; i < d.components.size(); ++i) {
      out += std::to_string(d.components[i]) + ',' + fdb::format_double(d.m(i)) + ',' + fdb::format_double(d.r(i)) +
             ',' + fdb::format_double(d.cum_m2(i)) + ',' + fdb::format_double(d.cum_r1sq(i)) + '\n';
    }
    for (int j : d.skipped) out += std::to_string(j) + ",skipped,skipped,,\n";
    *csv_out = copy_string(out);
  });
}

void fdb_model_free(fdb_model* mdl) { delete mdl; }

fdb_status fdb_reproduce_csv(const char* config_json, char** csv_out) {
  if (fdb_status s = require(config_json && csv_out, "fdb_reproduce_csv: bad arguments")) return s;
  return guarded([&] {
    nlohmann::json j = nlohmann::json::parse(config_json, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fdb::fail(fdb::ErrorCode::parse, "config must be a JSON object");
    fdb::ReproConfig cfg;
    cfg.table = j.value("table", 1);
    if (cfg.table != 1 && cfg.table != 2) fdb::fail(fdb::ErrorCode::invalid_argument, "table must be 1 or 2");
    if (j.contains("rows") && !j["rows"].get<std::string>().empty())
      cfg.rows = fdb::parse_row_filter(cfg.table, j["rows"].get<std::string>());
    if (j.contains("methods"))
      for (const auto& m : j["methods"]) cfg.methods.push_back(fdb::method_from_string(m.get<std::string>()));
    cfg.repeats = j.value("repeats", 100);
    cfg.seed = j.value("seed", 0ull);
    cfg.threads = j.value("threads", 0);
    cfg.tolerance_pp = j.value("tolerance_pp", 2.0);
    cfg.folds = j.value("folds", 10);
    cfg.j_depth = j.value("j_depth", 0);
    *csv_out = copy_string(fdb::repro_report_csv(fdb::reproduce(cfg)));
  });
}

}  // extern "C"
