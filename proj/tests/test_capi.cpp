#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "fdbayes.h"

extern "C" const char* fdbayes_smoke_version(void);  // from the pure-C translation unit

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const char* name) : path(std::string("/tmp/fdbayes_capi_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

const char* kScenario = R"js({
  "components": 8, "lambda0": "exp(-j/3)", "lambda1": "exp(-j/2)",
  "mean1": "linear", "score_law": "gaussian", "noise_sd": 0.1,
  "grid_points": 31, "n_train": 40, "n_test": 25, "seed": 11})js";

}  // namespace

TEST_CASE("version is visible from C and C++") {
  CHECK(std::strcmp(fdb_version(), fdbayes_smoke_version()) == 0);
  CHECK(std::string(fdb_version()).find("fdbayes") == 0);
}

TEST_CASE("curveset creation and validation errors") {
  const double times[3] = {0.0, 0.5, 1.0};
  const double values[6] = {1, 2, 3, 4, 5, 6};
  const int32_t labels[2] = {0, 1};
  fdb_curveset* cs = nullptr;
  REQUIRE(fdb_curveset_create(times, 3, values, labels, 2, &cs) == FDB_OK);
  CHECK(fdb_curveset_n(cs) == 2);
  CHECK(fdb_curveset_m(cs) == 3);
  fdb_curveset_free(cs);

  const double bad_times[3] = {0.0, 0.5, 0.5};
  fdb_curveset* bad = nullptr;
  CHECK(fdb_curveset_create(bad_times, 3, values, labels, 2, &bad) == FDB_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(fdb_last_error()).find("increasing") != std::string::npos);
  CHECK(fdb_curveset_create(nullptr, 3, values, labels, 2, &bad) == FDB_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("simulate, train, save, load, predict through the C API") {
  fdb_curveset *train = nullptr, *test = nullptr;
  REQUIRE(fdb_simulate_json(kScenario, &train, &test) == FDB_OK);
  CHECK(fdb_curveset_n(train) == 40);
  CHECK(fdb_curveset_n(test) == 25);

  fdb_model* model = nullptr;
  REQUIRE(fdb_train(train, R"js({"method": "gaussian", "folds": 5, "seed": 3})js", &model) == FDB_OK);

  char* summary = nullptr;
  REQUIRE(fdb_model_summary_json(model, &summary) == FDB_OK);
  CHECK(std::string(summary).find("\"method\":\"gaussian\"") != std::string::npos);
  fdb_string_free(summary);

  char* table = nullptr;
  REQUIRE(fdb_model_cv_table_csv(model, &table) == FDB_OK);
  CHECK(std::string(table).find("J,h,fold,error\n") == 0);
  fdb_string_free(table);

  std::vector<double> crit(25);
  std::vector<int32_t> labels(25);
  REQUIRE(fdb_model_predict(model, test, crit.data(), labels.data()) == FDB_OK);

  TempFile f("model.json");
  REQUIRE(fdb_model_save(model, f.path.c_str()) == FDB_OK);
  fdb_model* loaded = nullptr;
  REQUIRE(fdb_model_load(f.path.c_str(), &loaded) == FDB_OK);

  // a loaded model has no tuning table but predicts identically
  char* no_table = nullptr;
  CHECK(fdb_model_cv_table_csv(loaded, &no_table) == FDB_ERROR_INVALID_ARGUMENT);
  std::vector<double> crit2(25);
  std::vector<int32_t> labels2(25);
  REQUIRE(fdb_model_predict(loaded, test, crit2.data(), labels2.data()) == FDB_OK);
  CHECK(crit == crit2);
  CHECK(labels == labels2);

  // grid mismatch is a dimension error with both lengths in the message
  const double times[2] = {0.0, 1.0};
  const double values[2] = {1, 2};
  fdb_curveset* short_cs = nullptr;
  REQUIRE(fdb_curveset_create(times, 2, values, nullptr, 1, &short_cs) == FDB_OK);
  double c1;
  int32_t l1;
  CHECK(fdb_model_predict(loaded, short_cs, &c1, &l1) == FDB_ERROR_DIMENSION);
  CHECK(std::string(fdb_last_error()).find("31") != std::string::npos);
  CHECK(std::string(fdb_last_error()).find("2") != std::string::npos);

  fdb_curveset_free(short_cs);
  fdb_model_free(loaded);
  fdb_model_free(model);
  fdb_curveset_free(train);
  fdb_curveset_free(test);
}

TEST_CASE("presmooth handles round-trip through the API") {
  fdb_curveset *train = nullptr, *test = nullptr;
  REQUIRE(fdb_simulate_json(kScenario, &train, &test) == FDB_OK);
  fdb_curveset* smooth = nullptr;
  REQUIRE(fdb_curveset_presmooth(train, &smooth) == FDB_OK);
  CHECK(fdb_curveset_n(smooth) == fdb_curveset_n(train));
  CHECK(fdb_curveset_m(smooth) == fdb_curveset_m(train));
  fdb_curveset_free(smooth);
  fdb_curveset_free(train);
  fdb_curveset_free(test);
}

TEST_CASE("csv io through the API") {
  fdb_curveset *train = nullptr, *test = nullptr;
  REQUIRE(fdb_simulate_json(kScenario, &train, &test) == FDB_OK);
  TempFile f("curves.csv");
  REQUIRE(fdb_curveset_write_csv(train, f.path.c_str()) == FDB_OK);
  fdb_curveset* back = nullptr;
  REQUIRE(fdb_curveset_read_csv(f.path.c_str(), &back) == FDB_OK);
  CHECK(fdb_curveset_n(back) == fdb_curveset_n(train));
  CHECK(fdb_curveset_read_csv("/nonexistent/path.csv", &back) == FDB_ERROR_IO);
  fdb_curveset_free(back);
  fdb_curveset_free(train);
  fdb_curveset_free(test);
}

TEST_CASE("diagnostics csv") {
  fdb_curveset *train = nullptr, *test = nullptr;
  REQUIRE(fdb_simulate_json(kScenario, &train, &test) == FDB_OK);
  fdb_model* model = nullptr;
  REQUIRE(fdb_train(train, R"js({"method": "npd", "folds": 5, "seed": 3})js", &model) == FDB_OK);
  char* csv = nullptr;
  REQUIRE(fdb_model_diagnostics_csv(model, 5, &csv) == FDB_OK);
  const std::string text(csv);
  CHECK(text.find("j,m_j,r_j,cum_m2,cum_r1sq\n") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  fdb_string_free(csv);
  fdb_model_free(model);
  fdb_curveset_free(train);
  fdb_curveset_free(test);
}

TEST_CASE("reproduce through the API") {
  char* csv = nullptr;
  const char* cfg = R"js({"table": 1, "rows": "n=50,mu=same,lambda=diff,presmooth=no",
                        "methods": ["centroid"], "repeats": 2, "seed": 4, "threads": 1})js";
  REQUIRE(fdb_reproduce_csv(cfg, &csv) == FDB_OK);
  const std::string text(csv);
  CHECK(text.find("1,50,same,diff,no,centroid,2,") != std::string::npos);
  fdb_string_free(csv);
  CHECK(fdb_reproduce_csv("{\"table\": 9}", &csv) == FDB_ERROR_INVALID_ARGUMENT);
  CHECK(fdb_reproduce_csv("nonsense", &csv) == FDB_ERROR_PARSE);
}

TEST_CASE("bad train options") {
  fdb_curveset *train = nullptr, *test = nullptr;
  REQUIRE(fdb_simulate_json(kScenario, &train, &test) == FDB_OK);
  fdb_model* model = nullptr;
  CHECK(fdb_train(train, R"js({"method": "svm"})js", &model) == FDB_ERROR_INVALID_ARGUMENT);
  CHECK(fdb_train(train, R"js({})js", &model) == FDB_ERROR_PARSE);  // missing method key
  CHECK(fdb_train(train, "][", &model) == FDB_ERROR_PARSE);
  fdb_curveset_free(train);
  fdb_curveset_free(test);
}
