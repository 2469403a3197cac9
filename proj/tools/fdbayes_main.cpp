// Command-line front end over the fdbayes C API.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdbayes.h"

namespace {

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "ERROR: " << msg << std::endl;
  std::exit(1);
}

void check(fdb_status s) {
  if (s != FDB_OK) die(fdb_last_error());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die("cannot open '" + path + "' for writing");
  out << content;
  if (!out) die("failed writing '" + path + "'");
}

struct CurvesetDeleter {
  void operator()(fdb_curveset* p) const { fdb_curveset_free(p); }
};
struct ModelDeleter {
  void operator()(fdb_model* p) const { fdb_model_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { fdb_string_free(p); }
};
using CurvesetPtr = std::unique_ptr<fdb_curveset, CurvesetDeleter>;
using ModelPtr = std::unique_ptr<fdb_model, ModelDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

CurvesetPtr read_curves(const std::string& path) {
  fdb_curveset* cs = nullptr;
  check(fdb_curveset_read_csv(path.c_str(), &cs));
  return CurvesetPtr(cs);
}

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_train(const std::string& curves_path, const std::string& method, bool presmooth, int folds,
              std::uint64_t seed, const std::string& model_out, std::string cv_table_path) {
  CurvesetPtr curves = read_curves(curves_path);
  if (presmooth) {
    fdb_curveset* smooth = nullptr;
    check(fdb_curveset_presmooth(curves.get(), &smooth));
    curves.reset(smooth);
  }
  nlohmann::json options{{"method", method}, {"folds", folds}, {"seed", seed}};
  fdb_model* raw = nullptr;
  check(fdb_train(curves.get(), options.dump().c_str(), &raw));
  ModelPtr model(raw);
  check(fdb_model_save(model.get(), model_out.c_str()));

  char* summary_raw = nullptr;
  check(fdb_model_summary_json(model.get(), &summary_raw));
  StringPtr summary(summary_raw);
  const nlohmann::json s = nlohmann::json::parse(summary.get());

  if (cv_table_path.empty()) cv_table_path = model_out + ".cv.csv";
  char* table_raw = nullptr;
  check(fdb_model_cv_table_csv(model.get(), &table_raw));
  StringPtr table(table_raw);
  spit(cv_table_path, table.get());

  std::cout << "method=" << method << " selected J=" << s["J"].get<int>();
  if (method == "npd" || method == "npr") std::cout << " h=" << s["h"].get<double>();
  if (s.contains("cv_error") && s["tuned"].get<bool>())
    std::cout << " cv_error=" << s["cv_error"].get<double>();
  std::cout << "\nmodel=" << model_out << "\ncv_table=" << cv_table_path << std::endl;
  return 0;
}

int run_predict(const std::string& model_path, const std::string& curves_path, const std::string& out_path) {
  fdb_model* raw = nullptr;
  check(fdb_model_load(model_path.c_str(), &raw));
  ModelPtr model(raw);
  CurvesetPtr curves = read_curves(curves_path);
  const int n = fdb_curveset_n(curves.get());
  std::vector<double> criteria(n);
  std::vector<int32_t> labels(n);
  if (n > 0) check(fdb_model_predict(model.get(), curves.get(), criteria.data(), labels.data()));
  std::string out = "index,criterion,label\n";
  for (int i = 0; i < n; ++i)
    out += std::to_string(i) + ',' + format17(criteria[i]) + ',' + std::to_string(labels[i]) + '\n';
  spit(out_path, out);
  std::cout << "predictions=" << out_path << " curves=" << n << std::endl;
  return 0;
}

int run_simulate(const std::string& scenario_path, const std::string& out_prefix, std::int64_t seed_override) {
  std::string scenario = slurp(scenario_path);
  if (seed_override >= 0) {
    nlohmann::json j = nlohmann::json::parse(scenario, nullptr, false);
    if (j.is_discarded()) die("scenario '" + scenario_path + "': invalid JSON");
    j["seed"] = static_cast<std::uint64_t>(seed_override);
    scenario = j.dump();
  }
  fdb_curveset *train = nullptr, *test = nullptr;
  check(fdb_simulate_json(scenario.c_str(), &train, &test));
  CurvesetPtr train_p(train), test_p(test);
  const std::string train_path = out_prefix + "_train.csv";
  const std::string test_path = out_prefix + "_test.csv";
  check(fdb_curveset_write_csv(train_p.get(), train_path.c_str()));
  check(fdb_curveset_write_csv(test_p.get(), test_path.c_str()));
  std::cout << "train=" << train_path << " (" << fdb_curveset_n(train_p.get()) << " curves)\n"
            << "test=" << test_path << " (" << fdb_curveset_n(test_p.get()) << " curves)" << std::endl;
  return 0;
}

int run_reproduce(int table, const std::string& rows, const std::string& methods, int repeats, std::uint64_t seed,
                  const std::string& out_path, int threads, double tolerance) {
  nlohmann::json cfg{{"table", table}, {"repeats", repeats}, {"seed", seed},
                     {"threads", threads}, {"tolerance_pp", tolerance}};
  if (!rows.empty()) cfg["rows"] = rows;
  if (!methods.empty()) {
    std::vector<std::string> ms;
    std::stringstream ss(methods);
    std::string part;
    while (std::getline(ss, part, ',')) ms.push_back(part);
    cfg["methods"] = ms;
  }
  char* raw = nullptr;
  check(fdb_reproduce_csv(cfg.dump().c_str(), &raw));
  StringPtr report(raw);
  spit(out_path, report.get());
  std::cout << report.get();
  std::cout << "report=" << out_path << std::endl;
  return 0;
}

int run_diagnostics(const std::string& model_path, int components, const std::string& out_path) {
  fdb_model* raw = nullptr;
  check(fdb_model_load(model_path.c_str(), &raw));
  ModelPtr model(raw);
  char* csv_raw = nullptr;
  check(fdb_model_diagnostics_csv(model.get(), components, &csv_raw));
  StringPtr csv(csv_raw);
  if (out_path.empty())
    std::cout << csv.get();
  else {
    spit(out_path, csv.get());
    std::cout << "diagnostics=" << out_path << std::endl;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdbayes: functional Bayes classifiers via projection density ratios"};
  app.require_subcommand(1);

  // train
  std::string curves_path, method, model_out, cv_table_path;
  bool presmooth = false;
  int folds = 10;
  std::uint64_t seed = 0;
  CLI::App* train = app.add_subcommand("train", "tune and fit a classifier from a curve CSV");
  train->add_option("curves", curves_path, "training curves CSV")->required();
  train->add_option("--method", method, "npd, npr, gaussian, centroid, or logistic")->required();
  train->add_flag("--presmooth", presmooth, "local-linear pre-smoothing before training");
  train->add_option("--folds", folds, "cross-validation folds (default 10)");
  train->add_option("--seed", seed, "fold-assignment seed");
  train->add_option("--model-out", model_out, "output model JSON path")->required();
  train->add_option("--cv-table", cv_table_path, "output CV table CSV (default <model-out>.cv.csv)");

  // predict
  std::string p_model, p_curves, p_out;
  CLI::App* predict = app.add_subcommand("predict", "classify curves with a saved model");
  predict->add_option("--model", p_model, "model JSON path")->required();
  predict->add_option("curves", p_curves, "curves CSV")->required();
  predict->add_option("--out", p_out, "output CSV of index,criterion,label")->required();

  // simulate
  std::string s_scenario, s_prefix;
  std::int64_t s_seed = -1;
  CLI::App* simulate = app.add_subcommand("simulate", "draw train/test sets from a scenario JSON");
  simulate->add_option("--scenario", s_scenario, "scenario JSON path")->required();
  simulate->add_option("--out-prefix", s_prefix, "writes <prefix>_train.csv and <prefix>_test.csv")->required();
  simulate->add_option("--seed", s_seed, "override the scenario's seed");

  // reproduce
  int r_table = 1, r_repeats = 100, r_threads = 0;
  std::string r_rows, r_methods, r_out;
  std::uint64_t r_seed = 0;
  double r_tol = 2.0;
  CLI::App* reproduce = app.add_subcommand("reproduce", "re-run the published simulation tables");
  reproduce->add_option("--table", r_table, "1 (Gaussian scores) or 2 (exponential scores)");
  reproduce->add_option("--rows", r_rows, "filter like n=100,mu=diff,lambda=diff,presmooth=no;... (default: all)");
  reproduce->add_option("--methods", r_methods, "comma list of centroid,gaussian,npd,npr,logistic (default: all)");
  reproduce->add_option("--repeats", r_repeats, "replicates per row (default 100; the paper uses 500)");
  reproduce->add_option("--seed", r_seed, "master seed");
  reproduce->add_option("--out", r_out, "output report CSV")->required();
  reproduce->add_option("--threads", r_threads, "worker threads (0 = auto); does not affect results");
  reproduce->add_option("--tolerance", r_tol, "pass/fail band vs the published value, percentage points");

  // diagnostics
  std::string d_model, d_out;
  int d_components = 0;
  CLI::App* diagnostics = app.add_subcommand("diagnostics", "per-component separation diagnostics of a model");
  diagnostics->add_option("--model", d_model, "model JSON path")->required();
  diagnostics->add_option("--components", d_components, "components to report (default: all)");
  diagnostics->add_option("--out", d_out, "output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ERROR: " << e.what() << std::endl;
    return 2;
  }

  if (*train) return run_train(curves_path, method, presmooth, folds, seed, model_out, cv_table_path);
  if (*predict) return run_predict(p_model, p_curves, p_out);
  if (*simulate) return run_simulate(s_scenario, s_prefix, s_seed);
  if (*reproduce) return run_reproduce(r_table, r_rows, r_methods, r_repeats, r_seed, r_out, r_threads, r_tol);
  if (*diagnostics) return run_diagnostics(d_model, d_components, d_out);
  die("no subcommand");
}
