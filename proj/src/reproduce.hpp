#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classifier.hpp"

namespace fdb {

/// One row of Table 1 or 2: a scenario configuration at a given n, with or
/// without pre-smoothing.
struct ReproRow {
  int table = 1;  // 1 = Gaussian scores (A), 2 = centered exponential (B)
  int n = 100;
  bool diff_mean = false;
  bool diff_var = false;
  bool presmooth = false;
};

struct ReproConfig {
  int table = 1;
  std::vector<ReproRow> rows;        // empty: every row of `table`
  std::vector<Method> methods;       // empty: all five, paper column order
  int repeats = 100;
  std::uint64_t seed = 0;
  int threads = 0;                   // 0: hardware concurrency
  double tolerance_pp = 2.0;         // pass/fail band around the paper value
  int folds = 10;
  int j_depth = 0;                   // CV grid 1..j_depth; 0: the table's default
};

struct ReproCell {
  ReproRow row;
  Method method;
  int replicates = 0;
  double mean_pct = 0.0;  // mean misclassification, percent
  double se_pct = 0.0;    // standard error of the mean, percent
  double paper_pct = 0.0;
  bool pass = false;
};

/// Published misclassification percentage for a table cell.
double paper_table_value(const ReproRow& row, Method method);

std::vector<ReproRow> all_rows(int table);

/// Runs the simulation protocol (tune by stratified 10-fold CV on the
/// training set of each replicate, evaluate on a fresh test set of 500)
/// and aggregates per-cell means. Replicates are seeded independently of
/// execution order, so threaded and serial runs agree exactly.
std::vector<ReproCell> reproduce(const ReproConfig& cfg);

std::string repro_report_csv(const std::vector<ReproCell>& cells);

/// Parses a row filter like "n=100,mu=diff,lambda=diff,presmooth=no";
/// multiple rows separated by ';'.
std::vector<ReproRow> parse_row_filter(int table, const std::string& filter);

}  // namespace fdb
