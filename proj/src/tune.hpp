#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "classifier.hpp"

namespace fdb {

struct TuneConfig {
  int folds = 10;
  std::vector<int> J_candidates;     // empty: 1..min(20, capacity)
  std::vector<double> h_candidates;  // empty: 10 log-spaced in [0.1, 2] (npd/npr only)
  std::uint64_t seed = 0;
};

struct CvEntry {
  int J;
  double h;  // 0 for methods without a bandwidth
  int fold;
  double error;
};

struct CvResult {
  int J = 0;
  double h = 0.0;
  double cv_error = 0.0;
  bool tuned = true;  // false when the set is too small to cross-validate
  std::vector<CvEntry> table;
};

/// Deterministic stratified fold assignment (fold id per curve). Within
/// each label stratum the fold sizes differ by at most one.
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed);

/// Mean held-out misclassification for every candidate (J, h); the
/// minimizer breaks ties toward the smallest J, then the smallest h.
/// The eigenbasis is refit inside each fold's training part.
CvResult cross_validate(const CurveSet& data, Method method, const TuneConfig& cfg);

std::string cv_table_csv(const CvResult& cv);

struct TrainReport {
  CvResult cv;
  TrainedClassifier clf;
};

/// cross_validate followed by a fit of the selected (J, h) on all data.
/// Sets too small to tune (a fold's training part cannot support a single
/// component) skip CV and fall back to the default component count.
TrainReport train_with_cv(const CurveSet& data, Method method, const TuneConfig& cfg);

}  // namespace fdb
