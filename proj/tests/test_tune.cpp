#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "rng.hpp"
#include "simulate.hpp"
#include "tune.hpp"

using namespace fdb;

namespace {

// Curves separated along the first Fourier mode, trivially classifiable at J=1.
CurveSet separable_set(int n, std::uint64_t seed) {
  CurveSet cs;
  cs.grid = Grid::uniform(0.0, 1.0, 21);
  cs.values.resize(n, 21);
  cs.labels.resize(n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const int y = i % 2;
    cs.labels[i] = y;
    const double center = y == 0 ? -3.0 : 3.0;
    for (int l = 0; l < 21; ++l)
      cs.values(i, l) = center + 0.1 * rng.gaussian() * std::sqrt(2.0) * std::cos(2.0 * M_PI * cs.grid.points(l));
  }
  return cs;
}

CurveSet label_noise_set(int n, std::uint64_t seed) {
  CurveSet cs = generate_set(scenario_a(false, false, n, seed), n, seed);
  Rng rng(derive_seed(seed, 9));
  for (int i = 0; i < n; ++i) cs.labels[i] = rng.uniform01() < 0.5 ? 0 : 1;
  if (cs.count_label(0) == 0 || cs.count_label(1) == 0) cs.labels[0] = 1 - cs.labels[0];
  return cs;
}

}  // namespace

TEST_CASE("stratified folds partition every index with balanced strata") {
  std::vector<int> labels;
  for (int i = 0; i < 47; ++i) labels.push_back(i % 3 == 0 ? 1 : 0);
  const auto fold = stratified_folds(labels, 10, 4242);
  REQUIRE(fold.size() == labels.size());
  std::vector<int> count0(10, 0), count1(10, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    REQUIRE(fold[i] >= 0);
    REQUIRE(fold[i] < 10);
    (labels[i] == 0 ? count0 : count1)[fold[i]]++;
  }
  const auto spread = [](const std::vector<int>& c) {
    return *std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end());
  };
  CHECK(spread(count0) <= 1);
  CHECK(spread(count1) <= 1);
  CHECK_THROWS_AS(stratified_folds(labels, 1, 0), Error);
  CHECK_THROWS_AS(stratified_folds(labels, 48, 0), Error);
}

TEST_CASE("perfectly separable data selects J=1 with zero cv error") {
  const CurveSet cs = separable_set(40, 17);
  TuneConfig cfg;
  cfg.folds = 10;
  cfg.seed = 5;
  const CvResult cv = cross_validate(cs, Method::gaussian, cfg);
  CHECK(cv.cv_error == 0.0);
  CHECK(cv.J == 1);  // every J ties at zero, tie-break takes the smallest
}

TEST_CASE("labels independent of curves give chance-level cv error") {
  const CurveSet cs = label_noise_set(100, 33);
  TuneConfig cfg;
  cfg.folds = 10;
  cfg.seed = 7;
  const CvResult cv = cross_validate(cs, Method::gaussian, cfg);
  CHECK(cv.cv_error >= 0.3);
  CHECK(cv.cv_error <= 0.7);
}

TEST_CASE("cross-validation is deterministic given data and seed") {
  const CurveSet cs = generate_set(scenario_a(true, true, 60, 88), 60, 88);
  TuneConfig cfg;
  cfg.folds = 10;
  cfg.seed = 99;
  const CvResult a = cross_validate(cs, Method::npd, cfg);
  const CvResult b = cross_validate(cs, Method::npd, cfg);
  CHECK(a.J == b.J);
  CHECK(a.h == b.h);
  CHECK(a.cv_error == b.cv_error);
  REQUIRE(a.table.size() == b.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i) {
    CHECK(a.table[i].J == b.table[i].J);
    CHECK(a.table[i].h == b.table[i].h);
    CHECK(a.table[i].fold == b.table[i].fold);
    CHECK(a.table[i].error == b.table[i].error);
  }
}

TEST_CASE("the reported minimizer attains the table minimum") {
  const CurveSet cs = generate_set(scenario_a(true, true, 50, 21), 50, 21);
  TuneConfig cfg;
  cfg.folds = 5;
  cfg.seed = 3;
  cfg.J_candidates = {1, 2, 3, 4};
  cfg.h_candidates = {0.3, 0.6, 1.0};
  const CvResult cv = cross_validate(cs, Method::npr, cfg);

  std::map<std::pair<int, double>, std::pair<double, int>> agg;
  for (const CvEntry& e : cv.table) {
    CHECK(e.error >= 0.0);
    CHECK(e.error <= 1.0);
    auto& a = agg[{e.J, e.h}];
    a.first += e.error;
    a.second += 1;
  }
  CHECK(agg.size() == 12);
  double best = 2.0;
  for (const auto& [key, val] : agg) best = std::min(best, val.first / val.second);
  CHECK(cv.cv_error == doctest::Approx(best).epsilon(1e-15));
  const auto sel = agg.at({cv.J, cv.h});
  CHECK(sel.first / sel.second == doctest::Approx(best).epsilon(1e-15));
}

TEST_CASE("explicit candidates beyond fold capacity are rejected") {
  const CurveSet cs = generate_set(scenario_a(true, true, 20, 2), 20, 2);
  TuneConfig cfg;
  cfg.folds = 10;
  cfg.J_candidates = {1, 17};  // fold training part holds ~18 curves -> cap 16
  CHECK_THROWS_AS(cross_validate(cs, Method::gaussian, cfg), Error);
}

TEST_CASE("unlabeled curves are rejected") {
  CurveSet cs = generate_set(scenario_a(false, false, 12, 4), 12, 4);
  cs.labels[3] = -1;
  TuneConfig cfg;
  cfg.folds = 3;
  CHECK_THROWS_AS(cross_validate(cs, Method::gaussian, cfg), Error);
}

TEST_CASE("train_with_cv falls back on tiny sets and clamps folds") {
  CurveSet cs;
  cs.grid = Grid::uniform(0.0, 1.0, 11);
  cs.values.resize(4, 11);
  cs.labels = {0, 0, 1, 1};
  Rng rng(6);
  for (int i = 0; i < 4; ++i)
    for (int l = 0; l < 11; ++l) cs.values(i, l) = rng.gaussian() + (cs.labels[i] ? 1.0 : 0.0);
  TuneConfig cfg;  // folds 10 > n
  const TrainReport rep = train_with_cv(cs, Method::gaussian, cfg);
  CHECK_FALSE(rep.cv.tuned);
  CHECK(rep.clf.J >= 1);
}
