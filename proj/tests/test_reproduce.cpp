#include <doctest.h>

#include "reproduce.hpp"

using namespace fdb;

TEST_CASE("paper table lookup") {
  CHECK(paper_table_value({1, 100, true, true, false}, Method::gaussian) == 14.6);
  CHECK(paper_table_value({1, 100, false, true, false}, Method::centroid) == 49.1);
  CHECK(paper_table_value({2, 100, true, true, false}, Method::npd) == 16.7);
  CHECK(paper_table_value({2, 50, true, false, true}, Method::logistic) == 30.9);
  CHECK_THROWS_AS(paper_table_value({1, 75, true, true, false}, Method::npd), Error);
  CHECK(all_rows(1).size() == 12);
  CHECK(all_rows(2).size() == 12);
}

TEST_CASE("row filter parsing") {
  const auto rows = parse_row_filter(1, "n=100,mu=diff,lambda=diff,presmooth=no;n=50,mu=same,lambda=diff,presmooth=yes");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 100);
  CHECK(rows[0].diff_mean);
  CHECK(rows[0].diff_var);
  CHECK_FALSE(rows[0].presmooth);
  CHECK(rows[1].n == 50);
  CHECK_FALSE(rows[1].diff_mean);
  CHECK(rows[1].presmooth);
  CHECK_THROWS_AS(parse_row_filter(1, "n=100,mu=both"), Error);
  CHECK_THROWS_AS(parse_row_filter(1, "n=100,mu=same,lambda=same,presmooth=no"), Error);  // not a table row
  CHECK_THROWS_AS(parse_row_filter(1, "bogus"), Error);
}

TEST_CASE("small reproduction run: structure and determinism") {
  ReproConfig cfg;
  cfg.table = 1;
  cfg.rows = parse_row_filter(1, "n=50,mu=diff,lambda=diff,presmooth=no");
  cfg.methods = {Method::gaussian, Method::centroid};
  cfg.repeats = 3;
  cfg.seed = 99;
  cfg.threads = 2;

  const auto cells = reproduce(cfg);
  REQUIRE(cells.size() == 2);
  for (const auto& c : cells) {
    CHECK(c.replicates == 3);
    CHECK(c.mean_pct >= 0.0);
    CHECK(c.mean_pct <= 100.0);
    CHECK(c.se_pct >= 0.0);
  }
  CHECK(cells[0].method == Method::gaussian);
  CHECK(cells[0].paper_pct == 20.8);
  CHECK(cells[1].paper_pct == 37.9);

  // serial run agrees with the threaded run exactly
  ReproConfig serial = cfg;
  serial.threads = 1;
  const auto cells2 = reproduce(serial);
  CHECK(repro_report_csv(cells) == repro_report_csv(cells2));

  // methods subsets do not change a method's numbers
  ReproConfig solo = cfg;
  solo.methods = {Method::centroid};
  const auto cells3 = reproduce(solo);
  CHECK(cells3[0].mean_pct == cells[1].mean_pct);
}

TEST_CASE("single-replicate run is valid") {
  ReproConfig cfg;
  cfg.table = 2;
  cfg.rows = parse_row_filter(2, "n=50,mu=diff,lambda=diff,presmooth=no");
  cfg.methods = {Method::gaussian};
  cfg.repeats = 1;
  cfg.seed = 7;
  cfg.threads = 1;
  const auto cells = reproduce(cfg);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].se_pct == 0.0);
  const std::string csv = repro_report_csv(cells);
  CHECK(csv.find("table,n,mean,var,presmooth,method") == 0);
  CHECK(csv.find("2,50,diff,diff,no,gaussian,1,") != std::string::npos);
}
