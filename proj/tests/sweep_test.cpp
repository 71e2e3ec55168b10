#include <doctest.h>

#include "qdeg/sweep.hpp"

using namespace qdeg;

TEST_CASE("orientation enumeration") {
  CHECK(orientations_of("A2").size() == 2);
  CHECK(orientations_of("A3").size() == 4);
  CHECK(orientations_of("A4").size() == 8);
  CHECK(orientations_of("D4").size() == 8);
  for (auto& [name, q] : orientations_of("D4")) {
    auto t = classify(q);
    REQUIRE(t.has_value());
    CHECK(t->family == 'D');
    CHECK(t->rank == 4);
  }
  for (auto& [name, q] : orientations_of("E6")) {
    auto t = classify(q);
    REQUIRE(t.has_value());
    CHECK(*t == DynkinType{'E', 6});
  }
  CHECK_THROWS_AS(orientations_of("Z9"), Error);
  CHECK_THROWS_AS(orientations_of("D3"), Error);
}

TEST_CASE("dimension vector enumeration") {
  auto ds = dim_vectors_up_to(2, 3);
  CHECK(ds.size() == 9);  // nonzero vectors with total <= 3
  for (const auto& d : ds) {
    CHECK(total(d) >= 1);
    CHECK(total(d) <= 3);
  }
  CHECK(dim_vectors_up_to(1, 2).size() == 2);
}

TEST_CASE("a small sweep certifies everything and reports reproducibly") {
  SweepConfig cfg;
  cfg.families = {"A2", "A3"};
  cfg.max_total_dim = 4;
  SweepResult r1 = run_sweep(cfg);
  CHECK(r1.totals.pairs > 0);
  CHECK(r1.totals.failures.empty());
  CHECK(r1.report.find("seed: 0") != std::string::npos);
  CHECK(r1.report.find("budget-trials: 500") != std::string::npos);
  CHECK(r1.report.find("failures: none") != std::string::npos);
  SweepResult r2 = run_sweep(cfg);
  CHECK(r1.report == r2.report);
}
