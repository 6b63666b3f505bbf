#include "doctest.h"

#include "shv/config.hpp"
#include "shv/report.hpp"
#include "shv/runner.hpp"

using namespace shv;

TEST_CASE("end-to-end: shipped example configuration is fully green") {
  RunConfig cfg = RunConfig::from_json_text(R"({
    "ambient": {"model": "standard-sasakian", "n": 1},
    "embedding": {"name": "plane-y0", "checks": ["section2", "section3"]},
    "sample": {"points": 50, "seed": 20240101},
    "algebraic": {"profiles": ["quasi-umbilical", "cylindrical", "totally-umbilical"],
                   "seeds": 50, "n": [1, 2]}
  })");
  RunReport rep = run_suites(cfg, SuiteSelect::All);
  CHECK(exit_code_for(rep) == 0);
  RunSummary s = rep.summary();
  CHECK(s.fail == 0);
  CHECK(s.pass > 40);
  CHECK(s.paper_deviation > 0);

  // every section-1 and rederived section-2 entry passes
  for (const auto& suite : rep.suites)
    for (const auto& e : suite.entries) {
      if (e.equation.size() >= 2 && e.equation[1] == '.' && e.equation.find("printed") == std::string::npos &&
          e.equation != "2.18") {
        CAPTURE(suite.suite);
        CAPTURE(e.equation);
        CHECK(e.status != CheckStatus::Fail);
      }
    }
}

TEST_CASE("flat-ambient sphere run reports the umbilical classification") {
  RunConfig cfg = RunConfig::from_json_text(R"({
    "ambient": {"model": "euclidean", "n": 1},
    "embedding": {"name": "sphere", "checks": ["section2"]},
    "sample": {"points": 30, "seed": 11}
  })");
  RunReport rep = run_suites(cfg, SuiteSelect::Hypersurface);
  REQUIRE(rep.suites.size() == 1);
  CHECK(rep.suites[0].suite == "hypersurface-fit");
  bool found = false;
  for (const auto& [k, v] : rep.suites[0].extras)
    if (k == "fit-classifications") {
      CHECK(v == "TotallyUmbilical:30");
      found = true;
    }
  CHECK(found);
  CHECK(exit_code_for(rep) == 0);
}

TEST_CASE("algebraic deviation notes enumerate flagged instances") {
  RunConfig cfg = RunConfig::from_json_text(R"({
    "algebraic": {"profiles": ["quasi-umbilical"], "seeds": 25, "n": [2]},
    "sample": {"seed": 500}
  })");
  RunReport rep = run_suites(cfg, SuiteSelect::Algebraic);
  REQUIRE(rep.suites.size() == 1);
  bool saw = false;
  for (const auto& e : rep.suites[0].entries)
    if (e.equation == "4.3-printed") {
      saw = true;
      CHECK(e.status == CheckStatus::PaperDeviation);
      CHECK(e.note.find("flagged on 25/25 instances") != std::string::npos);
      CHECK(e.note.find("first seed 500") != std::string::npos);
    }
  CHECK(saw);
}
