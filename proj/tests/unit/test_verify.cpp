#include <doctest.h>

#include "spinent/error.hpp"
#include "spinent/verify.hpp"

using namespace spinent;

TEST_CASE("every suite passes with its default trial count") {
  for (const auto& r : run_verification("all", 20031)) {
    CAPTURE(r.to_json());
    CHECK(r.passed());
    for (const auto& c : r.checks) CHECK(c.trials >= 1000);
  }
}

TEST_CASE("suites are reproducible for a seed") {
  CHECK(run_suite("ising", 5, 100).to_json() == run_suite("ising", 5, 100).to_json());
}

TEST_CASE("unknown suite") {
  CHECK_THROWS_AS(run_suite("nonsense", 1), InvalidArgument);
}

TEST_CASE("JSON summary fields") {
  const std::string j = run_suite("mixture", 3, 10).to_json();
  CHECK(j.find("\"suite\":\"mixture\"") != std::string::npos);
  CHECK(j.find("\"worst_residual\"") != std::string::npos);
  CHECK(j.find("\"trials\":10") != std::string::npos);
}
