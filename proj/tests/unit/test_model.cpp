#include <random>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "doctest.h"
#include "swctl/model.hpp"

using namespace swctl;

TEST_CASE("parse a system whose second input matrix is empty") {
  const auto sys = parse_system(R"({"n":3,"subsystems":[
    {"A":[[2,1]],"B":{"cols":1,"nonzeros":[[1,1]]}},
    {"A":[[3,1]],"B":{"cols":1,"nonzeros":[]}}]})");
  CHECK(sys.n() == 3);
  CHECK(sys.num_subsystems() == 2);
  CHECK(sys == fixture::switching_only());
  CHECK(sys.subsystem(0).a.contains(1, 0));
}

TEST_CASE("parse allows zero input columns and a missing nonzero list") {
  const auto sys = parse_system(R"({"n":2,"subsystems":[{"A":[],"B":{"cols":0}}]})");
  CHECK(sys.inputs(0) == 0);
  CHECK(sys.total_inputs() == 0);
}

TEST_CASE("parse boost converter") {
  const auto sys = parse_system(R"({"n":2,"subsystems":[
    {"A":[[1,1],[1,2],[2,1]],"B":{"cols":1,"nonzeros":[[2,1]]}},
    {"A":[[1,1]],"B":{"cols":1,"nonzeros":[[2,1]]}}]})");
  CHECK(sys == fixture::boost());
  CHECK(sys.inputs(0) == 1);
  CHECK(sys.inputs(1) == 1);
}

TEST_CASE("parse errors name the offending position") {
  auto message = [](const char* text) {
    try {
      parse_system(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  // Column 3 in a 2-state system: A_1 is effectively 2x3.
  const auto wide = message(R"({"n":2,"subsystems":[{"A":[[1,3]],"B":{"cols":1}}]})");
  CHECK(wide.find("A_1") != std::string::npos);
  CHECK(wide.find("outside") != std::string::npos);
  const auto dup = message(R"({"n":2,"subsystems":[{"A":[[1,1],[1,1]],"B":{"cols":1}}]})");
  CHECK(dup.find("duplicate") != std::string::npos);
  CHECK(message(R"({"n":2,"subsystems":[]})") != "no error");
  CHECK(message(R"({"n":0,"subsystems":[{"A":[],"B":{"cols":0}}]})") != "no error");
  CHECK(message("not json") != "no error");
  CHECK(message(R"({"n":2,"subsystems":[{"A":[],"B":{"cols":1,"nonzeros":[[3,1]]}}]})").find("B_1") !=
        std::string::npos);
  CHECK(message(R"({"n":2,"subsystems":[{"A":[[1]],"B":{"cols":1}}]})") != "no error");
}

TEST_CASE("structured matrix rejects bad entries directly") {
  CHECK_THROWS_AS(StructuredMatrix(2, 2, {{2, 0}}), InputError);
  CHECK_THROWS_AS(StructuredMatrix(2, 2, {{0, 0}, {0, 0}}), InputError);
  CHECK_THROWS_AS(SwitchedStructure(2, {{StructuredMatrix(2, 3, {}), StructuredMatrix(2, 0, {})}}), InputError);
}

TEST_CASE("serialize round trip on random systems") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const auto sys = oracle::random_system(rng);
    CHECK(parse_system(serialize_system(sys)) == sys);
  }
}

TEST_CASE("realizations are deterministic and respect the pattern") {
  const auto sys = fixture::switching_only();
  const auto r1 = sample_realization(sys, FieldTag::finite(), 11);
  const auto r2 = sample_realization(sys, FieldTag::finite(), 11);
  CHECK(r1.values == r2.values);
  CHECK(r1.values.size() == 3);
  for (const auto& [key, value] : r1.values) {
    const auto v = std::get<std::uint64_t>(value);
    CHECK(v >= 1);
    CHECK(v < kMersenne61);
  }
  const auto real = sample_realization(sys, FieldTag::real(), 11);
  for (const auto& [key, value] : real.values) {
    const double v = std::get<double>(value);
    CHECK(v != 0.0);
    CHECK(v >= -1.0);
    CHECK(v < 1.0);
  }
  CHECK(sample_realization(fixture::empty(), FieldTag::finite(), 3).values.empty());
  CHECK_THROWS_AS(sample_realization(sys, FieldTag::finite(65537), 1), std::invalid_argument);
}

TEST_CASE("realization keys match the nonzero positions exactly") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 50; ++k) {
    const auto sys = oracle::random_system(rng);
    const auto r = sample_realization(sys, FieldTag::finite(), k);
    std::set<ParamKey> expected;
    for (int i = 0; i < sys.num_subsystems(); ++i) {
      for (const auto& e : sys.subsystem(i).a.nonzeros()) expected.insert({i, MatrixTag::kA, e.row, e.col});
      for (const auto& e : sys.subsystem(i).b.nonzeros()) expected.insert({i, MatrixTag::kB, e.row, e.col});
    }
    std::set<ParamKey> got;
    for (const auto& [key, value] : r.values) got.insert(key);
    CHECK(got == expected);
  }
}

TEST_CASE("distinct seeds give distinct realizations") {
  const auto sys = fixture::switching_only();
  int differing = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    if (sample_realization(sys, FieldTag::finite(), 2 * s).values !=
        sample_realization(sys, FieldTag::finite(), 2 * s + 1).values) {
      ++differing;
    }
  }
  CHECK(differing == 100);
}
