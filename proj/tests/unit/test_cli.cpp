#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "swctl/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = swctl::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(SWCTL_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("check exit codes follow the controllability verdict") {
  const auto ex1 = run({"check", data("switching_only.json")});
  CHECK(ex1.code == 0);
  const auto j = nlohmann::json::parse(ex1.out);
  CHECK(j["criterion_a"]["grank_concat"] == 3);
  CHECK(run({"check", data("boost.json")}).code == 0);
  CHECK(run({"check", data("partial.json")}).code == 1);
  const auto empty = run({"check", data("empty.json")});
  CHECK(empty.code == 1);
  CHECK(nlohmann::json::parse(empty.out)["oracle"]["dim"] == 0);
}

TEST_CASE("errors exit with 2 and a message") {
  const auto missing = run({"check", "/nonexistent/system.json"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot read") != std::string::npos);
  CHECK(run({"check", data("switching_only.json"), "--bogus"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"mdg", data("switching_only.json"), "--layers", "30"}).code == 2);
  CHECK(run({"grank", data("switching_only.json"), "--format", "dot"}).code == 2);

  const auto bad = std::filesystem::temp_directory_path() / "swctl_bad_input.json";
  std::ofstream(bad) << R"({"n":2,"subsystems":[{"A":[[1,1],[1,1]],"B":{"cols":1}}]})";
  const auto dup = run({"check", bad.string()});
  CHECK(dup.code == 2);
  CHECK(dup.err.find("duplicate") != std::string::npos);
}

TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("counterexample reports a maximum rank of 2") {
  const auto r = run({"counterexample", data("switching_only.json"), "--samples", "100"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["max_rank"] == 2);
  CHECK(j["samples"] == 100);
  CHECK(j["controllable_dim"] == 3);
}

TEST_CASE("identical invocations give identical bytes") {
  for (const char* cmd : {"check", "bounds", "cactus", "realize", "counterexample", "grank"}) {
    const auto a = run({cmd, data("partial.json"), "--seed", "42"});
    const auto b = run({cmd, data("partial.json"), "--seed", "42"});
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  const auto a = run({"realize", data("switching_only.json"), "--seed", "1"});
  const auto b = run({"realize", data("switching_only.json"), "--seed", "2"});
  CHECK(a.out != b.out);
}

TEST_CASE("other commands and formats") {
  CHECK(run({"grank", data("partial.json"), "--format", "text"}).out == "9\n");
  CHECK(run({"bounds", data("partial.json"), "--format", "text"}).out == "8 8\n");
  const auto mdg = run({"mdg", data("switching_only.json"), "--layers", "2"});
  CHECK(mdg.code == 0);
  CHECK(mdg.out.find("max linking size 3") != std::string::npos);
  CHECK(mdg.out.find("digraph MDG") != std::string::npos);
  const auto mdg_json = nlohmann::json::parse(run({"mdg", data("switching_only.json"), "--format", "json"}).out);
  CHECK(mdg_json["linking_size"] == 3);
  const auto cactus = nlohmann::json::parse(run({"cactus", data("partial.json")}).out);
  CHECK(cactus["size"] == 8);
  CHECK(run({"cactus", data("partial.json"), "--format", "dot"}).out.find("digraph cactus") != std::string::npos);
  const auto real = nlohmann::json::parse(run({"realize", data("switching_only.json")}).out);
  CHECK(real["values"].size() == 3);
  CHECK(run({"check", data("switching_only.json"), "--format", "text"}).out.find("structurally controllable") == 0);
}

TEST_CASE("output file option") {
  const auto path = std::filesystem::temp_directory_path() / "swctl_cli_out.json";
  std::filesystem::remove(path);
  const auto r = run({"grank", data("switching_only.json"), "-o", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(nlohmann::json::parse(in)["grank_concat"] == 3);
}
