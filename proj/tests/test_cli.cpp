#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "relid/cli.hpp"

namespace {
  struct Run {
    int         code;
    std::string out;
    std::string err;
  };

  Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = relid::cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string corpus(char const* name) {
    return std::string(RELID_CORPUS_DIR) + "/" + name + ".json";
  }

  nlohmann::ordered_json structured(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("structured");
    auto r = run(args);
    REQUIRE(r.err.empty());
    return nlohmann::ordered_json::parse(r.out);
  }
}  // namespace

TEST_CASE("check holds") {
  auto r = run({"check", "--algebra", corpus("l2"), "--identity", "(1.1)"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out
        == "command: check\n"
           "algebra: l2\n"
           "size: 2\n"
           "identity: (1.1)\n"
           "statement: Theta:TOL, S:REFL |- Theta & (S ; S) <= star(Theta & S)\n"
           "mode: exhaustive\n"
           "verdict: holds\n"
           "checked: 8\n");
}

TEST_CASE("check prints a full counterexample") {
  std::vector<std::string> args{"check",   "--algebra", corpus("z2xz2"),
                                "--identity", "var-dist", "--sort",
                                "Theta=CON", "--sort",  "S=CON",
                                "--sort",  "T=CON"};
  auto r = run(args);
  CHECK(r.code == 1);
  auto j = structured(args);
  CHECK(j["verdict"] == "fails");
  CHECK(j["counterexample"]["assignment"]["Theta"] == "delta+0-3+1-2+2-1+3-0");
  CHECK(j["counterexample"]["assignment"]["S"] == "delta+0-2+1-3+2-0+3-1");
  CHECK(j["counterexample"]["assignment"]["T"] == "delta+0-1+1-0+2-3+3-2");
  CHECK(j["counterexample"]["pair"] == "0-3");
  CHECK(j["counterexample"]["rhs"] == "delta");

  args.push_back("--assert-holds");
  CHECK(run(args).code == 4);
}

TEST_CASE("inline identities and sampling") {
  auto r = run({"check", "--algebra", "sl2", "--identity-text",
                "S:REFL |- S <= conv(S)", "--mode", "sample", "--seed", "3",
                "--samples", "50"});
  CHECK(r.code == 1);
  CHECK(r.out.find("verdict: fails") != std::string::npos);
  CHECK(r.out.find("seed: 3") != std::string::npos);

  auto ok = run({"check", "--algebra", "m3", "--identity", "D5", "--m", "inf",
                 "--mode", "sample", "--samples", "300", "--jobs", "2"});
  CHECK(ok.code == 0);
}

TEST_CASE("input errors exit with 2 and print nothing") {
  std::vector<std::vector<std::string>> cases{
      {"check", "--algebra", "l2", "--identity", "(9.9)"},
      {"check", "--algebra", "l2", "--identity-text", "S:REFL |- S <= T"},
      {"check", "--algebra", "l2"},
      {"check", "--algebra", "l2", "--identity", "1.1", "--identity-text", "S:REFL |- S <= S"},
      {"check", "--algebra", "l2", "--identity", "1.1", "--sort", "X=CON"},
      {"check", "--algebra", "l2", "--identity", "1.1", "--sort", "Theta=EQ"},
      {"check", "--algebra", "l2", "--identity", "1.1", "--mode", "fast"},
      {"check", "--algebra", "l2", "--identity", "a1", "--k", "1"},
      {"check", "--algebra", "no-such-algebra", "--identity", "1.1"},
      {"enumerate", "--algebra", "l2", "--kind", "weird"},
      {"find-terms", "--algebra", "l2", "--family", "jonsson"},
      {"find-terms", "--algebra", "l2", "--max-k", "0"},
      {"witness", "--algebra", "l2", "--theorem", "turt", "--chain", "0,1"},
      {"frobnicate"},
      {}};
  for (auto const& args : cases) {
    auto r = run(args);
    CAPTURE(r.err);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("malformed algebra files") {
  auto path = (std::filesystem::temp_directory_path() / "relid_bad_algebra.json").string();
  {
    std::ofstream f(path);
    f << R"({"name":"x","size":2,"operations":[{"symbol":"f","arity":2,"table":[0,0,0]}]})";
  }
  auto r = run({"enumerate", "--algebra", path});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("table length mismatch") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("enumerate") {
  auto sl2 = structured({"enumerate", "--algebra", corpus("sl2")});
  CHECK(sl2["count"] == 4);
  CHECK(sl2["members"]
        == nlohmann::ordered_json::array({"delta", "delta+1-0", "delta+0-1", "nabla"}));
  CHECK(structured({"enumerate", "--algebra", "z2"})["count"] == 2);
  for (auto name : {"sl2", "z2", "l2"}) {
    CHECK(structured({"enumerate", "--algebra", name, "--kind", "con"})["count"] == 2);
  }
}

TEST_CASE("find-terms") {
  auto z2 = run({"find-terms", "--algebra", corpus("z2")});
  CHECK(z2.code == 0);
  CHECK(z2.out.find("k: 1") != std::string::npos);
  CHECK(z2.out.find("j1: z") != std::string::npos);

  auto sl2 = run({"find-terms", "--algebra", corpus("sl2")});
  CHECK(sl2.code == 1);
  CHECK(sl2.out.find("definitive: true") != std::string::npos);

  auto one = structured({"find-terms", "--algebra", "trivial", "--family", "day"});
  CHECK(one["k"] == 0);
  CHECK(one["terms"]["d0"] == "x");

  auto l2 = structured({"find-terms", "--algebra", "l2", "--family", "day"});
  CHECK(l2["k"] == 3);

  auto capped = run({"find-terms", "--algebra", "l2", "--cap", "5"});
  CHECK(capped.code == 3);
  CHECK(capped.out.empty());
  CHECK(capped.err.find("cap") != std::string::npos);
}

TEST_CASE("witness") {
  auto turt = structured({"witness", "--algebra", "l2", "--theorem", "turt",
                          "--rel", "R=nabla", "--rel", "V=nabla", "--rel",
                          "W=nabla", "--rel", "S1=nabla", "--rel", "S2=nabla",
                          "--a", "0", "--b", "1", "--chain", "0,1,1"});
  CHECK(turt["valid"] == true);
  CHECK(turt["blocks"] == 1);
  CHECK(turt["c"] == 1);

  auto day = structured({"witness", "--algebra", "l2", "--theorem", "day",
                         "--rel", "Theta=nabla", "--rel", "S=delta+0-1", "--a",
                         "0", "--b", "1", "--c", "0"});
  CHECK(day["valid"] == true);
  CHECK(day["steps"].size() == 2);

  auto bad = run({"witness", "--algebra", "l2", "--theorem", "turt", "--rel",
                  "R=nabla", "--rel", "V=delta", "--rel", "W=nabla", "--rel",
                  "S1=nabla", "--a", "0", "--b", "1", "--chain", "0,1"});
  CHECK(bad.code == 1);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("(a,b) is not in V") != std::string::npos);

  auto k1 = run({"witness", "--algebra", "z2", "--theorem", "turtt", "--rel",
                 "R=nabla", "--rel", "V=nabla", "--rel", "W=nabla", "--rel",
                 "S1=nabla", "--chain", "0,1"});
  CHECK(k1.code == 1);
}

TEST_CASE("catalog") {
  auto j = structured({"catalog", "--k", "3", "--h", "2"});
  CHECK(j["identities"]["(a1)"]
        == "Theta:TOL, S:REFL |- Theta & (S ;^4 S) <= pow(Theta & S, 19)");
  CHECK(j["identities"].size() == 27);
}

TEST_CASE("reports are deterministic") {
  std::vector<std::vector<std::string>> commands{
      {"check", "--algebra", "sl3", "--identity", "1.3", "--jobs", "3"},
      {"check", "--algebra", "m3", "--identity", "B2", "--mode", "sample",
       "--samples", "100", "--seed", "17"},
      {"find-terms", "--algebra", "m3"},
      {"enumerate", "--algebra", "sl3", "--kind", "tol"}};
  for (auto const& args : commands) {
    auto first  = run(args);
    auto second = run(args);
    CHECK(first.out == second.out);
    CHECK(first.code == second.code);
  }
  auto timed = run({"catalog", "--timings"});
  CHECK(timed.out.find("elapsed_ms") != std::string::npos);
  CHECK(run({"catalog"}).out.find("elapsed_ms") == std::string::npos);
}
