#include <doctest.h>

#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "nakamoto/model.hpp"

using nakamoto::cli::run;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("compute emits the closed-form report as JSON") {
  const auto r = invoke({"compute", "--q", "0.1", "--z", "2", "--A", "3", "--v", "1"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  nakamoto::model::AttackParams p;
  p.q = 0.1;
  p.z = 2;
  p.A = 3;
  p.v = 1;
  const auto want = nakamoto::model::evaluate(p);
  CHECK(j["p_success"].get<double>() == want.p_success);
  CHECK(j["e_revenue_b"].get<double>() == want.e_revenue_b);
  CHECK(j["e_duration_tau0"].get<double>() == want.e_duration_tau0);
  CHECK(j["gamma_attack"].get<double>() == want.gamma_attack);
  CHECK(j["gamma_honest"].get<double>() == 0.1);
  CHECK(j["profitable"].get<bool>() == false);
  CHECK(j["e_revenue_coins"].get<double>() == doctest::Approx(want.e_revenue_b * 12.5));
  CHECK_FALSE(j.contains("asymptotics"));
  CHECK_FALSE(j.contains("e_revenue_fiat"));
}

TEST_CASE("compute options") {
  const auto a = invoke({"compute", "--q", "0.1", "--asymptotics", "--price", "20000"});
  REQUIRE(a.code == 0);
  const auto j = json::parse(a.out);
  CHECK(j["asymptotics"].contains("gamma_small_q"));
  CHECK(j["e_revenue_fiat"].get<double>() ==
        doctest::Approx(j["e_revenue_coins"].get<double>() * 20000.0));
  const auto t = invoke({"compute", "--format", "text"});
  CHECK(t.code == 0);
  CHECK(t.out.find("p_success") != std::string::npos);
}

TEST_CASE("profitable boundary near v0 = 50") {
  // Break-even at A = 1 is v* = 49.25; A = 50 would need v > 73.
  const auto above = invoke({"compute", "--q", "0.0099999", "--z", "1", "--A", "1", "--v", "50"});
  REQUIRE(above.code == 0);
  CHECK(json::parse(above.out)["profitable"].get<bool>());
  const auto below = invoke({"compute", "--q", "0.0099999", "--z", "1", "--A", "1", "--v", "49"});
  CHECK_FALSE(json::parse(below.out)["profitable"].get<bool>());
}

TEST_CASE("exit codes") {
  const auto domain = invoke({"compute", "--q", "0.6"});
  CHECK(domain.code == 3);
  CHECK(domain.err.find("q must lie in (0, 1/2)") != std::string::npos);
  CHECK(invoke({"compute", "--z", "3", "--A", "2"}).code == 3);
  CHECK(invoke({"compute", "--q", "abc"}).code == 2);
  CHECK(invoke({"compute", "--bogus", "1"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"sweep", "--range", "0.3:0.1:0.1"}).code == 2);
  CHECK(invoke({"sweep", "--range", "0.1:0.3:0"}).code == 2);
  CHECK(invoke({"sweep", "--figure", "4"}).code == 2);
  CHECK(invoke({"sweep", "--range", "0.1,0.7"}).code == 3);
  CHECK(invoke({"decide", "optimal-A", "--q", "0.49", "--z", "1", "--v", "0", "--A-max", "1"}).code == 4);
  CHECK(invoke({"simulate", "--q", "0.1", "--cycles", "0"}).code == 3);
}

TEST_CASE("simulate output is deterministic") {
  const std::vector<std::string> args{"simulate", "--q",      "0.1",     "--z",    "2", "--A",
                                      "3",        "--v",      "1",       "--cycles", "20000",
                                      "--seed",   "7"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(invoke(threaded).out == a.out);
  const auto j = json::parse(a.out);
  for (const char* key : {"p_success", "revenue_b", "duration_tau0"}) {
    CHECK(std::abs(j[key]["z_score"].get<double>()) < 4.0);
  }
}

TEST_CASE("simulate seed falls back to the environment") {
  const std::vector<std::string> base{"simulate", "--cycles", "500"};
  auto explicit_seed = base;
  explicit_seed.insert(explicit_seed.end(), {"--seed", "12345"});
  ::setenv("NAKAMOTO_PROFIT_SEED", "12345", 1);
  const auto env = invoke(base);
  ::unsetenv("NAKAMOTO_PROFIT_SEED");
  CHECK(env.code == 0);
  CHECK(env.out == invoke(explicit_seed).out);
  CHECK(env.out != invoke(base).out);
}

TEST_CASE("simulate with one cycle flags the missing standard error") {
  const auto r = invoke({"simulate", "--cycles", "1"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["cycles"].get<int>() == 1);
  CHECK(j["std_error_available"].get<bool>() == false);
  CHECK(j["p_success"]["std_error"].is_null());
}

TEST_CASE("figure 1: P increases with A row by row") {
  const auto r = invoke({"sweep", "--figure", "1"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 50);
  CHECK(rows[0] == std::vector<std::string>{"q", "P_A3", "P_A5", "P_A10", "P_inf"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double prev = 0.0;
    for (std::size_t c = 1; c < 5; ++c) {
      const double v = std::stod(rows[i][c]);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("figure 2 and 3") {
  const auto f2 = parse_csv(invoke({"sweep", "--figure", "2"}).out);
  REQUIRE(f2.size() == 50);
  CHECK(f2[0][0] == "q");
  const auto f3 = parse_csv(invoke({"sweep", "--figure", "3"}).out);
  REQUIRE(f3.size() == 50);
  REQUIRE(f3[0] == std::vector<std::string>{"q", "Gamma_A3", "Gamma_A5", "Gamma_A10", "Gamma_H"});
  for (std::size_t i = 1; i < f3.size(); ++i) {
    CHECK(std::stod(f3[i][3]) < std::stod(f3[i][4]));
  }
}

TEST_CASE("sweep rows recompute to identical compute output") {
  const auto r = invoke({"sweep", "--variable", "q", "--range", "0.05:0.45:0.1", "--z", "3",
                         "--A", "5", "--v", "2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows[0] == std::vector<std::string>{"q", "P", "E_R_over_b", "E_T_over_tau0", "Gamma", "Gamma_H"});
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto c = invoke({"compute", "--q", rows[i][0], "--z", "3", "--A", "5", "--v", "2",
                           "--format", "text"});
    REQUIRE(c.code == 0);
    CHECK(c.out.find(rows[i][1]) != std::string::npos);
    CHECK(c.out.find(rows[i][4]) != std::string::npos);
  }
}

TEST_CASE("sweep over A: Gamma eventually strictly decreasing") {
  const auto r = invoke({"sweep", "--variable", "A", "--range", "2:200:1", "--q", "0.1", "--z", "2",
                         "--v", "100", "--outputs", "Gamma"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 200);
  CHECK(rows[0] == std::vector<std::string>{"A", "Gamma"});
  for (std::size_t i = 100; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][1]) < std::stod(rows[i - 1][1]));
  }
}

TEST_CASE("decide subcommands") {
  const auto mv = json::parse(invoke({"decide", "min-value", "--q", "0.01", "--z", "1"}).out);
  CHECK(mv["asymptotic"].get<double>() == 50.0);
  CHECK(std::abs(mv["exact"].get<double>() - 50.0) / 50.0 < 0.02);
  const auto mv2 = json::parse(invoke({"decide", "min-value", "--q", "0.01", "--z", "2"}).out);
  CHECK(std::abs(mv2["asymptotic"].get<double>() - 1666.6666666666667) < 0.01);
  const auto mc = json::parse(invoke({"decide", "min-confirmations", "--q", "0.01", "--v", "1"}).out);
  CHECK(mc["min_confirmations"].get<int>() == 1);
  CHECK(mc["found"].get<bool>());
  const auto oa = json::parse(invoke({"decide", "optimal-A", "--q", "0.01", "--z", "1", "--v", "0"}).out);
  CHECK(oa["A0"].get<int>() == 1);
}

TEST_CASE("parse_range") {
  using nakamoto::cli::parse_range;
  CHECK(parse_range("0.01:0.49:0.01").size() == 49);
  CHECK(parse_range("0.01:0.49:0.01").back() == 0.49);
  CHECK(parse_range("1,2,5") == std::vector<double>{1, 2, 5});
  CHECK_THROWS_AS(parse_range(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("a,b"), std::invalid_argument);
}
