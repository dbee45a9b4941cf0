#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "thinord/cli.hpp"
#include "thinord/io.hpp"
#include "thinord/pmf.hpp"

using namespace thinord;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("dist subcommand emits a parsable pmf") {
  const CliResult r = invoke({"dist", "--dist", "poisson:1"});
  REQUIRE(r.code == 0);
  const Pmf p = pmf_from_json(nlohmann::json::parse(r.out));
  CHECK(p.mean() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dist json output round trips bit exact") {
  const CliResult r = invoke({"dist", "--dist", "hypergeom:10,3,4"});
  REQUIRE(r.code == 0);
  const Pmf direct = hypergeometric_pmf(10, 3, 4);
  const Pmf back = pmf_from_json(nlohmann::json::parse(r.out));
  REQUIRE(back.size() == direct.size());
  for (long long i = 0; i < back.size(); ++i) {
    CHECK(back.weights()[static_cast<size_t>(i)] ==
          direct.weights()[static_cast<size_t>(i)]);
  }
}

TEST_CASE("dist csv output") {
  const CliResult r = invoke({"--format", "csv", "dist", "--dist", "binomial:2,0.5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("index,probability\n", 0) == 0);
  CHECK(r.out.find("0.25") != std::string::npos);
}

TEST_CASE("global options are accepted after the subcommand") {
  const CliResult r = invoke({"dist", "--dist", "binomial:2,0.5", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("index,probability\n", 0) == 0);
}

TEST_CASE("deterministic output for identical invocations") {
  const CliResult a = invoke({"dist", "--dist", "occupancy:3,3,1"});
  const CliResult b = invoke({"dist", "--dist", "occupancy:3,3,1"});
  CHECK(a.out == b.out);
}

TEST_CASE("transform subcommand applies operators") {
  const CliResult r =
      invoke({"transform", "--dist", "binomial:6,0.4", "--op", "thin", "--alpha", "0.5"});
  REQUIRE(r.code == 0);
  const Pmf p = pmf_from_json(nlohmann::json::parse(r.out));
  CHECK(p.mean() == doctest::Approx(1.2).epsilon(1e-10));
}

TEST_CASE("order check exits by verdict") {
  const CliResult ok = invoke(
      {"order-check", "--dist", "hypergeom:4,2,2", "--relation", "cx", "--target", "poisson"});
  CHECK(ok.code == 0);
  const nlohmann::json j = nlohmann::json::parse(ok.out);
  CHECK(j.at("holds") == true);
  const CliResult bad = invoke(
      {"order-check", "--dist", "negbin:1,0.4", "--relation", "cx", "--target", "poisson"});
  CHECK(bad.code == 1);
}

TEST_CASE("order check defaults to the size bias comparison") {
  const CliResult r = invoke({"order-check", "--dist", "hypergeom:4,2,2"});
  CHECK(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("holds") == true);
}

TEST_CASE("metric subcommand named and indexed") {
  const CliResult tv = invoke(
      {"metric", "--dist", "binomial:5,0.3", "--target", "poisson", "--name", "tv"});
  REQUIRE(tv.code == 0);
  const double tv_val = nlohmann::json::parse(tv.out).at("value").get<double>();
  CHECK(tv_val > 0.0);
  CHECK(tv_val < 0.1);
  const CliResult idx = invoke(
      {"metric", "--dist", "binomial:5,0.3", "--target", "poisson", "--n", "1", "--p", "1"});
  REQUIRE(idx.code == 0);
  const double d11 = nlohmann::json::parse(idx.out).at("value").get<double>();
  CHECK(d11 == doctest::Approx(2 * tv_val).epsilon(1e-12));
}

TEST_CASE("bound subcommand quiet alias") {
  const CliResult r =
      invoke({"bound", "--name", "hyp1", "--dist", "hypergeom:4,2,2", "--k", "0"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("bound").get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(j.at("holds") == true);
  const CliResult named = invoke(
      {"bound", "--name", "variance-gap", "--dist", "hypergeom:4,2,2", "--k", "0"});
  CHECK(named.out == r.out);
}

TEST_CASE("bound subcommand array forms") {
  const CliResult r =
      invoke({"bound", "--name", "poisson-approx", "--dist", "hypergeom:4,2,2", "--s", "1"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 5);
  const CliResult nb = invoke({"bound", "--name", "negbin", "--beta", "1", "--q", "0.1"});
  REQUIRE(nb.code == 0);
  CHECK(nlohmann::json::parse(nb.out).size() == 2);
}

TEST_CASE("verify subcommand residuals") {
  const CliResult pois = invoke({"verify", "--lemma", "1", "--dist", "poisson:1", "--alpha", "0.5"});
  REQUIRE(pois.code == 0);
  const nlohmann::json j = nlohmann::json::parse(pois.out);
  CHECK(j.at("residual").get<double>() <= 1e-10);
  CHECK(j.at("pass") == true);
  const CliResult bin =
      invoke({"verify", "--lemma", "bin", "--dist", "binomial:6,0.3", "--n", "6", "--r", "0.3"});
  CHECK(bin.code == 0);
}

TEST_CASE("entropy flow csv by default") {
  const CliResult r = invoke({"entropy-flow", "--dist", "hypergeom:4,2,2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("grid_value,entropy\n", 0) == 0);
  const CliResult j = invoke({"--format", "json", "entropy-flow", "--dist", "hypergeom:4,2,2"});
  REQUIRE(j.code == 0);
  const nlohmann::json parsed = nlohmann::json::parse(j.out);
  CHECK(parsed.at("monotone_decreasing") == true);
  CHECK(parsed.at("concave") == true);
}

TEST_CASE("report suite rows and csv") {
  const CliResult r = invoke({"report", "--suite", "negbin-grid"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 18);
  for (const auto& row : j) {
    CHECK(row.contains("parameters"));
    CHECK(row.contains("slack"));
    CHECK(row.at("holds") == true);
  }
  const CliResult csv = invoke({"--format", "csv", "report", "--suite", "hypergeom-gap"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("parameters,source,bound,exact,slack,holds\n", 0) == 0);
}

TEST_CASE("file distributions load from disk") {
  const std::string path = "cli_test_pmf.json";
  {
    std::ofstream f(path);
    f << pmf_to_json(binomial_pmf(3, 0.5)).dump();
  }
  const CliResult r = invoke({"dist", "--dist", "file:" + path});
  REQUIRE(r.code == 0);
  const Pmf p = pmf_from_json(nlohmann::json::parse(r.out));
  CHECK(p.mean() == doctest::Approx(1.5));
  std::remove(path.c_str());
}

TEST_CASE("invalid input yields exit code two") {
  CHECK(invoke({"dist", "--dist", "mystery:1"}).code == 2);
  CHECK(invoke({"dist", "--dist", "poisson:abc"}).code == 2);
  CHECK(invoke({"nonsense"}).code == 2);
  CHECK(invoke({"bound", "--name", "no-such-bound"}).code == 2);
  CHECK(invoke({"metric", "--dist", "poisson:1", "--target", "poisson", "--name", "no"}).code == 2);
  CHECK(invoke({"--format", "csv", "metric", "--dist", "poisson:1", "--target", "poisson",
                "--name", "tv"})
            .code == 2);
}

TEST_CASE("table distributions route through the indicator sum") {
  const std::string path = "cli_test_table.json";
  {
    std::ofstream f(path);
    nlohmann::json j;
    j["n"] = 2;
    j["probs"] = {{"0", 0.25}, {"1", 0.25}, {"2", 0.25}, {"3", 0.25}};
    f << j.dump();
  }
  const CliResult r = invoke({"dist", "--dist", "table:" + path});
  REQUIRE(r.code == 0);
  const Pmf p = pmf_from_json(nlohmann::json::parse(r.out));
  CHECK(p.prob(1) == doctest::Approx(0.5));
  const CliResult oc = invoke({"order-check", "--relation", "nr", "--table", path});
  CHECK(oc.code == 0);
  std::remove(path.c_str());
}
