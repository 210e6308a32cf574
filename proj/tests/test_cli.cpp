#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "volswap/cli.hpp"

using namespace volswap::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "volswap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json without_duration(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j["manifest"].erase("duration_seconds");
  return j;
}

std::string temp_path(const char* name) { return std::string("/tmp/volswap_test_") + name; }

const std::vector<std::string> kStandard = {"--alpha", "0.4", "--sigma", "0.25", "--nu",
                                            "0.03",    "--tenor", "1", "--t", "0.5"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("price at maturity and at the money") {
  const Result r = invoke({"price", "--alpha", "0.5", "--sigma", "0.2", "--nu", "0.04", "--t0", "0",
                           "--tenor", "1", "--t", "1.0", "--strike", "0.2", "--rate", "0"});
  REQUIRE(r.code == exit_ok);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kappa"].get<double>() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(std::abs(j["fair_value"].get<double>()) < 1e-12);
  CHECK(j["regime"] == "convergent_like");
  CHECK(j["summation"] == "direct");
  CHECK(j["manifest"]["command"] == "price");
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({"price", "--alpha", "0.5", "--sigma", "0.2", "--tenor", "1", "--t", "0.5"}).code ==
        exit_usage);
  CHECK(invoke({"price", "--alpha", "-1", "--sigma", "0.2", "--nu", "0.04", "--tenor", "1", "--t", "0.5"})
            .code == exit_usage);
  CHECK(invoke({"oracle", "mc", "--alpha", "0.4", "--sigma", "0.2", "--nu", "0.04", "--tenor", "1", "--t",
                "0.5"})
            .code == exit_usage);
  CHECK(invoke({"bogus"}).code == exit_usage);
  CHECK(invoke({}).code == exit_usage);
  CHECK(invoke({"compare", "--alpha", "0.3", "--tau", "2", "--zeta", "1"}).code == exit_usage);
}

TEST_CASE("diverging raw series exits 3 but still reports a value") {
  const Result r = invoke({"price", "--alpha", "2", "--sigma", "0.2", "--nu", "0.04", "--tenor", "1", "--t",
                           "0.5"});
  CHECK(r.code == exit_diverging);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["regime"] == "diverging");
  CHECK(j["summation"] == "gaussian_transform");
  CHECK(j["kappa"].get<double>() > 0.0);
}

TEST_CASE("annualization") {
  const auto paper = nlohmann::json::parse(
      invoke({"price", "--alpha", "0.3", "--sigma", "0.2", "--nu", "0.04", "--tenor", "4", "--t", "4"}).out);
  const auto market = nlohmann::json::parse(invoke({"price", "--alpha", "0.3", "--sigma", "0.2", "--nu",
                                                    "0.04", "--tenor", "4", "--t", "4", "--annualization",
                                                    "market"})
                                                .out);
  CHECK(paper["kappa"].get<double>() == doctest::Approx(0.05));
  CHECK(market["kappa"].get<double>() == doctest::Approx(0.1));
}

TEST_CASE("mc oracle is reproducible across worker counts") {
  const auto base = with({"oracle", "mc", "--seed", "5", "--paths", "3000", "--steps", "40"}, kStandard);
  const Result a = invoke(with(base, {"--threads", "1"}));
  const Result b = invoke(with(base, {"--threads", "4"}));
  const Result c = invoke(with(base, {"--threads", "16"}));
  REQUIRE(a.code == exit_ok);
  CHECK(without_duration(a.out) == without_duration(b.out));
  CHECK(without_duration(a.out) == without_duration(c.out));
  CHECK(nlohmann::json::parse(a.out)["manifest"]["seed"] == 5);
}

TEST_CASE("mc oracle deterministic limit") {
  const Result r = invoke({"oracle", "mc", "--alpha", "1e-12", "--sigma", "0.25", "--nu", "0.03", "--tenor",
                           "1", "--t", "0.5", "--seed", "1", "--paths", "200", "--steps", "20"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["kappa"].get<double>() - std::sqrt(0.03 + 0.0625 * 0.5)) < 1e-10);
  CHECK(j["std_error"].get<double>() < 1e-12);
}

TEST_CASE("pde oracle refinement") {
  const Result r =
      invoke(with({"oracle", "pde", "--ny", "100", "--nt", "100", "--refine", "2"}, kStandard));
  REQUIRE(r.code == exit_ok);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["grid_report"]["levels"].size() == 3);
  const double ratio = j["grid_report"]["ratios"][0].get<double>();
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("compare excludes diverging rows") {
  const Result r = invoke({"compare", "--alpha", "0.2,2", "--tau", "0.5", "--zeta", "1", "--paths", "2000",
                           "--steps", "50", "--seed", "3", "--no-pde"});
  CHECK(r.code == exit_ok);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].find(",convergent_like,") != std::string::npos);
  CHECK(rows[1].substr(rows[1].size() - 5) == ",true");
  CHECK(rows[2].find(",diverging,") != std::string::npos);
  CHECK(rows[2].substr(rows[2].size() - 6) == ",false");
}

TEST_CASE("compare at maturity") {
  const Result r = invoke({"compare", "--alpha", "0.3,0.8", "--tau", "0", "--zeta", "0.1,5", "--paths",
                           "100", "--steps", "10", "--no-pde"});
  CHECK(r.code == exit_ok);
  CHECK(r.out.find(",convergent_like,direct,0.2,0,,") != std::string::npos);
}

TEST_CASE("verify") {
  Result r = invoke({"verify", "--check", "terminal"});
  REQUIRE(r.code == exit_ok);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["reports"].size() == 41);
  CHECK(j["reports"][5]["exact"] == "0/1");
  r = invoke({"verify", "--check", "functional", "--n-terms", "10"});
  CHECK(r.code == exit_ok);
  CHECK(invoke({"verify", "--check", "j0"}).code == exit_ok);
  CHECK(invoke({"verify", "--check", "nothing"}).code == exit_usage);
}

TEST_CASE("config file with explicit overrides") {
  const std::string cfg = temp_path("cfg.txt");
  {
    std::ofstream f(cfg);
    f << "# state\nalpha = 0.4\nsigma=0.25\nnu=0.03\ntenor=1\nt=0.5\nstrike=0.3\n";
  }
  const auto from_file = nlohmann::json::parse(invoke({"price", "--config", cfg}).out);
  const auto overridden = nlohmann::json::parse(invoke({"--config", cfg, "price", "--strike", "0.2"}).out);
  CHECK(from_file["manifest"]["params"]["strike"] == 0.3);
  CHECK(overridden["manifest"]["params"]["strike"] == 0.2);
  CHECK(from_file["kappa"] == overridden["kappa"]);
  CHECK(invoke({"price", "--config", temp_path("missing.txt")}).code == exit_usage);
  std::remove(cfg.c_str());
}

TEST_CASE("expand_config") {
  const std::string cfg = temp_path("cfg2.txt");
  {
    std::ofstream f(cfg);
    f << "seed=4\n--paths=10\n";
  }
  const auto out = expand_config({"oracle", "mc", "--config", cfg, "--seed", "9"});
  CHECK(out == std::vector<std::string>{"oracle", "mc", "--paths=10", "--seed", "9"});
  std::remove(cfg.c_str());
}

TEST_CASE("output file") {
  const std::string path = temp_path("out.json");
  const Result r = invoke(with({"price", "--output", path}, kStandard));
  CHECK(r.out.empty());
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  CHECK(j.contains("kappa"));
  std::remove(path.c_str());
}

TEST_CASE("number format round-trips") {
  CHECK(format_number(0.2) == "0.2");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
