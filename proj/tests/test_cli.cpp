#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "treeharm/jsonio.hpp"

using namespace treeharm;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed CLI with stderr folded away; stdout is the contract.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(TREEHARM_CLI_PATH) + " " + args +
                    " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), n);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

ordered_json parse_json(const RunResult& r) {
  return ordered_json::parse(r.out);
}

}  // namespace

//=============================== spectrum ===============================//

TEST_CASE("cli: full spectrum of the homogeneous preset") {
  RunResult r = run_cli("spectrum --preset homogeneous3");
  REQUIRE(r.exit_code == 0);
  ordered_json j = parse_json(r);
  CHECK(j.at("kind") == "spectrum");
  CHECK(j.at("d0") == 3);
  CHECK(j.at("kappa") == 1);
  CHECK(j.at("label") == "spectrum");
  REQUIRE(j.at("components").size() == 1);
  CHECK(j.at("components")[0][0].get<double>() == -1.0);
  CHECK(j.at("components")[0][1].get<double>() == 1.0);
}

TEST_CASE("cli: json output is already in canonical form") {
  RunResult r = run_cli("spectrum --preset semihomog45 --p 4");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == canonical_dump(parse_json(r)) + "\n");
}

TEST_CASE("cli: critical exponent spectrum carries the frozen endpoints") {
  RunResult r = run_cli("spectrum --preset homogeneous3 --p 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("0.942809041582063") != std::string::npos);
  CHECK(parse_json(r).at("p") == 2.0);
}

TEST_CASE("cli: explicit degrees work without a preset") {
  RunResult r = run_cli("spectrum --d0 2 --d1 3 --kappa 2");
  REQUIRE(r.exit_code == 0);
  ordered_json j = parse_json(r);
  CHECK(j.at("components")[0][0].get<double>() == -0.5);
}

TEST_CASE("cli: csv spectrum rows start with the kind column") {
  RunResult r = run_cli("spectrum --preset homogeneous3 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.substr(0, 5) == "kind,");
  CHECK(r.out.find("\nspectrum,3,3,1,") != std::string::npos);
}

TEST_CASE("cli: spectrum without the independence property exits 3") {
  RunResult r =
      run_cli("spectrum --preset homogeneous3 --no-tits-independence");
  CHECK(r.exit_code == 3);
  ordered_json j = parse_json(r);
  CHECK(j.at("label") == "lower_bound");
}

TEST_CASE("cli: degenerate degrees exit 2") {
  CHECK(run_cli("spectrum --d0 2 --d1 2 --kappa 1").exit_code == 2);
  CHECK(run_cli("spectrum --preset homogeneous3 --p 1.5").exit_code == 2);
  CHECK(run_cli("spectrum --preset nosuch").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("spectrum --preset bruhat-tits-q --q 6").exit_code == 2);
}

TEST_CASE("cli: Bruhat-Tits preset builds the (q+1)-regular geometry") {
  RunResult r = run_cli("spectrum --preset bruhat-tits-q --q 5");
  REQUIRE(r.exit_code == 0);
  ordered_json j = parse_json(r);
  CHECK(j.at("d0") == 6);
  CHECK(j.at("d1") == 6);
  CHECK(j.at("kappa") == 1);
}

//=============================== spherical ===============================//

TEST_CASE("cli: spherical values at the singular parameter use the boundary") {
  RunResult r = run_cli("spherical --preset homogeneous3 --z 0.5 --r-max 4");
  REQUIRE(r.exit_code == 0);
  ordered_json j = parse_json(r);
  CHECK(j.at("kind") == "spherical");
  CHECK(j.at("singular") == true);
  CHECK_FALSE(j.contains("mixing"));
  REQUIRE(j.at("rows").size() == 5);
  CHECK(j.at("rows")[0].at("value").at("re").get<double>() == 1.0);
  for (const auto& row : j.at("rows")) {
    CHECK(row.at("route") == "boundary");
    CHECK(row.at("residual").get<double>() < 1e-10);
  }
}

TEST_CASE("cli: spherical values off the singular set report the mixing") {
  RunResult r =
      run_cli("spherical --preset semihomog23 --z 0.3+0.2i --r-max 6");
  REQUIRE(r.exit_code == 0);
  ordered_json j = parse_json(r);
  CHECK(j.at("singular") == false);
  REQUIRE(j.contains("mixing"));
  double c_re = j.at("mixing").at("coefficient").at("re").get<double>();
  double c_ref = j.at("mixing").at("reflected_coefficient").at("re").get<double>();
  CHECK(c_re + c_ref == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& row : j.at("rows")) CHECK(row.at("route") == "mixing");
}

TEST_CASE("cli: spherical rejects malformed parameters") {
  CHECK(run_cli("spherical --preset homogeneous3 --z nope").exit_code == 2);
  CHECK(run_cli("spherical --preset homogeneous3 --z 0.5 --r-max -1")
            .exit_code == 2);
  CHECK(run_cli("spherical --preset homogeneous3").exit_code == 2);
}

//================================ verify ================================//

TEST_CASE("cli: verify suite passes and reports one row per check") {
  RunResult r = run_cli("verify --preset homogeneous3 --suite oracle");
  REQUIRE(r.exit_code == 0);
  ordered_json j = parse_json(r);
  CHECK(j.at("kind") == "verify");
  CHECK(j.at("suite") == "oracle");
  CHECK(j.at("all_pass") == true);
  CHECK(j.at("checks").size() >= 4);
  for (const auto& row : j.at("checks")) CHECK(row.at("pass") == true);
}

TEST_CASE("cli: corrupted kernel hook trips the psd suite") {
  RunResult r = run_cli("verify --preset homogeneous3 --suite psd "
                        "--corrupt-kernel");
  CHECK(r.exit_code == 1);
  ordered_json j = parse_json(r);
  CHECK(j.at("all_pass") == false);
}

TEST_CASE("cli: unknown suite exits 2") {
  CHECK(run_cli("verify --preset homogeneous3 --suite nosuch").exit_code == 2);
}

//================================ nesting ================================//

TEST_CASE("cli: nesting over an exponent ladder") {
  RunResult r = run_cli("nesting --preset homogeneous3 --ps 2,4,inf");
  REQUIRE(r.exit_code == 0);
  ordered_json j = parse_json(r);
  CHECK(j.at("kind") == "nesting");
  CHECK(j.at("all_strict") == true);
  REQUIRE(j.at("steps").size() == 2);
  CHECK(j.at("exponents")[2] == "inf");
  for (const auto& step : j.at("steps")) {
    CHECK(step.at("strict") == true);
    CHECK(step.at("margin_upper").get<double>() > 0);
  }
}

TEST_CASE("cli: nesting csv flattens one row per step") {
  RunResult r =
      run_cli("nesting --preset semihomog23 --ps 2,10 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.substr(0, 5) == "kind,");
  CHECK(r.out.find("\nnesting_step,") != std::string::npos);
}

TEST_CASE("cli: descending exponents exit 2, a lone exponent exits 0") {
  CHECK(run_cli("nesting --preset homogeneous3 --ps 4,2").exit_code == 2);
  RunResult lone = run_cli("nesting --preset homogeneous3 --ps 2");
  CHECK(lone.exit_code == 0);
  CHECK(parse_json(lone).at("steps").empty());
}

//================================ output ================================//

TEST_CASE("cli: --output writes the same bytes to a file") {
  std::string path = "/tmp/treeharm_cli_test_out.json";
  std::remove(path.c_str());
  RunResult direct = run_cli("spectrum --preset homogeneous3");
  RunResult filed =
      run_cli("spectrum --preset homogeneous3 --output " + path);
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.out.empty());
  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string content;
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) {
    content.append(buf.data(), n);
  }
  std::fclose(f);
  CHECK(content == direct.out);
  std::remove(path.c_str());
}
