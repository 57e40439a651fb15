#include <array>
#include <cstdio>
#include <string>
#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(BSNN_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("normalize prints the geodesic form") {
  RunResult r = run_cli("normalize --n 3 \"y y x0\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "x1 y^2\n");
}

TEST_CASE("normalize accepts the artin parameter") {
  RunResult r = run_cli("normalize --m 6 \"a b a\"");
  CHECK(r.exit_code == 0);
  RunResult same = run_cli("normalize --n 3 \"a b a\"");
  CHECK(r.output == same.output);
}

TEST_CASE("normalizing twice is a fixed point") {
  RunResult once = run_cli("normalize --n 3 \"x0^-1 y^3 x2 x2\"");
  REQUIRE(once.exit_code == 0);
  std::string word = once.output.substr(0, once.output.size() - 1);
  RunResult twice = run_cli("normalize --n 3 \"" + word + "\"");
  CHECK(twice.output == once.output);
}

TEST_CASE("group options are mandatory and exclusive") {
  CHECK(run_cli("normalize \"x0\"").exit_code >= 3);
  CHECK(run_cli("normalize --n 3 --m 6 \"x0\"").exit_code >= 3);
  CHECK(run_cli("normalize --m 5 \"x0\"").exit_code >= 3);
  CHECK(run_cli("normalize --n 1 \"x0\"").exit_code >= 3);
}

TEST_CASE("parse failures name the offending position") {
  RunResult r = run_cli("normalize --n 3 \"x0 z\"");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "position 3"));
  CHECK(contains(r.output, "'z'"));
}

TEST_CASE("phi applies the automorphism") {
  RunResult r = run_cli("phi --n 3 --ex 1 --ey 1 --d 4 \"x0 x2 y^2\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "x0 x1 y^10\n");
}

TEST_CASE("tcp answers the worked instance with a witness") {
  RunResult r =
      run_cli("tcp --n 3 --ex 1 --ey 1 --d 4 \"x0 x2^-1 y^2\" \"x2^-1 x1 y^-2\"");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "Yes"));
  CHECK(contains(r.output, "witness:"));
}

TEST_CASE("tcp maps verdicts to exit codes") {
  CHECK(run_cli("tcp --n 3 --ex 1 --ey 1 --d 4 \"x0 x2^-1 y^2\" \"x0 x2 y^2\"")
            .exit_code == 1);
  // Central corner with no compatible exponent: sound rejection.
  CHECK(run_cli("tcp --n 2 --ex 1 --ey 1 --d 3 \"y\" \"y^3\"").exit_code == 1);
}

TEST_CASE("tcp emits machine-readable verdicts on request") {
  RunResult r = run_cli(
      "tcp --n 3 --ex 1 --ey 1 --d 4 \"x0 x2 y^2\" \"x0 x2 y^26\" --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["answer"] == "Yes");
  CHECK(j["lambda"] == 1);
  CHECK(j["phi"]["d"] == 4);
  CHECK(j.contains("witness"));
  CHECK(j["trace"].is_array());
}

TEST_CASE("tcp-uniform recovers parameters from the pair alone") {
  RunResult r = run_cli("tcp-uniform --n 3 \"x0 x2 y^2\" \"x1 x2 y^9\" --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["answer"] == "Yes");
  CHECK(j["phi"]["ex"] == 1);
  CHECK(j["phi"]["ey"] == 1);
  CHECK(j["phi"]["d"] == 7);
  RunResult no = run_cli("tcp-uniform --n 3 \"x0 x2 y^2\" \"x0 y^2\"");
  CHECK(no.exit_code == 1);
}

TEST_CASE("conj decides ordinary conjugacy") {
  CHECK(run_cli("conj --n 3 \"x0 y\" \"x1 y\"").exit_code == 0);
  CHECK(run_cli("conj --n 3 \"x0 y\" \"x0 y^2\"").exit_code == 1);
}

TEST_CASE("orbit reports the recovered twist") {
  RunResult r = run_cli("orbit --n 3 --ex 1 --ey 1 \"x0 x2 y^2\" \"x0 x1 y^10\"");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "d=4"));
  CHECK(run_cli("orbit --n 3 --ex 1 --ey 1 \"x0 x2 y^2\" \"x0 x1 y^9\"").exit_code ==
        1);
}

TEST_CASE("repset emits the worked family as json") {
  RunResult r =
      run_cli("repset --n 3 --ex 1 --ey 1 --d 4 \"x0 x2 y^2\" --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["n"] == 3);
  CHECK(j["twisted_shift"] == 24);
  REQUIRE(j["elements"].is_array());
  CHECK(j["elements"].size() == 18);
  bool base_found = false;
  for (const auto& e : j["elements"]) {
    REQUIRE(e.contains("free"));
    REQUIRE(e.contains("c"));
    REQUIRE(e.contains("k"));
    REQUIRE(e.contains("witness"));
    if (e["free"] == "x1 x2" && e["c"] == 0 && e["k"] == 2) base_found = true;
  }
  CHECK(base_found);
}

TEST_CASE("repset renders the chain as a three column digraph") {
  RunResult r = run_cli("repset --n 3 --ex 1 --ey 1 --d 4 \"x0 x2 y^2\" --dot");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.output, "digraph"));
  CHECK(count_of(r.output, "label=") == 18);
  CHECK(count_of(r.output, "color=blue") == 15);
  CHECK(count_of(r.output, "color=red") == 18);
}

TEST_CASE("repset renders the finite closure as a colored graph") {
  RunResult r =
      run_cli("repset --n 3 --ex 1 --ey 1 --d 4 \"x0 x2^-1 y^2\" --closure --dot");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.output, "graph closure"));
  CHECK(count_of(r.output, "label=") == 6);
  CHECK(count_of(r.output, "color=blue") == 9);
  CHECK(count_of(r.output, "color=red") == 6);
}

TEST_CASE("oracle finds the worked witnesses") {
  RunResult r =
      run_cli("oracle --n 3 --ex 1 --ey 1 --d 4 \"x0 x2^-1 y^2\" \"x1 x0^-1 y^2\"");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "witness: y"));
  RunResult r2 = run_cli("oracle --n 3 --ex 1 --ey 1 --d 4 \"\" \"y^-4\"");
  CHECK(r2.exit_code == 0);
  CHECK(contains(r2.output, "witness: x0"));
}

TEST_CASE("oracle reports exhaustion as unknown") {
  RunResult r = run_cli(
      "oracle --n 3 --ex 1 --ey 1 --d 4 --oracle-max-free-len 2 --oracle-max-y 3 "
      "\"x0 x2^-1 y^2\" \"x0 x2 y^2\"");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "Unknown"));
}

TEST_CASE("unknown subcommands and flags fail loudly") {
  CHECK(run_cli("frobnicate --n 3 \"x0\"").exit_code >= 3);
  CHECK(run_cli("normalize --n 3 --bogus \"x0\"").exit_code >= 3);
  CHECK(run_cli("tcp --n 3 --ex 2 --ey 1 --d 0 \"x0\" \"x0\"").exit_code >= 3);
}
