#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cgt/report_io.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(CGT_BIN) +
                    " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.output.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("compute prints the known value rows") {
  RunResult r = run("compute --group PSL27 --invariants b1,b2,b3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "b1"));
  std::vector<std::string> lines;
  std::string line;
  for (char c : r.output) {
    if (c == '\n') {
      lines.push_back(line);
      line.clear();
    } else {
      line += c;
    }
  }
  REQUIRE(lines.size() == 3);
  CHECK(contains(lines[0], "b1"));
  CHECK(contains(lines[0], " 5 "));
  CHECK(contains(lines[1], "b2"));
  CHECK(contains(lines[1], " 4 "));
  CHECK(contains(lines[2], "b3"));
  CHECK(contains(lines[2], " 3 "));

  RunResult c1 = run("compute --group C1 --invariants b1,b2,b3");
  CHECK(c1.exit_code == 0);
  CHECK(contains(c1.output, " 0 "));
}

TEST_CASE("compute --json emits a parseable report document") {
  RunResult r = run(
      "compute --group S4 --invariants l,d,dprime,mu,muprime,b2,b3 --json");
  CHECK(r.exit_code == 0);
  auto reports = cgt::parse_report_document(json::parse(r.output));
  REQUIRE(reports.size() == 7);
  std::vector<int> values;
  for (const auto& rep : reports) values.push_back(rep.value);
  CHECK(values == std::vector<int>{4, 2, 2, 3, 3, 3, 3});
  for (const auto& rep : reports) {
    CHECK(rep.group == "S4");
    CHECK(rep.exhaustive);
  }
}

TEST_CASE("usage problems exit 64") {
  CHECK(run("compute --group NOPE --invariants b1").exit_code == 64);
  CHECK(run("compute --group S4 --invariants nope").exit_code == 64);
  CHECK(run("compute --group custom:absent.grp --invariants b1").exit_code ==
        64);
  CHECK(run("verify-paper --only no-such-claim").exit_code == 64);
  CHECK(run("hunt --max-order 0").exit_code == 64);
}

TEST_CASE("a spent budget exits 2 and says partial") {
  RunResult r = run("compute --group S5 --invariants b3 --time-limit-ms 1");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "partial"));
}

TEST_CASE("verify-paper passes its suite and honors --only") {
  RunResult r = run("verify-paper --only psl27-triple");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "pass psl27-triple"));
  CHECK(contains(r.output, "1/1 claims pass"));
}

TEST_CASE("verify-paper exits 1 on a mismatch and prints the diff") {
  RunResult r = run(
      "verify-paper --only sym-d-s3 --override-expected sym-d-s3.d=7");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.output, "FAIL"));
  CHECK(contains(r.output, "expected"));
  CHECK(contains(r.output, "d=7"));
  CHECK(contains(r.output, "computed"));
  CHECK(contains(r.output, "d=2"));
}

TEST_CASE("two verify-paper runs agree byte for byte without clocks") {
  RunResult a = run("verify-paper --only quaternion-embeddings,chain-s4 --json");
  RunResult b = run("verify-paper --only quaternion-embeddings,chain-s4 --json");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(cgt::strip_timing_lines(a.output) == cgt::strip_timing_lines(b.output));
}

TEST_CASE("lattice exports DOT files sized by the group") {
  namespace fs = std::filesystem;
  fs::remove_all("cli_tmp");
  fs::create_directories("cli_tmp");
  struct Row {
    const char* group;
    int nodes;
  };
  for (const Row& row : {Row{"Q8", 6}, Row{"S4", 30}, Row{"C1", 1}}) {
    std::string dot = std::string("cli_tmp/") + row.group + ".dot";
    RunResult r = run("lattice --group " + std::string(row.group) + " --dot " +
                      dot);
    CHECK(r.exit_code == 0);
    std::ifstream in(dot);
    REQUIRE(in.good());
    int labeled = 0;
    std::string line;
    while (std::getline(in, line))
      if (contains(line, "label")) ++labeled;
    CHECK(labeled == row.nodes);
  }
  fs::remove_all("cli_tmp");
}

TEST_CASE("lattice --save honors the cache environment variable") {
  namespace fs = std::filesystem;
  fs::remove_all("cli_cache");
  RunResult r = run("lattice --group Q8 --save", "CGT_CACHE_DIR=cli_cache");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists("cli_cache/Q8.lattice.json"));
  // The cached file is the save format the library itself writes.
  std::ifstream in("cli_cache/Q8.lattice.json");
  json j = json::parse(in);
  CHECK(j.contains("nodes"));
  fs::remove_all("cli_cache");
}

TEST_CASE("hunt sweeps the catalog and writes row data") {
  namespace fs = std::filesystem;
  fs::remove_all("cli_hunt");
  fs::create_directories("cli_hunt");
  RunResult r = run("hunt --max-order 24 --report cli_hunt/rows.json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "no strict gap"));
  CHECK(contains(r.output, "Q8"));
  std::ifstream in("cli_hunt/rows.json");
  REQUIRE(in.good());
  json doc = json::parse(in);
  CHECK(doc.at("format") == "hunt-gaps");
  bool saw_q8 = false;
  for (const auto& row : doc.at("rows")) {
    CHECK(row.at("strict_gap") == false);
    CHECK(row.at("exhaustive") == true);
    if (row.at("group") == "Q8") {
      saw_q8 = true;
      CHECK(row.at("b2") == 2);
      CHECK(row.at("mu_prime") == 2);
    }
  }
  CHECK(saw_q8);
  fs::remove_all("cli_hunt");
}
