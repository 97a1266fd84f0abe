#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the tool with the given argument string, capturing stdout; stderr is
// folded in only when `merge_stderr` is set.
CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(DATAVEC_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("datavec_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("expressible answers yes and no with matching exit codes") {
  TempDir tmp;
  const std::string yes =
      tmp.file("yes.json", R"({"d": 1, "V": [{"a": [1]}], "x": {"b": [1]}})");
  const CliResult ry = run_cli("expressible " + yes);
  CHECK(ry.exit_code == 0);
  CHECK(ry.out == "YES\n");

  const std::string no =
      tmp.file("no.json", R"({"d": 1, "V": [{"a": [2]}], "x": {"b": [1]}})");
  const CliResult rn = run_cli("expressible " + no);
  CHECK(rn.exit_code == 1);
  CHECK(rn.out == "NO\n");
}

TEST_CASE("expressible --witness prints a verifiable witness") {
  TempDir tmp;
  const std::string path =
      tmp.file("w.json", R"({"d": 1, "V": [{"a": [1]}], "x": {"b": [1]}})");
  const CliResult r = run_cli("expressible --witness " + path);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("YES\n", 0) == 0);
  const auto body = nlohmann::json::parse(r.out.substr(4));
  REQUIRE(body.contains("terms"));
  CHECK(body["terms"].size() == 1);
  CHECK(body["terms"][0]["map"]["a"] == "b");

  // The verify subcommand agrees with what was printed.
  const std::string wpath = tmp.file("witness.json", body.dump());
  const CliResult v = run_cli("verify " + path + " " + wpath);
  CHECK(v.exit_code == 0);
  CHECK(v.out == "VALID\n");

  // A wrong witness is INVALID with exit 1.
  const std::string bad = tmp.file(
      "bad.json", R"({"terms": [{"base": 0, "map": {"a": "a"}}]})");
  const CliResult b = run_cli("verify " + path + " " + bad);
  CHECK(b.exit_code == 1);
  CHECK(b.out == "INVALID\n");
}

TEST_CASE("reversible reports per-member structure") {
  TempDir tmp;
  const std::string yes =
      tmp.file("rev.json", R"({"d": 1, "V": [{"a": [1]}, {"a": [-1]}]})");
  const CliResult ry = run_cli("reversible " + yes);
  CHECK(ry.exit_code == 0);
  CHECK(ry.out == "YES\n");

  const std::string no = tmp.file("irr.json", R"({"d": 1, "V": [{"a": [1]}]})");
  const CliResult rn = run_cli("reversible " + no);
  CHECK(rn.exit_code == 1);
  CHECK(rn.out == "NO\n");

  const CliResult rw = run_cli("reversible --witness " + yes);
  REQUIRE(rw.exit_code == 0);
  const auto body = nlohmann::json::parse(rw.out.substr(4));
  CHECK(body.is_array());
  CHECK(body.size() == 2);
}

TEST_CASE("the fast flag refuses non-reversible member sets") {
  TempDir tmp;
  const std::string path =
      tmp.file("irr.json", R"({"d": 1, "V": [{"a": [1]}], "x": {"b": [1]}})");
  const CliResult r = run_cli("expressible --fast " + path, true);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("error:") != std::string::npos);

  const std::string ok = tmp.file(
      "rev.json", R"({"d": 1, "V": [{"a": [1]}, {"a": [-1]}], "x": {"b": [3]}})");
  const CliResult f = run_cli("expressible --fast " + ok);
  CHECK(f.exit_code == 0);
  CHECK(f.out == "YES\n");
}

TEST_CASE("hist decompose prints the parts") {
  TempDir tmp;
  const std::string path = tmp.file("h.json", R"({
    "rows": ["a1", "a2"],
    "entries": [["a1", "b2", 2], ["a1", "b3", 1], ["a1", "b5", 1],
                ["a2", "b1", 3], ["a2", "b3", 1]]})");
  const CliResult r = run_cli("hist decompose " + path);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("OK\n", 0) == 0);
  const auto parts = nlohmann::json::parse(r.out.substr(3));
  CHECK(parts.is_array());
  CHECK(parts.size() == 4);
}

TEST_CASE("updn check and walk work end to end") {
  TempDir tmp;
  const std::string net = tmp.file("net.updn",
                                   "places p q;"
                                   "trans fwd { in p: x; out q: x; }"
                                   "trans back { in q: x; out p: x; }");
  const std::string from = tmp.file("from.mark", "p: {a: 1, b: 1};");
  const std::string to = tmp.file("to.mark", "q: {a: 1, b: 1};");
  const CliResult r = run_cli("updn check " + net + " " + from + " " + to);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "YES\n");

  const std::string fast = tmp.file("to2.mark", "p: {a: 1}; q: {b: 1};");
  const CliResult rf = run_cli("updn check --fast " + net + " " + from + " " + fast);
  CHECK(rf.exit_code == 0);

  const std::string bad = tmp.file("bad.mark", "p: {a: 2, b: 1};");
  const CliResult rb = run_cli("updn check " + net + " " + from + " " + bad);
  CHECK(rb.exit_code == 1);
  CHECK(rb.out == "NO\n");

  const CliResult w1 = run_cli("updn walk --steps 5 --seed 9 " + net + " " + from);
  const CliResult w2 = run_cli("updn walk --steps 5 --seed 9 " + net + " " + from);
  CHECK(w1.exit_code == 0);
  CHECK(w1.out == w2.out);
  CHECK(!w1.out.empty());
}

TEST_CASE("bca reach distinguishes yes, no, and inconclusive") {
  TempDir tmp;
  const std::string automaton = tmp.file("a.bca",
                                         "counters 1; state q0 qf;"
                                         "edge q0 -> qf label {a: [1]};");
  const std::string zero = tmp.file("zero.json", R"({"d": 1, "entries": {}})");
  const std::string one = tmp.file("one.json", R"({"d": 1, "entries": {"a": [1]}})");
  const std::string neg = tmp.file("neg.json", R"({"d": 1, "entries": {"a": [-1]}})");

  CHECK(run_cli("bca reach " + automaton + " " + zero + " " + one).exit_code == 0);
  CHECK(run_cli("bca reach " + automaton + " " + zero + " " + one).out == "YES\n");
  const CliResult no = run_cli("bca reach " + automaton + " " + zero + " " + neg);
  CHECK(no.exit_code == 1);
  CHECK(no.out == "NO\n");
  CHECK(run_cli("bca reach --threads 2 " + automaton + " " + zero + " " + one).exit_code == 0);
}

TEST_CASE("oracle decides within an explicit budget") {
  TempDir tmp;
  const std::string path =
      tmp.file("inst.json", R"({"d": 1, "V": [{"a": [1]}], "x": {"b": [2]}})");
  const CliResult r = run_cli("oracle --max-terms 3 --witness " + path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("YES\n", 0) == 0);

  const CliResult n = run_cli("oracle --max-terms 1 " + path);
  CHECK(n.exit_code == 1);
  CHECK(n.out == "NO_UP_TO_BUDGET\n");
}

TEST_CASE("report mode wraps the run in one JSON object") {
  TempDir tmp;
  const std::string path =
      tmp.file("inst.json", R"({"d": 1, "V": [{"a": [1]}], "x": {"b": [1]}})");
  const CliResult r = run_cli("--report expressible --witness " + path);
  REQUIRE(r.exit_code == 0);
  const auto report = nlohmann::json::parse(r.out);
  CHECK(report["command"] == "expressible");
  CHECK(report["decision"] == "YES");
  CHECK(report.contains("digest"));
  CHECK(report["digest"].is_string());
  CHECK(report.contains("timing_ms"));
  CHECK(report.contains("stats"));
  CHECK(report["witness"]["terms"].size() == 1);

  // The digest is a function of the input bytes alone.
  const CliResult again = run_cli("--report expressible --witness " + path);
  const auto report2 = nlohmann::json::parse(again.out);
  CHECK(report2["digest"] == report["digest"]);

  const std::string other =
      tmp.file("other.json", R"({"d": 1, "V": [{"a": [1]}], "x": {"c": [1]}})");
  const auto report3 =
      nlohmann::json::parse(run_cli("--report expressible --witness " + other).out);
  CHECK(report3["digest"] != report["digest"]);
}

TEST_CASE("stdin input works through the dash convention") {
  TempDir tmp;
  const std::string cmd = std::string("printf '%s' '{\"d\":1,\"V\":[{\"a\":[1]}],") +
                          "\"x\":{\"b\":[1]}}' | " + DATAVEC_CLI_PATH + " expressible -";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[256];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(out == "YES\n");
}

TEST_CASE("errors surface as exit code two with a message") {
  TempDir tmp;
  const CliResult missing = run_cli("expressible /no/such/file.json", true);
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.find("error:") != std::string::npos);

  const std::string mangled = tmp.file("mangled.json", "{join us");
  const CliResult parse = run_cli("expressible " + mangled, true);
  CHECK(parse.exit_code == 2);
  CHECK(parse.out.find("error:") != std::string::npos);

  const CliResult usage = run_cli("no-such-subcommand", true);
  CHECK(usage.exit_code == 2);
}

TEST_CASE("DATAVEC_LOG enables diagnostics on stderr") {
  TempDir tmp;
  const std::string path =
      tmp.file("inst.json", R"({"d": 1, "V": [{"a": [1]}], "x": {"b": [1]}})");
  const std::string cmd = std::string("DATAVEC_LOG=1 ") + DATAVEC_CLI_PATH +
                          " expressible " + path + " 2>&1 1>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string err;
  char buf[1024];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) err.append(buf, got);
  pclose(pipe);
  CHECK(!err.empty());

  // DATAVEC_LOG=0 keeps stderr quiet.
  const std::string quiet_cmd = std::string("DATAVEC_LOG=0 ") + DATAVEC_CLI_PATH +
                                " expressible " + path + " 2>&1 1>/dev/null";
  pipe = popen(quiet_cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string quiet;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) quiet.append(buf, got);
  pclose(pipe);
  CHECK(quiet.empty());
}
