// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.
//
// End-to-end checks of the installed CLI: golden rows, exit codes,
// determinism and JSON schema conformance.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

int next_id = 0;

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = "cli_out_" + std::to_string(next_id++) + ".txt";
  const std::string cmd = (env.empty() ? "" : env + " ") +
                          std::string(CACHEBC_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> " + out_path + ".err";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.code = WEXITSTATUS(status);
  std::ifstream file(out_path, std::ios::binary);
  std::ostringstream buf;
  buf << file.rdbuf();
  result.out = buf.str();
  std::remove(out_path.c_str());
  std::remove((out_path + ".err").c_str());
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) fields.push_back(f);
  return fields;
}

// Minimal JSON Schema checker covering the subset the shipped schema uses:
// const, enum, type (single or list), required, properties, items, oneOf.
bool type_matches(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer() ||
                                 value.is_number_unsigned();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

bool validates(const json& schema, const json& value) {
  if (schema.contains("const") && schema["const"] != value) return false;
  if (schema.contains("enum")) {
    bool hit = false;
    for (const json& e : schema["enum"]) {
      if (e == value) hit = true;
    }
    if (!hit) return false;
  }
  if (schema.contains("type")) {
    const json& t = schema["type"];
    if (t.is_string()) {
      if (!type_matches(value, t.get<std::string>())) return false;
    } else {
      bool hit = false;
      for (const json& one : t) {
        if (type_matches(value, one.get<std::string>())) hit = true;
      }
      if (!hit) return false;
    }
  }
  if (schema.contains("required")) {
    for (const json& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) return false;
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (value.contains(key) && !validates(sub, value.at(key))) return false;
    }
  }
  if (schema.contains("items") && value.is_array()) {
    for (const json& item : value) {
      if (!validates(schema["items"], item)) return false;
    }
  }
  if (schema.contains("oneOf")) {
    int hits = 0;
    for (const json& sub : schema["oneOf"]) {
      if (validates(sub, value)) ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

json load_schema() {
  std::ifstream file(CACHEBC_SCHEMA_PATH);
  REQUIRE(file.good());
  return json::parse(file);
}

}  // namespace

TEST_CASE("analyze emits the expected grid") {
  const RunResult r = run_cli("analyze --K 4 --mu 0:1:0.25 --delta 1");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);  // header + 5 rows
  const auto mid = fields_of(lines[3]);
  CHECK(mid[1] == "0.5");
  CHECK(std::stod(mid[5]) == doctest::Approx(2.0 / 3.0));  // gndt_c
  const auto last = fields_of(lines[5]);
  CHECK(last[10] == "degenerate");
  CHECK(last[6] == "inf");
}

TEST_CASE("analyze with alpha = beta reduces to the local caching gain") {
  const RunResult r =
      run_cli("analyze --K 2 --mu 0.5 --alpha 0.8 --beta 0.8");
  CHECK(r.code == 0);
  const auto row = fields_of(lines_of(r.out)[1]);
  CHECK(std::stod(row[5]) == doctest::Approx(0.5));  // gndt_c
  CHECK(std::stod(row[7]) == doctest::Approx(0.5));  // gndt_d
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("analyze --K 4 --mu 1:0:0.25 --delta 1").code == 2);
  CHECK(run_cli("analyze --K 4 --mu 0.5 --delta 0.5 --alpha 1 --beta 0").code ==
        2);
  CHECK(run_cli("analyze --K 4 --mu 0.5 --alpha 0.5 --beta 0.7").code == 2);
  CHECK(run_cli("analyze --K 4 --mu 0.5").code == 2);  // no channel levels
  CHECK(run_cli("bounds --K 4 --N 3 --M 0 --delta 1").code == 2);  // N < K
  CHECK(run_cli("nonsense").code == 2);
}

TEST_CASE("bounds golden rows") {
  const RunResult a = run_cli("bounds --K 4 --N 4 --M 2 --delta 1");
  CHECK(a.code == 0);
  const auto row = fields_of(lines_of(a.out)[1]);
  CHECK(std::stod(row[6]) == doctest::Approx(0.5));
  CHECK(row[7] == "1");

  const RunResult b = run_cli("bounds --K 1 --N 1 --M 0 --delta 0");
  const auto row_b = fields_of(lines_of(b.out)[1]);
  CHECK(std::stod(row_b[6]) == doctest::Approx(1.0));

  // the s=1 term 1 - M/N stays positive whenever M < N
  const RunResult c = run_cli("bounds --K 4 --N 4 --M 3 --delta 1");
  const auto row_c = fields_of(lines_of(c.out)[1]);
  CHECK(std::stod(row_c[6]) == doctest::Approx(0.25));
  CHECK(row_c[9] == "ok");
}

TEST_CASE("simulate surfaces divisibility with a suggested F") {
  const RunResult r =
      run_cli("simulate --mode centralized --K 3 --t 1 --F 10 --delta 1");
  CHECK(r.code == 2);
}

TEST_CASE("simulate golden run") {
  const RunResult r = run_cli(
      "simulate --mode centralized --K 2 --t 1 --N 2 --F 8 --delta 1 "
      "--demands 1,2");
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["recovery_ok"] == true);
  CHECK(doc["measured_gndt"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("simulate decentralized tracks the binomial sum") {
  const RunResult r = run_cli(
      "simulate --mode decentralized --K 2 --mu 0.5 --F 100000 --delta 1 "
      "--seed 3");
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["recovery_ok"] == true);
  CHECK(doc["measured_gndt"].get<double>() ==
        doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("simulate writes a framed, reproducible binary log dump") {
  const std::string dump = "cli_dump_test.bin";
  const std::string args =
      "simulate --mode decentralized --K 2 --mu 0.5 --F 400 --delta 0.5 "
      "--seed 5 --dump-log " +
      dump;
  CHECK(run_cli(args).code == 0);
  std::ifstream first(dump, std::ios::binary);
  std::ostringstream buf_a;
  buf_a << first.rdbuf();
  first.close();
  REQUIRE(buf_a.str().size() > 4);
  CHECK(buf_a.str().substr(0, 4) == "CBL1");
  CHECK(run_cli(args).code == 0);
  std::ifstream second(dump, std::ios::binary);
  std::ostringstream buf_b;
  buf_b << second.rdbuf();
  CHECK(buf_a.str() == buf_b.str());
  std::remove(dump.c_str());
}

TEST_CASE("gap-scan summary line and exit code") {
  const RunResult r = run_cli("gap-scan --kmax 4 --nmax 8");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  CHECK(lines.back().rfind("# max_ratio=", 0) == 0);

  const RunResult cd =
      run_cli("gap-scan --check-cen-decen --kmax 4 --mu-points 21 "
              "--delta-points 21");
  CHECK(cd.code == 0);
  CHECK(lines_of(cd.out).back().find("max_ratio=1.5") != std::string::npos);
}

TEST_CASE("phy-slope exits 1 outside the acceptance band") {
  const RunResult r = run_cli(
      "phy-slope --K 2 --alpha 1 --beta 0 --trials 100 --band 0.00001");
  CHECK(r.code == 1);
}

TEST_CASE("reruns are byte-identical") {
  const std::vector<std::string> invocations = {
      "analyze --K 3 --mu 0:1:0.1 --delta 0:1:0.25",
      "analyze --K 3 --mu 0:1:0.1 --delta 0.4 --format json",
      "bounds --K 2:6:1 --N 8 --M 0:8:1 --delta 0.7",
      "gap-scan --kmax 3 --nmax 6",
      "gap-scan --sampled --points 500 --kmax 10 --nmax 30 --format json",
      "gap-scan --check-cen-decen --kmax 3 --mu-points 11 --delta-points 11",
      "simulate --mode centralized --K 3 --t 2 --F 30 --delta 0.5",
      "simulate --mode decentralized --K 2 --mu 0.3 --F 2000 --delta 0.5",
      "phy-slope --K 2 --alpha 0.8 --beta 0.4 --trials 100",
      "phy-slope --K 2 --alpha 0.8 --beta 0.4 --trials 100 --format json",
  };
  for (const std::string& args : invocations) {
    CAPTURE(args);
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("output does not depend on the worker count") {
  const RunResult one =
      run_cli("gap-scan --sampled --points 800 --kmax 12 --nmax 40 "
              "--threads 1");
  const RunResult four =
      run_cli("gap-scan --sampled --points 800 --kmax 12 --nmax 40 "
              "--threads 4");
  CHECK(one.out == four.out);

  const RunResult p1 =
      run_cli("phy-slope --K 3 --alpha 0.6 --beta 0 --trials 100 --threads 1");
  const RunResult p3 =
      run_cli("phy-slope --K 3 --alpha 0.6 --beta 0 --trials 100 --threads 3");
  CHECK(p1.out == p3.out);
}

TEST_CASE("seed comes from the environment unless overridden") {
  const RunResult base =
      run_cli("gap-scan --sampled --points 200 --kmax 5 --nmax 10");
  const RunResult env =
      run_cli("gap-scan --sampled --points 200 --kmax 5 --nmax 10",
              "CACHEBC_SEED=77");
  const RunResult flag = run_cli(
      "gap-scan --sampled --points 200 --kmax 5 --nmax 10 --seed 77");
  const RunResult both = run_cli(
      "gap-scan --sampled --points 200 --kmax 5 --nmax 10 --seed 1729",
      "CACHEBC_SEED=77");
  CHECK(env.out == flag.out);
  CHECK(base.out != flag.out);
  CHECK(both.out == base.out);  // the flag wins over the environment
}

TEST_CASE("JSON outputs validate against the shipped schema") {
  const json schema = load_schema();
  const std::vector<std::string> invocations = {
      "analyze --K 3 --mu 0:1:0.5 --delta 1 --format json",
      "bounds --K 3 --N 4 --M 0:4:1 --delta 0.5 --format json",
      "gap-scan --kmax 2 --nmax 3 --format json",
      "gap-scan --check-cen-decen --kmax 2 --mu-points 5 --delta-points 5 "
      "--format json",
      "simulate --mode centralized --K 2 --t 1 --N 2 --F 8 --delta 0.5",
      "simulate --mode decentralized --K 2 --mu 0.5 --F 500 --delta 0.5",
      "phy-slope --K 2 --alpha 0.8 --beta 0.4 --trials 100 --format json",
  };
  for (const std::string& args : invocations) {
    CAPTURE(args);
    const RunResult r = run_cli(args);
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(validates(schema, doc));
  }
  // a malformed document must not validate
  CHECK_FALSE(validates(schema, json::parse(R"({"kind":"analyze"})")));
}
