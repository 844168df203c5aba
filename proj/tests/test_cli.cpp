#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QDEFORM_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.output.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json load_schema(const std::string& name) {
  std::ifstream in(std::string(QDEFORM_SCHEMA_DIR) + "/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

// minimal structural validator for the schema subset used here:
// type / properties / required / items / enum
void validate(const json& schema, const json& value, const std::string& at) {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    INFO("at " << at << " expected type " << t);
    if (t == "object") REQUIRE(value.is_object());
    else if (t == "array") REQUIRE(value.is_array());
    else if (t == "string") REQUIRE(value.is_string());
    else if (t == "integer") REQUIRE(value.is_number_integer());
    else if (t == "number") REQUIRE(value.is_number());
    else if (t == "boolean") REQUIRE(value.is_boolean());
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"])
      if (e == value) found = true;
    INFO("at " << at << " enum membership");
    REQUIRE(found);
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"]) {
      INFO("at " << at << " missing required key " << key);
      REQUIRE(value.contains(key.get<std::string>()));
    }
  if (schema.contains("properties") && value.is_object())
    for (auto it = value.begin(); it != value.end(); ++it)
      if (schema["properties"].contains(it.key()))
        validate(schema["properties"][it.key()], it.value(),
                 at + "." + it.key());
  if (schema.contains("items") && value.is_array())
    for (size_t i = 0; i < value.size(); ++i)
      validate(schema["items"], value[i], at + "[" + std::to_string(i) + "]");
}

}  // namespace

TEST_CASE("exit code contract", "[cli]") {
  CHECK(run_cli("verify --q 1.2 --lmax 3").exit_code == 0);
  CHECK(run_cli("verify --q 1.0 --lmax 3").exit_code == 0);
  CHECK(run_cli("verify --q -1").exit_code == 2);
  CHECK(run_cli("verify --q 0").exit_code == 2);
  CHECK(run_cli("--nonsense").exit_code == 2);
  CHECK(run_cli("harmonics --l 2 --m 3").exit_code == 2);
  CHECK(run_cli("integrate --n -1").exit_code == 2);
  // an unreachable tolerance flips residual checks to failures
  CHECK(run_cli("verify --q 1.2 --lmax 3 --tolerance 1e-30").exit_code == 1);
}

TEST_CASE("byte-identical reruns", "[cli]") {
  const std::string cmds[] = {
      "verify --q 1.2 --lmax 3 --format json",
      "spectrum --potential coulomb --q 1.1 --nmax 2 --lmax 2 --format csv",
      "harmonics --l 3 --m 1 --q 0.9 --format json",
      "effective-l --q 1.3 --lmax 4 --format pretty"};
  for (const auto& c : cmds) {
    const auto a = run_cli(c);
    const auto b = run_cli(c);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.output == b.output);
    CHECK_FALSE(a.output.empty());
  }
}

TEST_CASE("spectrum csv header contract", "[cli]") {
  const auto r = run_cli(
      "spectrum --potential coulomb --q 1.1 --nmax 2 --lmax 2 --format csv");
  REQUIRE(r.exit_code == 0);
  const std::string header = r.output.substr(0, r.output.find('\n'));
  CHECK(header == "potential,q,n,l,L_eff,E_closed,E_numeric,abs_diff");
}

TEST_CASE("json outputs validate against the checked-in schemas", "[cli]") {
  const struct {
    const char* cmd;
    const char* schema;
  } cases[] = {
      {"verify --q 1.1 --lmax 3 --format json", "verify_report.schema.json"},
      {"spectrum --potential oscillator --q 1.1 --nmax 1 --lmax 1 "
       "--mode both --format json",
       "spectrum.schema.json"},
      {"harmonics --l 2 --m 0 --q 1.2 --format json",
       "harmonics.schema.json"},
      {"integrate --n 2 --q 0.9 --format json", "integrate.schema.json"},
      {"effective-l --q 1.1 --lmax 3 --format json",
       "effective_l.schema.json"}};
  for (const auto& c : cases) {
    INFO(c.cmd);
    const auto r = run_cli(c.cmd);
    REQUIRE(r.exit_code == 0);
    const json value = json::parse(r.output);
    validate(load_schema(c.schema), value, "$");
    CHECK(value["schema_version"] == 1);
  }
}

TEST_CASE("spectrum values in machine output", "[cli]") {
  const auto r = run_cli(
      "spectrum --potential oscillator --q 1.1 --nmax 1 --lmax 1 "
      "--mode both --format json");
  REQUIRE(r.exit_code == 0);
  const json v = json::parse(r.output);
  REQUIRE(v["rows"].size() == 4);
  for (const auto& row : v["rows"])
    CHECK(row["abs_diff"].get<double>() < 1e-3);
}

TEST_CASE("integrate frozen value", "[cli]") {
  const auto r = run_cli("integrate --n 0 --q 0.7 --format json");
  REQUIRE(r.exit_code == 0);
  const json v = json::parse(r.output);
  CHECK(v["value"].get<double>() == Catch::Approx(1.0).margin(1e-12));
}
