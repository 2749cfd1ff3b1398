#include <doctest.h>

#include <sstream>

#include "natscc/errors.hpp"
#include "natscc/keyvalue.hpp"
#include "natscc/settings.hpp"
#include "support.hpp"

using namespace natscc;
using natscc::testing::default_settings;
using natscc::testing::source_path;

TEST_CASE("key-value reader handles tables, comments and arrays") {
  std::istringstream in(
      "# comment\n"
      "a = 1.5\n"
      "name = \"two words\"  # trailing\n"
      "flag = true\n"
      "\n"
      "[grid]\n"
      "prtp = [0.01, 0.015]\n"
      "big = inf\n");
  const auto kv = parse_key_values(in, "test");
  CHECK(kv.at("a").as_number("a") == 1.5);
  CHECK(kv.at("name").as_string("name") == "two words");
  CHECK(kv.at("flag").as_bool("flag"));
  CHECK(kv.at("grid.prtp").as_numbers("grid.prtp") == std::vector<double>{0.01, 0.015});
  CHECK(std::isinf(kv.at("grid.big").as_number("grid.big")));
}

TEST_CASE("key-value reader reports the failing line") {
  std::istringstream dup("a = 1\na = 2\n");
  CHECK_THROWS_WITH_AS(parse_key_values(dup, "cfg"), doctest::Contains("cfg:2"), ConfigError);
  std::istringstream bad("a = [1, 2\n");
  CHECK_THROWS_AS(parse_key_values(bad, "cfg"), ConfigError);
}

TEST_CASE("values survive a text round trip") {
  for (const char* literal : {"0.1", "-2.5e-07", "true", "\"bma\"", "[1, 2.5, \"x\"]", "inf"}) {
    const Value v = parse_value(literal);
    CHECK(parse_value(v.to_string()).to_string() == v.to_string());
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e22) == "1e+22");
}

TEST_CASE("bare words on the command line are strings") {
  CHECK(parse_value("quadratic").as_string("impact") == "quadratic");
}

TEST_CASE("settings reject unknown keys and mistyped values") {
  Settings s;
  CHECK_THROWS_AS(s.apply_override("no_such_key=1"), ConfigError);
  CHECK_THROWS_AS(s.apply_override("prtp=\"high\""), ConfigError);
  CHECK_THROWS_AS(s.apply_override("grid.mode=diagonal"), ConfigError);
  CHECK_THROWS_AS(s.apply_override("grid.bogus=[1]"), ConfigError);
  CHECK_THROWS_AS(s.apply_override("noequals"), ConfigError);
  s.apply_override("prtp=0.02");
  CHECK(s.number("prtp") == 0.02);
}

TEST_CASE("a run needs a scenario") {
  Settings s;
  CHECK_THROWS_AS(prepare_run(s), ConfigError);
}

TEST_CASE("config hash changes if and only if an effective value changes") {
  const Settings base = default_settings();
  Settings same = base;
  same.apply_override("prtp=0.015");
  CHECK(same.hash() == base.hash());

  Settings changed = base;
  changed.apply_override("prtp=0.0150001");
  CHECK(changed.hash() != base.hash());

  // The same data reached through a different path hashes identically.
  Settings moved = base;
  moved.set("scenario", Value::of(source_path("data/synthetic/../synthetic/baseline.csv").string()));
  CHECK(moved.hash() == base.hash());

  Settings other = base;
  other.set("scenario", Value::of(source_path("data/synthetic/low_growth.csv").string()));
  CHECK(other.hash() != base.hash());
}

TEST_CASE("relative paths resolve against the config file") {
  const Settings s = default_settings();
  CHECK(std::filesystem::exists(s.path("scenario")));
  CHECK(std::filesystem::exists(s.path("historical_emissions")));
}

TEST_CASE("prepare_run applies impact selection and scale") {
  Settings s = default_settings();
  s.apply_override("impact=quadratic");
  s.apply_override("impact_scale=2");
  const auto setup = prepare_run(s);
  REQUIRE(setup.config.impact.members.size() == 1);
  CHECK(setup.config.impact.members[0].function.form == ImpactForm::Quadratic);
  CHECK(setup.config.impact.scale == 2.0);

  s.apply_override("impact=not_a_form");
  CHECK_THROWS_AS(prepare_run(s), ConfigError);
}

TEST_CASE("prepare_run validates run parameters") {
  Settings s = default_settings();
  s.apply_override("prtp=0.2");
  CHECK_THROWS_AS(prepare_run(s), ConfigError);
  s = default_settings();
  s.apply_override("emuc=0");
  CHECK_THROWS_AS(prepare_run(s), ConfigError);
  s = default_settings();
  s.apply_override("pulse_year=2300");
  CHECK_THROWS_AS(prepare_run(s), ConfigError);
  s = default_settings();
  s.apply_override("pulse_size=0");
  CHECK_THROWS_AS(prepare_run(s), ConfigError);
}

TEST_CASE("worker count comes from the environment") {
  ::setenv("NATSCC_WORKERS", "3", 1);
  CHECK(worker_count() == 3);
  ::unsetenv("NATSCC_WORKERS");
  CHECK(worker_count() >= 1);
}
