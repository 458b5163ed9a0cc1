#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "povm_discrim/cli/commands.hpp"
#include "povm_discrim/cli/report.hpp"
#include "povm_discrim/cli/reproduce.hpp"
#include "povm_discrim/cli/spec_file.hpp"
#include "povm_discrim/error.hpp"

using namespace povm_discrim;
using namespace povm_discrim::cli;
using nlohmann::json;

namespace {

std::filesystem::path data(const std::string& name) { return std::filesystem::path(POVM_TEST_DATA_DIR) / name; }

struct CommandRun {
  int status;
  std::string out;
  std::string err;
  json report;
};

template <typename Cmd>
CommandRun run_json(Cmd&& cmd, CommandOptions opts = {}) {
  opts.json = true;
  std::ostringstream out, err;
  const int status = cmd(opts, out, err);
  CommandRun r{status, out.str(), err.str(), json()};
  if (!r.out.empty()) r.report = json::parse(r.out);
  return r;
}

CommandRun discriminate(const std::string& file, CommandOptions opts = {}) {
  return run_json([&](auto& o, auto& out, auto& err) { return cmd_discriminate(data(file), o, out, err); }, opts);
}

CommandRun identify(const std::string& file, CommandOptions opts = {}) {
  return run_json([&](auto& o, auto& out, auto& err) { return cmd_identify(data(file), o, out, err); }, opts);
}

CommandRun validate_file(const std::string& file) {
  return run_json([&](auto& o, auto& out, auto& err) { return cmd_validate(data(file), o, out, err); });
}

std::vector<std::string> conclusions(const json& table) {
  std::vector<std::string> out;
  for (const auto& row : table) out.push_back(row.at("conclusion").get<std::string>());
  return out;
}

void expect_schema(const json& report) {
  const auto problems = check_report_schema(report);
  EXPECT_TRUE(problems.empty()) << (problems.empty() ? "" : problems.front());
}

}  // namespace

TEST(SpecFile, ParsesBlochAndEffects) {
  const TaskSpec t = load_spec(data("spin_pair.json"));
  EXPECT_EQ(t.names, (std::vector<std::string>{"sigma_z", "sigma_x"}));
  EXPECT_EQ(t.mode, Mode::PD);
  EXPECT_EQ(t.shots, 2u);
  EXPECT_EQ(t.observables[0], from_bloch(Vec3{0, 0, 1}));
  const TaskSpec five = load_spec(data("five_qutrits.json"));
  EXPECT_EQ(five.observables.size(), 5u);
  EXPECT_EQ(five.priors, std::vector<double>(5, 0.2));
}

TEST(SpecFile, RoundTrip) {
  for (const char* name : {"spin_pair.json", "five_qutrits.json", "full_rank_pair.json", "identify_pi3.json", "orthogonal_ud.json"}) {
    const TaskSpec t = load_spec(data(name));
    EXPECT_EQ(parse_spec(to_json(t)), t) << name;
    EXPECT_EQ(parse_spec(json::parse(to_json(t).dump())), t) << name;
  }
}

TEST(SpecFile, Rejections) {
  EXPECT_EQ(oracle::kind_of([] { load_spec(data("malformed.json")); }), ErrorKind::ParseError);
  EXPECT_EQ(oracle::kind_of([] { load_spec(data("missing.json")); }), ErrorKind::ParseError);
  EXPECT_EQ(oracle::kind_of([] { load_spec(data("long_bloch.json")); }), ErrorKind::InvalidBloch);
  const json qutrit_bloch = {{"dimension", 3}, {"observables", {{{"name", "A"}, {"bloch", {0, 0, 1}}}}}};
  EXPECT_EQ(oracle::kind_of([&] { parse_spec(qutrit_bloch); }), ErrorKind::ParseError);
  const json partial_priors = {
      {"dimension", 2},
      {"observables", {{{"name", "A"}, {"prior", 1.0}, {"bloch", {0, 0, 1}}}, {{"name", "B"}, {"bloch", {1, 0, 0}}}}}};
  EXPECT_EQ(oracle::kind_of([&] { parse_spec(partial_priors); }), ErrorKind::ParseError);
  const json unknown_target = {{"dimension", 2},
                               {"observables", {{{"name", "A"}, {"bloch", {0, 0, 1}}}}},
                               {"task", {{"mode", "ui"}, {"targets", {"Z"}}}}};
  EXPECT_EQ(oracle::kind_of([&] { parse_spec(unknown_target); }), ErrorKind::ParseError);
}

TEST(Validate, Statuses) {
  EXPECT_EQ(validate_file("spin_pair.json").status, kOk);
  EXPECT_EQ(validate_file("five_qutrits.json").status, kOk);
  const CommandRun doubled = validate_file("doubled_identity.json");
  EXPECT_EQ(doubled.status, kValidationFailed);
  EXPECT_NEAR(doubled.report["diagnostics"]["observables"][0]["normalization_defect"].get<double>(), 1.0, 1e-12);
  expect_schema(doubled.report);
  EXPECT_EQ(validate_file("long_bloch.json").status, kValidationFailed);
  EXPECT_EQ(validate_file("malformed.json").status, kParseFailed);
}

TEST(Orbits, Rows) {
  for (auto [n, k, rows] : {std::tuple{3u, 3u, 5u}, {2u, 2u, 2u}, {1u, 5u, 1u}}) {
    const CommandRun r = run_json([&](auto& o, auto& out, auto& err) { return cmd_orbits(n, k, o, out, err); });
    EXPECT_EQ(r.status, kOk);
    EXPECT_EQ(r.report["result"]["patterns"].size(), rows);
    expect_schema(r.report);
  }
  std::ostringstream out, err;
  EXPECT_EQ(cmd_orbits(3, 3, {}, out, err), kOk);
  for (const char* name : {"xxx", "xxy", "xyx", "xyy", "xyz", "total: 5 orbits"})
    EXPECT_NE(out.str().find(name), std::string::npos) << name;
}

TEST(Discriminate, SpinPair) {
  const CommandRun r = discriminate("spin_pair.json");
  EXPECT_EQ(r.status, kOk);
  expect_schema(r.report);
  EXPECT_EQ(conclusions(r.report["table"]), (std::vector<std::string>{"sigma_z", "sigma_x"}));
  EXPECT_EQ(r.report["table"][0]["pattern"], "xx");
  const auto probe = r.report["probe"];
  ASSERT_EQ(probe.size(), 4u);
  EXPECT_NEAR(probe[0][0].get<double>(), 1 / std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(probe[3][0].get<double>(), -1 / std::sqrt(2.0), 1e-9);
}

TEST(Discriminate, FiveQutrits) {
  const CommandRun r = discriminate("five_qutrits.json");
  EXPECT_EQ(r.status, kOk);
  EXPECT_EQ(conclusions(r.report["table"]), (std::vector<std::string>{"E", "D", "C", "B", "A"}));
  CommandOptions all;
  all.all_assignments = true;
  EXPECT_EQ(discriminate("five_qutrits.json", all).report["result"]["all_feasible_assignments"].size(), 6u);
}

TEST(Discriminate, ObliquePairIsInfeasible) {
  const CommandRun r = discriminate("sharp_pi4.json");
  EXPECT_EQ(r.status, kInfeasible);
  expect_schema(r.report);
  EXPECT_GT(r.report["diagnostics"]["min_eigenvalue"].get<double>(), 1e-6);
}

TEST(Discriminate, FullRankEffect) {
  const CommandRun r = discriminate("full_rank_pair.json");
  EXPECT_EQ(r.status, kOk);
  EXPECT_TRUE(r.report["diagnostics"]["zero_eigenvalue_condition"].get<bool>());
}

TEST(Discriminate, ShotOverride) {
  CommandOptions three;
  three.shots = 3;
  const CommandRun r = discriminate("sharp_pi4.json", three);
  EXPECT_EQ(r.report["task"]["shots"], 3);
}

TEST(Identify, Examples) {
  const CommandRun ui = identify("identify_pi3.json");
  EXPECT_EQ(ui.status, kOk);
  expect_schema(ui.report);
  EXPECT_NEAR(ui.report["result"]["success_probability"].get<double>(), 0.375, 1e-6);

  const CommandRun ud = identify("orthogonal_ud.json");
  EXPECT_EQ(ud.status, kOk);
  EXPECT_NEAR(ud.report["result"]["success_probability"].get<double>(), 1.0, 1e-9);

  const CommandRun same = identify("identical.json");
  EXPECT_EQ(same.status, kInfeasible);
  expect_schema(same.report);
  EXPECT_FALSE(same.err.empty());
}

TEST(Identify, TargetAndModeOverrides) {
  CommandOptions opts;
  opts.mode = Mode::UI;
  opts.targets = std::vector<std::string>{"B"};
  const CommandRun r = identify("identify_pi3.json", opts);
  EXPECT_EQ(r.report["task"]["targets"], json({"B"}));
  EXPECT_NEAR(r.report["result"]["success_probability"].get<double>(), 0.375, 1e-6);
  opts.targets = std::vector<std::string>{"Q"};
  EXPECT_EQ(identify("identify_pi3.json", opts).status, kParseFailed);
}

TEST(Explore, ReportIsWellFormed) {
  CommandOptions opts;
  opts.seed = 5;
  const CommandRun r = run_json([&](auto& o, auto& out, auto& err) {
    return cmd_explore({0, 0, 1}, {std::sqrt(3.0) / 2, 0, 0.5}, {0.5, 0.5}, 2000, o, out, err);
  }, opts);
  EXPECT_TRUE(r.status == kOk || r.status == kInfeasible);
  expect_schema(r.report);
  EXPECT_TRUE(r.report["result"]["exploratory"].get<bool>());
  EXPECT_EQ(r.report["diagnostics"]["wrong_conclusions"], 0);

  const CommandRun bad = run_json([&](auto& o, auto& out, auto& err) {
    return cmd_explore({0, 0, 2}, {1, 0, 0}, {0.5, 0.5}, 10, o, out, err);
  });
  EXPECT_EQ(bad.status, kValidationFailed);
}

TEST(Reproductions, AllChecksPass) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_paper({}, out, err), kOk) << out.str();
  EXPECT_NE(out.str().find("Example 2: table matches"), std::string::npos);
  for (const auto& c : run_reproductions()) EXPECT_TRUE(c.passed) << c.line() << " " << c.detail;
}

TEST(Reproductions, JsonReport) {
  const CommandRun r = run_json([](auto& o, auto& out, auto& err) { return cmd_paper(o, out, err); });
  EXPECT_EQ(r.status, kOk);
  expect_schema(r.report);
}

TEST(ReportSchema, DetectsProblems) {
  EXPECT_FALSE(check_report_schema(json::object()).empty());
  EXPECT_FALSE(check_report_schema({{"command", "x"}, {"status", 7}, {"result", json::object()}, {"diagnostics", json::object()}}).empty());
  EXPECT_FALSE(check_report_schema({{"command", "x"}, {"status", 0}, {"result", json::object()}, {"diagnostics", json::object()}, {"table", 3}}).empty());
  EXPECT_TRUE(check_report_schema({{"command", "x"}, {"status", 0}, {"result", json::object()}, {"diagnostics", json::object()}}).empty());
}

TEST(SearchCap, Environment) {
  ::unsetenv("POVM_DISCRIM_SEARCH_CAP");
  EXPECT_FALSE(search_cap_from_env().has_value());
  ::setenv("POVM_DISCRIM_SEARCH_CAP", "1", 1);
  EXPECT_EQ(search_cap_from_env(), 1u);
  ::setenv("POVM_DISCRIM_SEARCH_CAP", "abc", 1);
  EXPECT_EQ(oracle::kind_of([] { search_cap_from_env(); }), ErrorKind::ParseError);
  ::unsetenv("POVM_DISCRIM_SEARCH_CAP");

  CommandOptions tiny;
  tiny.search_cap = 1;
  EXPECT_EQ(discriminate("five_qutrits.json", tiny).status, kParseFailed);
}

TEST(ExitStatus, Mapping) {
  EXPECT_EQ(exit_status_for(Error(ErrorKind::InvalidBloch, "")), kValidationFailed);
  EXPECT_EQ(exit_status_for(Error(ErrorKind::NotPositive, "")), kValidationFailed);
  EXPECT_EQ(exit_status_for(Error(ErrorKind::CollinearDirections, "")), kValidationFailed);
  EXPECT_EQ(exit_status_for(Error(ErrorKind::ParseError, "")), kParseFailed);
  EXPECT_EQ(exit_status_for(Error(ErrorKind::SearchCapExceeded, "")), kParseFailed);
  EXPECT_EQ(exit_status_for(Error(ErrorKind::DimensionOverflow, "")), kParseFailed);
}
