#include "povm_discrim/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>

#include <json.hpp>

#include "povm_discrim/cli/report.hpp"
#include "povm_discrim/cli/reproduce.hpp"
#include "povm_discrim/cli/spec_file.hpp"

namespace povm_discrim::cli {

using nlohmann::json;

std::optional<std::uint64_t> search_cap_from_env() {
  const char* raw = std::getenv("POVM_DISCRIM_SEARCH_CAP");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0 || raw[0] == '-')
    throw Error(ErrorKind::ParseError, "POVM_DISCRIM_SEARCH_CAP must be a positive integer");
  return static_cast<std::uint64_t>(v);
}

int exit_status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidBloch:
    case ErrorKind::NotPositive:
    case ErrorKind::NotHermitian:
    case ErrorKind::InvalidState:
    case ErrorKind::ZeroVector:
    case ErrorKind::CollinearDirections:
      return kValidationFailed;
    default:
      return kParseFailed;
  }
}

namespace {

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const json& report, const CommandOptions& opts, std::ostream& out) {
  if (opts.json)
    out << report.dump(2) << "\n";
  else
    render_text(report, out);
}

TaskSpec load_task(const std::filesystem::path& path, const CommandOptions& opts) {
  TaskSpec task = load_spec(path);
  if (!opts.shots && !opts.mode && !opts.targets) return task;
  if (opts.shots) task.shots = *opts.shots;
  if (opts.mode) task.mode = *opts.mode;
  if (opts.targets) {
    task.targets.clear();
    for (const auto& name : *opts.targets) {
      auto it = std::find(task.names.begin(), task.names.end(), name);
      if (it == task.names.end()) throw Error(ErrorKind::ParseError, "unknown target \"" + name + "\"");
      task.targets.push_back(static_cast<std::size_t>(it - task.names.begin()));
    }
    std::sort(task.targets.begin(), task.targets.end());
    task.targets.erase(std::unique(task.targets.begin(), task.targets.end()), task.targets.end());
  }
  if (task.mode == Mode::PD || task.mode == Mode::UD) {
    task.targets.resize(task.observables.size());
    for (std::size_t x = 0; x < task.targets.size(); ++x) task.targets[x] = x;
  }
  try {
    task.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return task;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_status_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kParseFailed;
  }
}

json probe_json(const std::optional<StateVector>& probe) { return probe ? to_json(*probe) : json(nullptr); }

}  // namespace

int cmd_validate(const std::filesystem::path& spec, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Stopwatch clock;
    const TaskSpec task = load_spec(spec);
    const double tol = opts.tol.value_or(kValidationTol);
    bool all_valid = true;
    json rows = json::array();
    for (std::size_t x = 0; x < task.observables.size(); ++x) {
      const ValidationReport r = validate(task.observables[x], tol);
      all_valid = all_valid && r.valid;
      rows.push_back({{"name", task.names[x]},
                      {"valid", r.valid},
                      {"positivity_violation", r.positivity_violation},
                      {"worst_effect", r.worst_effect},
                      {"normalization_defect", r.normalization_defect},
                      {"hermiticity_defect", r.hermiticity_defect}});
      if (!r.valid) err << "observable " << task.names[x] << " fails validation\n";
    }
    const int status = all_valid ? kOk : kValidationFailed;
    json report = {{"command", "validate"},
                   {"status", status},
                   {"task", task_echo(task)},
                   {"result", {{"valid", all_valid}}},
                   {"diagnostics", {{"tolerance", tol}, {"observables", rows}, {"wall_time_s", clock.seconds()}}}};
    emit(report, opts, out);
    return status;
  });
}

int cmd_orbits(std::size_t n, std::size_t k, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Stopwatch clock;
    if (n == 0 || k == 0) throw Error(ErrorKind::ParseError, "n and k must be positive");
    const auto patterns = enumerate_patterns(n, k);
    json rows = json::array();
    for (const auto& p : patterns)
      rows.push_back({{"pattern", pattern_name(p)}, {"canonical", p.canonical}, {"orbit_size", orbit_size(p.block_count, k)}});
    json report = {{"command", "orbits"},
                   {"status", kOk},
                   {"result", {{"shots", n}, {"outcomes", k}, {"count", patterns.size()}, {"patterns", rows}}},
                   {"diagnostics", {{"wall_time_s", clock.seconds()}}}};
    if (opts.json) {
      out << report.dump(2) << "\n";
    } else {
      out << std::left << std::setw(std::max<int>(8, static_cast<int>(n) + 2)) << "pattern" << "orbit size\n";
      for (const auto& row : rows)
        out << std::left << std::setw(std::max<int>(8, static_cast<int>(n) + 2)) << row["pattern"].get<std::string>()
            << row["orbit_size"].get<std::size_t>() << "\n";
      out << "total: " << patterns.size() << " orbits\n";
    }
    return kOk;
  });
}

int cmd_discriminate(const std::filesystem::path& spec, const CommandOptions& opts, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    Stopwatch clock;
    const TaskSpec task = load_task(spec, opts);
    DiscriminationOptions dopts;
    dopts.search_cap = opts.search_cap;
    dopts.zero_tol = opts.tol;
    dopts.collect_all = opts.all_assignments;
    const DiscriminationResult r = check_perfect_discrimination(task.observables, task.shots, dopts);
    const std::size_t k = task.observables.front().outcome_count();

    const int status = r.feasible ? kOk : kInfeasible;
    json result = {{"feasible", r.feasible}, {"kernel_dim", r.kernel_dim}};
    if (opts.all_assignments) {
      json all = json::array();
      for (const auto& a : r.all_feasible) all.push_back(assignment_table(a, task.names, k));
      result["all_feasible_assignments"] = std::move(all);
    }
    json diagnostics = {{"min_eigenvalue", std::isfinite(r.min_eigenvalue) ? json(r.min_eigenvalue) : json(nullptr)},
                        {"assignments_searched", r.assignments_searched},
                        {"wall_time_s", clock.seconds()}};
    if (task.observables.size() == 2 && task.shots == 2)
      diagnostics["zero_eigenvalue_condition"] = verify_zero_eigenvalue_condition(task.observables);
    json report = {{"command", "discriminate"},
                   {"status", status},
                   {"task", task_echo(task)},
                   {"result", std::move(result)},
                   {"probe", probe_json(r.probe)},
                   {"diagnostics", std::move(diagnostics)}};
    if (r.assignment) report["table"] = assignment_table(*r.assignment, task.names, k);
    if (!r.feasible) err << "not perfectly discriminable in " << task.shots << " shots\n";
    emit(report, opts, out);
    return status;
  });
}

int cmd_identify(const std::filesystem::path& spec, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Stopwatch clock;
    const TaskSpec task = load_task(spec, opts);
    OptimizeOptions oopts;
    oopts.search_cap = opts.search_cap;
    const IdentificationResult r = optimize(task, oopts);
    const std::size_t k = task.observables.front().outcome_count();

    const bool success = r.feasible && r.success_probability > 0.0;
    const int status = success ? kOk : kInfeasible;
    json per_target = json::object();
    for (std::size_t x : task.targets) per_target[task.names[x]] = r.per_target_probability.at(x);
    json report = {{"command", "identify"},
                   {"status", status},
                   {"task", task_echo(task)},
                   {"result",
                    {{"feasible", r.feasible},
                     {"success_probability", r.success_probability},
                     {"probe_success_probability", r.probe_success_probability},
                     {"per_target_probability", std::move(per_target)}}},
                   {"probe", probe_json(r.probe)},
                   {"diagnostics",
                    {{"maps_searched", r.maps_searched},
                     {"admissible_maps", r.admissible_maps},
                     {"kernel_dim", r.kernel_dim},
                     {"max_error_probability", r.max_error_probability},
                     {"wall_time_s", clock.seconds()}}}};
    if (!r.diagnostics.empty()) report["diagnostics"]["note"] = r.diagnostics;
    if (r.feasible) report["table"] = region_table(r.region_map, task.names, k);
    if (!success) err << "no conclusive scheme: " << (r.diagnostics.empty() ? "zero success probability" : r.diagnostics) << "\n";
    emit(report, opts, out);
    return status;
  });
}

int cmd_explore(const Vec3& a, const Vec3& b, std::pair<double, double> priors, std::uint64_t samples,
                const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Stopwatch clock;
    const ThreeShotReport r = explore_three_shot(a, b, priors, samples, opts.seed);
    const int status = r.ud_feasible ? kOk : kInfeasible;
    json report = {{"command", "explore"},
                   {"status", status},
                   {"task",
                    {{"mode", "ud"},
                     {"shots", 3},
                     {"dimension", 2},
                     {"observables", {"A", "B"}},
                     {"a", r.a},
                     {"b", r.b},
                     {"priors", {r.priors.first, r.priors.second}}}},
                   {"result",
                    {{"exploratory", true},
                     {"angle", r.angle},
                     {"ud_feasible", r.ud_feasible},
                     {"best_success_probability", r.best.success_probability},
                     {"per_target_probability", r.best.per_target_probability}}},
                   {"probe", probe_json(r.best.probe)},
                   {"diagnostics",
                    {{"maps_searched", r.best.maps_searched},
                     {"admissible_maps", r.best.admissible_maps},
                     {"samples", r.samples},
                     {"seed", opts.seed},
                     {"wrong_conclusions", r.wrong_conclusions},
                     {"note", "numerical evidence from exhaustive region-map search, not a proof"},
                     {"wall_time_s", clock.seconds()}}}};
    if (r.ud_feasible) report["table"] = region_table(r.best.region_map, {"A", "B"}, 2);
    emit(report, opts, out);
    return status;
  });
}

int cmd_paper(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Stopwatch clock;
    const auto checks = run_reproductions();
    const bool all = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    const int status = all ? kOk : kValidationFailed;
    if (opts.json) {
      json items = json::array();
      for (const auto& c : checks) items.push_back({{"label", c.line()}, {"passed", c.passed}, {"detail", c.detail}});
      json report = {{"command", "paper"},
                     {"status", status},
                     {"result", {{"all_passed", all}, {"checks", std::move(items)}}},
                     {"diagnostics", {{"wall_time_s", clock.seconds()}}}};
      out << report.dump(2) << "\n";
    } else {
      std::size_t passed = 0;
      for (const auto& c : checks) {
        out << c.line() << "\n";
        if (!c.detail.empty()) out << "    " << c.detail << "\n";
        passed += c.passed ? 1 : 0;
      }
      out << passed << "/" << checks.size() << " checks passed\n";
    }
    if (!all) err << "some reproductions failed\n";
    return status;
  });
}

}  // namespace povm_discrim::cli
