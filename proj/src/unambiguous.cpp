#include "povm_discrim/unambiguous.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "povm_discrim/error.hpp"

namespace povm_discrim {

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::PD: return "pd";
    case Mode::UD: return "ud";
    case Mode::PI: return "pi";
    case Mode::UI: return "ui";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "pd") return Mode::PD;
  if (lower == "ud") return Mode::UD;
  if (lower == "pi") return Mode::PI;
  if (lower == "ui") return Mode::UI;
  return std::nullopt;
}

// ---- TaskSpec ----

TaskSpec TaskSpec::make(std::vector<Povm> observables, Mode mode, std::size_t shots,
                        std::vector<std::size_t> targets, std::vector<double> priors,
                        std::vector<std::string> names) {
  TaskSpec task;
  const std::size_t m = observables.size();
  task.observables = std::move(observables);
  task.mode = mode;
  task.shots = shots;
  if (names.empty())
    for (std::size_t x = 0; x < m; ++x) names.push_back("X" + std::to_string(x + 1));
  task.names = std::move(names);
  if (priors.empty()) priors.assign(m, m ? 1.0 / static_cast<double>(m) : 0.0);
  task.priors = std::move(priors);
  if (targets.empty()) {
    targets.resize(m);
    std::iota(targets.begin(), targets.end(), std::size_t{0});
  }
  std::sort(targets.begin(), targets.end());
  task.targets = std::move(targets);
  task.validate();
  return task;
}

void TaskSpec::validate() const {
  if (observables.empty()) throw Error(ErrorKind::InvalidArgument, "task has no observables");
  const std::size_t m = observables.size();
  for (const auto& obs : observables)
    if (obs.dim() != observables.front().dim() || obs.outcome_count() != observables.front().outcome_count())
      throw Error(ErrorKind::DimensionMismatch, "observables differ in dimension or outcome count");
  if (names.size() != m) throw Error(ErrorKind::InvalidArgument, "one name per observable required");
  if (priors.size() != m) throw Error(ErrorKind::InvalidArgument, "one prior per observable required");
  double total = 0.0;
  for (double eta : priors) {
    if (!(eta >= 0.0)) throw Error(ErrorKind::InvalidArgument, "priors must be nonnegative");
    total += eta;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "priors sum to " << total << ", not 1";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  if (targets.empty()) throw Error(ErrorKind::InvalidArgument, "target set is empty");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= m) throw Error(ErrorKind::InvalidArgument, "target index out of range");
    if (i > 0 && targets[i] <= targets[i - 1])
      throw Error(ErrorKind::InvalidArgument, "targets must be ascending and distinct");
  }
  if ((mode == Mode::PD || mode == Mode::UD) && targets.size() != m)
    throw Error(ErrorKind::InvalidArgument, "PD and UD target every observable");
  if (shots == 0) throw Error(ErrorKind::InvalidArgument, "shot count must be positive");
}

bool TaskSpec::is_target(std::size_t x) const {
  return std::binary_search(targets.begin(), targets.end(), x);
}

std::size_t RegionMap::region_of(const OutcomePattern& p) const {
  for (std::size_t i = 0; i < patterns.size(); ++i)
    if (patterns[i] == p) return region[i];
  throw Error(ErrorKind::InvalidArgument, "pattern not covered by region map");
}

// ---- optimizer ----

namespace {

Eigen::MatrixXcd basis_matrix(const std::vector<StateVector>& basis) {
  Eigen::MatrixXcd k(static_cast<Eigen::Index>(basis.front().dim()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) k.col(static_cast<Eigen::Index>(c)) = basis[c].amplitudes();
  return k;
}

// Top eigenpair of K^dagger M K.
std::pair<double, Vector> compressed_top(const Eigen::MatrixXcd& k, const Operator& m) {
  Eigen::MatrixXcd reduced = k.adjoint() * m.matrix() * k;
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(reduced);
  const auto last = reduced.rows() - 1;
  Vector lifted = k * solver.eigenvectors().col(last);
  return {solver.eigenvalues()(last), std::move(lifted)};
}

struct MapOperators {
  Operator constraint;
  Operator success;
  std::vector<std::optional<Operator>> conclusive;  // per observable; set for targets
};

MapOperators build_map_operators(const TaskSpec& task, const OrbitEffectTable& table,
                                 const std::vector<std::size_t>& region) {
  const std::size_t m = task.observables.size();
  const std::size_t dim = table.effects.front().front().dim();
  MapOperators ops{Operator(dim), Operator(dim), std::vector<std::optional<Operator>>(m)};
  for (std::size_t x : task.targets) ops.conclusive[x] = Operator(dim);

  for (std::size_t p = 0; p < table.patterns.size(); ++p) {
    const std::size_t r = region[p];
    if (r != kInconclusive) {
      for (std::size_t y = 0; y < m; ++y)
        if (y != r) ops.constraint += table.effects[y][p];
      ops.success += table.effects[r][p] * Complex(task.priors[r]);
      *ops.conclusive[r] += table.effects[r][p];
    } else if (task.mode == Mode::PI) {
      // "not a target": impossible for targets, a correct conclusion otherwise.
      for (std::size_t y = 0; y < m; ++y) {
        if (task.is_target(y))
          ops.constraint += table.effects[y][p];
        else
          ops.success += table.effects[y][p] * Complex(task.priors[y]);
      }
    }
  }
  return ops;
}

bool needs_nonzero_targets(Mode mode) { return mode == Mode::UD || mode == Mode::UI; }

MapEvaluation evaluate_map(const TaskSpec& task, const OrbitEffectTable& table, const std::vector<std::size_t>& region) {
  MapEvaluation ev;
  ev.map = RegionMap{table.patterns, region};
  ev.per_target_probability.assign(task.observables.size(), 0.0);

  const MapOperators ops = build_map_operators(task, table, region);
  const EigenResult eig = eig_hermitian(ops.constraint);
  ev.constraint_min_eigenvalue = eig.eigenvalues.front();
  const double tol = default_zero_tol(ops.constraint);
  std::vector<StateVector> basis;
  for (std::size_t i = 0; i < eig.eigenvalues.size() && eig.eigenvalues[i] <= tol; ++i)
    basis.push_back(eig.eigenvectors[i]);
  ev.kernel_dim = basis.size();
  if (basis.empty()) return ev;
  ev.kernel_nonempty = true;

  const Eigen::MatrixXcd k = basis_matrix(basis);

  // Every target must be reachable from some kernel vector.
  std::vector<std::pair<std::size_t, Vector>> target_tops;
  if (needs_nonzero_targets(task.mode)) {
    for (std::size_t x : task.targets) {
      auto [value, vec] = compressed_top(k, *ops.conclusive[x]);
      if (!(value > kNonzeroThreshold)) return ev;
      target_tops.emplace_back(x, std::move(vec));
    }
  }

  auto [best_value, best_vec] = compressed_top(k, ops.success);
  ev.success_probability = std::clamp(best_value, 0.0, 1.0);

  auto failing = [&](const StateVector& psi) {
    std::vector<std::size_t> out;
    for (std::size_t x : task.targets) {
      ev.per_target_probability[x] = std::clamp(psi.expectation(*ops.conclusive[x]), 0.0, 1.0);
      if (needs_nonzero_targets(task.mode) && !(ev.per_target_probability[x] > kNonzeroThreshold))
        out.push_back(x);
    }
    return out;
  };

  StateVector probe = StateVector::normalized(best_vec).with_canonical_phase();
  std::vector<std::size_t> missing = failing(probe);
  // The optimum can leave a target unreachable; the requirement is then met
  // only by nearby probes, so mix in each missing target's best direction.
  for (double delta : {1e-2, 1e-1, 1.0}) {
    if (missing.empty()) break;
    Vector mixed = best_vec;
    for (const auto& [x, vec] : target_tops)
      if (std::find(missing.begin(), missing.end(), x) != missing.end()) mixed += delta * vec;
    probe = StateVector::normalized(std::move(mixed)).with_canonical_phase();
    missing = failing(probe);
  }
  if (!missing.empty()) return ev;

  ev.admissible = true;
  ev.probe_success_probability = std::clamp(probe.expectation(ops.success), 0.0, 1.0);
  ev.probe = std::move(probe);
  return ev;
}

std::vector<std::size_t> region_options(const TaskSpec& task) {
  std::vector<std::size_t> options = task.targets;
  if (task.mode != Mode::PD) options.push_back(kInconclusive);
  return options;
}

}  // namespace

double max_error_probability(const OrbitEffectTable& table, const RegionMap& map, const StateVector& probe) {
  double worst = 0.0;
  for (std::size_t p = 0; p < table.patterns.size(); ++p) {
    const std::size_t r = map.region_of(table.patterns[p]);
    if (r == kInconclusive) continue;
    for (std::size_t y = 0; y < table.effects.size(); ++y)
      if (y != r) worst = std::max(worst, probe.expectation(table.effects[y][p]));
  }
  return worst;
}

std::vector<MapEvaluation> evaluate_region_maps(const TaskSpec& task, const OptimizeOptions& options) {
  task.validate();
  const auto choices = region_options(task);
  const std::size_t pattern_count = enumerate_patterns(task.shots, task.observables.front().outcome_count()).size();

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < pattern_count; ++i) {
    if (total > options.search_cap / choices.size()) {
      std::ostringstream os;
      os << choices.size() << "^" << pattern_count << " region maps exceed the search cap " << options.search_cap;
      throw Error(ErrorKind::SearchCapExceeded, os.str());
    }
    total *= choices.size();
  }

  const OrbitEffectTable table = build_orbit_effects(task.observables, task.shots);
  std::vector<MapEvaluation> out;
  std::vector<std::size_t> digits(pattern_count, 0);
  std::vector<std::size_t> region(pattern_count);
  while (true) {
    for (std::size_t p = 0; p < pattern_count; ++p) region[p] = choices[digits[p]];
    if (!options.map_filter || options.map_filter(RegionMap{table.patterns, region}))
      out.push_back(evaluate_map(task, table, region));

    std::size_t pos = pattern_count;
    while (pos-- > 0) {
      if (++digits[pos] < choices.size()) break;
      digits[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

IdentificationResult optimize(const TaskSpec& task, const OptimizeOptions& options) {
  const std::vector<MapEvaluation> evaluations = evaluate_region_maps(task, options);
  IdentificationResult result;
  result.maps_searched = evaluations.size();
  result.per_target_probability.assign(task.observables.size(), 0.0);

  const MapEvaluation* best = nullptr;
  for (const auto& ev : evaluations) {
    if (!ev.admissible) continue;
    ++result.admissible_maps;
    if (!best || ev.success_probability > best->success_probability + 1e-12) best = &ev;
  }
  if (!best) {
    std::ostringstream os;
    os << "no region map satisfies mode " << to_string(task.mode) << " (" << evaluations.size()
       << " maps searched)";
    result.diagnostics = os.str();
    return result;
  }

  result.feasible = true;
  result.success_probability = best->success_probability;
  result.probe = best->probe;
  result.region_map = best->map;
  result.per_target_probability = best->per_target_probability;
  result.probe_success_probability = best->probe_success_probability;
  result.kernel_dim = best->kernel_dim;
  const OrbitEffectTable table = build_orbit_effects(task.observables, task.shots);
  result.max_error_probability = max_error_probability(table, result.region_map, *result.probe);
  if (result.probe_success_probability < result.success_probability - 1e-9)
    result.diagnostics = "supremum not attained; reported probe is a nearby admissible state";
  return result;
}

// ---- closed forms for sharp qubit pairs ----

namespace {

Vec3 require_unit(const Vec3& v, const char* what) {
  const double len = norm(v);
  if (std::abs(len - 1.0) > 1e-9) {
    std::ostringstream os;
    os << what << " must be a unit vector, has length " << len;
    throw Error(ErrorKind::InvalidBloch, os.str());
  }
  return v;
}

void require_noncollinear(const Vec3& a, const Vec3& b) {
  if (!(norm(cross(a, b)) > 1e-12)) throw Error(ErrorKind::CollinearDirections, "directions are collinear");
}

}  // namespace

double closed_form_identification(const BlochObservable& a, const Vec3& b) {
  require_unit(b, "sharp direction b");
  const double len = norm(a.vector);
  if (len > 1.0 + 1e-12) throw Error(ErrorKind::InvalidBloch, "Bloch vector a longer than 1");
  if (!(a.prior >= 0.0 && a.prior <= 1.0)) throw Error(ErrorKind::InvalidArgument, "prior outside [0, 1]");
  const double len2 = len * len;
  const double sin2 = len > 0.0 ? std::pow(std::sin(bloch_angle(a.vector, b)), 2) : 0.0;
  return a.prior * (len2 * sin2 + 0.5 * (1.0 - len2));
}

StateVector optimal_two_shot_probe(const Vec3& b) {
  require_unit(b, "direction b");
  const auto [phi, phi_perp] = bloch_eigenbasis(b);
  const Vector sym = tensor(phi, phi_perp).amplitudes() + tensor(phi_perp, phi).amplitudes();
  return StateVector::normalized(sym).with_canonical_phase();
}

Operator same_diff_unitary(const Vec3& a, const Vec3& b) {
  require_noncollinear(a, b);
  const Vec3 c = cross(a, b);
  const double len = norm(c);
  return bloch_operator({c[0] / len, c[1] / len, c[2] / len});
}

StateVector same_diff_symmetry_transform(const Vec3& a, const Vec3& b, const StateVector& psi) {
  if (psi.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "two-qubit probe expected");
  const Operator u = same_diff_unitary(a, b);
  return StateVector(tensor(Operator::identity(2), u).matrix() * psi.amplitudes());
}

RegionMap four_shot_region_map() {
  RegionMap map;
  map.patterns = enumerate_patterns(4, 2);
  for (const auto& p : map.patterns) {
    const bool first_same = p.canonical[0] == p.canonical[1];
    const bool second_same = p.canonical[2] == p.canonical[3];
    if (first_same && !second_same)
      map.region.push_back(0);
    else if (!first_same && second_same)
      map.region.push_back(1);
    else
      map.region.push_back(kInconclusive);
  }
  return map;
}

IdentificationResult four_shot_discrimination(const Vec3& a, const Vec3& b, std::pair<double, double> priors) {
  require_unit(a, "direction a");
  require_unit(b, "direction b");
  require_noncollinear(a, b);

  const std::vector<Povm> pair{from_bloch(a), from_bloch(b)};
  const TaskSpec task = TaskSpec::make(pair, Mode::UD, 4, {0, 1}, {priors.first, priors.second}, {"A", "B"});

  IdentificationResult result;
  result.region_map = four_shot_region_map();
  const StateVector probe = tensor(optimal_two_shot_probe(b), optimal_two_shot_probe(a));
  const OrbitEffectTable table = build_orbit_effects(task.observables, task.shots);

  result.per_target_probability.assign(2, 0.0);
  std::array<double, 2> both_same_by_obs{0.0, 0.0};
  for (std::size_t p = 0; p < table.patterns.size(); ++p) {
    const std::size_t r = result.region_map.region[p];
    const auto& c = table.patterns[p].canonical;
    for (std::size_t x = 0; x < 2; ++x) {
      const double prob = probe.expectation(table.effects[x][p]);
      if (r == x) result.per_target_probability[x] += prob;
      if (c[0] == c[1] && c[2] == c[3]) both_same_by_obs[x] += prob;
    }
  }
  // Both pairs equal would name A and B at once; it must be impossible.
  const double both_same = std::max(both_same_by_obs[0], both_same_by_obs[1]);
  result.max_error_probability = std::max(max_error_probability(table, result.region_map, probe), both_same);
  result.success_probability =
      task.priors[0] * result.per_target_probability[0] + task.priors[1] * result.per_target_probability[1];
  result.probe_success_probability = result.success_probability;
  result.feasible = result.per_target_probability[0] > kNonzeroThreshold &&
                    result.per_target_probability[1] > kNonzeroThreshold &&
                    result.max_error_probability <= kZeroTol;
  result.probe = probe;
  result.maps_searched = 1;
  result.admissible_maps = result.feasible ? 1 : 0;
  std::ostringstream os;
  os << "both-pairs-same probability " << both_same;
  result.diagnostics = os.str();
  return result;
}

bool check_no_unambiguous_discrimination(const Povm& obs, double zero_tol) {
  return std::any_of(obs.effects().begin(), obs.effects().end(),
                     [&](const Operator& e) { return min_eigenvalue(e) <= zero_tol; });
}

ThreeShotReport explore_three_shot(const Vec3& a, const Vec3& b, std::pair<double, double> priors,
                                   std::uint64_t samples, std::uint64_t seed) {
  require_unit(a, "direction a");
  require_unit(b, "direction b");
  ThreeShotReport report;
  report.a = a;
  report.b = b;
  report.priors = priors;
  report.angle = bloch_angle(a, b);
  report.samples = samples;

  const TaskSpec task =
      TaskSpec::make({from_bloch(a), from_bloch(b)}, Mode::UD, 3, {0, 1}, {priors.first, priors.second}, {"A", "B"});
  report.best = optimize(task);
  report.ud_feasible = report.best.feasible;
  if (!report.best.feasible) return report;

  for (std::size_t x = 0; x < 2; ++x) {
    const PatternHistogram hist = simulate(task.observables[x], *report.best.probe, 3, samples, seed + x);
    for (const auto& [pattern, count] : hist) {
      const std::size_t r = report.best.region_map.region_of(pattern);
      if (r != kInconclusive && r != x) report.wrong_conclusions += count;
    }
  }
  return report;
}

}  // namespace povm_discrim
