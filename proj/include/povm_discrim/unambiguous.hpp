#pragma once

// Error-free identification tasks with an inconclusive result.
//
// A region map sends every outcome pattern either to a target observable
// (a conclusion) or to "inconclusive". For a fixed map the admissible probes
// are the kernel of a positive constraint operator C, and the best success
// probability is the largest eigenvalue of the success operator S compressed
// to that kernel. The global optimum is the maximum over all region maps.
//
// Mode semantics:
//   PD  targets = all, no inconclusive patterns.
//   UD  targets = all, every observable has a nonzero conclusive probability.
//   PI  every pattern decides membership in the target set: a pattern mapped
//       to "inconclusive" reads as "not a target" and must be impossible for
//       every target.
//   UI  every target has a nonzero conclusive probability.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "povm_discrim/discrimination.hpp"
#include "povm_discrim/operator.hpp"
#include "povm_discrim/outcomes.hpp"
#include "povm_discrim/povm.hpp"

namespace povm_discrim {

enum class Mode { PD, UD, PI, UI };

std::string_view to_string(Mode mode) noexcept;
// Case-insensitive "pd", "ud", "pi", "ui".
std::optional<Mode> parse_mode(std::string_view text);

struct TaskSpec {
  std::vector<Povm> observables;
  std::vector<std::string> names;
  std::vector<double> priors;
  std::vector<std::size_t> targets;  // ascending, distinct
  std::size_t shots = 2;
  Mode mode = Mode::UI;

  // Fills defaults: names "X1".."XM", uniform priors, all observables as
  // targets. Validates the result.
  static TaskSpec make(std::vector<Povm> observables, Mode mode, std::size_t shots,
                       std::vector<std::size_t> targets = {}, std::vector<double> priors = {},
                       std::vector<std::string> names = {});

  // Throws InvalidArgument / DimensionMismatch when an invariant fails.
  void validate() const;
  bool is_target(std::size_t x) const;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

inline constexpr std::size_t kInconclusive = std::numeric_limits<std::size_t>::max();
inline constexpr double kZeroTol = 1e-9;
// Conclusive probabilities at or below this count as structural zeros.
inline constexpr double kNonzeroThreshold = 10 * kZeroTol;

struct RegionMap {
  std::vector<OutcomePattern> patterns;
  std::vector<std::size_t> region;  // observable index or kInconclusive

  std::size_t region_of(const OutcomePattern& p) const;
  friend bool operator==(const RegionMap&, const RegionMap&) = default;
};

struct MapEvaluation {
  RegionMap map;
  bool kernel_nonempty = false;
  bool admissible = false;  // kernel nonempty and the mode's requirement holds
  std::size_t kernel_dim = 0;
  double constraint_min_eigenvalue = 0.0;
  // Supremum of the success probability over probes in the kernel.
  double success_probability = 0.0;
  std::optional<StateVector> probe;
  // <probe|S|probe>; below success_probability only when the supremum is not
  // attained by a probe meeting the nonzero requirement.
  double probe_success_probability = 0.0;
  std::vector<double> per_target_probability;  // indexed by observable; 0 for non-targets
};

struct IdentificationResult {
  bool feasible = false;
  double success_probability = 0.0;
  std::optional<StateVector> probe;
  RegionMap region_map;
  std::vector<double> per_target_probability;
  double probe_success_probability = 0.0;
  // Largest probability of a wrong conclusion under the reported probe.
  double max_error_probability = 0.0;
  std::size_t kernel_dim = 0;
  std::uint64_t maps_searched = 0;
  std::uint64_t admissible_maps = 0;
  std::string diagnostics;
};

struct OptimizeOptions {
  std::uint64_t search_cap = kDefaultSearchCap;
  // Region maps rejected by the filter are skipped.
  std::function<bool(const RegionMap&)> map_filter;
};

// Evaluates every region map allowed by the task's mode, in lexicographic
// order (targets by index, inconclusive last). Throws SearchCapExceeded.
std::vector<MapEvaluation> evaluate_region_maps(const TaskSpec& task, const OptimizeOptions& options = {});

// Global optimum over region maps; ties go to the lexicographically first map.
// An infeasible task yields feasible = false and success_probability = 0.
IdentificationResult optimize(const TaskSpec& task, const OptimizeOptions& options = {});

// eta (|a|^2 sin^2 theta + (1 - |a|^2) / 2) for a possibly unsharp `a`
// against a sharp `b`. Throws InvalidBloch.
double closed_form_identification(const BlochObservable& a, const Vec3& b);

// (phi (x) phi_perp + phi_perp (x) phi) / sqrt 2 from the eigenbasis of b.sigma.
StateVector optimal_two_shot_probe(const Vec3& b);

// (I (x) U) psi with U = (a x b).sigma / |a x b|. U swaps the two effects of
// both observables, so it exchanges "same" and "diff" statistics.
// Throws CollinearDirections.
StateVector same_diff_symmetry_transform(const Vec3& a, const Vec3& b, const StateVector& psi);
Operator same_diff_unitary(const Vec3& a, const Vec3& b);

// Four shots: the first pair probes in b's eigenbasis and concludes A on equal
// outcomes, the second pair probes in a's eigenbasis and concludes B on equal
// outcomes. Throws InvalidBloch for non-unit vectors, CollinearDirections.
IdentificationResult four_shot_discrimination(const Vec3& a, const Vec3& b,
                                              std::pair<double, double> priors = {0.5, 0.5});
// Region map used by four_shot_discrimination (observable 0 = A, 1 = B).
RegionMap four_shot_region_map();

// True iff some effect has an eigenvalue <= zero_tol. False rules out
// unambiguous discrimination with any number of shots.
bool check_no_unambiguous_discrimination(const Povm& obs, double zero_tol = kZeroTol);

struct ThreeShotReport {
  Vec3 a{};
  Vec3 b{};
  std::pair<double, double> priors{0.5, 0.5};
  double angle = 0.0;
  bool ud_feasible = false;
  IdentificationResult best;
  std::uint64_t samples = 0;
  std::uint64_t wrong_conclusions = 0;  // Monte Carlo check of the best probe
};

// Exhaustive UD search with three shots for a sharp qubit pair, plus a
// sampled check of the best probe. Numerical evidence only.
ThreeShotReport explore_three_shot(const Vec3& a, const Vec3& b, std::pair<double, double> priors,
                                   std::uint64_t samples, std::uint64_t seed);

// Largest probability, under `probe`, of a conclusive pattern naming the wrong observable.
double max_error_probability(const OrbitEffectTable& table, const RegionMap& map, const StateVector& probe);

}  // namespace povm_discrim
