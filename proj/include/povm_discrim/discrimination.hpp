#pragma once

// Perfect discrimination of a finite set of observables with n uses of an
// apparatus whose outcome labels are unknown.
//
// A conclusion can depend only on the orbit (pattern) of the observed
// sequence, so a scheme is an assignment pattern -> observable. Writing E_X(p)
// for the sum of X's n-fold product effects over the orbit p, an assignment is
// realizable iff some probe psi satisfies <psi|E_X(p)|psi> = 0 whenever p is
// not assigned to X. All E_X(p) are positive, so this holds iff psi lies in
// the kernel of C = sum_X sum_{p not assigned to X} E_X(p).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "povm_discrim/operator.hpp"
#include "povm_discrim/outcomes.hpp"
#include "povm_discrim/povm.hpp"

namespace povm_discrim {

inline constexpr std::size_t kMaxTotalDim = 10'000;
inline constexpr std::uint64_t kDefaultSearchCap = 10'000'000;

// dim^n; throws DimensionOverflow above kMaxTotalDim.
std::size_t joint_dim(std::size_t dim, std::size_t n);

// E_{j_1} (x) ... (x) E_{j_n}
Operator sequence_effect(const Povm& obs, const OutcomeSequence& s);

// Sum of sequence_effect over the orbit of `p`.
Operator orbit_effect(const Povm& obs, const OutcomePattern& p, std::size_t n);

// <psi|E_s|psi>, clamped to [0, 1]. Throws DimensionMismatch if the probe
// does not live on dim^n.
double sequence_probability(const Povm& obs, const StateVector& probe, const OutcomeSequence& s);

// Orbit effects for every observable and pattern: table[x][p].
struct OrbitEffectTable {
  std::vector<OutcomePattern> patterns;
  std::vector<std::vector<Operator>> effects;
};
OrbitEffectTable build_orbit_effects(std::span<const Povm> observables, std::size_t n);

struct Assignment {
  std::vector<OutcomePattern> patterns;
  std::vector<std::size_t> observable;  // observable[i] concluded on patterns[i]
};

struct DiscriminationOptions {
  std::uint64_t search_cap = kDefaultSearchCap;
  std::optional<double> zero_tol;  // default: scale-aware, see default_zero_tol
  bool collect_all = false;
};

struct DiscriminationResult {
  bool feasible = false;
  std::optional<Assignment> assignment;
  std::optional<StateVector> probe;
  std::vector<StateVector> kernel_basis;
  std::size_t kernel_dim = 0;
  // Smallest eigenvalue of the constraint operator: for the chosen assignment
  // when feasible, otherwise the minimum over all assignments searched.
  double min_eigenvalue = 0.0;
  std::uint64_t assignments_searched = 0;
  std::vector<Assignment> all_feasible;  // filled only with collect_all
};

// Exhaustive search over surjective assignments in lexicographic order. Among
// feasible assignments the one whose kernel reaches the lowest-index
// computational basis state wins (earliest in order on ties); the probe is the
// normalized projection of that basis state onto the kernel.
// Throws SearchCapExceeded if M^#patterns > search_cap, DimensionOverflow,
// DimensionMismatch if the observables differ in dim or outcome count.
DiscriminationResult check_perfect_discrimination(std::span<const Povm> observables, std::size_t n,
                                                  const DiscriminationOptions& options = {});

// Necessary condition for two-shot discrimination: at most one effect among
// all observables lacks eigenvalue 0 (within zero_tol).
bool verify_zero_eigenvalue_condition(std::span<const Povm> observables, double zero_tol = 1e-9);

using PatternHistogram = std::map<OutcomePattern, std::uint64_t>;

// Samples `trials` sequences from the exact joint distribution and counts
// their patterns. Only patterns that occurred appear. Deterministic in `seed`.
PatternHistogram simulate(const Povm& true_obs, const StateVector& probe, std::size_t n,
                          std::uint64_t trials, std::uint64_t seed);

}  // namespace povm_discrim
