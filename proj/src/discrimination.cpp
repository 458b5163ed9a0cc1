#include "povm_discrim/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "povm_discrim/error.hpp"

namespace povm_discrim {

namespace {

void require_common_shape(std::span<const Povm> observables) {
  if (observables.empty()) throw Error(ErrorKind::InvalidArgument, "no observables given");
  for (const auto& obs : observables)
    if (obs.dim() != observables.front().dim() ||
        obs.outcome_count() != observables.front().outcome_count())
      throw Error(ErrorKind::DimensionMismatch, "observables differ in dimension or outcome count");
}

// base^exp, or nullopt if it exceeds `cap`.
std::optional<std::uint64_t> bounded_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return std::nullopt;
    v *= base;
  }
  return v <= cap ? std::optional(v) : std::nullopt;
}

bool is_surjective(const std::vector<std::size_t>& digits, std::size_t m) {
  std::vector<bool> hit(m, false);
  std::size_t count = 0;
  for (std::size_t d : digits)
    if (!hit[d]) {
      hit[d] = true;
      ++count;
    }
  return count == m;
}

// Increments a base-m counter whose most significant digit is digits[0].
bool next_digits(std::vector<std::size_t>& digits, std::size_t m) {
  for (std::size_t pos = digits.size(); pos-- > 0;) {
    if (++digits[pos] < m) return true;
    digits[pos] = 0;
  }
  return false;
}

// Lowest computational basis index with a nonzero projection onto span(basis).
std::size_t first_reachable_basis_state(const std::vector<StateVector>& basis) {
  const std::size_t dim = basis.front().dim();
  for (std::size_t i = 0; i < dim; ++i) {
    double weight = 0.0;
    for (const auto& v : basis) weight += std::norm(v[i]);
    if (std::sqrt(weight) > kPhaseTol) return i;
  }
  return dim;
}

StateVector project_basis_state(const std::vector<StateVector>& basis, std::size_t i) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis.front().dim()));
  for (const auto& b : basis) v += std::conj(b[i]) * b.amplitudes();
  return StateVector::normalized(v).with_canonical_phase();
}

}  // namespace

std::size_t joint_dim(std::size_t dim, std::size_t n) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= dim;
    if (total > kMaxTotalDim) {
      std::ostringstream os;
      os << dim << "^" << n << " exceeds the supported joint dimension " << kMaxTotalDim;
      throw Error(ErrorKind::DimensionOverflow, os.str());
    }
  }
  return total;
}

Operator sequence_effect(const Povm& obs, const OutcomeSequence& s) {
  if (s.k != obs.outcome_count()) throw Error(ErrorKind::DimensionMismatch, "sequence alphabet differs from outcome count");
  if (s.indices.empty()) throw Error(ErrorKind::InvalidArgument, "empty outcome sequence");
  joint_dim(obs.dim(), s.shots());
  Operator out = obs.effect(s.indices.front());
  for (std::size_t i = 1; i < s.indices.size(); ++i) out = tensor(out, obs.effect(s.indices[i]));
  return out;
}

Operator orbit_effect(const Povm& obs, const OutcomePattern& p, std::size_t n) {
  if (p.shots() != n) throw Error(ErrorKind::DimensionMismatch, "pattern length differs from shot count");
  Operator sum(joint_dim(obs.dim(), n));
  for (const auto& s : expand_pattern(p, obs.outcome_count())) sum += sequence_effect(obs, s);
  return sum;
}

double sequence_probability(const Povm& obs, const StateVector& probe, const OutcomeSequence& s) {
  if (probe.dim() != joint_dim(obs.dim(), s.shots()))
    throw Error(ErrorKind::DimensionMismatch, "probe dimension differs from dim^n");
  return std::clamp(probe.expectation(sequence_effect(obs, s)), 0.0, 1.0);
}

OrbitEffectTable build_orbit_effects(std::span<const Povm> observables, std::size_t n) {
  require_common_shape(observables);
  joint_dim(observables.front().dim(), n);
  OrbitEffectTable table;
  table.patterns = enumerate_patterns(n, observables.front().outcome_count());
  for (const auto& obs : observables) {
    auto& row = table.effects.emplace_back();
    for (const auto& p : table.patterns) row.push_back(orbit_effect(obs, p, n));
  }
  return table;
}

DiscriminationResult check_perfect_discrimination(std::span<const Povm> observables, std::size_t n,
                                                  const DiscriminationOptions& options) {
  require_common_shape(observables);
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "shot count must be positive");
  const std::size_t m = observables.size();
  const std::size_t pattern_count = enumerate_patterns(n, observables.front().outcome_count()).size();
  if (!bounded_power(m, pattern_count, options.search_cap)) {
    std::ostringstream os;
    os << m << "^" << pattern_count << " assignments exceed the search cap " << options.search_cap;
    throw Error(ErrorKind::SearchCapExceeded, os.str());
  }

  const OrbitEffectTable table = build_orbit_effects(observables, n);
  const std::size_t total_dim = table.effects.front().front().dim();

  DiscriminationResult result;
  result.min_eigenvalue = std::numeric_limits<double>::infinity();
  if (m > pattern_count) return result;  // no surjective assignment exists

  std::size_t best_anchor = total_dim;
  std::vector<std::size_t> digits(pattern_count, 0);
  do {
    if (!is_surjective(digits, m)) continue;
    ++result.assignments_searched;

    Operator constraint(total_dim);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t p = 0; p < pattern_count; ++p)
        if (digits[p] != x) constraint += table.effects[x][p];

    const double tol = options.zero_tol.value_or(default_zero_tol(constraint));
    EigenResult eig = eig_hermitian(constraint);
    const double lambda_min = eig.eigenvalues.front();
    if (lambda_min > tol) {
      if (!result.feasible) result.min_eigenvalue = std::min(result.min_eigenvalue, lambda_min);
      continue;
    }

    std::vector<StateVector> basis;
    for (std::size_t i = 0; i < eig.eigenvalues.size() && eig.eigenvalues[i] <= tol; ++i)
      basis.push_back(std::move(eig.eigenvectors[i]));
    const std::size_t anchor = first_reachable_basis_state(basis);
    Assignment assignment{table.patterns, digits};
    if (!result.feasible || anchor < best_anchor) {
      result.feasible = true;
      result.min_eigenvalue = lambda_min;
      result.probe = project_basis_state(basis, anchor);
      result.kernel_basis = std::move(basis);
      result.kernel_dim = result.kernel_basis.size();
      result.assignment = assignment;
      best_anchor = anchor;
    }
    if (options.collect_all)
      result.all_feasible.push_back(std::move(assignment));
    else if (best_anchor == 0)
      break;
  } while (next_digits(digits, m));
  return result;
}

bool verify_zero_eigenvalue_condition(std::span<const Povm> observables, double zero_tol) {
  std::size_t without_zero = 0;
  for (const auto& obs : observables)
    for (const auto& e : obs.effects())
      if (min_eigenvalue(e) > zero_tol) ++without_zero;
  return without_zero <= 1;
}

PatternHistogram simulate(const Povm& true_obs, const StateVector& probe, std::size_t n,
                          std::uint64_t trials, std::uint64_t seed) {
  if (probe.dim() != joint_dim(true_obs.dim(), n))
    throw Error(ErrorKind::DimensionMismatch, "probe dimension differs from dim^n");
  PatternHistogram hist;
  if (trials == 0) return hist;

  const auto sequences = all_sequences(n, true_obs.outcome_count());
  std::vector<double> weights;
  weights.reserve(sequences.size());
  for (const auto& s : sequences) weights.push_back(sequence_probability(true_obs, probe, s));

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  std::vector<std::uint64_t> counts(sequences.size(), 0);
  for (std::uint64_t t = 0; t < trials; ++t) ++counts[dist(rng)];
  for (std::size_t i = 0; i < sequences.size(); ++i)
    if (counts[i] > 0) hist[canonicalize(sequences[i])] += counts[i];
  return hist;
}

}  // namespace povm_discrim
