#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "povm_discrim/operator.hpp"
#include "povm_discrim/outcomes.hpp"

namespace povm_discrim {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

// Finite-outcome observable: effects[j] is the effect of outcome j.
// Zero effects are allowed.
class Povm {
public:
  // Throws DimensionMismatch if the effects differ in dimension or the label
  // count differs from the effect count. Empty `outcomes` gets labels "1".."k".
  explicit Povm(std::vector<Operator> effects, std::vector<std::string> outcomes = {});

  std::size_t dim() const noexcept { return effects_.front().dim(); }
  std::size_t outcome_count() const noexcept { return effects_.size(); }
  const std::vector<Operator>& effects() const noexcept { return effects_; }
  const Operator& effect(std::size_t j) const { return effects_.at(j); }
  const std::vector<std::string>& outcomes() const noexcept { return outcomes_; }

  // Same effects in the order q_j = p_{pi(j)}.
  Povm relabeled(const Permutation& pi) const;

  // Exact equality of effects and labels.
  friend bool operator==(const Povm&, const Povm&) = default;

private:
  std::vector<Operator> effects_;
  std::vector<std::string> outcomes_;
};

inline constexpr double kValidationTol = 1e-9;

struct ValidationReport {
  bool valid = false;
  // max over effects of max(0, -lambda_min)
  double positivity_violation = 0.0;
  std::size_t worst_effect = 0;
  // max |sum_j E_j - I|
  double normalization_defect = 0.0;
  double hermiticity_defect = 0.0;
};

ValidationReport validate(const Povm& p, double tol = kValidationTol);

// Qubit observable {(I + a.sigma)/2, (I - a.sigma)/2}; sharp iff |a| = 1.
struct BlochObservable {
  Vec3 vector{0.0, 0.0, 0.0};
  double prior = 1.0;
};

// a.sigma
Operator bloch_operator(const Vec3& a);
// Throws InvalidBloch if |a| > 1 + 1e-12.
Povm from_bloch(const BlochObservable& b);
Povm from_bloch(const Vec3& a);

// Eigenvectors of b.sigma for eigenvalues +1 and -1, phase-normalized.
// Throws ZeroVector for b = 0.
std::pair<StateVector, StateVector> bloch_eigenbasis(const Vec3& b);

inline constexpr std::size_t kMaxEquivalenceOutcomes = 8;

// Permutation pi with q_j = p_{pi(j)} entrywise within tol, if any.
// Throws DimensionMismatch for different dim or outcome count, TooManyOutcomes for k > 8.
std::optional<Permutation> equivalent(const Povm& p, const Povm& q, double tol = 1e-9);

// Angle in [0, pi] between two nonzero vectors; throws ZeroVector.
double bloch_angle(const Vec3& a, const Vec3& b);

}  // namespace povm_discrim
