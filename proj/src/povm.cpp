#include "povm_discrim/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "povm_discrim/error.hpp"

namespace povm_discrim {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Povm::Povm(std::vector<Operator> effects, std::vector<std::string> outcomes)
    : effects_(std::move(effects)), outcomes_(std::move(outcomes)) {
  if (effects_.empty()) throw Error(ErrorKind::InvalidArgument, "observable needs at least one outcome");
  for (const auto& e : effects_)
    if (e.dim() != effects_.front().dim())
      throw Error(ErrorKind::DimensionMismatch, "effects have different dimensions");
  if (outcomes_.empty()) {
    for (std::size_t j = 0; j < effects_.size(); ++j) outcomes_.push_back(std::to_string(j + 1));
  } else if (outcomes_.size() != effects_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "outcome labels do not match effect count");
  }
}

Povm Povm::relabeled(const Permutation& pi) const {
  if (pi.size() != outcome_count()) throw Error(ErrorKind::DimensionMismatch, "permutation size");
  std::vector<Operator> effects;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < outcome_count(); ++j) {
    effects.push_back(effects_[pi(j)]);
    labels.push_back(outcomes_[pi(j)]);
  }
  return Povm(std::move(effects), std::move(labels));
}

ValidationReport validate(const Povm& p, double tol) {
  ValidationReport report;
  Operator sum(p.dim());
  for (std::size_t j = 0; j < p.outcome_count(); ++j) {
    const Operator& e = p.effect(j);
    sum += e;
    const double herm = e.hermiticity_defect();
    report.hermiticity_defect = std::max(report.hermiticity_defect, herm);
    if (herm > kHermTol * std::max(1.0, e.max_abs())) continue;
    const double violation = std::max(0.0, -min_eigenvalue(e));
    if (violation > report.positivity_violation) {
      report.positivity_violation = violation;
      report.worst_effect = j;
    }
  }
  report.normalization_defect = (sum - Operator::identity(p.dim())).max_abs();
  report.valid = report.hermiticity_defect <= kHermTol && report.positivity_violation <= tol &&
                 report.normalization_defect <= tol;
  return report;
}

Operator bloch_operator(const Vec3& a) {
  return pauli_x() * Complex(a[0]) + pauli_y() * Complex(a[1]) + pauli_z() * Complex(a[2]);
}

Povm from_bloch(const Vec3& a) {
  const double len = norm(a);
  if (!(len <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "Bloch vector length " << len << " exceeds 1";
    throw Error(ErrorKind::InvalidBloch, os.str());
  }
  const Operator id = Operator::identity(2);
  const Operator as = bloch_operator(a);
  return Povm({(id + as) * Complex(0.5), (id - as) * Complex(0.5)});
}

Povm from_bloch(const BlochObservable& b) {
  if (!(b.prior >= 0.0 && b.prior <= 1.0)) throw Error(ErrorKind::InvalidArgument, "prior outside [0, 1]");
  return from_bloch(b.vector);
}

std::pair<StateVector, StateVector> bloch_eigenbasis(const Vec3& b) {
  const double len = norm(b);
  if (!(len > 0.0)) throw Error(ErrorKind::ZeroVector, "Bloch direction is zero");
  const Vec3 unit{b[0] / len, b[1] / len, b[2] / len};
  EigenResult eig = eig_hermitian(bloch_operator(unit));
  return {std::move(eig.eigenvectors[1]), std::move(eig.eigenvectors[0])};
}

std::optional<Permutation> equivalent(const Povm& p, const Povm& q, double tol) {
  if (p.dim() != q.dim() || p.outcome_count() != q.outcome_count())
    throw Error(ErrorKind::DimensionMismatch, "observables differ in dimension or outcome count");
  const std::size_t k = p.outcome_count();
  if (k > kMaxEquivalenceOutcomes) throw Error(ErrorKind::TooManyOutcomes, "equivalence search limited to 8 outcomes");

  // match[j][i]: q_j equals p_i within tol
  std::vector<std::vector<bool>> match(k, std::vector<bool>(k));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i)
      match[j][i] = (q.effect(j) - p.effect(i)).max_abs() <= tol;

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) ok = match[j][perm[j]];
    if (ok) return Permutation(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

double bloch_angle(const Vec3& a, const Vec3& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw Error(ErrorKind::ZeroVector, "angle with a zero vector");
  // atan2 is accurate near 0 and pi where acos loses digits.
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

}  // namespace povm_discrim
