#include "povm_discrim/operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "povm_discrim/error.hpp"

namespace povm_discrim {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::InvalidBloch: return "InvalidBloch";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TooManyOutcomes: return "TooManyOutcomes";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorKind::CollinearDirections: return "CollinearDirections";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---- Operator ----

Operator::Operator(std::size_t dim) : m_(Matrix::Zero(dim, dim)) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "operator dimension must be positive");
}

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    std::ostringstream os;
    os << "operator must be square and nonempty, got " << m_.rows() << "x" << m_.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

Operator::Operator(std::size_t dim, std::initializer_list<Complex> row_major) : Operator(dim) {
  if (row_major.size() != dim * dim)
    throw Error(ErrorKind::DimensionMismatch, "entry count does not match dim*dim");
  auto it = row_major.begin();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m_(i, j) = *it++;
}

Operator Operator::identity(std::size_t dim) {
  Operator id(dim);
  id.m_.setIdentity();
  return id;
}

Operator Operator::diagonal(std::span<const double> values) {
  Operator d(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) d.m_(i, i) = values[i];
  return d;
}

Operator Operator::projector(const StateVector& psi) {
  const Vector& v = psi.amplitudes();
  return Operator(Matrix(v * v.adjoint()));
}

double Operator::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

double Operator::hermiticity_defect() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

Operator& Operator::operator+=(const Operator& rhs) {
  if (rhs.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operator sum");
  m_ += rhs.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  if (rhs.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operator difference");
  m_ -= rhs.m_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "operator product");
  return Operator(Matrix(a.m_ * b.m_));
}

bool operator==(const Operator& a, const Operator& b) {
  return a.dim() == b.dim() && a.m_ == b.m_;
}

// ---- StateVector ----

StateVector::StateVector(Vector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw Error(ErrorKind::InvalidState, "empty state vector");
  const double norm = v_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "state vector norm " << norm << " differs from 1";
    throw Error(ErrorKind::InvalidState, os.str());
  }
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(Vector(Eigen::Map<const Vector>(amplitudes.begin(),
                                                  static_cast<Eigen::Index>(amplitudes.size())))) {}

StateVector StateVector::normalized(Vector v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::ZeroVector, "cannot normalize a zero vector");
  v /= norm;
  return StateVector(std::move(v));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

double StateVector::expectation(const Operator& m) const {
  if (m.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "expectation value");
  return v_.dot(m.matrix() * v_).real();
}

StateVector StateVector::apply(const Operator& u) const {
  if (u.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operator application");
  return normalized(u.matrix() * v_);
}

StateVector StateVector::with_canonical_phase() const {
  Vector v = v_;
  canonicalize_phase(v);
  return StateVector(std::move(v));
}

void canonicalize_phase(Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mod = std::abs(v(i));
    if (mod > kPhaseTol) {
      v *= std::conj(v(i)) / mod;
      v(i) = mod;
      return;
    }
  }
}

// ---- free functions ----

Operator tensor(const Operator& a, const Operator& b) {
  const auto da = static_cast<Eigen::Index>(a.dim());
  const auto db = static_cast<Eigen::Index>(b.dim());
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return Operator(std::move(out));
}

Operator tensor(std::span<const Operator> factors) {
  if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "empty tensor product");
  Operator out = factors.front();
  for (const auto& f : factors.subspan(1)) out = tensor(out, f);
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const auto da = static_cast<Eigen::Index>(a.dim());
  const auto db = static_cast<Eigen::Index>(b.dim());
  Vector out(da * db);
  for (Eigen::Index i = 0; i < da; ++i) out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
  return StateVector::normalized(std::move(out));
}

EigenResult eig_hermitian(const Operator& m, double herm_tol) {
  const double defect = m.hermiticity_defect();
  if (defect > herm_tol * std::max(1.0, m.max_abs())) {
    std::ostringstream os;
    os << "asymmetry " << defect << " exceeds tolerance";
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Eigen::MatrixXcd h = 0.5 * (m.matrix() + m.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NotHermitian, "eigensolver failed to converge");

  EigenResult result;
  const auto n = h.rows();
  result.eigenvalues.reserve(static_cast<std::size_t>(n));
  result.eigenvectors.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    result.eigenvalues.push_back(solver.eigenvalues()(i));
    Vector v = solver.eigenvectors().col(i);
    canonicalize_phase(v);
    result.eigenvectors.push_back(StateVector::normalized(std::move(v)));
  }
  return result;
}

double default_zero_tol(const Operator& m) {
  return 1e-9 * static_cast<double>(m.dim()) * m.max_abs();
}

std::vector<StateVector> kernel(const Operator& m, std::optional<double> zero_tol) {
  const double tol = zero_tol.value_or(default_zero_tol(m));
  EigenResult eig = eig_hermitian(m);
  if (eig.eigenvalues.front() < -tol) {
    std::ostringstream os;
    os << "smallest eigenvalue " << eig.eigenvalues.front() << " below -" << tol;
    throw Error(ErrorKind::NotPositive, os.str());
  }
  std::vector<StateVector> out;
  for (std::size_t i = 0; i < eig.eigenvalues.size() && eig.eigenvalues[i] <= tol; ++i)
    out.push_back(std::move(eig.eigenvectors[i]));
  return out;
}

double min_eigenvalue(const Operator& m) {
  const double defect = m.hermiticity_defect();
  if (defect > kHermTol * std::max(1.0, m.max_abs()))
    throw Error(ErrorKind::NotHermitian, "min_eigenvalue of non-Hermitian operator");
  const Eigen::MatrixXcd h = 0.5 * (m.matrix() + m.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool is_psd(const Operator& m, double tol) { return min_eigenvalue(m) >= -tol; }

Operator pauli_x() { return Operator(2, {0.0, 1.0, 1.0, 0.0}); }
Operator pauli_y() { return Operator(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
Operator pauli_z() { return Operator(2, {1.0, 0.0, 0.0, -1.0}); }

}  // namespace povm_discrim
