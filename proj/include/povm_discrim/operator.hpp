#pragma once

// Dense complex operators and pure states on small Hilbert spaces.
//
// Matrices are row-major and never larger than a few hundred rows (a qutrit
// measured four times gives 81x81), so everything is dense and eigenproblems
// are solved directly.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace povm_discrim {

using Complex = std::complex<double>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

inline constexpr double kHermTol = 1e-9;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kPhaseTol = 1e-6;

class StateVector;

class Operator {
public:
  explicit Operator(std::size_t dim);
  explicit Operator(Matrix entries);
  Operator(std::size_t dim, std::initializer_list<Complex> row_major);

  static Operator identity(std::size_t dim);
  static Operator diagonal(std::span<const double> values);
  static Operator projector(const StateVector& psi);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  Complex& operator()(std::size_t i, std::size_t j) { return m_(i, j); }

  Complex trace() const { return m_.trace(); }
  double max_abs() const;
  // max |M_ij - conj(M_ji)|
  double hermiticity_defect() const;
  bool is_zero(double tol) const { return max_abs() <= tol; }
  Operator adjoint() const { return Operator(Matrix(m_.adjoint())); }

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

  // Exact entrywise equality.
  friend bool operator==(const Operator& a, const Operator& b);

private:
  Matrix m_;
};

// Unit vector in C^dim.
class StateVector {
public:
  // Throws InvalidState unless | ||v|| - 1 | <= kNormTol.
  explicit StateVector(Vector amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  // Rescales to unit norm; throws ZeroVector for a null vector.
  static StateVector normalized(Vector v);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(v_.size()); }
  const Vector& amplitudes() const noexcept { return v_; }
  Complex operator[](std::size_t i) const { return v_(i); }

  // <psi|M|psi>, real part (M is Hermitian wherever this is used).
  double expectation(const Operator& m) const;
  Complex inner(const StateVector& other) const { return v_.dot(other.v_); }
  // |<psi|phi>|, equal to 1 iff the states agree up to global phase.
  double overlap(const StateVector& other) const { return std::abs(inner(other)); }

  StateVector apply(const Operator& u) const;

  // First component with modulus above kPhaseTol made real positive.
  StateVector with_canonical_phase() const;

private:
  Vector v_;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<StateVector> eigenvectors;
};

// Kronecker product; the first factor is the slow index.
Operator tensor(const Operator& a, const Operator& b);
Operator tensor(std::span<const Operator> factors);
StateVector tensor(const StateVector& a, const StateVector& b);

// Throws NotHermitian when hermiticity_defect() > herm_tol * max(1, max_abs()).
EigenResult eig_hermitian(const Operator& m, double herm_tol = kHermTol);

// Scale-aware threshold 1e-9 * dim * max|entry|.
double default_zero_tol(const Operator& m);

// Orthonormal basis of the eigenspace with eigenvalues <= zero_tol.
// Throws NotPositive if the smallest eigenvalue is below -zero_tol.
std::vector<StateVector> kernel(const Operator& m, std::optional<double> zero_tol = {});

bool is_psd(const Operator& m, double tol);
double min_eigenvalue(const Operator& m);

// Pauli matrices in the basis {|0>, |1>} = {up_z, down_z}.
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

// Rotates `v` so that its first component with modulus above kPhaseTol is real positive.
void canonicalize_phase(Vector& v);

}  // namespace povm_discrim
