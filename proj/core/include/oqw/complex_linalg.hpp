#pragma once

// Dense complex linear algebra for the small internal spaces carried by a
// walker (d <= 16). Matrices are square and stored row-major.
//
// Multi-qubit basis convention: qubit 1 is the most significant factor, so
// kron(A1, A2) acts with A1 on qubit 1 and |q1 q2> has index 2*q1 + q2.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqw {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ComplexMatrix {
 public:
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return entries_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex trace() const noexcept;
  /// Largest entry modulus.
  double max_abs() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// Unit-norm state vector.
class Ket {
 public:
  /// Throws if the amplitudes are not normalized within 1e-12.
  explicit Ket(std::vector<Complex> amplitudes);
  Ket(std::initializer_list<Complex> amplitudes)
      : Ket(std::vector<Complex>(amplitudes)) {}

  /// Rescales a nonzero vector to unit norm.
  static Ket normalized(std::vector<Complex> amplitudes);
  static Ket basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  const Complex& operator[](std::size_t i) const noexcept { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  ComplexMatrix projector() const;

 private:
  std::vector<Complex> amplitudes_;
};

/// <a|b>
Complex inner(const Ket& a, const Ket& b);
/// |a><b|
ComplexMatrix outer(const Ket& a, const Ket& b);
/// op|psi>, renormalized. Meant for unitaries; throws if the image is zero.
Ket apply(const ComplexMatrix& op, const Ket& psi);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Sum_K K rho K^dagger.
ComplexMatrix apply_kraus(const ComplexMatrix& rho, std::span<const ComplexMatrix> ops);

/// Max-entry distance.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol);
bool is_unitary(const ComplexMatrix& a, double tol = kDefaultTol);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

/// Throws std::invalid_argument if `a` is not Hermitian within 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

bool is_psd(const ComplexMatrix& a, double tol = kDefaultTol);

/// Half the trace norm of rho - sigma.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// <psi|rho|psi>, real part.
double pure_fidelity(const ComplexMatrix& rho, const Ket& psi);

/// Haar-distributed unitary.
ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng);
/// Random density matrix (trace one, full rank almost surely).
ComplexMatrix random_density(std::size_t dim, std::mt19937_64& rng);
Ket random_ket(std::size_t dim, std::mt19937_64& rng);

namespace gates {
ComplexMatrix identity2();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
ComplexMatrix phase_s();
ComplexMatrix phase_t();
/// Control on qubit 1, target on qubit 2.
ComplexMatrix cnot();

/// Looks up one of the names above ("I", "X", "Y", "Z", "H", "S", "T",
/// "CNOT"). Throws std::invalid_argument for anything else.
ComplexMatrix by_name(const std::string& name);
std::vector<std::string> names();
}  // namespace gates

namespace kets {
Ket zero();
Ket one();
Ket plus();
Ket minus();
}  // namespace kets

}  // namespace oqw
