#include "oqw/complex_linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oqw {

namespace {

using RowMajorXcd = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorXcd> as_eigen(const ComplexMatrix& m) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  return {m.entries().data(), dim, dim};
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  const auto dim = static_cast<std::size_t>(m.rows());
  ComplexMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      out(r, c) = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return out;
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  if (entries_.size() != dim * dim) {
    throw DimensionMismatch("ComplexMatrix: expected " + std::to_string(dim * dim) +
                            " entries, got " + std::to_string(entries_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionMismatch("ComplexMatrix: matrix must be square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Complex ComplexMatrix::trace() const noexcept {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (const auto& z : entries_) best = std::max(best, std::abs(z));
  return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(r, k);
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ket

Ket::Ket(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw std::invalid_argument("Ket: dimension must be positive");
  double norm2 = 0.0;
  for (const auto& a : amplitudes_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("Ket: amplitudes must have unit norm (got squared norm " +
                                std::to_string(norm2) + ")");
  }
}

Ket Ket::normalized(std::vector<Complex> amplitudes) {
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (!(norm2 > 0.0)) throw std::invalid_argument("Ket::normalized: zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amplitudes) a *= inv;
  return Ket(std::move(amplitudes));
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("Ket::basis: index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return Ket(std::move(amps));
}

ComplexMatrix Ket::projector() const { return outer(*this, *this); }

Complex inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("inner: ket dimensions differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexMatrix outer(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("outer: ket dimensions differ");
  ComplexMatrix m(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < b.dim(); ++c) m(r, c) = a[r] * std::conj(b[c]);
  return m;
}

Ket apply(const ComplexMatrix& op, const Ket& psi) {
  if (op.dim() != psi.dim()) throw DimensionMismatch("apply: operator/ket dimensions differ");
  std::vector<Complex> out(psi.dim());
  for (std::size_t r = 0; r < op.dim(); ++r)
    for (std::size_t c = 0; c < op.dim(); ++c) out[r] += op(r, c) * psi[c];
  return Ket::normalized(std::move(out));
}

// ---------------------------------------------------------------------------
// Products and maps

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t ar = 0; ar < na; ++ar)
    for (std::size_t ac = 0; ac < na; ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < nb; ++br)
        for (std::size_t bc = 0; bc < nb; ++bc) out(ar * nb + br, ac * nb + bc) = s * b(br, bc);
    }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

ComplexMatrix apply_kraus(const ComplexMatrix& rho, std::span<const ComplexMatrix> ops) {
  const std::size_t n = rho.dim();
  ComplexMatrix out(n);
  ComplexMatrix tmp(n);
  for (const auto& k : ops) {
    require_same_dim(rho, k, "apply_kraus");
    // tmp = K rho
    tmp = k * rho;
    // out += tmp K^dagger
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Complex s = 0.0;
        for (std::size_t m = 0; m < n; ++m) s += tmp(r, m) * std::conj(k(c, m));
        out(r, c) += s;
      }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double best = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) best = std::max(best, std::abs(ea[k] - eb[k]));
  return best;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = r; c < a.dim(); ++c)
      if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) return false;
  return true;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  return max_abs_diff(adjoint(a) * a, ComplexMatrix::identity(a.dim())) <= tol;
}

// ---------------------------------------------------------------------------
// Spectral routines

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
  if (!is_hermitian(a, kDefaultTol)) {
    throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
  }
  // Symmetrize so round-off asymmetry does not leak into the solver.
  Eigen::MatrixXcd m = as_eigen(a);
  m = (0.5 * (m + m.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigen: solver did not converge");
  }
  HermitianEigen out{{}, from_eigen(solver.eigenvectors())};
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + solver.eigenvalues().size());
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  if (a.dim() == 1) {
    if (std::abs(a(0, 0).imag()) > kDefaultTol)
      throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
    return {a(0, 0).real()};
  }
  if (!is_hermitian(a, kDefaultTol)) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  }
  Eigen::MatrixXcd m = as_eigen(a);
  m = (0.5 * (m + m.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: solver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

bool is_psd(const ComplexMatrix& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  Eigen::MatrixXcd m = as_eigen(a);
  m = (0.5 * (m + m.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.info() == Eigen::Success && solver.eigenvalues().minCoeff() >= -tol;
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  const auto ev = hermitian_eigenvalues(rho - sigma);
  double s = 0.0;
  for (double v : ev) s += std::abs(v);
  return 0.5 * s;
}

double pure_fidelity(const ComplexMatrix& rho, const Ket& psi) {
  if (rho.dim() != psi.dim()) throw DimensionMismatch("pure_fidelity: dimensions differ");
  Complex s = 0.0;
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    Complex row = 0.0;
    for (std::size_t c = 0; c < rho.dim(); ++c) row += rho(r, c) * psi[c];
    s += std::conj(psi[r]) * row;
  }
  return s.real();
}

// ---------------------------------------------------------------------------
// Random generators

ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index c = 0; c < n; ++c) {
    const Complex d = r(c, c);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(c) *= d / mag;
  }
  return from_eigen(q);
}

ComplexMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  ComplexMatrix rho = g * adjoint(g);
  rho *= 1.0 / rho.trace().real();
  return rho;
}

Ket random_ket(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(dim);
  for (auto& a : amps) a = Complex(gauss(rng), gauss(rng));
  return Ket::normalized(std::move(amps));
}

// ---------------------------------------------------------------------------
// Named operators

namespace gates {

ComplexMatrix identity2() { return ComplexMatrix::identity(2); }
ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return {{s, s}, {s, -s}};
}

ComplexMatrix phase_s() { return {{1.0, 0.0}, {0.0, Complex(0, 1)}}; }

ComplexMatrix phase_t() {
  return {{1.0, 0.0}, {0.0, std::polar(1.0, std::acos(-1.0) / 4.0)}};
}

ComplexMatrix cnot() {
  return {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
}

ComplexMatrix by_name(const std::string& name) {
  if (name == "I") return identity2();
  if (name == "X") return pauli_x();
  if (name == "Y") return pauli_y();
  if (name == "Z") return pauli_z();
  if (name == "H") return hadamard();
  if (name == "S") return phase_s();
  if (name == "T") return phase_t();
  if (name == "CNOT") return cnot();
  throw std::invalid_argument("unknown gate '" + name + "'");
}

std::vector<std::string> names() { return {"I", "X", "Y", "Z", "H", "S", "T", "CNOT"}; }

}  // namespace gates

namespace kets {

Ket zero() { return Ket{1.0, 0.0}; }
Ket one() { return Ket{0.0, 1.0}; }

Ket plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return Ket{s, s};
}

Ket minus() {
  const double s = 1.0 / std::sqrt(2.0);
  return Ket{s, -s};
}

}  // namespace kets

}  // namespace oqw
