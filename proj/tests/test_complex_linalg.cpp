#include "oqw/complex_linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace oqw;

namespace {

const Complex I_unit{0.0, 1.0};

// Random Kraus family {K_a} with sum K^dag K = I: the d-column blocks of an
// isometry taken from a Haar unitary on count * d dimensions.
std::vector<ComplexMatrix> random_kraus_family(std::size_t d, std::size_t count, std::mt19937_64& rng) {
  const auto v = random_unitary(d * count, rng);
  std::vector<ComplexMatrix> ops;
  for (std::size_t a = 0; a < count; ++a) {
    ComplexMatrix k(d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) k(r, c) = v(a * d + r, c);
    ops.push_back(k);
  }
  return ops;
}

ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = Complex(g(rng), g(rng));
  return 0.5 * (m + adjoint(m));
}

}  // namespace

TEST_CASE("kron") {
  const auto zz = kron(gates::pauli_z(), gates::pauli_z());
  const std::vector<Complex> diag{1.0, -1.0, -1.0, 1.0};
  CHECK(max_abs_diff(zz, ComplexMatrix::diagonal(diag)) == 0.0);

  CHECK(max_abs_diff(kron(gates::identity2(), gates::identity2()), ComplexMatrix::identity(4)) == 0.0);

  // X on qubit 1 takes |00> to |10>.
  const auto x1 = kron(gates::pauli_x(), gates::identity2());
  const auto out = apply(x1, Ket::basis(4, 0));
  CHECK(std::abs(out[2] - 1.0) < 1e-15);

  SUBCASE("trace is multiplicative") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_hermitian(2 + trial % 3, rng);
      const auto b = random_unitary(1 + trial % 4, rng);
      CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);
    }
  }
}

TEST_CASE("adjoint") {
  CHECK(max_abs_diff(adjoint(gates::pauli_z()), gates::pauli_z()) == 0.0);
  CHECK(max_abs_diff(adjoint(outer(kets::zero(), kets::one())), outer(kets::one(), kets::zero())) == 0.0);
  const auto i_id = ComplexMatrix::identity(2) * I_unit;
  CHECK(max_abs_diff(adjoint(i_id), ComplexMatrix::identity(2) * -I_unit) == 0.0);
}

TEST_CASE("apply_kraus") {
  const std::vector<ComplexMatrix> x{gates::pauli_x()};
  CHECK(max_abs_diff(apply_kraus(kets::zero().projector(), x), kets::one().projector()) == 0.0);

  const double s = 3.0 / 5.0;
  const double c = 4.0 / 5.0;
  const ComplexMatrix b = s * kets::minus().projector() + kets::plus().projector();
  const ComplexMatrix cc = c * kets::minus().projector();
  const std::vector<ComplexMatrix> line{b, cc};
  const auto out = apply_kraus(0.5 * ComplexMatrix::identity(2), line);
  CHECK(std::abs(out.trace() - 1.0) < 1e-15);

  const std::vector<ComplexMatrix> left_only{cc};
  CHECK(apply_kraus(kets::plus().projector(), left_only).max_abs() < 1e-16);

  const std::vector<ComplexMatrix> bad{ComplexMatrix::identity(3)};
  CHECK_THROWS_AS(apply_kraus(ComplexMatrix::identity(2), bad), DimensionMismatch);

  SUBCASE("trace preserving for complete families") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t d = 1 + trial % 6;
      const auto ops = random_kraus_family(d, 1 + trial % 4, rng);
      const auto rho = random_hermitian(d, rng);
      CHECK(std::abs(apply_kraus(rho, ops).trace() - rho.trace()) < 1e-12);
    }
  }
  SUBCASE("positivity preserving for arbitrary families") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t d = 1 + trial % 8;
      std::vector<ComplexMatrix> ops;
      for (int k = 0; k < 3; ++k) {
        ComplexMatrix m(d);
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c2 = 0; c2 < d; ++c2) m(r, c2) = Complex(g(rng), g(rng));
        ops.push_back(m);
      }
      const auto out2 = apply_kraus(random_density(d, rng), ops);
      CHECK(is_hermitian(out2, 1e-12));
      CHECK(hermitian_eigenvalues(out2).front() >= -1e-10);
    }
  }
}

TEST_CASE("hermitian_eigenvalues") {
  auto ev = hermitian_eigenvalues(gates::pauli_z());
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-14));

  const auto proj = 0.5 * (ComplexMatrix::identity(4) - kron(gates::pauli_z(), gates::pauli_z()));
  ev = hermitian_eigenvalues(proj);
  const std::vector<double> expect{0.0, 0.0, 1.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - expect[i]) < 1e-12);

  ev = hermitian_eigenvalues(0.5 * ComplexMatrix::identity(2));
  CHECK(std::abs(ev[0] - 0.5) < 1e-15);
  CHECK(std::abs(ev[1] - 0.5) < 1e-15);

  CHECK_THROWS_AS(hermitian_eigenvalues(outer(kets::zero(), kets::one())), std::invalid_argument);

  SUBCASE("reconstruction") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t d = 1 + trial % 8;
      const auto a = random_hermitian(d, rng);
      const auto eig = hermitian_eigen(a);
      for (std::size_t i = 1; i < d; ++i) CHECK(eig.values[i - 1] <= eig.values[i]);
      std::vector<Complex> lambda(eig.values.begin(), eig.values.end());
      const auto rebuilt = eig.vectors * ComplexMatrix::diagonal(lambda) * adjoint(eig.vectors);
      CHECK(max_abs_diff(a, rebuilt) <= 1e-9);
    }
  }
}

TEST_CASE("is_psd") {
  CHECK(is_psd(ComplexMatrix::identity(2), 1e-10));
  CHECK_FALSE(is_psd(ComplexMatrix::identity(2) * -1.0, 1e-10));
  CHECK(is_psd(kets::plus().projector(), 1e-10));
  CHECK_FALSE(is_psd(gates::pauli_z(), 1e-10));
}

TEST_CASE("trace_distance") {
  const auto rho = kets::plus().projector();
  CHECK(trace_distance(rho, rho) < 1e-15);
  CHECK(std::abs(trace_distance(kets::zero().projector(), kets::one().projector()) - 1.0) < 1e-15);
  // Difference diag(-1/2, 1/2).
  CHECK(std::abs(trace_distance(0.5 * ComplexMatrix::identity(2), kets::zero().projector()) - 0.5) < 1e-15);
  CHECK_THROWS_AS(trace_distance(ComplexMatrix::identity(2), ComplexMatrix::identity(3)), DimensionMismatch);

  SUBCASE("metric properties") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t d = 2 + trial % 3;
      const auto a = random_density(d, rng);
      const auto b = random_density(d, rng);
      const auto c = random_density(d, rng);
      CHECK(std::abs(trace_distance(a, b) - trace_distance(b, a)) < 1e-14);
      CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-14);
    }
  }
}

TEST_CASE("pure_fidelity") {
  CHECK(std::abs(pure_fidelity(kets::plus().projector(), kets::plus()) - 1.0) < 1e-15);
  CHECK(std::abs(pure_fidelity(0.5 * ComplexMatrix::identity(2), kets::plus()) - 0.5) < 1e-15);
  CHECK(std::abs(pure_fidelity(kets::zero().projector(), kets::one())) < 1e-15);
  CHECK_THROWS_AS(pure_fidelity(ComplexMatrix::identity(4), kets::one()), DimensionMismatch);
}

TEST_CASE("ket and matrix construction") {
  CHECK_THROWS_AS(Ket({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Ket::normalized({0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(0), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(2, std::vector<Complex>(3)), DimensionMismatch);
  CHECK(std::abs(inner(kets::plus(), kets::minus())) < 1e-16);
  CHECK(is_unitary(gates::cnot()));
  CHECK(is_unitary(gates::phase_t()));
  CHECK_THROWS_AS(gates::by_name("W"), std::invalid_argument);

  std::mt19937_64 rng(9);
  for (std::size_t d = 1; d <= 8; ++d) CHECK(is_unitary(random_unitary(d, rng), 1e-12));
}
