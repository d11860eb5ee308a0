#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "qzeno/linalg.hpp"
#include "testutil.hpp"

using namespace qzeno;
using std::numbers::pi;

namespace {

const ComplexMatrix kSigmaX = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});

ComplexMatrix from_oracle(const oracle::Mat& m) {
  ComplexMatrix out(m.size(), m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j];
  return out;
}

}  // namespace

TEST_CASE("kron of identities is the identity") {
  const auto i2 = ComplexMatrix::identity(2);
  CHECK(kron(i2, i2).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron of basis vectors is the joint basis vector") {
  const auto v = kron(StateVector::basis(2, 0), StateVector::basis(2, 0));
  CHECK(v.dim() == 4);
  CHECK(v[0] == complexd{1.0, 0.0});
  CHECK(v[1] == complexd{0.0, 0.0});
  CHECK(v[2] == complexd{0.0, 0.0});
  CHECK(v[3] == complexd{0.0, 0.0});
}

TEST_CASE("kron(sigma_x, I) hits the hand-evaluated index pattern") {
  const auto m = kron(kSigmaX, ComplexMatrix::identity(2));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool one = (i == 0 && j == 2) || (i == 1 && j == 3) || (i == 2 && j == 0) ||
                       (i == 3 && j == 1);
      CHECK(m(i, j) == (one ? complexd{1.0, 0.0} : complexd{0.0, 0.0}));
    }
}

TEST_CASE("kron is associative") {
  // small integer entries keep every product exact, so the index arithmetic
  // is checked elementwise with no rounding slack
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-4, 4);
  auto random_int_matrix = [&](std::size_t r, std::size_t c) {
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = complexd{static_cast<double>(coeff(rng)), static_cast<double>(coeff(rng))};
    return m;
  };
  const auto a = random_int_matrix(2, 3);
  const auto b = random_int_matrix(3, 2);
  const auto c = random_int_matrix(2, 2);
  CHECK(kron(kron(a, b), c).max_abs_diff(kron(a, kron(b, c))) == 0.0);
}

TEST_CASE("kron rejects products beyond the dimension cap") {
  ComplexMatrix tall(std::size_t{1} << 11, 1);
  CHECK_THROWS_AS(kron(tall, tall), SizingError);
  std::vector<complexd> big(std::size_t{1} << 11, 0.0);
  big[0] = 1.0;
  const StateVector s{big};
  CHECK_THROWS_AS(kron(s, s), SizingError);
}

TEST_CASE("matexp at t = 0 is the identity") {
  CHECK(matexp_hermitian(kSigmaX, 0.0).max_abs_diff(ComplexMatrix::identity(2)) < 1e-14);
}

TEST_CASE("matexp of sigma_x reproduces the cos/sin rotation") {
  const double b = 0.37;
  const auto u = matexp_hermitian(kSigmaX, b);
  const auto expected = ComplexMatrix::from_rows(
      {{complexd{std::cos(b), 0.0}, complexd{0.0, -std::sin(b)}},
       {complexd{0.0, -std::sin(b)}, complexd{std::cos(b), 0.0}}});
  CHECK(u.max_abs_diff(expected) < 1e-14);

  const auto quarter = matexp_hermitian(kSigmaX, pi / 2);
  const auto minus_i_sx = complexd{0.0, -1.0} * kSigmaX;
  CHECK(quarter.max_abs_diff(minus_i_sx) < 1e-14);
}

TEST_CASE("matexp rejects non-Hermitian input") {
  const auto bad = ComplexMatrix::from_rows({{0.0, 1.0}, {0.5, 0.0}});
  CHECK_THROWS_AS(matexp_hermitian(bad, 1.0), ValidationError);
}

TEST_CASE("matexp is unitary and inverts under t -> -t") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + (trial % 4);
    const auto h = testutil::random_hermitian(n, rng);
    const double t = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const auto u = matexp_hermitian(h, t);
    CHECK(u.is_unitary(1e-10));
    const auto round_trip = u * matexp_hermitian(h, -t);
    CHECK(round_trip.max_abs_diff(ComplexMatrix::identity(n)) < 1e-10);
  }
}

TEST_CASE("matexp agrees with the series oracle") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = testutil::random_hermitian(4, rng);
    oracle::Mat raw = oracle::zero(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) raw[i][j] = h(i, j);
    const double t = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    CHECK(matexp_hermitian(h, t).max_abs_diff(from_oracle(oracle::expm_minus_i(raw, t))) < 1e-12);
  }
}

TEST_CASE("hermitian_eigensystem reconstructs the input") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + (trial % 5);
    const auto h = testutil::random_hermitian(n, rng);
    const auto eig = hermitian_eigensystem(h);
    ComplexMatrix recon(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          recon(i, j) += eig.values[k] * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    CHECK(recon.max_abs_diff(h) < 1e-11);
    CHECK(eig.vectors.is_unitary(1e-11));
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
  }
}

TEST_CASE("hermitian_eigensystem handles degenerate spectra") {
  // sigma_x tensor I has eigenvalues {-1, -1, +1, +1}
  const auto h = kron(kSigmaX, ComplexMatrix::identity(2));
  const auto eig = hermitian_eigensystem(h);
  CHECK(eig.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig.values[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.values[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.vectors.is_unitary(1e-12));

  const auto id = hermitian_eigensystem(ComplexMatrix::identity(3));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("partial trace of a product state is the kept factor") {
  const auto joint = kron(StateVector::basis(2, 0), StateVector::basis(2, 0));
  const std::array<std::size_t, 2> dims = {2, 2};
  const auto rho = partial_trace(joint, 0, dims);
  CHECK(rho.matrix()(0, 0) == complexd{1.0, 0.0});
  CHECK(std::abs(rho.matrix()(1, 1)) == 0.0);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  const double inv = 1.0 / std::sqrt(2.0);
  const StateVector bell({complexd{inv, 0.0}, 0.0, 0.0, complexd{inv, 0.0}});
  const std::array<std::size_t, 2> dims = {2, 2};
  for (std::size_t keep : {std::size_t{0}, std::size_t{1}}) {
    const auto rho = partial_trace(bell, keep, dims);
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rho.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(rho.matrix()(0, 1)) < 1e-14);
  }
}

TEST_CASE("partial trace rejects inconsistent factor dimensions") {
  const auto joint = kron(StateVector::basis(2, 0), StateVector::basis(2, 0));
  const std::array<std::size_t, 2> bad = {2, 3};
  CHECK_THROWS_AS(partial_trace(joint, 0, bad), ValidationError);
  const std::array<std::size_t, 2> dims = {2, 2};
  CHECK_THROWS_AS(partial_trace(joint, 2, dims), ValidationError);
}

TEST_CASE("partial trace over random states keeps trace one and a PSD spectrum") {
  std::mt19937 rng(23);
  const std::array<std::size_t, 3> dims = {2, 4, 2};
  for (int trial = 0; trial < 25; ++trial) {
    const auto psi = testutil::random_state(16, rng);
    for (std::size_t keep = 0; keep < dims.size(); ++keep) {
      // the DensityOperator constructor enforces trace 1e-10 and PSD -1e-10
      const auto rho = partial_trace(psi, keep, dims);
      CHECK(std::abs(rho.matrix().trace() - complexd{1.0, 0.0}) < 1e-10);
    }
  }
}

TEST_CASE("partial trace matches the brute-force reduction on a three-factor state") {
  std::mt19937 rng(29);
  const auto psi = testutil::random_state(8, rng);
  const std::array<std::size_t, 3> dims = {2, 2, 2};
  const auto rho = partial_trace(psi, 1, dims);
  // raw loop over explicit indices i = (a, k, c)
  ComplexMatrix expect(2, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          expect(k, l) += psi[a * 4 + k * 2 + c] * std::conj(psi[a * 4 + l * 2 + c]);
  CHECK(rho.matrix().max_abs_diff(expect) < 1e-14);
}

TEST_CASE("entropy of a pure projector is zero") {
  const auto rho = DensityOperator::from_pure(StateVector::basis(4, 2));
  CHECK(von_neumann_entropy(rho) < 1e-12);
}

TEST_CASE("entropy of the maximally mixed qubit is ln 2") {
  ComplexMatrix half(2, 2);
  half(0, 0) = 0.5;
  half(1, 1) = 0.5;
  CHECK(von_neumann_entropy(DensityOperator(half)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("entropy is invariant under unitary conjugation") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = partial_trace(testutil::random_state(8, rng), 0,
                                   std::array<std::size_t, 2>{2, 4});
    const auto u = matexp_hermitian(testutil::random_hermitian(2, rng),
                                    std::uniform_real_distribution<double>(0.0, 2.0)(rng));
    const DensityOperator rotated(u * rho.matrix() * u.adjoint());
    CHECK(std::abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) < 1e-8);
  }
}

TEST_CASE("entropy stays within [0, ln dim]") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = partial_trace(testutil::random_state(16, rng), 0,
                                   std::array<std::size_t, 2>{4, 4});
    const double s = von_neumann_entropy(rho);
    CHECK(s >= 0.0);
    CHECK(s <= std::log(4.0) + 1e-12);
  }
}

TEST_CASE("state vectors must be unit norm on a power-of-two dimension") {
  CHECK_THROWS_AS(StateVector({1.0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(StateVector({0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(StateVector::basis(4, 4), ValidationError);
}

TEST_CASE("density operators reject non-Hermitian, non-unit-trace, or indefinite input") {
  auto bad_trace = ComplexMatrix::identity(2);
  CHECK_THROWS_AS(DensityOperator{bad_trace}, ValidationError);

  auto indefinite = ComplexMatrix(2, 2);
  indefinite(0, 0) = 1.5;
  indefinite(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator{indefinite}, ValidationError);

  auto skew = ComplexMatrix(2, 2);
  skew(0, 0) = 1.0;
  skew(0, 1) = complexd{0.0, 0.5};
  skew(1, 0) = complexd{0.0, 0.5};
  CHECK_THROWS_AS(DensityOperator{skew}, ValidationError);
}

TEST_CASE("hermiticity and unitarity queries respect their tolerances") {
  auto near = ComplexMatrix::identity(2);
  near(0, 1) = complexd{0.0, 5e-10};
  near(1, 0) = complexd{0.0, -5e-10 + 2e-11};
  CHECK(near.is_hermitian(1e-9));
  CHECK_FALSE(near.is_hermitian(1e-12));
  CHECK(ComplexMatrix::identity(5).is_unitary(0.0));
  CHECK_FALSE((complexd{2.0, 0.0} * ComplexMatrix::identity(2)).is_unitary(1e-10));
}

TEST_CASE("trace distance separates states and vanishes on equals") {
  const auto rho = DensityOperator::from_pure(StateVector::basis(2, 0));
  const auto sigma = DensityOperator::from_pure(StateVector::basis(2, 1));
  CHECK(trace_distance(rho, rho) < 1e-14);
  CHECK(trace_distance(rho, sigma) == doctest::Approx(1.0).epsilon(1e-12));
}
