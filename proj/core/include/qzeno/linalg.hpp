#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qzeno/errors.hpp"

namespace qzeno {

using complexd = std::complex<double>;

// Hard cap on any dimension handled by this kernel (2^21 keeps a pure
// 21-qubit state vector in memory).
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 21;

inline constexpr double kHermiticityTol = 1e-9;
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kEntropyEigenvalueFloor = 1e-12;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complexd> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<complexd>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  complexd& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const complexd& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const complexd> entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  complexd trace() const;

  // max |A[i][j] - conj(A[j][i])| <= tol
  bool is_hermitian(double tol) const;
  // max-norm of (A^dag A - I) <= tol
  bool is_unitary(double tol) const;

  double max_abs() const;
  double max_abs_diff(const ComplexMatrix& other) const;

  std::vector<complexd> apply(std::span<const complexd> v) const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(complexd s, const ComplexMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complexd> entries_;
};

/// Unit-norm amplitude vector over a power-of-two dimension.
class StateVector {
 public:
  explicit StateVector(std::vector<complexd> amplitudes);

  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const complexd> amplitudes() const { return amplitudes_; }
  const complexd& operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm() const;

 private:
  std::vector<complexd> amplitudes_;
};

/// Hermitian, trace-one, positive-semidefinite operator (all validated at
/// construction: Hermitian and trace within 1e-10, eigenvalues >= -1e-10).
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);

  static DensityOperator from_pure(const StateVector& psi);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

struct HermitianEigensystem {
  std::vector<double> values;   // ascending
  ComplexMatrix vectors;        // orthonormal columns, vectors.col(k) <-> values[k]
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector kron(const StateVector& a, const StateVector& b);

/// Eigendecomposition of a Hermitian matrix via cyclic Jacobi sweeps on the
/// 2n x 2n real-symmetric embedding [[A, -B], [B, A]] of H = A + iB.
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h);

/// exp(-i h t) by spectral decomposition; h must be Hermitian within 1e-9.
ComplexMatrix matexp_hermitian(const ComplexMatrix& h, double t);

/// u * psi with a normalization-drift check (throws NumericalError beyond 1e-10).
StateVector apply(const ComplexMatrix& u, const StateVector& psi);

/// <a|b>
complexd inner_product(const StateVector& a, const StateVector& b);

/// Reduced state of factor `keep` out of a tensor product with the given
/// factor dimensions (product of dims must equal the state dimension).
DensityOperator partial_trace(const StateVector& psi, std::size_t keep,
                              std::span<const std::size_t> dims);
DensityOperator partial_trace(const DensityOperator& rho, std::size_t keep,
                              std::span<const std::size_t> dims);

/// -sum_l l ln l over eigenvalues l > 1e-12, in nats; result in [0, ln dim].
double von_neumann_entropy(const DensityOperator& rho);

/// (1/2) sum |eigenvalues of a - b|
double trace_distance(const DensityOperator& a, const DensityOperator& b);

}  // namespace qzeno
