#include "qzeno/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qzeno {

namespace {

constexpr double kJacobiOffDiagTol = 1e-13;
constexpr int kJacobiMaxSweeps = 64;

void check_dimension(std::size_t d, const char* what) {
  if (d == 0) {
    throw ValidationError(std::string(what) + ": dimension must be positive");
  }
  if (d > kMaxDimension) {
    throw SizingError(std::string(what) + ": dimension " + std::to_string(d) +
                      " exceeds cap " + std::to_string(kMaxDimension));
  }
}

bool is_power_of_two(std::size_t d) { return d != 0 && (d & (d - 1)) == 0; }

// Cyclic Jacobi on a dense symmetric matrix stored row-major in `m` (n x n).
// Rotations accumulate into `v` (initialized to identity by the caller).
// Converged when the off-diagonal Frobenius norm falls below 1e-13.
void jacobi_symmetric(std::vector<double>& m, std::vector<double>& v, std::size_t n) {
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * m[p * n + q] * m[p * n + q];
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_norm() <= kJacobiOffDiagTol) return;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double tau = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k * n + p];
          const double mkq = m[k * n + q];
          m[k * n + p] = c * mkp - s * mkq;
          m[k * n + q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p * n + k];
          const double mqk = m[q * n + k];
          m[p * n + k] = c * mpk - s * mqk;
          m[q * n + k] = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm() > kJacobiOffDiagTol) {
    throw NumericalError("jacobi eigensolver did not converge to 1e-13 off-diagonal norm");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dimension(rows, "ComplexMatrix rows");
  check_dimension(cols, "ComplexMatrix cols");
  entries_.assign(rows_ * cols_, complexd{0.0, 0.0});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complexd> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dimension(rows, "ComplexMatrix rows");
  check_dimension(cols, "ComplexMatrix cols");
  if (entries_.size() != rows_ * cols_) {
    throw ValidationError("ComplexMatrix: entry count does not match rows x cols");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<complexd>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ValidationError("ComplexMatrix: ragged row list");
    std::size_t j = 0;
    for (const auto& e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

complexd ComplexMatrix::trace() const {
  if (rows_ != cols_) throw ValidationError("trace: matrix not square");
  complexd t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (rows_ != cols_) return false;
  const ComplexMatrix gram = adjoint() * (*this);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const complexd expect = (i == j) ? complexd{1.0, 0.0} : complexd{0.0, 0.0};
      if (std::abs(gram(i, j) - expect) > tol) return false;
    }
  return true;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw ValidationError("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    m = std::max(m, std::abs(entries_[k] - other.entries_[k]));
  }
  return m;
}

std::vector<complexd> ComplexMatrix::apply(std::span<const complexd> v) const {
  if (v.size() != cols_) throw ValidationError("apply: vector length does not match cols");
  std::vector<complexd> out(rows_, complexd{0.0, 0.0});
  for (std::size_t i = 0; i < rows_; ++i) {
    complexd acc = 0.0;
    const complexd* row = entries_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw ValidationError("matrix product: inner dimensions differ");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const complexd aik = a(i, k);
      if (aik == complexd{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix sum: shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] += b.entries_[k];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix diff: shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] -= b.entries_[k];
  return out;
}

ComplexMatrix operator*(complexd s, const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& e : out.entries_) e *= s;
  return out;
}

StateVector::StateVector(std::vector<complexd> amplitudes) : amplitudes_(std::move(amplitudes)) {
  check_dimension(amplitudes_.size(), "StateVector");
  if (!is_power_of_two(amplitudes_.size())) {
    throw ValidationError("StateVector: dimension must be a power of two");
  }
  const double n = norm();
  if (std::abs(n - 1.0) > kNormTol) {
    throw ValidationError("StateVector: norm " + std::to_string(n) + " is not 1 within 1e-10");
  }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ValidationError("StateVector::basis: index out of range");
  std::vector<complexd> a(dim, complexd{0.0, 0.0});
  a[index] = 1.0;
  return StateVector(std::move(a));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

DensityOperator::DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ValidationError("DensityOperator: matrix not square");
  }
  if (!matrix_.is_hermitian(kTraceTol)) {
    throw ValidationError("DensityOperator: not Hermitian within 1e-10");
  }
  if (std::abs(matrix_.trace() - complexd{1.0, 0.0}) > kTraceTol) {
    throw ValidationError("DensityOperator: trace not 1 within 1e-10");
  }
  const auto eig = hermitian_eigensystem(matrix_);
  if (!eig.values.empty() && eig.values.front() < -kPsdTol) {
    throw ValidationError("DensityOperator: eigenvalue " + std::to_string(eig.values.front()) +
                          " below -1e-10");
  }
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  const std::size_t d = psi.dim();
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return DensityOperator(std::move(m));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() > kMaxDimension / b.rows() || a.cols() > kMaxDimension / b.cols()) {
    throw SizingError("kron: product dimension exceeds cap 2^21");
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complexd aij = a(i, j);
      if (aij == complexd{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  if (a.dim() > kMaxDimension / b.dim()) {
    throw SizingError("kron: product dimension exceeds cap 2^21");
  }
  std::vector<complexd> out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return StateVector(std::move(out));
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("hermitian_eigensystem: matrix not square");
  const std::size_t n = h.rows();
  const std::size_t m = 2 * n;

  // Real-symmetric embedding of H = A + iB; eigenvector (x; y) of the
  // embedding maps to eigenvector x + iy of H with the same eigenvalue,
  // each eigenvalue appearing twice.
  std::vector<double> em(m * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const complexd hij = 0.5 * (h(i, j) + std::conj(h(j, i)));
      em[i * m + j] = hij.real();
      em[(i + n) * m + (j + n)] = hij.real();
      em[i * m + (j + n)] = -hij.imag();
      em[(i + n) * m + j] = hij.imag();
    }
  }
  std::vector<double> ev(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) ev[i * m + i] = 1.0;
  jacobi_symmetric(em, ev, m);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return em[a * m + a] < em[b * m + b]; });

  // The duplicated spectrum collapses onto n complex eigenvectors: each real
  // eigenvector maps to x + iy; its pair partner maps to the same complex
  // direction, and degenerate clusters are handled by Gram-Schmidt.
  HermitianEigensystem out;
  out.vectors = ComplexMatrix(n, n);
  std::vector<std::vector<complexd>> accepted;
  for (std::size_t idx : order) {
    if (accepted.size() == n) break;
    std::vector<complexd> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = complexd{ev[i * m + idx], ev[(i + n) * m + idx]};
    for (const auto& u : accepted) {
      complexd proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(u[i]) * z[i];
      for (std::size_t i = 0; i < n; ++i) z[i] -= proj * u[i];
    }
    double nz = 0.0;
    for (const auto& c : z) nz += std::norm(c);
    nz = std::sqrt(nz);
    if (nz < 1e-6) continue;
    for (auto& c : z) c /= nz;
    out.values.push_back(em[idx * m + idx]);
    accepted.push_back(std::move(z));
  }
  if (accepted.size() != n) {
    throw NumericalError("hermitian_eigensystem: eigenvector extraction failed");
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = accepted[k][i];
  return out;
}

ComplexMatrix matexp_hermitian(const ComplexMatrix& h, double t) {
  if (h.rows() != h.cols()) throw ValidationError("matexp_hermitian: matrix not square");
  if (!h.is_hermitian(kHermiticityTol)) {
    throw ValidationError("matexp_hermitian: input not Hermitian within 1e-9");
  }
  const std::size_t n = h.rows();
  const auto eig = hermitian_eigensystem(h);
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const complexd phase = std::exp(complexd{0.0, -eig.values[k] * t});
    for (std::size_t i = 0; i < n; ++i) {
      const complexd vik = eig.vectors(i, k) * phase;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  if (!out.is_unitary(kUnitarityTol)) {
    throw NumericalError("matexp_hermitian: result drifted from unitarity beyond 1e-10");
  }
  return out;
}

StateVector apply(const ComplexMatrix& u, const StateVector& psi) {
  std::vector<complexd> out = u.apply(psi.amplitudes());
  double s = 0.0;
  for (const auto& a : out) s += std::norm(a);
  if (std::abs(std::sqrt(s) - 1.0) > kNormTol) {
    throw NumericalError("apply: normalization drift beyond 1e-10");
  }
  return StateVector(std::move(out));
}

complexd inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw ValidationError("inner_product: dimension mismatch");
  complexd acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

namespace {

struct FactorSplit {
  std::size_t before = 1;  // product of dims preceding the kept factor
  std::size_t keep = 1;
  std::size_t after = 1;   // product of dims following the kept factor
};

FactorSplit split_dims(std::size_t total, std::size_t keep, std::span<const std::size_t> dims) {
  if (keep >= dims.size()) throw ValidationError("partial_trace: keep index out of range");
  FactorSplit s;
  std::size_t product = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] == 0) throw ValidationError("partial_trace: zero factor dimension");
    product *= dims[i];
    if (i < keep) s.before *= dims[i];
    if (i == keep) s.keep = dims[i];
    if (i > keep) s.after *= dims[i];
  }
  if (product != total) {
    throw ValidationError("partial_trace: product of dims does not match state dimension");
  }
  return s;
}

}  // namespace

DensityOperator partial_trace(const StateVector& psi, std::size_t keep,
                              std::span<const std::size_t> dims) {
  const FactorSplit s = split_dims(psi.dim(), keep, dims);
  ComplexMatrix rho(s.keep, s.keep);
  for (std::size_t o = 0; o < s.before; ++o) {
    for (std::size_t a = 0; a < s.keep; ++a) {
      for (std::size_t b = 0; b < s.keep; ++b) {
        complexd acc = 0.0;
        const std::size_t ia = (o * s.keep + a) * s.after;
        const std::size_t ib = (o * s.keep + b) * s.after;
        for (std::size_t r = 0; r < s.after; ++r) acc += psi[ia + r] * std::conj(psi[ib + r]);
        rho(a, b) += acc;
      }
    }
  }
  return DensityOperator(std::move(rho));
}

DensityOperator partial_trace(const DensityOperator& rho, std::size_t keep,
                              std::span<const std::size_t> dims) {
  const FactorSplit s = split_dims(rho.dim(), keep, dims);
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix red(s.keep, s.keep);
  for (std::size_t o = 0; o < s.before; ++o) {
    for (std::size_t a = 0; a < s.keep; ++a) {
      for (std::size_t b = 0; b < s.keep; ++b) {
        complexd acc = 0.0;
        const std::size_t ia = (o * s.keep + a) * s.after;
        const std::size_t ib = (o * s.keep + b) * s.after;
        for (std::size_t r = 0; r < s.after; ++r) acc += m(ia + r, ib + r);
        red(a, b) += acc;
      }
    }
  }
  return DensityOperator(std::move(red));
}

double von_neumann_entropy(const DensityOperator& rho) {
  const auto eig = hermitian_eigensystem(rho.matrix());
  double s = 0.0;
  for (double l : eig.values) {
    if (l > kEntropyEigenvalueFloor) s -= l * std::log(l);
  }
  return std::max(0.0, s);
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw ValidationError("trace_distance: dimension mismatch");
  const auto eig = hermitian_eigensystem(a.matrix() - b.matrix());
  double s = 0.0;
  for (double l : eig.values) s += std::abs(l);
  return 0.5 * s;
}

}  // namespace qzeno
