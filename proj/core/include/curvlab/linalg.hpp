#pragma once

// Dense complex linear algebra shared by every other module: matrices,
// Hermitian forms, Frobenius products and multi-index bookkeeping for
// V^{⊗d}. Storage is Eigen; the wrappers add the invariants.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace curvlab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance for validating user-supplied Hermitian data.
inline constexpr double kSymTol = 1e-10;

/// Dense complex matrix whose entries are finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws InvalidArgument if any entry is NaN or infinite.
  explicit ComplexMatrix(CMatrix m);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  [[nodiscard]] std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  [[nodiscard]] bool is_square() const { return m_.rows() == m_.cols(); }

  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  Complex& operator()(std::size_t i, std::size_t j) { return m_(i, j); }

  [[nodiscard]] const CMatrix& eigen() const { return m_; }
  [[nodiscard]] ComplexMatrix adjoint() const { return ComplexMatrix(CMatrix(m_.adjoint())); }
  [[nodiscard]] Complex trace() const { return m_.trace(); }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  CMatrix m_;
};

/// Square matrix equal to its conjugate transpose. The stored entries are
/// exactly Hermitian; validation tolerances apply only on the way in.
class HermitianForm {
 public:
  HermitianForm() = default;

  /// Validates within `tol`, then stores (M + M†)/2.
  static HermitianForm from_matrix(const ComplexMatrix& m, double tol = kSymTol);

  [[nodiscard]] std::size_t dim() const { return m_.rows(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
  [[nodiscard]] const CMatrix& eigen() const { return m_.eigen(); }

  /// Evaluates h(x, x̄) = Σ h[i][j] x_i conj(x_j), which is real.
  [[nodiscard]] double evaluate(const CVector& x) const;

 private:
  friend HermitianForm hermitize(const ComplexMatrix& m);
  explicit HermitianForm(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// (M + M†)/2. Throws DimensionError when M is not square.
HermitianForm hermitize(const ComplexMatrix& m);

/// Σ conj(A[i][j]) B[i][j]; conjugate-linear in A.
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm_sq(const ComplexMatrix& a);

/// Largest |A[i][j] - conj(A[j][i])|.
double hermitian_residual(const ComplexMatrix& a);

/// A position in V^{⊗d}: `digits` holds d slot indices in [0, n).
/// Flat indices are big-endian, so the first slot is most significant.
struct MultiIndex {
  std::size_t n = 0;
  std::vector<std::size_t> digits;

  [[nodiscard]] std::size_t degree() const { return digits.size(); }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

std::size_t multi_index_encode(std::span<const std::size_t> digits, std::size_t n);
inline std::size_t multi_index_encode(const MultiIndex& m) { return multi_index_encode(m.digits, m.n); }
MultiIndex multi_index_decode(std::size_t flat, std::size_t n, std::size_t d);

/// n^d, throwing RangeError on overflow.
std::size_t checked_power(std::size_t n, std::size_t d);

/// Exact binomial coefficient; throws RangeError if it does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace curvlab
