#include "curvlab/linalg.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <utility>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

__extension__ using u128 = unsigned __int128;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(fmt::format("{}: shape mismatch {}x{} vs {}x{}", what, a.rows(), a.cols(),
                                     b.rows(), b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : m_(CMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))) {}

ComplexMatrix::ComplexMatrix(CMatrix m) : m_(std::move(m)) {
  if (!m_.allFinite()) throw InvalidArgument("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  return ComplexMatrix(CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  CMatrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ComplexMatrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return ComplexMatrix(std::move(m));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator+");
  return ComplexMatrix(CMatrix(a.m_ + b.m_));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator-");
  return ComplexMatrix(CMatrix(a.m_ - b.m_));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError(fmt::format("operator*: inner dimensions {} vs {}", a.cols(), b.rows()));
  }
  return ComplexMatrix(CMatrix(a.m_ * b.m_));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(CMatrix(s * a.m_)); }

double hermitian_residual(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("hermitian_residual: matrix not square");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return worst;
}

HermitianForm HermitianForm::from_matrix(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) throw DimensionError("HermitianForm: matrix not square");
  const double residual = hermitian_residual(m);
  if (residual > tol) {
    throw InvalidArgument(fmt::format("HermitianForm: not Hermitian (residual {:.3e} > {:.3e})", residual, tol));
  }
  return hermitize(m);
}

double HermitianForm::evaluate(const CVector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) throw DimensionError("HermitianForm::evaluate: size mismatch");
  // x^T h conj(x)
  return (x.transpose() * eigen() * x.conjugate()).value().real();
}

HermitianForm hermitize(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitize: matrix not square");
  // a + conj(b) and b + conj(a) are exact conjugates in IEEE arithmetic,
  // so the result is exactly Hermitian.
  CMatrix h = 0.5 * (m.eigen() + m.eigen().adjoint());
  return HermitianForm(ComplexMatrix(std::move(h)));
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_inner");
  return (a.eigen().conjugate().cwiseProduct(b.eigen())).sum();
}

double frobenius_norm_sq(const ComplexMatrix& a) { return a.eigen().squaredNorm(); }

std::size_t checked_power(std::size_t n, std::size_t d) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (n != 0 && result > std::numeric_limits<std::size_t>::max() / n) {
      throw RangeError(fmt::format("{}^{} overflows", n, d));
    }
    result *= n;
  }
  return result;
}

std::size_t multi_index_encode(std::span<const std::size_t> digits, std::size_t n) {
  std::size_t flat = 0;
  for (const std::size_t digit : digits) {
    if (digit >= n) throw RangeError(fmt::format("multi_index_encode: digit {} not in [0, {})", digit, n));
    flat = flat * n + digit;
  }
  return flat;
}

MultiIndex multi_index_decode(std::size_t flat, std::size_t n, std::size_t d) {
  if (n == 0) throw RangeError("multi_index_decode: n must be positive");
  const std::size_t size = checked_power(n, d);
  if (flat >= size) throw RangeError(fmt::format("multi_index_decode: {} not in [0, {})", flat, size));
  MultiIndex m{n, std::vector<std::size_t>(d)};
  for (std::size_t p = d; p-- > 0;) {
    m.digits[p] = flat % n;
    flat /= n;
  }
  return m;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw RangeError(fmt::format("binomial({}, {}) overflows 64 bits", n, k));
    }
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace curvlab
