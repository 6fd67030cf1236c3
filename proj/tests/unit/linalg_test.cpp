#include <doctest.h>

#include <cmath>
#include <limits>

#include "curvlab/errors.hpp"
#include "curvlab/linalg.hpp"
#include "curvlab/rng.hpp"

using namespace curvlab;

namespace {

constexpr Complex I{0.0, 1.0};

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  CounterRng rng(seed);
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

}  // namespace

TEST_CASE("frobenius_inner examples") {
  CHECK(frobenius_inner(ComplexMatrix::identity(3), ComplexMatrix::identity(3)) == Complex(3.0));
  CHECK(frobenius_inner(ComplexMatrix::zero(2, 2), random_matrix(2, 2, 1)) == Complex(0.0));
  const auto a = ComplexMatrix::from_rows({{1.0, I}, {-I, 2.0}});
  CHECK(frobenius_inner(a, a) == Complex(7.0));
  CHECK(frobenius_norm_sq(a) == doctest::Approx(7.0));
}

TEST_CASE("frobenius_inner is conjugate-linear in the first argument") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_matrix(3, 4, 3 * seed);
    const auto b = random_matrix(3, 4, 3 * seed + 1);
    const auto c = random_matrix(3, 4, 3 * seed + 2);
    const Complex lambda{0.3, -1.7};
    const Complex lhs = frobenius_inner(lambda * a + c, b);
    const Complex rhs = std::conj(lambda) * frobenius_inner(a, b) + frobenius_inner(c, b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    const Complex lin = frobenius_inner(b, lambda * a + c);
    const Complex lin_rhs = lambda * frobenius_inner(b, a) + frobenius_inner(b, c);
    CHECK(std::abs(lin - lin_rhs) <= 1e-12 * (1.0 + std::abs(lin_rhs)));
    const Complex self = frobenius_inner(a, a);
    CHECK(self.imag() == 0.0);
    CHECK(self.real() >= 0.0);
  }
}

TEST_CASE("frobenius_inner rejects shape mismatch") {
  CHECK_THROWS_AS(frobenius_inner(ComplexMatrix::zero(2, 3), ComplexMatrix::zero(3, 2)), DimensionError);
}

TEST_CASE("hermitize examples") {
  const auto h = ComplexMatrix::from_rows({{1.0, I}, {-I, 2.0}});
  CHECK(hermitize(h).matrix().eigen() == h.eigen());

  const auto upper = ComplexMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}});
  const auto expected = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(hermitize(upper).matrix().eigen() == expected.eigen());

  CHECK(hermitize(I * ComplexMatrix::identity(3)).matrix().eigen().isZero(0.0));
  CHECK_THROWS_AS(hermitize(ComplexMatrix::zero(2, 3)), DimensionError);
}

TEST_CASE("hermitize is idempotent and exactly Hermitian") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = random_matrix(5, 5, seed);
    const HermitianForm once = hermitize(m);
    const HermitianForm twice = hermitize(once.matrix());
    CHECK(once.matrix().eigen() == twice.matrix().eigen());
    CHECK(hermitian_residual(once.matrix()) == 0.0);
  }
}

TEST_CASE("HermitianForm validation") {
  const auto bad = ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(HermitianForm::from_matrix(bad), InvalidArgument);
  const auto imag_diag = ComplexMatrix::from_rows({{I, 0.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(HermitianForm::from_matrix(imag_diag), InvalidArgument);
  const auto nearly = ComplexMatrix::from_rows({{1.0, Complex(1.0, 5e-11)}, {Complex(1.0, 0.0), 1.0}});
  const HermitianForm h = HermitianForm::from_matrix(nearly);
  CHECK(hermitian_residual(h.matrix()) == 0.0);
  CHECK_THROWS_AS(HermitianForm::from_matrix(ComplexMatrix::zero(2, 3)), DimensionError);
}

TEST_CASE("HermitianForm::evaluate") {
  const auto h = HermitianForm::from_matrix(ComplexMatrix::from_rows({{1.0, I}, {-I, 2.0}}));
  CVector x(2);
  x << 1.0, 1.0;
  // 1 + i - i + 2
  CHECK(h.evaluate(x) == doctest::Approx(3.0));
  x << 1.0, I;
  // 1 + i·conj(i) + (-i)·i + 2 = 1 + 1 + 1 + 2
  CHECK(h.evaluate(x) == doctest::Approx(5.0));
}

TEST_CASE("ComplexMatrix rejects non-finite entries") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ComplexMatrix{m}, InvalidArgument);
  m(1, 0) = Complex(0.0, std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(ComplexMatrix{m}, InvalidArgument);
}

TEST_CASE("multi-index examples") {
  const std::vector<std::size_t> zeros{0, 0, 0, 0};
  CHECK(multi_index_encode(zeros, 3) == 0);
  const std::vector<std::size_t> one_zero{1, 0};
  CHECK(multi_index_encode(one_zero, 2) == 2);
  CHECK(multi_index_decode(5, 2, 3).digits == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("multi-index errors") {
  const std::vector<std::size_t> bad{0, 3};
  CHECK_THROWS_AS(multi_index_encode(bad, 3), RangeError);
  CHECK_THROWS_AS(multi_index_decode(8, 2, 3), RangeError);
}

TEST_CASE("multi-index encode/decode is a bijection") {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t d = 1; d <= 6; ++d) {
      const std::size_t size = checked_power(n, d);
      if (size > 1'000'000) continue;
      for (std::size_t flat = 0; flat < size; ++flat) {
        const MultiIndex m = multi_index_decode(flat, n, d);
        REQUIRE(m.degree() == d);
        REQUIRE(multi_index_encode(m) == flat);
      }
    }
  }
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(6, 4) == 15);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK_THROWS_AS(binomial(200, 100), RangeError);
}
