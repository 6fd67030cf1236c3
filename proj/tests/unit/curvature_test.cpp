#include <doctest.h>

#include <cmath>
#include <vector>

#include "curvlab/curvature.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/rng.hpp"
#include "curvlab/sphere.hpp"

using namespace curvlab;

namespace {

constexpr Complex I{0.0, 1.0};

KahlerTensor diag_example() {
  const std::vector<double> diag{1.0, 2.0};
  return diagonal_fixture(diag);
}

CurvatureTensor wedge_example() {
  ComplexMatrix w(2, 2);
  w(0, 1) = 1.0;
  w(1, 0) = -1.0;
  return wedge_rank_one(w);
}

double max_abs(const ComplexMatrix& m) { return m.eigen().cwiseAbs().maxCoeff(); }

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const Complex x : xs) v(i++) = x;
  return v;
}

CVector random_vector(std::size_t n, CounterRng& rng) {
  CVector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = rng.complex_normal();
  return v;
}

}  // namespace

TEST_CASE("from_entries examples") {
  const std::vector<Complex> one{Complex(3.5)};
  const auto r = CurvatureTensor::from_entries(1, one);
  CHECK(hsc(r, vec({Complex(0.6, 0.8)})) == doctest::Approx(3.5));

  std::vector<Complex> diag(16);
  diag[0] = 1.0;
  diag[15] = 2.0;
  const auto d = CurvatureTensor::from_entries(2, diag);
  CHECK(is_kahler(d).is_kahler);
  CHECK(max_abs_difference(d, diag_example()) == 0.0);

  std::vector<Complex> bad(16);
  bad[multi_index_encode(std::vector<std::size_t>{0, 1, 0, 0}, 2)] = 1.0;
  CHECK_THROWS_AS(CurvatureTensor::from_entries(2, bad), InvalidTensorError);
  try {
    (void)CurvatureTensor::from_entries(2, bad);
  } catch (const InvalidTensorError& e) {
    CHECK(std::string(e.what()).find("(0,1,0,0)") != std::string::npos);
  }
}

TEST_CASE("from_entries error paths") {
  CHECK_THROWS_AS(CurvatureTensor::from_entries(0, std::vector<Complex>{}), InvalidArgument);
  CHECK_THROWS_AS(CurvatureTensor::from_entries(2, std::vector<Complex>(15)), DimensionError);
}

TEST_CASE("from_entries re-symmetrizes within tolerance") {
  std::vector<Complex> e(16);
  const auto at = [](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return multi_index_encode(std::vector<std::size_t>{i, j, k, l}, 2);
  };
  e[at(0, 1, 0, 0)] = Complex(1.0, 0.5);
  e[at(1, 0, 0, 0)] = Complex(1.0, -0.5 + 4e-11);
  const auto r = CurvatureTensor::from_entries(2, e);
  CHECK(r(0, 1, 0, 0) == std::conj(r(1, 0, 0, 0)));
}

TEST_CASE("Gram frame change matches a hand-orthonormalized tensor") {
  // h = diag(4, 1): the orthonormal frame is e0/2, e1, so R scales by 1/2 per slot in direction 0.
  std::vector<Complex> e(16);
  e[0] = 16.0;
  e[15] = 3.0;
  ComplexMatrix gram(2, 2);
  gram(0, 0) = 4.0;
  gram(1, 1) = 1.0;
  const auto r = CurvatureTensor::from_entries(2, e, gram);
  CHECK(r(0, 0, 0, 0).real() == doctest::Approx(1.0));
  CHECK(r(1, 1, 1, 1).real() == doctest::Approx(3.0));

  // H is frame independent: H_h(x) with the Gram metric equals H of the orthonormal tensor at L^T x.
  ComplexMatrix g2(2, 2);
  g2(0, 0) = 2.0;
  g2(0, 1) = Complex(0.5, 0.5);
  g2(1, 0) = Complex(0.5, -0.5);
  g2(1, 1) = 1.5;
  const auto raw = random_hermitian_curvature(2, 11);
  const auto framed = CurvatureTensor::from_entries(2, raw.entries(), g2);
  const Eigen::LLT<CMatrix> llt(g2.eigen());
  CounterRng rng(3);
  for (int t = 0; t < 10; ++t) {
    const CVector x = random_vector(2, rng);
    const double h_norm = (x.transpose() * g2.eigen() * x.conjugate())(0, 0).real();
    const double raw_h = hsc_unnormalized(raw, x).real() / (h_norm * h_norm);
    const CVector y = llt.matrixL().transpose() * x;
    CHECK(hsc(framed, y) == doctest::Approx(raw_h).epsilon(1e-10));
  }

  ComplexMatrix not_pd(2, 2);
  not_pd(0, 0) = 1.0;
  not_pd(1, 1) = -1.0;
  CHECK_THROWS_AS(CurvatureTensor::from_entries(2, raw.entries(), not_pd), InvalidArgument);
}

TEST_CASE("kahler_from_sym2 examples") {
  CHECK(max_abs_difference(kahler_from_sym2(2, hermitize(ComplexMatrix::zero(3, 3))), CurvatureTensor::zero(2)) == 0.0);
  const auto one = kahler_from_sym2(1, hermitize(ComplexMatrix::from_rows({{2.5}})));
  CHECK(one.tensor()(0, 0, 0, 0) == Complex(2.5));

  ComplexMatrix h(3, 3);
  h(0, 0) = 1.0;
  h(2, 2) = 2.0;
  const auto k = kahler_from_sym2(2, hermitize(h));
  CHECK(max_abs_difference(k, diag_example()) <= 1e-15);
  CHECK(is_kahler(k).is_kahler);
  CounterRng rng(5);
  for (int t = 0; t < 10; ++t) {
    const CVector v = random_vector(2, rng);
    const double a = std::norm(v(0)) / v.squaredNorm();
    const double b = std::norm(v(1)) / v.squaredNorm();
    CHECK(hsc(k, v) == doctest::Approx(a * a + 2.0 * b * b).epsilon(1e-12));
  }
  CHECK_THROWS_AS(kahler_from_sym2(2, hermitize(ComplexMatrix::zero(2, 2))), DimensionError);
}

TEST_CASE("Kähler round trip through the Sym² quotient") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t m = n * (n + 1) / 2;
    CounterRng rng(100 + n);
    ComplexMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) g(i, j) = rng.complex_normal();
    const HermitianForm h = hermitize(g);
    const HermitianForm back = sym2_quotient(kahler_from_sym2(n, h));
    CHECK(max_abs(back.matrix() - h.matrix()) <= 1e-12);
  }
}

TEST_CASE("is_kahler") {
  CHECK(is_kahler(constant_hsc(3, 2.0)).is_kahler);
  const KahlerCheck w = is_kahler(wedge_example());
  CHECK_FALSE(w.is_kahler);
  CHECK(w.residual == doctest::Approx(2.0));
  CHECK_FALSE(is_kahler(random_hermitian_curvature(3, 1)).is_kahler);
  CHECK_THROWS_AS(KahlerTensor::from_tensor(wedge_example()), InvalidTensorError);
}

TEST_CASE("constant_hsc examples") {
  CHECK(constant_hsc(1, 2.0).tensor()(0, 0, 0, 0) == Complex(2.0));
  CHECK(ricci_set(constant_hsc(3, 2.0)).s1 == doctest::Approx(12.0));
  CHECK(tensor_norms(constant_hsc(2, 1.0)).norm_R_sq == doctest::Approx(3.0));
  const auto r = constant_hsc(3, 5.0);
  CounterRng rng(9);
  for (int t = 0; t < 20; ++t) CHECK(hsc(r, random_vector(3, rng)) == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("wedge_rank_one examples") {
  const RicciSet rs = ricci_set(wedge_example());
  CHECK(rs.s1 == doctest::Approx(2.0));
  CHECK(rs.s2 == doctest::Approx(-2.0));
  const auto id = ComplexMatrix::identity(2);
  CHECK(max_abs(rs.r1.matrix() - id) == 0.0);
  CHECK(max_abs(rs.r3.matrix() - id) == 0.0);
  CHECK(max_abs(rs.r2 + id) == 0.0);
  CHECK(max_abs(rs.r4 + id) == 0.0);
  CHECK(max_abs_difference(wedge_rank_one(ComplexMatrix::zero(3, 3)), CurvatureTensor::zero(3)) == 0.0);
  CHECK_THROWS_AS(wedge_rank_one(ComplexMatrix::identity(2)), InvalidArgument);
}

TEST_CASE("wedge tensors have vanishing H") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = random_wedge_curvature(3, seed);
    CounterRng rng(seed);
    for (int t = 0; t < 100; ++t) CHECK(std::abs(hsc(r, random_vector(3, rng))) <= 1e-12);
  }
}

TEST_CASE("hsc examples and errors") {
  const auto d = diag_example();
  CHECK(hsc(d, vec({1.0, 0.0})) == doctest::Approx(1.0));
  CHECK(hsc(d, vec({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)})) == doctest::Approx(0.75));
  CHECK(hsc(d, vec({3.0, 3.0})) == doctest::Approx(0.75));
  CHECK_THROWS_AS(hsc(d, vec({0.0, 0.0})), InvalidArgument);
  CHECK_THROWS_AS(hsc(d, vec({1.0})), DimensionError);
}

TEST_CASE("H is real on every Hermitian tensor") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = random_hermitian_curvature(3, seed);
    CounterRng rng(seed + 1000);
    for (int t = 0; t < 20; ++t) {
      const Complex h = hsc_unnormalized(r, random_vector(3, rng));
      CHECK(std::abs(h.imag()) <= 1e-10 * (1.0 + std::abs(h.real())));
    }
  }
}

TEST_CASE("bisectional examples") {
  const auto d = diag_example();
  CHECK(std::abs(bisectional(d, vec({1.0, 0.0}), vec({0.0, 1.0}))) == doctest::Approx(0.0));
  CounterRng rng(4);
  const auto c = constant_hsc(3, -1.5);
  for (int t = 0; t < 10; ++t) {
    const CVector v = random_vector(3, rng);
    CHECK(bisectional(c, v, v).real() == doctest::Approx(-1.5).epsilon(1e-13));
  }
  const auto r = random_kahler_curvature(3, 8);
  const CVector u = random_vector(3, rng);
  const CVector v = random_vector(3, rng);
  const Complex b = bisectional(r, u, v);
  CHECK(std::abs(bisectional(r, Complex(2.0, -3.0) * u, v) - b) <= 1e-12 * std::abs(b));
  CHECK(std::abs(b.imag()) <= 1e-12 * (1.0 + std::abs(b.real())));
  CHECK_THROWS_AS(bisectional(r, CVector::Zero(3), v), InvalidArgument);
}

TEST_CASE("ricci_set examples and invariants") {
  const RicciSet c = ricci_set(constant_hsc(3, 2.0));
  CHECK(max_abs(c.r1.matrix() - Complex(4.0) * ComplexMatrix::identity(3)) <= 1e-14);

  const RicciSet z = ricci_set(CurvatureTensor::zero(2));
  CHECK(max_abs(z.r1.matrix()) == 0.0);
  CHECK(max_abs(z.r2) == 0.0);
  CHECK(z.s1 == 0.0);
  CHECK(z.s2 == 0.0);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RicciSet h = ricci_set(random_hermitian_curvature(3, seed));
    CHECK(hermitian_residual(h.r1.matrix()) <= 1e-12);
    CHECK(hermitian_residual(h.r3.matrix()) <= 1e-12);
    CHECK(max_abs(h.r2 - h.r4.adjoint()) <= 1e-12);
    CHECK(h.s1 == doctest::Approx(h.r1.matrix().trace().real()).epsilon(1e-12));
    CHECK(h.s1 == doctest::Approx(h.r3.matrix().trace().real()).epsilon(1e-12));
    CHECK(h.s2 == doctest::Approx(h.r2.trace().real()).epsilon(1e-12));
    CHECK(h.s2 == doctest::Approx(h.r4.trace().real()).epsilon(1e-12));

    const KahlerTensor k = random_kahler_curvature(3, seed);
    const RicciSet kr = ricci_set(k);
    CHECK(max_abs(kr.r1.matrix() - kr.r2) <= 1e-12);
    CHECK(max_abs(kr.r1.matrix() - kr.r3.matrix()) <= 1e-12);
    CHECK(max_abs(kr.r1.matrix() - kr.r4) <= 1e-12);
    CHECK(std::abs(kr.s1 - kr.s2) <= 1e-12);
  }
}

TEST_CASE("block_decomposition") {
  const BlockDecomposition kb = block_decomposition(random_kahler_curvature(3, 2));
  CHECK(max_abs(kb.q_wedge.matrix()) <= 1e-12);
  CHECK(max_abs(kb.q_cross) <= 1e-12);

  const BlockDecomposition wb = block_decomposition(random_wedge_curvature(3, 2));
  CHECK(max_abs(wb.q_sym.matrix()) <= 1e-12);
  CHECK(max_abs(wb.q_cross) <= 1e-12);

  CHECK(frobenius_norm_sq(block_decomposition(diag_example()).q_sym.matrix()) == doctest::Approx(5.0));

  for (std::size_t n = 1; n <= 4; ++n) {
    const auto r = random_hermitian_curvature(n, 50 + n);
    const BlockDecomposition b = block_decomposition(r);
    CHECK(b.q_sym.dim() == n * (n + 1) / 2);
    CHECK(b.q_wedge.dim() == n * (n - 1) / 2);
    const double total = frobenius_norm_sq(b.q_sym.matrix()) + frobenius_norm_sq(b.q_wedge.matrix()) +
                          2.0 * frobenius_norm_sq(b.q_cross);
    const double norm = tensor_norms(r).norm_R_sq;
    CHECK(std::abs(total - norm) <= 1e-12 * norm);
    CHECK(max_abs(b.reassemble() - r.endomorphism().matrix()) <= 1e-12);
  }
}

TEST_CASE("Sym² and ⋀² bases are orthonormal and complementary") {
  for (std::size_t n = 1; n <= 4; ++n) {
    Eigen::MatrixXd basis(n * n, n * n);
    basis << sym2_basis(n), wedge2_basis(n);
    CHECK((basis.transpose() * basis - Eigen::MatrixXd::Identity(n * n, n * n)).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("tensor_norms examples") {
  const TensorNorms d = tensor_norms(diag_example());
  CHECK(d.norm_R_sq == doctest::Approx(5.0));
  CHECK(d.norm_r1_sq == doctest::Approx(5.0));
  CHECK(d.s1 == doctest::Approx(3.0));
  const TensorNorms c = tensor_norms(constant_hsc(2, 1.0));
  CHECK(c.norm_R_sq == doctest::Approx(3.0));
  CHECK(c.norm_r1_sq == doctest::Approx(4.5));
  CHECK(c.s1 == doctest::Approx(3.0));
  const TensorNorms z = tensor_norms(CurvatureTensor::zero(3));
  CHECK(z.norm_R_sq == 0.0);
  CHECK(z.norm_r1_sq == 0.0);
  CHECK(z.norm_Rsym_sq == 0.0);
  CHECK(z.norm_ricci_sum_sq == 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TensorNorms k = tensor_norms(random_kahler_curvature(3, seed));
    CHECK(std::abs(k.norm_Rsym_sq - k.norm_R_sq) <= 1e-10 * k.norm_R_sq);
  }
}

TEST_CASE("random generators are deterministic and well formed") {
  CHECK(max_abs_difference(random_hermitian_curvature(3, 7), random_hermitian_curvature(3, 7)) == 0.0);
  CHECK(max_abs_difference(random_kahler_curvature(3, 7), random_kahler_curvature(3, 7)) == 0.0);
  CHECK(max_abs_difference(random_hermitian_curvature(3, 7), random_hermitian_curvature(3, 8)) > 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(is_kahler(random_kahler_curvature(4, seed)).is_kahler);
    const auto r = random_hermitian_curvature(3, seed);
    const auto again = CurvatureTensor::from_entries(3, r.entries());
    CHECK(max_abs_difference(r, again) == 0.0);
  }
}

TEST_CASE("n = 1 edge cases") {
  const auto r = random_hermitian_curvature(1, 3);
  const BlockDecomposition b = block_decomposition(r);
  CHECK(b.q_wedge.dim() == 0);
  CHECK(max_abs(b.reassemble() - r.endomorphism().matrix()) == 0.0);
  CHECK(is_kahler(r).is_kahler);
  CHECK(hsc(r, vec({I})) == doctest::Approx(r(0, 0, 0, 0).real()));
}
