#include <doctest.h>

#include <cmath>

#include "curvlab/errors.hpp"
#include "curvlab/identities.hpp"
#include "oracles.hpp"

using namespace curvlab;

namespace {

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

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale <= 1e-12 ? std::abs(a - b) : std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("compare_values") {
  const IdentityResult same = compare_values("x", 2.0, 2.0, 1e-10);
  CHECK(same.pass);
  CHECK(same.rel_diff == 0.0);
  CHECK_FALSE(compare_values("x", 1.0, 1.1, 1e-10).pass);
  CHECK(compare_values("x", 1.0, 1.0 + 1e-12, 1e-10).pass);
  const IdentityResult tiny = compare_values("x", 0.0, 5e-13, 1e-10);
  CHECK(tiny.pass);
  CHECK(tiny.rel_diff == doctest::Approx(5e-13));
  CHECK_FALSE(compare_values("x", 0.0, 1e-11, 1e-10).pass);
  CHECK_FALSE(compare_values("x", std::nan(""), 1.0, 1e-10).pass);
}

TEST_CASE("Kähler closed forms on fixtures") {
  const auto d = diag_example();
  CHECK(berger_mean_kahler(d) == doctest::Approx(1.0));
  CHECK(l2_hsc_kahler(d) == doctest::Approx(17.0 / 15.0));
  CHECK(l2_hsc_kahler_trace_route(d) == doctest::Approx(17.0 / 15.0));
  CHECK(variance_hsc(d) == doctest::Approx(2.0 / 15.0));
  for (const double c : {-1.0, 2.0}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto k = constant_hsc(n, c);
      CHECK(berger_mean_kahler(k) == doctest::Approx(c));
      CHECK(l2_hsc_kahler(k) == doctest::Approx(c * c));
      CHECK(std::abs(variance_hsc(k)) <= 1e-12);
    }
  }
}

TEST_CASE("Kähler closed forms match the oracles") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto k = random_kahler_curvature(n, 70 + seed);
      CHECK(rel(berger_mean_kahler(k), oracle::mean_H(k)) <= 1e-10);
      CHECK(rel(l2_hsc_kahler(k), oracle::mean_H2(k)) <= 1e-10);
      CHECK(rel(l2_hsc_kahler_trace_route(k), l2_hsc_kahler(k)) <= 1e-10);
      CHECK(variance_hsc(k) >= -1e-12);
    }
  }
}

TEST_CASE("Hermitian closed forms") {
  const auto d = diag_example();
  CHECK(mean_hsc_hermitian(d) == doctest::Approx(1.0));
  CHECK(l2_hsc_hermitian(d) == doctest::Approx(17.0 / 15.0));
  CHECK(std::abs(mean_hsc_hermitian(wedge_example())) <= 1e-15);
  CHECK(std::abs(l2_hsc_hermitian(wedge_example())) <= 1e-15);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto r = random_hermitian_curvature(n, 90 + seed);
      CHECK(rel(mean_hsc_hermitian(r), oracle::mean_H(r)) <= 1e-10);
      CHECK(rel(l2_hsc_hermitian(r), oracle::mean_H2(r)) <= 1e-10);
      const auto k = random_kahler_curvature(n, 90 + seed);
      CHECK(rel(l2_hsc_hermitian(k), l2_hsc_kahler(k)) <= 1e-10);
      CHECK(rel(mean_hsc_hermitian(k), berger_mean_kahler(k)) <= 1e-10);
    }
  }
}

TEST_CASE("zero-HSC consequences") {
  const ZeroHscConsequences w = zero_hsc_consequences(wedge_example());
  CHECK(w.sym_block_zero);
  CHECK(w.scalar_sum_zero);
  CHECK(w.ricci_sum_zero);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ZeroHscConsequences z = zero_hsc_consequences(random_wedge_curvature(4, seed));
    CHECK(z.sym_block_zero);
    CHECK(z.scalar_sum_zero);
    CHECK(z.ricci_sum_zero);
  }
  const ZeroHscConsequences k = zero_hsc_consequences(random_kahler_curvature(3, 1));
  CHECK_FALSE(k.sym_block_zero);
}

TEST_CASE("bisectional mean") {
  const auto d = diag_example();
  CVector e0(2);
  e0 << 1.0, 0.0;
  CHECK(bisectional_mean(d, e0) == doctest::Approx(0.5));
  CounterRng rng(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto c = constant_hsc(n, 1.5);
    const CVector eta = sample_unit_sphere(n, rng);
    CHECK(bisectional_mean(c, eta) == doctest::Approx(1.5 * (n + 1) / (2.0 * n)));
    const auto k = random_kahler_curvature(n, 5);
    const CVector x = 3.0 * sample_unit_sphere(n, rng);
    CHECK(rel(bisectional_mean(k, x), oracle::mean_B(k, x)) <= 1e-10);
  }
  CHECK_THROWS_AS(bisectional_mean(d, CVector::Zero(2)), InvalidArgument);
  CHECK_THROWS_AS(bisectional_mean(d, CVector::Ones(3)), DimensionError);
}

TEST_CASE("bisectional L2 variants") {
  const auto d = diag_example();
  CHECK(l2_bisectional_paper(d) == doctest::Approx(25.0 / 36.0));
  CHECK(l2_bisectional_derived(d) == doctest::Approx(2.0 / 3.0));
  CHECK(adjudicate(l2_bisectional_paper(d), l2_bisectional_derived(d), oracle::mean_B2(d), 1e-10) ==
        OracleMatch::derived);
  for (const double c : {-1.0, 0.5, 3.0}) {
    const auto one = constant_hsc(1, c);
    CHECK(l2_bisectional_paper(one) == doctest::Approx(c * c));
    CHECK(l2_bisectional_derived(one) == doctest::Approx(c * c));
    CHECK(adjudicate(l2_bisectional_paper(one), l2_bisectional_derived(one), oracle::mean_B2(one), 1e-10) ==
          OracleMatch::both);
  }
  for (std::size_t n = 2; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto k = random_kahler_curvature(n, 300 + seed);
      const double oracle_value = oracle::mean_B2(k);
      CHECK(rel(l2_bisectional_derived(k), oracle_value) <= 1e-10);
      CHECK(rel(l2_bisectional_paper(k), oracle_value) > 1e-10);
    }
  }
}

TEST_CASE("adjudicate") {
  CHECK(adjudicate(1.0, 2.0, 1.0, 1e-10) == OracleMatch::paper);
  CHECK(adjudicate(1.0, 2.0, 2.0, 1e-10) == OracleMatch::derived);
  CHECK(adjudicate(1.0, 1.0, 1.0, 1e-10) == OracleMatch::both);
  CHECK(adjudicate(1.0, 2.0, 3.0, 1e-10) == OracleMatch::neither);
  CHECK(std::string(to_string(OracleMatch::derived)) == "derived");
}
