#include "curvlab/curvature.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "curvlab/errors.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {

namespace {

std::size_t index4(std::size_t n, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  return ((i * n + j) * n + k) * n + l;
}

void require_vector(const CurvatureTensor& r, const CVector& v, const char* what) {
  if (static_cast<std::size_t>(v.size()) != r.dim()) {
    throw DimensionError(fmt::format("{}: vector has size {}, tensor dimension is {}", what, v.size(), r.dim()));
  }
  if (v.squaredNorm() == 0.0) throw InvalidArgument(fmt::format("{}: zero vector", what));
}

// w[i][j] = u_i conj(u_j)
CMatrix outer(const CVector& u) { return u * u.adjoint(); }

// Applies the frame change R'[a][b][c][d] = Σ M_ia conj(M_jb) M_kc conj(M_ld) R[i][j][k][l]
// one slot at a time.
std::vector<Complex> change_frame(std::size_t n, std::span<const Complex> data, const CMatrix& m) {
  std::vector<Complex> current(data.begin(), data.end());
  std::vector<Complex> next(current.size());
  for (std::size_t slot = 0; slot < 4; ++slot) {
    const bool conjugate = slot % 2 == 1;
    std::size_t stride = 1;
    for (std::size_t s = slot + 1; s < 4; ++s) stride *= n;
    for (std::size_t flat = 0; flat < current.size(); ++flat) {
      const std::size_t out_digit = (flat / stride) % n;
      const std::size_t base = flat - out_digit * stride;
      Complex acc{};
      for (std::size_t in = 0; in < n; ++in) {
        const Complex coeff = conjugate ? std::conj(m(in, out_digit)) : m(in, out_digit);
        acc += coeff * current[base + in * stride];
      }
      next[flat] = acc;
    }
    current.swap(next);
  }
  return current;
}

std::vector<Complex> symmetrize_pairs(std::size_t n, std::span<const Complex> data, double tol) {
  double worst = 0.0;
  std::array<std::size_t, 4> worst_at{};
  std::vector<Complex> out(data.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const Complex a = data[index4(n, i, j, k, l)];
          const Complex b = std::conj(data[index4(n, j, i, l, k)]);
          const double residual = std::abs(a - b);
          if (residual > worst) {
            worst = residual;
            worst_at = {i, j, k, l};
          }
          out[index4(n, i, j, k, l)] = 0.5 * (a + b);
        }
      }
    }
  }
  if (worst > tol) {
    const auto [i, j, k, l] = worst_at;
    throw InvalidTensorError(fmt::format(
        "curvature tensor violates R[i][j][k][l] = conj(R[j][i][l][k]): worst at ({},{},{},{}), residual {:.3e}", i,
        j, k, l, worst));
  }
  return out;
}

void validate_entries(std::size_t n, std::span<const Complex> entries) {
  if (n == 0) throw InvalidArgument("curvature tensor: dimension must be at least 1");
  if (entries.size() != checked_power(n, 4)) {
    throw DimensionError(fmt::format("curvature tensor: expected {} entries for n = {}, got {}", checked_power(n, 4), n,
                                     entries.size()));
  }
  for (const Complex& x : entries) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw InvalidTensorError("curvature tensor: non-finite entry");
    }
  }
}

CMatrix gaussian_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
  CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

}  // namespace

CurvatureTensor CurvatureTensor::from_entries(std::size_t n, std::span<const Complex> entries, double tol) {
  validate_entries(n, entries);
  return {n, symmetrize_pairs(n, entries, tol)};
}

CurvatureTensor CurvatureTensor::from_entries(std::size_t n, std::span<const Complex> entries,
                                              const ComplexMatrix& gram, double tol) {
  validate_entries(n, entries);
  if (gram.rows() != n || gram.cols() != n) {
    throw DimensionError(fmt::format("Gram matrix must be {}x{}", n, n));
  }
  const HermitianForm h = HermitianForm::from_matrix(gram, tol);
  const Eigen::LLT<CMatrix> llt(h.eigen());
  if (llt.info() != Eigen::Success) throw InvalidArgument("Gram matrix is not positive definite");
  // h = L L†; the frame ε_a = Σ_i M_ia e_i with M = L^{-T} is h-orthonormal.
  const CMatrix l = llt.matrixL();
  const CMatrix m = l.transpose().inverse();
  const std::vector<Complex> validated = symmetrize_pairs(n, entries, tol);
  const std::vector<Complex> moved = change_frame(n, validated, m);
  return {n, symmetrize_pairs(n, moved, std::numeric_limits<double>::infinity())};
}

CurvatureTensor CurvatureTensor::from_endomorphism(const HermitianForm& f) {
  const std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(f.dim()))));
  if (n == 0 || n * n != f.dim()) {
    throw DimensionError(fmt::format("endomorphism of dimension {} is not on V⊗V", f.dim()));
  }
  std::vector<Complex> data(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) data[index4(n, i, j, k, l)] = f(i * n + k, j * n + l);
      }
    }
  }
  return {n, std::move(data)};
}

CurvatureTensor CurvatureTensor::zero(std::size_t n) {
  if (n == 0) throw InvalidArgument("curvature tensor: dimension must be at least 1");
  return {n, std::vector<Complex>(checked_power(n, 4))};
}

HermitianForm CurvatureTensor::endomorphism() const {
  ComplexMatrix f(n_ * n_, n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t l = 0; l < n_; ++l) f(i * n_ + k, j * n_ + l) = (*this)(i, j, k, l);
      }
    }
  }
  return hermitize(f);
}

KahlerTensor KahlerTensor::from_tensor(const CurvatureTensor& r, double tol) {
  const KahlerCheck check = is_kahler(r, tol);
  if (!check.is_kahler) {
    throw InvalidTensorError(fmt::format("tensor is not Kähler (residual {:.3e} > {:.3e})", check.residual, tol));
  }
  return KahlerTensor(r);
}

ComplexMatrix BlockDecomposition::reassemble() const {
  const std::size_t total = q_sym.dim() + q_wedge.dim();
  const std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(total))));
  const auto ns = static_cast<Eigen::Index>(q_sym.dim());
  const auto nw = static_cast<Eigen::Index>(q_wedge.dim());
  CMatrix blocks(ns + nw, ns + nw);
  blocks.topLeftCorner(ns, ns) = q_sym.eigen();
  blocks.topRightCorner(ns, nw) = q_cross.eigen();
  blocks.bottomLeftCorner(nw, ns) = q_cross.eigen().adjoint();
  blocks.bottomRightCorner(nw, nw) = q_wedge.eigen();
  Eigen::MatrixXd basis(static_cast<Eigen::Index>(n * n), ns + nw);
  basis << sym2_basis(n), wedge2_basis(n);
  return ComplexMatrix(CMatrix(basis.cast<Complex>() * blocks * basis.transpose().cast<Complex>()));
}

Eigen::MatrixXd sym2_basis(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n * (n + 1) / 2);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n * n), dim);
  Eigen::Index col = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++col) {
      if (i == j) {
        e(static_cast<Eigen::Index>(i * n + i), col) = 1.0;
      } else {
        e(static_cast<Eigen::Index>(i * n + j), col) = std::numbers::sqrt2 / 2.0;
        e(static_cast<Eigen::Index>(j * n + i), col) = std::numbers::sqrt2 / 2.0;
      }
    }
  }
  return e;
}

Eigen::MatrixXd wedge2_basis(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n * (n - 1) / 2);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n * n), dim);
  Eigen::Index col = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++col) {
      e(static_cast<Eigen::Index>(i * n + j), col) = std::numbers::sqrt2 / 2.0;
      e(static_cast<Eigen::Index>(j * n + i), col) = -std::numbers::sqrt2 / 2.0;
    }
  }
  return e;
}

KahlerTensor kahler_from_sym2(std::size_t n, const HermitianForm& h_hat) {
  if (n == 0) throw InvalidArgument("kahler_from_sym2: dimension must be at least 1");
  if (h_hat.dim() != n * (n + 1) / 2) {
    throw DimensionError(fmt::format("kahler_from_sym2: form has dimension {}, Sym² of C^{} has {}", h_hat.dim(), n,
                                     n * (n + 1) / 2));
  }
  const CMatrix e = sym2_basis(n).cast<Complex>();
  // The rows of e for (i,k) and (k,i) coincide, so the Kähler symmetry is exact.
  const ComplexMatrix f(CMatrix(e * h_hat.eigen() * e.transpose()));
  return KahlerTensor(CurvatureTensor::from_endomorphism(hermitize(f)));
}

HermitianForm sym2_quotient(const KahlerTensor& r) {
  const CMatrix e = sym2_basis(r.dim()).cast<Complex>();
  return hermitize(ComplexMatrix(CMatrix(e.transpose() * r.tensor().endomorphism().eigen() * e)));
}

KahlerCheck is_kahler(const CurvatureTensor& r, double tol) {
  const std::size_t n = r.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          worst = std::max(worst, std::abs(r(i, j, k, l) - r(k, j, i, l)));
          worst = std::max(worst, std::abs(r(i, j, k, l) - r(i, l, k, j)));
        }
      }
    }
  }
  return {worst <= tol, worst};
}

KahlerTensor constant_hsc(std::size_t n, double c) {
  if (n == 0) throw InvalidArgument("constant_hsc: dimension must be at least 1");
  std::vector<Complex> data(checked_power(n, 4));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      data[index4(n, i, i, k, k)] += c / 2.0;
      data[index4(n, i, k, k, i)] += c / 2.0;
    }
  }
  return KahlerTensor::from_tensor(CurvatureTensor::from_entries(n, data));
}

KahlerTensor diagonal_fixture(std::span<const double> diag) {
  const std::size_t n = diag.size();
  if (n == 0) throw InvalidArgument("diagonal_fixture: need at least one entry");
  std::vector<Complex> data(checked_power(n, 4));
  for (std::size_t i = 0; i < n; ++i) data[index4(n, i, i, i, i)] = diag[i];
  return KahlerTensor::from_tensor(CurvatureTensor::from_entries(n, data));
}

CurvatureTensor wedge_rank_one(const ComplexMatrix& w, double tol) {
  if (!w.is_square()) throw DimensionError("wedge_rank_one: matrix not square");
  const std::size_t n = w.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i; k < n; ++k) {
      if (std::abs(w(i, k) + w(k, i)) > tol) {
        throw InvalidArgument(fmt::format("wedge_rank_one: w not antisymmetric at ({}, {})", i, k));
      }
    }
  }
  std::vector<Complex> data(checked_power(n, 4));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) data[index4(n, i, j, k, l)] = w(i, k) * std::conj(w(j, l));
      }
    }
  }
  return CurvatureTensor::from_entries(n, data);
}

Complex hsc_unnormalized(const CurvatureTensor& r, const CVector& v) {
  if (static_cast<std::size_t>(v.size()) != r.dim()) throw DimensionError("hsc: vector size mismatch");
  const std::size_t n = r.dim();
  const CMatrix w = outer(v);
  Complex acc{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex inner{};
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) inner += r(i, j, k, l) * w(k, l);
      }
      acc += w(i, j) * inner;
    }
  }
  return acc;
}

double hsc(const CurvatureTensor& r, const CVector& v) {
  require_vector(r, v, "hsc");
  const Complex value = hsc_unnormalized(r, v.normalized());
  if (std::abs(value.imag()) > 1e-10 * (1.0 + std::abs(value.real()))) {
    throw std::logic_error(fmt::format("hsc: imaginary part {:.3e} on a Hermitian tensor", value.imag()));
  }
  return value.real();
}

Complex bisectional(const CurvatureTensor& r, const CVector& u, const CVector& v) {
  require_vector(r, u, "bisectional");
  require_vector(r, v, "bisectional");
  const std::size_t n = r.dim();
  const CMatrix wu = outer(u.normalized());
  const CMatrix wv = outer(v.normalized());
  Complex acc{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex inner{};
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) inner += r(i, j, k, l) * wv(k, l);
      }
      acc += wu(i, j) * inner;
    }
  }
  return acc;
}

RicciSet ricci_set(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  ComplexMatrix r1(n, n), r2(n, n), r3(n, n), r4(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t j = 0; j < n; ++j) {
        r1(k, l) += r(j, j, k, l);
        r2(k, l) += r(j, l, k, j);
        r3(k, l) += r(k, l, j, j);
        r4(k, l) += r(k, j, j, l);
      }
    }
  }
  Complex s1{}, s2{};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      s1 += r(j, j, k, k);
      s2 += r(j, k, k, j);
    }
  }
  return {hermitize(r1), r2, hermitize(r3), r4, s1.real(), s2.real()};
}

BlockDecomposition block_decomposition(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  const CMatrix f = r.endomorphism().eigen();
  const CMatrix es = sym2_basis(n).cast<Complex>();
  const CMatrix ew = wedge2_basis(n).cast<Complex>();
  return {
      hermitize(ComplexMatrix(CMatrix(es.transpose() * f * es))),
      hermitize(ComplexMatrix(CMatrix(ew.transpose() * f * ew))),
      ComplexMatrix(CMatrix(es.transpose() * f * ew)),
  };
}

TensorNorms tensor_norms(const CurvatureTensor& r) {
  TensorNorms norms;
  for (const Complex& x : r.entries()) norms.norm_R_sq += std::norm(x);
  const RicciSet ricci = ricci_set(r);
  norms.norm_r1_sq = frobenius_norm_sq(ricci.r1.matrix());
  norms.s1 = ricci.s1;
  norms.s2 = ricci.s2;
  norms.norm_Rsym_sq = frobenius_norm_sq(block_decomposition(r).q_sym.matrix());
  norms.norm_ricci_sum_sq = frobenius_norm_sq(ricci.r1.matrix() + ricci.r2 + ricci.r3.matrix() + ricci.r4);
  return norms;
}

CurvatureTensor random_hermitian_curvature(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("random_hermitian_curvature: dimension must be at least 1");
  CounterRng rng(seed, {hash_name("random-hermitian"), n});
  const ComplexMatrix g(gaussian_matrix(rng, n * n, n * n));
  return CurvatureTensor::from_endomorphism(hermitize(g));
}

KahlerTensor random_kahler_curvature(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("random_kahler_curvature: dimension must be at least 1");
  CounterRng rng(seed, {hash_name("random-kahler"), n});
  const std::size_t m = n * (n + 1) / 2;
  return kahler_from_sym2(n, hermitize(ComplexMatrix(gaussian_matrix(rng, m, m))));
}

CurvatureTensor random_wedge_curvature(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("random_wedge_curvature: dimension must be at least 1");
  CounterRng rng(seed, {hash_name("random-wedge"), n});
  const CMatrix g = gaussian_matrix(rng, n, n);
  return wedge_rank_one(ComplexMatrix(CMatrix(0.5 * (g - g.transpose()))));
}

double max_abs_difference(const CurvatureTensor& a, const CurvatureTensor& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_difference: dimension mismatch");
  double worst = 0.0;
  for (std::size_t p = 0; p < a.entries().size(); ++p) {
    worst = std::max(worst, std::abs(a.entries()[p] - b.entries()[p]));
  }
  return worst;
}

}  // namespace curvlab
