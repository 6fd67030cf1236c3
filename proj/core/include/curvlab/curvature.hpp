#pragma once

// Algebraic Hermitian and Kähler curvature tensors on V = C^n.
//
// Entries are stored as R[i][j][k][l] = R(e_i, ē_j, e_k, ē_l) in an
// orthonormal frame. The associated Hermitian form on V⊗V is the
// endomorphism f with f[(i,k)][(j,l)] = R[i][j][k][l]; Hermitian-pair
// symmetry of R is exactly f = f†.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "curvlab/linalg.hpp"

namespace curvlab {

class CurvatureTensor {
 public:
  CurvatureTensor() = default;

  /// Validates R[i][j][k][l] = conj(R[j][i][l][k]) within `tol` and stores
  /// the exactly re-symmetrized average. `entries` holds n^4 values in
  /// big-endian (i,j,k,l) order. With a Gram matrix h (positive definite,
  /// h[i][j] = h(e_i, ē_j)) the tensor is first moved to an h-orthonormal
  /// frame. Throws InvalidTensorError naming the worst index quadruple.
  static CurvatureTensor from_entries(std::size_t n, std::span<const Complex> entries, double tol = kSymTol);
  static CurvatureTensor from_entries(std::size_t n, std::span<const Complex> entries, const ComplexMatrix& gram,
                                      double tol = kSymTol);

  /// Tensor whose form on V⊗V is the given Hermitian endomorphism f.
  static CurvatureTensor from_endomorphism(const HermitianForm& f);

  static CurvatureTensor zero(std::size_t n);

  [[nodiscard]] std::size_t dim() const { return n_; }
  Complex operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  [[nodiscard]] std::span<const Complex> entries() const { return data_; }

  /// f[(i,k)][(j,l)] = R[i][j][k][l], an n^2 x n^2 Hermitian matrix.
  [[nodiscard]] HermitianForm endomorphism() const;

 private:
  CurvatureTensor(std::size_t n, std::vector<Complex> data) : n_(n), data_(std::move(data)) {}
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

/// A curvature tensor that also satisfies R[i][j][k][l] = R[k][j][i][l].
class KahlerTensor {
 public:
  KahlerTensor() = default;

  /// Throws InvalidTensorError when the Kähler residual exceeds `tol`.
  static KahlerTensor from_tensor(const CurvatureTensor& r, double tol = kSymTol);

  [[nodiscard]] const CurvatureTensor& tensor() const { return r_; }
  operator const CurvatureTensor&() const { return r_; }  // NOLINT(google-explicit-constructor)
  [[nodiscard]] std::size_t dim() const { return r_.dim(); }

 private:
  friend KahlerTensor kahler_from_sym2(std::size_t n, const HermitianForm& h_hat);
  explicit KahlerTensor(CurvatureTensor r) : r_(std::move(r)) {}
  CurvatureTensor r_;
};

/// Splitting of the form on V⊗V into Sym²V and ⋀²V blocks, written in the
/// orthonormal bases of sym2_basis() and wedge2_basis().
struct BlockDecomposition {
  HermitianForm q_sym;    // dim n(n+1)/2
  HermitianForm q_wedge;  // dim n(n-1)/2
  ComplexMatrix q_cross;  // Sym² rows, ⋀² columns

  /// Form on V⊗V rebuilt from the blocks.
  [[nodiscard]] ComplexMatrix reassemble() const;
};

/// The four Ricci contractions and two scalar curvatures.
///   r1[k][l] = Σ_j R[j][j][k][l]    r2[k][l] = Σ_j R[j][l][k][j]
///   r3[k][l] = Σ_j R[k][l][j][j]    r4[k][l] = Σ_j R[k][j][j][l]
/// r2 and r4 need not be Hermitian; r2[u][v] = conj(r4[v][u]).
struct RicciSet {
  HermitianForm r1;
  ComplexMatrix r2;
  HermitianForm r3;
  ComplexMatrix r4;
  double s1 = 0.0;
  double s2 = 0.0;
};

struct TensorNorms {
  double norm_R_sq = 0.0;
  double norm_r1_sq = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double norm_Rsym_sq = 0.0;
  double norm_ricci_sum_sq = 0.0;
};

struct KahlerCheck {
  bool is_kahler = false;
  double residual = 0.0;
};

/// Orthonormal basis of Sym²V inside V⊗V as columns of an n^2 x n(n+1)/2
/// matrix: e_i⊗e_i and (e_i⊗e_j + e_j⊗e_i)/√2 for i < j, lexicographic.
Eigen::MatrixXd sym2_basis(std::size_t n);
/// Orthonormal basis of ⋀²V: (e_i⊗e_j - e_j⊗e_i)/√2 for i < j.
Eigen::MatrixXd wedge2_basis(std::size_t n);

/// Pullback of a Hermitian form on Sym²V (in the sym2_basis coordinates).
KahlerTensor kahler_from_sym2(std::size_t n, const HermitianForm& h_hat);
/// Reads the Sym²V form back off a Kähler tensor.
HermitianForm sym2_quotient(const KahlerTensor& r);

KahlerCheck is_kahler(const CurvatureTensor& r, double tol = kSymTol);

/// Space-form tensor (c/2)(δ_ij δ_kl + δ_il δ_kj), H ≡ c.
KahlerTensor constant_hsc(std::size_t n, double c);
/// Two-parameter fixture on C^2 (or C^n): R[i][i][i][i] = diag[i], all else zero.
KahlerTensor diagonal_fixture(std::span<const double> diag);

/// R[i][j][k][l] = w[i][k] conj(w[j][l]) for antisymmetric w; a rank-one
/// form supported on ⋀²V, so H ≡ 0.
CurvatureTensor wedge_rank_one(const ComplexMatrix& w, double tol = kSymTol);

/// Holomorphic sectional curvature R(v, v̄, v, v̄)/|v|^4.
double hsc(const CurvatureTensor& r, const CVector& v);
/// R(v, v̄, v, v̄) before dropping the imaginary part.
Complex hsc_unnormalized(const CurvatureTensor& r, const CVector& v);

/// R(u, ū, v, v̄)/(|u|^2 |v|^2). Real for Kähler input; returned complex so
/// callers decide what to do with general Hermitian tensors.
Complex bisectional(const CurvatureTensor& r, const CVector& u, const CVector& v);

RicciSet ricci_set(const CurvatureTensor& r);
BlockDecomposition block_decomposition(const CurvatureTensor& r);
TensorNorms tensor_norms(const CurvatureTensor& r);

/// q = hermitize(G), G with i.i.d. standard complex Gaussian entries on V⊗V.
CurvatureTensor random_hermitian_curvature(std::size_t n, std::uint64_t seed);
/// Pullback of hermitize(G) on Sym²V.
KahlerTensor random_kahler_curvature(std::size_t n, std::uint64_t seed);
/// wedge_rank_one of the antisymmetric part of a Gaussian matrix.
CurvatureTensor random_wedge_curvature(std::size_t n, std::uint64_t seed);

/// Largest |a - b| entrywise.
double max_abs_difference(const CurvatureTensor& a, const CurvatureTensor& b);

}  // namespace curvlab
