#pragma once

// Slot permutations W_σ on V^{⊗d}, the symmetrizer Π_d, partial traces of
// endomorphisms of V⊗V, and the 24 traces tr((f⊗f) ∘ W_σ) for σ ∈ S_4.
//
// Action convention: W_σ(v_1 ⊗ ⋯ ⊗ v_d) = v_{σ(1)} ⊗ ⋯ ⊗ v_{σ(d)}, i.e.
// output slot p receives the content of input slot σ(p). On coordinates,
// (W_σ T)[a_1..a_d] = T[b] with b_{σ(p)} = a_p. This makes σ ↦ W_σ an
// anti-homomorphism: W_σ ∘ W_τ = W_{τ∘σ}.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "curvlab/linalg.hpp"

namespace curvlab {

/// Dense W_σ and Π_d are refused beyond this many matrix entries.
inline constexpr std::size_t kDenseEntryCap = std::size_t{1} << 26;

class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidArgument unless `images` is a bijection on [0, d).
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t d);
  /// Every element of S_d in lexicographic order of the image list.
  static std::vector<Permutation> all(std::size_t d);

  [[nodiscard]] std::size_t degree() const { return images_.size(); }
  std::size_t operator()(std::size_t p) const { return images_[p]; }
  [[nodiscard]] std::span<const std::size_t> images() const { return images_; }

  [[nodiscard]] Permutation inverse() const;
  /// (a ∘ b)(p) = a(b(p)).
  friend Permutation compose(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// An endomorphism of V^{⊗d} as an n^d x n^d matrix indexed by big-endian
/// multi-indices.
struct TensorEndomorphism {
  std::size_t n = 0;
  std::size_t d = 0;
  ComplexMatrix matrix;
};

/// Applies W_σ to a tensor with n^d coordinates.
std::vector<Complex> apply_permutation(const Permutation& sigma, std::span<const Complex> tensor, std::size_t n);
/// Dense W_σ. Throws ResourceError beyond kDenseEntryCap.
TensorEndomorphism permutation_operator(const Permutation& sigma, std::size_t n);

/// Π_d = (1/d!) Σ_σ W_σ as a dense matrix. Throws ResourceError beyond the cap.
TensorEndomorphism projector_sym(std::size_t n, std::size_t d);
/// Π_d applied to a vector without forming the matrix.
std::vector<Complex> apply_projector_sym(std::size_t n, std::size_t d, std::span<const Complex> tensor);

/// v^{⊗d} as n^d coordinates.
std::vector<Complex> tensor_power(const CVector& v, std::size_t d);

enum class PartialTrace { k13, k14, k23, k24 };

/// Partial traces of an endomorphism of V⊗V, f[(a,b)][(c,e)]:
///   tr13[k][l] = Σ_j f[(j,k)][(j,l)]   tr14[k][l] = Σ_j f[(j,k)][(l,j)]
///   tr23[k][l] = Σ_j f[(k,j)][(j,l)]   tr24[k][l] = Σ_j f[(k,j)][(l,j)]
/// Throws DimensionError unless d = 2.
ComplexMatrix partial_trace(const TensorEndomorphism& f, PartialTrace which);

/// Wraps the curvature form on V⊗V; d = 2.
TensorEndomorphism as_endomorphism(const HermitianForm& f);

/// The swap W_(12) on V⊗V.
ComplexMatrix swap_operator(std::size_t n);

/// Row keys of the trace table, in table order: "jklm", "jkml", ..., "mlkj".
/// Each key is the row-index letters of f⊗f against fixed columns (jk, lm).
const std::array<std::string_view, 24>& trace_table_keys();

/// The permutation whose W realizes a table row. With π(p) the position of
/// key[p] in "jklm", the row equals tr((f⊗f) ∘ W_σ) for σ = π⁻¹.
Permutation permutation_for_key(std::string_view key);
/// Inverse of permutation_for_key.
std::string key_for_permutation(const Permutation& sigma);

/// Closed-form value of every table row, in trace_table_keys() order.
/// Requires f Hermitian (within kSymTol); throws InvalidArgument otherwise.
std::array<Complex, 24> trace_table(const TensorEndomorphism& f);

/// Closed-form route for one row.
Complex trace_f_tensor_f_sigma(const TensorEndomorphism& f, std::string_view key);
Complex trace_f_tensor_f_sigma(const TensorEndomorphism& f, const Permutation& sigma);

/// Brute-force route: builds f⊗f and W_σ densely and returns tr((f⊗f) W_σ).
/// Throws ResourceError beyond kDenseEntryCap.
Complex trace_f_tensor_f_sigma_oracle(const TensorEndomorphism& f, const Permutation& sigma);

/// tr((f⊗f) ∘ Π_4) from the closed-form rows; f Hermitian.
double trace_f_pi4(const TensorEndomorphism& f);

}  // namespace curvlab
