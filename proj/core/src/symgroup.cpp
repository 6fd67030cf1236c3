#include "curvlab/symgroup.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

constexpr std::string_view kLetters = "jklm";

constexpr std::array<std::string_view, 24> kTableKeys = {
    "jklm", "jkml", "jlkm", "jlmk", "jmkl", "jmlk", "kjlm", "kjml", "kljm", "klmj", "kmjl", "kmlj",
    "ljkm", "ljmk", "lkjm", "lkmj", "lmjk", "lmkj", "mjkl", "mjlk", "mkjl", "mklj", "mljk", "mlkj",
};

void require_dense_cap(std::size_t n, std::size_t d, const char* what) {
  const std::size_t side = checked_power(n, d);
  if (side != 0 && side > kDenseEntryCap / side) {
    throw ResourceError(fmt::format("{}: dense {}x{} matrix exceeds the {} entry cap", what, side, side, kDenseEntryCap));
  }
}

// Source index b of W_σ: b_{σ(p)} = a_p, digits big-endian.
std::size_t permuted_source(const Permutation& sigma, std::span<const std::size_t> digits, std::size_t n,
                            std::vector<std::size_t>& scratch) {
  const std::size_t d = sigma.degree();
  scratch.resize(d);
  for (std::size_t p = 0; p < d; ++p) scratch[sigma(p)] = digits[p];
  return multi_index_encode(scratch, n);
}

void require_degree_two(const TensorEndomorphism& f, const char* what) {
  if (f.d != 2) throw DimensionError(fmt::format("{}: expected an endomorphism of V⊗V, got degree {}", what, f.d));
  if (f.matrix.rows() != f.n * f.n || f.matrix.cols() != f.n * f.n) {
    throw DimensionError(fmt::format("{}: matrix is {}x{}, expected {}x{}", what, f.matrix.rows(), f.matrix.cols(),
                                     f.n * f.n, f.n * f.n));
  }
}

void require_hermitian(const TensorEndomorphism& f, const char* what) {
  const double residual = hermitian_residual(f.matrix);
  if (residual > kSymTol) {
    throw InvalidArgument(fmt::format("{}: f is not Hermitian (residual {:.3e})", what, residual));
  }
}

// The table's ⟨X, conj Y⟩ = Σ conj(Y_ij) X_ij.
Complex paired(const ComplexMatrix& x, const ComplexMatrix& y) { return frobenius_inner(y, x); }

std::size_t key_index(std::string_view key) {
  const auto it = std::find(kTableKeys.begin(), kTableKeys.end(), key);
  if (it == kTableKeys.end()) throw InvalidArgument(fmt::format("unknown trace-table row '{}'", key));
  return static_cast<std::size_t>(it - kTableKeys.begin());
}

}  // namespace

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (const std::size_t x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw InvalidArgument(fmt::format("permutation images [{}] are not a bijection", fmt::join(images_, ", ")));
    }
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t d) {
  std::vector<std::size_t> images(d);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

std::vector<Permutation> Permutation::all(std::size_t d) {
  std::vector<std::size_t> images(d);
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t p = 0; p < images_.size(); ++p) inv[images_[p]] = p;
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DimensionError("compose: permutation degrees differ");
  std::vector<std::size_t> images(a.degree());
  for (std::size_t p = 0; p < images.size(); ++p) images[p] = a(b(p));
  return Permutation(std::move(images));
}

std::vector<Complex> apply_permutation(const Permutation& sigma, std::span<const Complex> tensor, std::size_t n) {
  const std::size_t d = sigma.degree();
  if (tensor.size() != checked_power(n, d)) {
    throw DimensionError(fmt::format("apply_permutation: tensor has {} coordinates, expected {}^{}", tensor.size(), n, d));
  }
  std::vector<Complex> out(tensor.size());
  std::vector<std::size_t> scratch;
  for (std::size_t a = 0; a < out.size(); ++a) {
    const MultiIndex digits = multi_index_decode(a, n, d);
    out[a] = tensor[permuted_source(sigma, digits.digits, n, scratch)];
  }
  return out;
}

TensorEndomorphism permutation_operator(const Permutation& sigma, std::size_t n) {
  const std::size_t d = sigma.degree();
  require_dense_cap(n, d, "permutation_operator");
  const std::size_t side = checked_power(n, d);
  ComplexMatrix w(side, side);
  std::vector<std::size_t> scratch;
  for (std::size_t a = 0; a < side; ++a) {
    const MultiIndex digits = multi_index_decode(a, n, d);
    w(a, permuted_source(sigma, digits.digits, n, scratch)) = 1.0;
  }
  return {n, d, std::move(w)};
}

TensorEndomorphism projector_sym(std::size_t n, std::size_t d) {
  if (n == 0) throw InvalidArgument("projector_sym: n must be positive");
  require_dense_cap(n, d, "projector_sym");
  const std::size_t side = checked_power(n, d);
  const std::vector<Permutation> group = Permutation::all(d);
  ComplexMatrix pi(side, side);
  std::vector<std::size_t> scratch;
  for (std::size_t a = 0; a < side; ++a) {
    const MultiIndex digits = multi_index_decode(a, n, d);
    for (const Permutation& sigma : group) pi(a, permuted_source(sigma, digits.digits, n, scratch)) += 1.0;
  }
  // integer counts first, so entries are exact ratios k/d!
  return {n, d, ComplexMatrix(CMatrix(pi.eigen() / static_cast<double>(group.size())))};
}

std::vector<Complex> apply_projector_sym(std::size_t n, std::size_t d, std::span<const Complex> tensor) {
  std::vector<Complex> out(tensor.size());
  const std::vector<Permutation> group = Permutation::all(d);
  for (const Permutation& sigma : group) {
    const std::vector<Complex> moved = apply_permutation(sigma, tensor, n);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] += moved[a];
  }
  const auto order = static_cast<double>(group.size());
  for (Complex& x : out) x /= order;
  return out;
}

std::vector<Complex> tensor_power(const CVector& v, std::size_t d) {
  std::vector<Complex> out{1.0};
  for (std::size_t p = 0; p < d; ++p) {
    std::vector<Complex> next;
    next.reserve(out.size() * static_cast<std::size_t>(v.size()));
    for (const Complex& x : out) {
      for (Eigen::Index i = 0; i < v.size(); ++i) next.push_back(x * v(i));
    }
    out.swap(next);
  }
  return out;
}

ComplexMatrix partial_trace(const TensorEndomorphism& f, PartialTrace which) {
  require_degree_two(f, "partial_trace");
  const std::size_t n = f.n;
  const auto& m = f.matrix;
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      Complex acc{};
      for (std::size_t j = 0; j < n; ++j) {
        switch (which) {
          case PartialTrace::k13: acc += m(j * n + k, j * n + l); break;
          case PartialTrace::k14: acc += m(j * n + k, l * n + j); break;
          case PartialTrace::k23: acc += m(k * n + j, j * n + l); break;
          case PartialTrace::k24: acc += m(k * n + j, l * n + j); break;
        }
      }
      out(k, l) = acc;
    }
  }
  return out;
}

TensorEndomorphism as_endomorphism(const HermitianForm& f) {
  const std::size_t side = f.dim();
  std::size_t n = 0;
  while (n * n < side) ++n;
  if (n * n != side) throw DimensionError(fmt::format("as_endomorphism: dimension {} is not n^2", side));
  return {n, 2, f.matrix()};
}

ComplexMatrix swap_operator(std::size_t n) {
  return permutation_operator(Permutation(std::vector<std::size_t>{1, 0}), n).matrix;
}

const std::array<std::string_view, 24>& trace_table_keys() { return kTableKeys; }

Permutation permutation_for_key(std::string_view key) {
  key_index(key);
  std::vector<std::size_t> pi(4);
  for (std::size_t p = 0; p < 4; ++p) pi[p] = kLetters.find(key[p]);
  return Permutation(std::move(pi)).inverse();
}

std::string key_for_permutation(const Permutation& sigma) {
  if (sigma.degree() != 4) throw DimensionError("key_for_permutation: expected an element of S_4");
  const Permutation pi = sigma.inverse();
  std::string key(4, ' ');
  for (std::size_t p = 0; p < 4; ++p) key[p] = kLetters[pi(p)];
  return key;
}

std::array<Complex, 24> trace_table(const TensorEndomorphism& f) {
  require_degree_two(f, "trace_table");
  require_hermitian(f, "trace_table");

  const ComplexMatrix t13 = partial_trace(f, PartialTrace::k13);
  const ComplexMatrix t14 = partial_trace(f, PartialTrace::k14);
  const ComplexMatrix t23 = partial_trace(f, PartialTrace::k23);
  const ComplexMatrix t24 = partial_trace(f, PartialTrace::k24);
  const ComplexMatrix& m = f.matrix;
  const ComplexMatrix w = swap_operator(f.n);
  const ComplexMatrix fw = m * w;
  const ComplexMatrix wf = w * m;
  const Complex tr_f = m.trace();
  const Complex tr_14 = t14.trace();

  return {
      tr_f * tr_f,                      // (jklm)
      tr_14 * tr_f,                     // (jkml)
      paired(t24, t13),                 // (jlkm)
      paired(t14, t13),                 // (jlmk)
      paired(t23, t13),                 // (jmkl)
      frobenius_inner(t13, t13),        // (jmlk)
      tr_14 * tr_f,                     // (kjlm)
      tr_14 * tr_14,                    // (kjml)
      paired(t24, t23),                 // (kljm)
      paired(t14, t23),                 // (klmj)
      frobenius_inner(t23, t23),        // (kmjl)
      paired(t13, t23),                 // (kmlj)
      paired(t24, t14),                 // (ljkm)
      frobenius_inner(t14, t14),        // (ljmk)
      frobenius_inner(t24, t24),        // (lkjm)
      paired(t14, t24),                 // (lkmj)
      frobenius_inner(m, m),            // (lmjk)
      paired(fw, m),                    // (lmkj)
      paired(t23, t14),                 // (mjkl)
      paired(t13, t14),                 // (mjlk)
      paired(t23, t24),                 // (mkjl)
      paired(t13, t24),                 // (mklj)
      paired(m, wf),                    // (mljk)
      paired(fw, wf),                   // (mlkj)
  };
}

Complex trace_f_tensor_f_sigma(const TensorEndomorphism& f, std::string_view key) {
  return trace_table(f)[key_index(key)];
}

Complex trace_f_tensor_f_sigma(const TensorEndomorphism& f, const Permutation& sigma) {
  return trace_f_tensor_f_sigma(f, key_for_permutation(sigma));
}

Complex trace_f_tensor_f_sigma_oracle(const TensorEndomorphism& f, const Permutation& sigma) {
  require_degree_two(f, "trace_f_tensor_f_sigma_oracle");
  if (sigma.degree() != 4) throw DimensionError("trace_f_tensor_f_sigma_oracle: σ must lie in S_4");
  const std::size_t n = f.n;
  require_dense_cap(n, 4, "trace_f_tensor_f_sigma_oracle");

  // f⊗f with big-endian blocks: (f⊗f)[(a1 a2)(a3 a4)][(b1 b2)(b3 b4)] = f[a1a2][b1b2] f[a3a4][b3b4].
  const std::size_t side2 = n * n;
  const std::size_t side4 = side2 * side2;
  CMatrix ff(static_cast<Eigen::Index>(side4), static_cast<Eigen::Index>(side4));
  const CMatrix& m = f.matrix.eigen();
  for (std::size_t a = 0; a < side2; ++a) {
    for (std::size_t b = 0; b < side2; ++b) {
      ff.block(static_cast<Eigen::Index>(a * side2), static_cast<Eigen::Index>(b * side2),
               static_cast<Eigen::Index>(side2), static_cast<Eigen::Index>(side2)) = m(a, b) * m;
    }
  }
  const TensorEndomorphism w = permutation_operator(sigma, n);
  // tr(F W) = Σ_{a,b} F[a][b] W[b][a]
  return ff.cwiseProduct(w.matrix.eigen().transpose()).sum();
}

double trace_f_pi4(const TensorEndomorphism& f) {
  const std::array<Complex, 24> rows = trace_table(f);
  Complex total{};
  for (const Complex& row : rows) total += row;
  total /= 24.0;
  if (std::abs(total.imag()) > 1e-10 * (1.0 + std::abs(total.real()))) {
    throw std::logic_error(fmt::format("trace_f_pi4: imaginary part {:.3e} for Hermitian f", total.imag()));
  }
  return total.real();
}

}  // namespace curvlab
