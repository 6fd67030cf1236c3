#include "curvlab/identities.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvlab/errors.hpp"
#include "curvlab/symgroup.hpp"

namespace curvlab {

namespace {

double as_double(std::uint64_t x) { return static_cast<double>(x); }

double max_abs_entry(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j)));
  }
  return worst;
}

}  // namespace

double effective_difference(double closed_form, double exact_oracle) {
  const double abs_diff = std::abs(closed_form - exact_oracle);
  const double scale = std::max(std::abs(closed_form), std::abs(exact_oracle));
  if (scale <= kNearZero) return abs_diff;
  return abs_diff / scale;
}

IdentityResult compare_values(std::string name, double closed_form, double exact_oracle, double rel_tol) {
  IdentityResult result;
  result.name = std::move(name);
  result.closed_form = closed_form;
  result.exact_oracle = exact_oracle;
  result.abs_diff = std::abs(closed_form - exact_oracle);
  const double scale = std::max(std::abs(closed_form), std::abs(exact_oracle));
  const bool near_zero = scale <= kNearZero;
  result.rel_diff = effective_difference(closed_form, exact_oracle);
  result.pass = near_zero ? result.abs_diff <= kNearZero : result.rel_diff <= rel_tol;
  if (!std::isfinite(closed_form) || !std::isfinite(exact_oracle)) result.pass = false;
  return result;
}

double berger_mean_kahler(const KahlerTensor& r) {
  const std::size_t n = r.dim();
  return ricci_set(r).s1 / as_double(binomial(n + 1, 2));
}

double l2_hsc_kahler(const KahlerTensor& r) {
  const std::size_t n = r.dim();
  const TensorNorms norms = tensor_norms(r);
  const double numerator = norms.norm_R_sq + 4.0 * norms.norm_r1_sq + norms.s1 * norms.s1;
  return numerator / as_double(binomial(n + 1, 2) * binomial(n + 3, 2));
}

double l2_hsc_kahler_trace_route(const KahlerTensor& r) {
  const std::size_t n = r.dim();
  if (6 * binomial(n + 3, 4) != binomial(n + 1, 2) * binomial(n + 3, 2)) {
    throw std::logic_error("binomial identity 6 C(n+3,4) = C(n+1,2) C(n+3,2) failed");
  }
  const TensorEndomorphism f = as_endomorphism(r.tensor().endomorphism());
  return trace_f_pi4(f) / as_double(binomial(n + 3, 4));
}

double mean_hsc_hermitian(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  const RicciSet ricci = ricci_set(r);
  return (ricci.s1 + ricci.s2) / (2.0 * as_double(binomial(n + 1, 2)));
}

double l2_hsc_hermitian(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  const TensorNorms norms = tensor_norms(r);
  const double scalar = norms.s1 + norms.s2;
  const double numerator = 4.0 * norms.norm_Rsym_sq + norms.norm_ricci_sum_sq + scalar * scalar;
  return numerator / as_double(24 * binomial(n + 3, 4));
}

ZeroHscConsequences zero_hsc_consequences(const CurvatureTensor& r, double tol) {
  const RicciSet ricci = ricci_set(r);
  const BlockDecomposition blocks = block_decomposition(r);
  ZeroHscConsequences out;
  out.sym_block_residual = max_abs_entry(blocks.q_sym.matrix());
  out.scalar_sum_residual = std::abs(ricci.s1 + ricci.s2);
  out.ricci_sum_residual = max_abs_entry(ricci.r1.matrix() + ricci.r2 + ricci.r3.matrix() + ricci.r4);
  out.sym_block_zero = out.sym_block_residual <= tol;
  out.scalar_sum_zero = out.scalar_sum_residual <= tol;
  out.ricci_sum_zero = out.ricci_sum_residual <= tol;
  return out;
}

double variance_hsc(const KahlerTensor& r) {
  const double mean = berger_mean_kahler(r);
  return l2_hsc_kahler(r) - mean * mean;
}

double bisectional_mean(const KahlerTensor& r, const CVector& eta) {
  const std::size_t n = r.dim();
  if (static_cast<std::size_t>(eta.size()) != n) throw DimensionError("bisectional_mean: η has wrong size");
  const double norm_sq = eta.squaredNorm();
  if (norm_sq == 0.0) throw InvalidArgument("bisectional_mean: zero η");
  return ricci_set(r).r1.evaluate(eta) / (static_cast<double>(n) * norm_sq);
}

double l2_bisectional_paper(const KahlerTensor& r) {
  const std::size_t n = r.dim();
  const TensorNorms norms = tensor_norms(r);
  const double c = as_double(binomial(n + 1, 2));
  return (norms.norm_R_sq + static_cast<double>(n + 2) * norms.norm_r1_sq) / (4.0 * c * c);
}

double l2_bisectional_derived(const KahlerTensor& r) {
  const std::size_t n = r.dim();
  const TensorNorms norms = tensor_norms(r);
  const double denom = as_double(n * n * (n + 1) * (n + 1));
  return (norms.norm_R_sq + 2.0 * norms.norm_r1_sq + norms.s1 * norms.s1) / denom;
}

const char* to_string(OracleMatch m) {
  switch (m) {
    case OracleMatch::paper: return "paper";
    case OracleMatch::derived: return "derived";
    case OracleMatch::both: return "both";
    case OracleMatch::neither: return "neither";
  }
  return "neither";
}

OracleMatch adjudicate(double paper, double derived, double oracle, double rel_tol) {
  const bool paper_ok = compare_values("paper", paper, oracle, rel_tol).pass;
  const bool derived_ok = compare_values("derived", derived, oracle, rel_tol).pass;
  if (paper_ok && derived_ok) return OracleMatch::both;
  if (paper_ok) return OracleMatch::paper;
  if (derived_ok) return OracleMatch::derived;
  return OracleMatch::neither;
}

}  // namespace curvlab
