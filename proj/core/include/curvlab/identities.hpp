#pragma once

// Closed-form sphere averages of holomorphic sectional and bisectional
// curvature, and helpers for scoring them against the exact oracle.

#include <optional>
#include <string>

#include "curvlab/curvature.hpp"
#include "curvlab/sphere.hpp"

namespace curvlab {

/// Below this magnitude comparisons switch from relative to absolute.
inline constexpr double kNearZero = 1e-12;

struct IdentityResult {
  std::string name;
  double closed_form = 0.0;
  double exact_oracle = 0.0;
  std::optional<McEstimate> mc;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  bool pass = false;
};

/// Scores closed_form against exact_oracle. The relative difference is
/// |a - b| / max(|a|, |b|); when both magnitudes are below kNearZero the
/// absolute difference is used instead and must itself be <= kNearZero.
IdentityResult compare_values(std::string name, double closed_form, double exact_oracle, double rel_tol);

/// Effective difference used for the pass decision (relative, or absolute
/// in the near-zero regime).
double effective_difference(double closed_form, double exact_oracle);

/// Mean of H over the sphere for a Kähler tensor: s / C(n+1, 2).
double berger_mean_kahler(const KahlerTensor& r);

/// (|R|^2 + 4|r|^2 + s^2) / (C(n+1,2) C(n+3,2)).
double l2_hsc_kahler(const KahlerTensor& r);

/// The same value reached through tr((f⊗f) ∘ Π_4) / C(n+3, 4).
double l2_hsc_kahler_trace_route(const KahlerTensor& r);

/// (s1 + s2) / (2 C(n+1,2)) for any Hermitian curvature tensor.
double mean_hsc_hermitian(const CurvatureTensor& r);

/// (4|R_Sym|^2 + |r1+r2+r3+r4|^2 + (s1+s2)^2) / (4! C(n+3,4)).
double l2_hsc_hermitian(const CurvatureTensor& r);

struct ZeroHscConsequences {
  bool sym_block_zero = false;
  bool scalar_sum_zero = false;
  bool ricci_sum_zero = false;
  double sym_block_residual = 0.0;   // max |q_sym| entry
  double scalar_sum_residual = 0.0;  // |s1 + s2|
  double ricci_sum_residual = 0.0;   // max |(r1+r2+r3+r4)| entry
};

/// Checks the structural consequences of vanishing holomorphic sectional
/// curvature: R_Sym = 0, s1 + s2 = 0 and r1 + r2 + r3 + r4 = 0.
ZeroHscConsequences zero_hsc_consequences(const CurvatureTensor& r, double tol = kNearZero);

/// l2_hsc_kahler - berger_mean_kahler^2.
double variance_hsc(const KahlerTensor& r);

/// r(η, η̄) / (n |η|^2). Throws InvalidArgument for η = 0.
double bisectional_mean(const KahlerTensor& r, const CVector& eta);

/// (|R|^2 + (n+2)|r|^2) / (4 C(n+1,2)^2), as published.
double l2_bisectional_paper(const KahlerTensor& r);

/// (|R|^2 + 2|r|^2 + s^2) / (n^2 (n+1)^2): the same derivation with
/// E[r(v,v̄)^2] = (s^2 + |r|^2) / (n(n+1)) taken from the degree-2
/// projection formula.
double l2_bisectional_derived(const KahlerTensor& r);

/// Which bisectional closed form agrees with the oracle.
enum class OracleMatch { paper, derived, both, neither };
const char* to_string(OracleMatch m);
OracleMatch adjudicate(double paper, double derived, double oracle, double rel_tol);

}  // namespace curvlab
