#pragma once

// Averages over the unit sphere S(V) ⊂ C^n, always normalized by its
// volume. Two independent routes:
//   * exact: expand the integrand into monomials v^α v̄^β and sum the
//     closed-form moments α!(n-1)!/(n-1+|α|)! (zero unless α = β);
//   * Monte Carlo: normalized complex Gaussians with per-sample counter
//     streams, so estimates do not depend on the thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "curvlab/curvature.hpp"
#include "curvlab/linalg.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {

/// Exact oracles over index tuples are refused above this dimension.
inline constexpr std::size_t kExactDimCap = 6;

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Exponents of v (alpha) and of conj(v) (beta), one entry per coordinate.
struct MomentSpec {
  std::vector<unsigned> alpha;
  std::vector<unsigned> beta;
};

/// Uniform point on S(V) drawn from `rng`.
CVector sample_unit_sphere(std::size_t n, CounterRng& rng);

/// Normalized ∫ v^α v̄^β. Throws DimensionError if the exponent vectors do
/// not have n entries.
double exact_moment(std::size_t n, const MomentSpec& spec);

/// E[H(v)] by moment expansion.
double exact_expectation_H(const CurvatureTensor& r);
/// E[H(v)^2] by moment expansion over all n^8 index tuples.
double exact_expectation_H2(const CurvatureTensor& r);
/// E_u E_v [R(u, ū, v, v̄)^2] over two independent spheres.
double exact_expectation_B2(const CurvatureTensor& r);
/// E_ξ [R(ξ, ξ̄, η, η̄)] / |η|^2 for a fixed η.
double exact_expectation_B_mean(const CurvatureTensor& r, const CVector& eta);

/// tr(f ∘ Π_2)/C(n+1,2); the trace-side route to E[H].
double trace_route_expectation_H(const CurvatureTensor& r);

using Integrand = std::function<double(const CVector&)>;
using PairIntegrand = std::function<double(const CVector&, const CVector&)>;

/// Sample mean and standard error over `samples` i.i.d. sphere points.
/// Sample s is drawn from the stream (seed, s). Throws InvalidArgument if
/// samples < 2.
McEstimate mc_expectation(const Integrand& integrand, std::size_t n, std::uint64_t samples, std::uint64_t seed);
/// Same over pairs (u, v) of independent sphere points.
McEstimate mc_expectation_pair(const PairIntegrand& integrand, std::size_t n, std::uint64_t samples,
                               std::uint64_t seed);

/// Normalized ∫ (v v*)^{⊗d} assembled entrywise from exact_moment.
ComplexMatrix exact_sphere_moment_operator(std::size_t n, std::size_t d);
/// Monte Carlo estimate of the same operator.
ComplexMatrix mc_sphere_moment_operator(std::size_t n, std::size_t d, std::uint64_t samples, std::uint64_t seed);

/// ‖exact_sphere_moment_operator(n, d) − Π_d / C(n+d−1, d)‖_F.
double exact_projection_residual(std::size_t n, std::size_t d);
/// ‖mc_sphere_moment_operator(n, d, ...) − Π_d / C(n+d−1, d)‖_F.
double mc_projection_residual(std::size_t n, std::size_t d, std::uint64_t samples, std::uint64_t seed);

}  // namespace curvlab
