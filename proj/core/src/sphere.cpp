#include "curvlab/sphere.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "curvlab/errors.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/symgroup.hpp"

namespace curvlab {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kChunk = 4096;

// All degree-d index tuples whose digit multisets coincide share one
// nonzero moment E[v^α v̄^α]; tuples with different multisets pair to zero.
struct MomentGroup {
  double moment = 0.0;
  std::vector<std::vector<std::size_t>> tuples;
};

std::vector<unsigned> digit_counts(std::span<const std::size_t> digits, std::size_t n) {
  std::vector<unsigned> counts(n, 0);
  for (const std::size_t x : digits) ++counts[x];
  return counts;
}

std::vector<MomentGroup> moment_groups(std::size_t n, std::size_t degree) {
  std::map<std::vector<std::size_t>, MomentGroup> groups;
  const std::size_t count = checked_power(n, degree);
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::vector<std::size_t> digits = multi_index_decode(flat, n, degree).digits;
    std::vector<std::size_t> sorted = digits;
    std::sort(sorted.begin(), sorted.end());
    auto [it, inserted] = groups.try_emplace(sorted);
    if (inserted) {
      const std::vector<unsigned> counts = digit_counts(sorted, n);
      it->second.moment = exact_moment(n, {counts, counts});
    }
    it->second.tuples.push_back(std::move(digits));
  }
  std::vector<MomentGroup> out;
  out.reserve(groups.size());
  for (auto& [key, group] : groups) out.push_back(std::move(group));
  return out;
}

void require_exact_cap(const CurvatureTensor& r, const char* what) {
  if (r.dim() > kExactDimCap) {
    throw ResourceError(fmt::format("{}: exact oracle limited to n <= {}, got {}", what, kExactDimCap, r.dim()));
  }
}

struct RunningMoments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
};

// Chan et al. pairwise update; applied in a fixed order for reproducibility.
RunningMoments merge(const RunningMoments& a, const RunningMoments& b) {
  if (a.count == 0.0) return b;
  if (b.count == 0.0) return a;
  const double count = a.count + b.count;
  const double delta = b.mean - a.mean;
  return {count, a.mean + delta * (b.count / count), a.m2 + b.m2 + delta * delta * (a.count * b.count / count)};
}

template <typename SampleValue>
McEstimate run_mc(SampleValue&& value_of, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidArgument("Monte Carlo estimate needs at least 2 samples");
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<RunningMoments> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(samples, begin + kChunk);
    std::vector<double> values;
    values.reserve(end - begin);
    double sum = 0.0;
    for (std::uint64_t s = begin; s < end; ++s) {
      values.push_back(value_of(s));
      sum += values.back();
    }
    RunningMoments m{static_cast<double>(values.size()), sum / static_cast<double>(values.size()), 0.0};
    for (const double x : values) m.m2 += (x - m.mean) * (x - m.mean);
    partial[c] = m;
  });
  RunningMoments total;
  for (const RunningMoments& m : partial) total = merge(total, m);
  const double variance = total.m2 / (total.count - 1.0);
  return {total.mean, std::sqrt(variance / total.count), samples, seed};
}

CounterRng sample_stream(std::uint64_t seed, std::uint64_t index) {
  return CounterRng(seed, {hash_name("sphere-sample"), index});
}

}  // namespace

CVector sample_unit_sphere(std::size_t n, CounterRng& rng) {
  if (n == 0) throw InvalidArgument("sample_unit_sphere: n must be positive");
  CVector v(static_cast<Eigen::Index>(n));
  double norm = 0.0;
  while (norm == 0.0) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
    norm = v.norm();
  }
  return v / norm;
}

double exact_moment(std::size_t n, const MomentSpec& spec) {
  if (spec.alpha.size() != n || spec.beta.size() != n) {
    throw DimensionError(fmt::format("exact_moment: exponent vectors must have {} entries", n));
  }
  if (spec.alpha != spec.beta) return 0.0;

  // α! / (n (n+1) ⋯ (n+|α|-1)), both integers; exact while they fit.
  u128 numerator = 1;
  u128 denominator = 1;
  long double numerator_ld = 1.0L;
  long double denominator_ld = 1.0L;
  bool exact = true;
  constexpr auto kLimit = static_cast<u128>(std::numeric_limits<std::uint64_t>::max());
  std::uint64_t k = 0;
  for (const unsigned a : spec.alpha) {
    for (unsigned t = 2; t <= a; ++t) {
      numerator *= t;
      numerator_ld *= t;
      exact = exact && numerator <= kLimit;
    }
    k += a;
  }
  for (std::uint64_t t = 0; t < k; ++t) {
    denominator *= (n + t);
    denominator_ld *= static_cast<long double>(n + t);
    exact = exact && denominator <= kLimit;
  }
  if (exact) {
    return static_cast<double>(static_cast<long double>(static_cast<std::uint64_t>(numerator)) /
                               static_cast<long double>(static_cast<std::uint64_t>(denominator)));
  }
  return static_cast<double>(numerator_ld / denominator_ld);
}

double exact_expectation_H(const CurvatureTensor& r) {
  require_exact_cap(r, "exact_expectation_H");
  // H = Σ R[i][j][k][l] v_i v̄_j v_k v̄_l: unconjugated slots (i,k), conjugated (j,l).
  Complex total{};
  for (const MomentGroup& g : moment_groups(r.dim(), 2)) {
    Complex acc{};
    for (const auto& a : g.tuples) {
      for (const auto& b : g.tuples) acc += r(a[0], b[0], a[1], b[1]);
    }
    total += g.moment * acc;
  }
  return total.real();
}

double exact_expectation_H2(const CurvatureTensor& r) {
  require_exact_cap(r, "exact_expectation_H2");
  // H^2 = Σ R[i][j][k][l] R[i'][j'][k'][l'] with unconjugated (i,k,i',k').
  Complex total{};
  for (const MomentGroup& g : moment_groups(r.dim(), 4)) {
    Complex acc{};
    for (const auto& a : g.tuples) {
      for (const auto& b : g.tuples) acc += r(a[0], b[0], a[1], b[1]) * r(a[2], b[2], a[3], b[3]);
    }
    total += g.moment * acc;
  }
  return total.real();
}

double exact_expectation_B2(const CurvatureTensor& r) {
  require_exact_cap(r, "exact_expectation_B2");
  // R(u,ū,v,v̄)^2: u carries slots (i, i') / (j, j'), v carries (k, k') / (l, l').
  const std::vector<MomentGroup> groups = moment_groups(r.dim(), 2);
  Complex total{};
  for (const MomentGroup& gu : groups) {
    for (const MomentGroup& gv : groups) {
      Complex acc{};
      for (const auto& a : gu.tuples) {
        for (const auto& b : gu.tuples) {
          for (const auto& c : gv.tuples) {
            for (const auto& e : gv.tuples) acc += r(a[0], b[0], c[0], e[0]) * r(a[1], b[1], c[1], e[1]);
          }
        }
      }
      total += gu.moment * gv.moment * acc;
    }
  }
  return total.real();
}

double exact_expectation_B_mean(const CurvatureTensor& r, const CVector& eta) {
  require_exact_cap(r, "exact_expectation_B_mean");
  const std::size_t n = r.dim();
  if (static_cast<std::size_t>(eta.size()) != n) throw DimensionError("exact_expectation_B_mean: η has wrong size");
  const double norm_sq = eta.squaredNorm();
  if (norm_sq == 0.0) throw InvalidArgument("exact_expectation_B_mean: zero η");
  Complex total{};
  for (const MomentGroup& g : moment_groups(n, 1)) {
    Complex acc{};
    for (const auto& a : g.tuples) {
      for (const auto& b : g.tuples) {
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t l = 0; l < n; ++l) acc += r(a[0], b[0], k, l) * eta(k) * std::conj(eta(l));
        }
      }
    }
    total += g.moment * acc;
  }
  return total.real() / norm_sq;
}

double trace_route_expectation_H(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  const HermitianForm f = r.endomorphism();
  const TensorEndomorphism pi = projector_sym(n, 2);
  return (f.eigen() * pi.matrix.eigen()).trace().real() / static_cast<double>(binomial(n + 1, 2));
}

McEstimate mc_expectation(const Integrand& integrand, std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  return run_mc(
      [&](std::uint64_t s) {
        CounterRng rng = sample_stream(seed, s);
        return integrand(sample_unit_sphere(n, rng));
      },
      samples, seed);
}

McEstimate mc_expectation_pair(const PairIntegrand& integrand, std::size_t n, std::uint64_t samples,
                               std::uint64_t seed) {
  return run_mc(
      [&](std::uint64_t s) {
        CounterRng rng = sample_stream(seed, s);
        const CVector u = sample_unit_sphere(n, rng);
        const CVector v = sample_unit_sphere(n, rng);
        return integrand(u, v);
      },
      samples, seed);
}

ComplexMatrix exact_sphere_moment_operator(std::size_t n, std::size_t d) {
  // Same size policy as the dense projector it is compared against.
  const std::size_t side = checked_power(n, d);
  if (side > kDenseEntryCap / side) throw ResourceError("exact_sphere_moment_operator: dense cap exceeded");
  std::vector<std::vector<unsigned>> counts(side);
  for (std::size_t a = 0; a < side; ++a) counts[a] = digit_counts(multi_index_decode(a, n, d).digits, n);
  ComplexMatrix out(side, side);
  for (std::size_t a = 0; a < side; ++a) {
    for (std::size_t b = 0; b < side; ++b) {
      if (counts[a] == counts[b]) out(a, b) = exact_moment(n, {counts[a], counts[b]});
    }
  }
  return out;
}

ComplexMatrix mc_sphere_moment_operator(std::size_t n, std::size_t d, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidArgument("Monte Carlo estimate needs at least 2 samples");
  const std::size_t side = checked_power(n, d);
  if (side > kDenseEntryCap / side) throw ResourceError("mc_sphere_moment_operator: dense cap exceeded");
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  const auto dim = static_cast<Eigen::Index>(side);
  std::vector<CMatrix> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    CMatrix acc = CMatrix::Zero(dim, dim);
    const std::uint64_t end = std::min(samples, (c + 1) * kChunk);
    for (std::uint64_t s = c * kChunk; s < end; ++s) {
      CounterRng rng = sample_stream(seed, s);
      const std::vector<Complex> t = tensor_power(sample_unit_sphere(n, rng), d);
      const Eigen::Map<const CVector> tv(t.data(), dim);
      acc.noalias() += tv * tv.adjoint();
    }
    partial[c] = std::move(acc);
  });
  CMatrix total = CMatrix::Zero(dim, dim);
  for (const CMatrix& p : partial) total += p;
  return ComplexMatrix(CMatrix(total / static_cast<double>(samples)));
}

namespace {

double residual_against_projector(const ComplexMatrix& integral, std::size_t n, std::size_t d) {
  const double scale = 1.0 / static_cast<double>(binomial(n + d - 1, d));
  const TensorEndomorphism pi = projector_sym(n, d);
  return (integral.eigen() - scale * pi.matrix.eigen()).norm();
}

}  // namespace

double exact_projection_residual(std::size_t n, std::size_t d) {
  return residual_against_projector(exact_sphere_moment_operator(n, d), n, d);
}

double mc_projection_residual(std::size_t n, std::size_t d, std::uint64_t samples, std::uint64_t seed) {
  return residual_against_projector(mc_sphere_moment_operator(n, d, samples, seed), n, d);
}

}  // namespace curvlab
