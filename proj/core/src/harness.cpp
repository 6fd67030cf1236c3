#include "curvlab/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>

#include "curvlab/errors.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/rng.hpp"
#include "curvlab/serialize.hpp"
#include "curvlab/sphere.hpp"
#include "curvlab/symgroup.hpp"

#ifndef CURVLAB_VERSION
#define CURVLAB_VERSION "0.0.0"
#endif

namespace curvlab {

namespace {

constexpr std::size_t kMaxDim = 6;
constexpr std::size_t kMaxProjectionDegree = 4;
constexpr std::size_t kSampledDirections = 100;
// MC for the projection operator forms an outer product per sample.
constexpr std::size_t kMcProjectionSideCap = 81;

struct SuiteEntry {
  Suite suite;
  std::string_view name;
};

constexpr std::array<SuiteEntry, 9> kSuites = {{
    {Suite::projection, "projection"},
    {Suite::kahler_mean, "kahler-mean"},
    {Suite::kahler_l2, "kahler-l2"},
    {Suite::hermitian_mean, "hermitian-mean"},
    {Suite::hermitian_l2, "hermitian-l2"},
    {Suite::bisectional, "bisectional"},
    {Suite::zero_hsc, "zero-hsc"},
    {Suite::trace_table, "trace-table"},
    {Suite::all, "all"},
}};

// Everything one (suite, n, trial) task needs.
struct Task {
  Suite suite;
  std::size_t n;
  std::uint64_t trial;
  const CurvatureTensor* fixture;
};

std::uint64_t task_key(const SuiteConfig& config, const Task& task, std::string_view purpose) {
  return stream_key(config.seed, {hash_name(suite_name(task.suite)), task.n, task.trial, hash_name(purpose)});
}

CaseResult make_case(const Task& task, IdentityResult identity) {
  CaseResult out;
  out.suite = std::string(suite_name(task.suite));
  out.n = task.n;
  out.trial = task.trial;
  out.identity = std::move(identity);
  return out;
}

CVector random_direction(std::size_t n, std::uint64_t key) {
  CounterRng rng(key);
  return sample_unit_sphere(n, rng);
}

std::vector<CaseResult> projection_cases(const SuiteConfig& config, const Task& task) {
  std::vector<CaseResult> out;
  for (std::size_t d = 1; d <= kMaxProjectionDegree; ++d) {
    Task row = task;
    row.trial = d;
    const double residual = exact_projection_residual(task.n, d);
    IdentityResult identity = compare_values(fmt::format("projection_exact_d{}", d), 0.0, residual, config.rel_tol);
    const std::size_t side = checked_power(task.n, d);
    if (config.mc_samples > 0 && side <= kMcProjectionSideCap) {
      const std::uint64_t seed = task_key(config, row, "mc");
      identity.mc = McEstimate{mc_projection_residual(task.n, d, config.mc_samples, seed), 0.0, config.mc_samples, seed};
    }
    out.push_back(make_case(row, std::move(identity)));
  }
  return out;
}

CurvatureTensor draw_tensor(const SuiteConfig& config, const Task& task) {
  if (task.fixture != nullptr) return *task.fixture;
  const std::uint64_t key = task_key(config, task, "tensor");
  switch (task.suite) {
    case Suite::kahler_mean:
    case Suite::kahler_l2:
    case Suite::bisectional:
      return random_kahler_curvature(task.n, key);
    case Suite::zero_hsc:
      return random_wedge_curvature(task.n, key);
    default:
      return random_hermitian_curvature(task.n, key);
  }
}

std::optional<McEstimate> maybe_mc(const SuiteConfig& config, const Task& task, const Integrand& integrand) {
  if (config.mc_samples == 0) return std::nullopt;
  return mc_expectation(integrand, task.n, config.mc_samples, task_key(config, task, "mc"));
}

std::vector<CaseResult> tensor_cases(const SuiteConfig& config, const Task& task) {
  const CurvatureTensor r = draw_tensor(config, task);
  std::vector<CaseResult> out;
  const auto h = [&r](const CVector& v) { return hsc(r, v); };
  const auto h2 = [&r](const CVector& v) {
    const double value = hsc(r, v);
    return value * value;
  };

  switch (task.suite) {
    case Suite::kahler_mean: {
      const KahlerTensor k = KahlerTensor::from_tensor(r);
      IdentityResult id = compare_values("berger_mean", berger_mean_kahler(k), exact_expectation_H(r), config.rel_tol);
      id.mc = maybe_mc(config, task, h);
      out.push_back(make_case(task, std::move(id)));
      break;
    }
    case Suite::kahler_l2: {
      const KahlerTensor k = KahlerTensor::from_tensor(r);
      IdentityResult id = compare_values("l2_hsc_kahler", l2_hsc_kahler(k), exact_expectation_H2(r), config.rel_tol);
      id.mc = maybe_mc(config, task, h2);
      out.push_back(make_case(task, std::move(id)));
      break;
    }
    case Suite::hermitian_mean: {
      IdentityResult id =
          compare_values("mean_hsc_hermitian", mean_hsc_hermitian(r), exact_expectation_H(r), config.rel_tol);
      id.mc = maybe_mc(config, task, h);
      out.push_back(make_case(task, std::move(id)));
      break;
    }
    case Suite::hermitian_l2: {
      IdentityResult id =
          compare_values("l2_hsc_hermitian", l2_hsc_hermitian(r), exact_expectation_H2(r), config.rel_tol);
      id.mc = maybe_mc(config, task, h2);
      out.push_back(make_case(task, std::move(id)));
      break;
    }
    case Suite::bisectional: {
      const KahlerTensor k = KahlerTensor::from_tensor(r);
      const CVector eta = random_direction(task.n, task_key(config, task, "eta"));
      IdentityResult mean_id = compare_values("bisectional_mean", bisectional_mean(k, eta),
                                              exact_expectation_B_mean(r, eta), config.rel_tol);
      mean_id.mc = maybe_mc(config, task, [&](const CVector& xi) { return bisectional(r, xi, eta).real(); });
      out.push_back(make_case(task, std::move(mean_id)));

      const double paper = l2_bisectional_paper(k);
      const double derived = l2_bisectional_derived(k);
      const double oracle = exact_expectation_B2(r);
      const OracleMatch match = adjudicate(paper, derived, oracle, config.rel_tol);
      const double reported = match == OracleMatch::derived ? derived : paper;
      IdentityResult l2_id = compare_values("bisectional_l2", reported, oracle, config.rel_tol);
      l2_id.pass = match != OracleMatch::neither;
      if (config.mc_samples > 0) {
        l2_id.mc = mc_expectation_pair(
            [&](const CVector& u, const CVector& v) {
              const double b = bisectional(r, u, v).real();
              return b * b;
            },
            task.n, config.mc_samples, task_key(config, task, "mc-pair"));
      }
      CaseResult row = make_case(task, std::move(l2_id));
      row.adjudication = true;
      row.closed_form_paper = paper;
      row.closed_form_derived = derived;
      row.oracle_match = match;
      out.push_back(std::move(row));
      break;
    }
    case Suite::zero_hsc: {
      const ZeroHscConsequences z = zero_hsc_consequences(r);
      out.push_back(make_case(task, compare_values("zero_hsc_sym_block", 0.0, z.sym_block_residual, config.rel_tol)));
      out.push_back(make_case(task, compare_values("zero_hsc_scalar_sum", 0.0, z.scalar_sum_residual, config.rel_tol)));
      out.push_back(make_case(task, compare_values("zero_hsc_ricci_sum", 0.0, z.ricci_sum_residual, config.rel_tol)));
      double worst = 0.0;
      CounterRng rng(task_key(config, task, "directions"));
      for (std::size_t s = 0; s < kSampledDirections; ++s) {
        worst = std::max(worst, std::abs(hsc(r, sample_unit_sphere(task.n, rng))));
      }
      out.push_back(make_case(task, compare_values("zero_hsc_sampled_H", 0.0, worst, config.rel_tol)));
      IdentityResult l2 = compare_values("zero_hsc_l2", l2_hsc_hermitian(r), exact_expectation_H2(r), config.rel_tol);
      l2.mc = maybe_mc(config, task, h2);
      out.push_back(make_case(task, std::move(l2)));
      break;
    }
    case Suite::trace_table: {
      const TensorEndomorphism f = as_endomorphism(r.endomorphism());
      const std::array<Complex, 24> closed = trace_table(f);
      const auto& keys = trace_table_keys();
      for (std::size_t row = 0; row < keys.size(); ++row) {
        const Complex oracle = trace_f_tensor_f_sigma_oracle(f, permutation_for_key(keys[row]));
        IdentityResult id;
        id.name = fmt::format("trace_row_({})", keys[row]);
        id.closed_form = closed[row].real();
        id.exact_oracle = oracle.real();
        id.abs_diff = std::abs(closed[row] - oracle);
        const double scale = std::max(std::abs(closed[row]), std::abs(oracle));
        id.rel_diff = scale <= kNearZero ? id.abs_diff : id.abs_diff / scale;
        id.pass = scale <= kNearZero ? id.abs_diff <= kNearZero : id.rel_diff <= config.rel_tol;
        CaseResult c = make_case(task, std::move(id));
        c.closed_form_imag = closed[row].imag();
        c.exact_oracle_imag = oracle.imag();
        out.push_back(std::move(c));
      }
      break;
    }
    case Suite::projection:
    case Suite::all:
      break;
  }
  return out;
}

std::vector<CaseResult> run_task(const SuiteConfig& config, const Task& task) {
  if (task.suite == Suite::projection) return projection_cases(config, task);
  return tensor_cases(config, task);
}

bool suite_applies_to_fixture(Suite suite, const CurvatureTensor& r) {
  switch (suite) {
    case Suite::kahler_mean:
    case Suite::kahler_l2:
    case Suite::bisectional:
      return is_kahler(r).is_kahler;
    case Suite::zero_hsc:
      return r.dim() <= kExactDimCap && std::abs(exact_expectation_H2(r)) <= kNearZero;
    case Suite::projection:
    case Suite::all:
      return false;
    default:
      return true;
  }
}

}  // namespace

std::string_view suite_name(Suite s) {
  for (const auto& entry : kSuites) {
    if (entry.suite == s) return entry.name;
  }
  return "unknown";
}

Suite parse_suite(std::string_view name) {
  for (const auto& entry : kSuites) {
    if (entry.name == name) return entry.suite;
  }
  throw UsageError(fmt::format("unknown suite '{}'", name));
}

const std::vector<Suite>& concrete_suites() {
  static const std::vector<Suite> suites = {Suite::projection,     Suite::kahler_mean,  Suite::kahler_l2,
                                            Suite::hermitian_mean, Suite::hermitian_l2, Suite::bisectional,
                                            Suite::zero_hsc,       Suite::trace_table};
  return suites;
}

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw UsageError(fmt::format("unknown format '{}' (expected json or csv)", name));
}

void SuiteConfig::validate() const {
  if (n_list.empty()) throw UsageError("at least one dimension is required");
  for (const std::size_t n : n_list) {
    if (n < 1 || n > kMaxDim) throw UsageError(fmt::format("dimension {} outside [1, {}]", n, kMaxDim));
  }
  if (trials < 1) throw UsageError("trials must be at least 1");
  if (mc_samples == 1) throw UsageError("mc-samples must be 0 or at least 2");
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) throw UsageError("rel-tol must be a positive number");
}

VerificationReport run_suite(const SuiteConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  std::vector<Suite> suites;
  if (config.suite == Suite::all) {
    suites = concrete_suites();
  } else {
    suites = {config.suite};
  }

  std::optional<CurvatureTensor> fixture;
  std::vector<Task> tasks;
  if (config.fixture) {
    fixture = load_tensor(*config.fixture);
    if (fixture->dim() > kMaxDim) throw UsageError(fmt::format("fixture dimension {} exceeds {}", fixture->dim(), kMaxDim));
    for (const Suite s : suites) {
      if (suite_applies_to_fixture(s, *fixture)) {
        tasks.push_back({s, fixture->dim(), 0, &*fixture});
      } else if (config.suite != Suite::all) {
        throw UsageError(fmt::format("suite '{}' does not apply to fixture '{}'", suite_name(s), config.fixture->string()));
      }
    }
  } else {
    std::vector<std::size_t> dims = config.n_list;
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    for (const Suite s : suites) {
      for (const std::size_t n : dims) {
        if (s == Suite::projection) {
          tasks.push_back({s, n, 0, nullptr});
          continue;
        }
        for (std::uint64_t t = 0; t < config.trials; ++t) tasks.push_back({s, n, t, nullptr});
      }
    }
  }

  std::vector<std::vector<CaseResult>> per_task(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { per_task[i] = run_task(config, tasks[i]); });

  VerificationReport report;
  report.config = config;
  if (fixture) report.config.n_list = {fixture->dim()};
  report.version = CURVLAB_VERSION;
  for (auto& rows : per_task) {
    for (auto& row : rows) report.cases.push_back(std::move(row));
  }
  for (const CaseResult& c : report.cases) {
    ++report.summary.cases;
    if (c.identity.pass) {
      ++report.summary.passes;
    } else {
      ++report.summary.failures;
    }
    report.summary.worst_rel_diff = std::max(report.summary.worst_rel_diff, c.identity.rel_diff);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

int exit_status(const VerificationReport& report) {
  if (report.config.suite == Suite::bisectional) return 0;
  for (const CaseResult& c : report.cases) {
    if (!c.adjudication && !c.identity.pass) return 1;
  }
  return 0;
}

FixtureKind parse_fixture_kind(std::string_view name) {
  if (name == "constant-hsc") return FixtureKind::constant_hsc;
  if (name == "diagonal") return FixtureKind::diagonal;
  if (name == "wedge") return FixtureKind::wedge;
  if (name == "random-kahler") return FixtureKind::random_kahler;
  if (name == "random-hermitian") return FixtureKind::random_hermitian;
  throw UsageError(fmt::format("unknown fixture kind '{}'", name));
}

CurvatureTensor make_fixture(FixtureKind kind, std::size_t n, const FixtureParams& params, std::uint64_t seed) {
  if (n < 1 || n > kMaxDim) throw UsageError(fmt::format("dimension {} outside [1, {}]", n, kMaxDim));
  for (const double p : {params.a, params.b, params.c}) {
    if (!std::isfinite(p)) throw UsageError("fixture parameters must be finite");
  }
  switch (kind) {
    case FixtureKind::constant_hsc:
      return constant_hsc(n, params.c);
    case FixtureKind::diagonal: {
      std::vector<double> diag(n, params.b);
      diag[0] = params.a;
      return diagonal_fixture(diag);
    }
    case FixtureKind::wedge: {
      if (n < 2) throw UsageError("wedge fixture needs n >= 2");
      ComplexMatrix w(n, n);
      w(0, 1) = params.c;
      w(1, 0) = -params.c;
      return wedge_rank_one(w);
    }
    case FixtureKind::random_kahler:
      return random_kahler_curvature(n, seed);
    case FixtureKind::random_hermitian:
      return random_hermitian_curvature(n, seed);
  }
  throw UsageError("unknown fixture kind");
}

}  // namespace curvlab
