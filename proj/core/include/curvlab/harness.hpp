#pragma once

// Verification suites: draw tensors (or load a fixture), evaluate every
// closed form against the exact oracle (and optionally Monte Carlo), and
// collect the results into a report whose bytes depend only on the config.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvlab/curvature.hpp"
#include "curvlab/identities.hpp"

namespace curvlab {

enum class Suite { projection, kahler_mean, kahler_l2, hermitian_mean, hermitian_l2, bisectional, zero_hsc, trace_table, all };

std::string_view suite_name(Suite s);
/// Accepts the CLI spellings ("kahler-l2", ...). Throws UsageError.
Suite parse_suite(std::string_view name);
/// The concrete suites `all` expands to, in report order.
const std::vector<Suite>& concrete_suites();

enum class ReportFormat { json, csv };
ReportFormat parse_format(std::string_view name);

struct SuiteConfig {
  Suite suite = Suite::all;
  std::vector<std::size_t> n_list = {1, 2, 3};
  std::uint64_t trials = 20;
  std::uint64_t mc_samples = 0;
  std::uint64_t seed = 42;
  double rel_tol = 1e-10;
  ReportFormat format = ReportFormat::json;
  /// Verify this tensor instead of random draws.
  std::optional<std::filesystem::path> fixture;

  /// Throws UsageError for n outside [1, 6], trials = 0, or a bad tolerance.
  void validate() const;
};

struct CaseResult {
  std::string suite;
  std::size_t n = 0;
  std::uint64_t trial = 0;
  IdentityResult identity;

  /// Bisectional L² cases record which closed form the oracle supports;
  /// they never make the run fail.
  bool adjudication = false;
  std::optional<double> closed_form_paper;
  std::optional<double> closed_form_derived;
  std::optional<OracleMatch> oracle_match;

  /// Trace-table rows are complex; the real parts sit in `identity`.
  std::optional<double> closed_form_imag;
  std::optional<double> exact_oracle_imag;
};

struct ReportSummary {
  std::uint64_t cases = 0;
  std::uint64_t passes = 0;
  std::uint64_t failures = 0;
  double worst_rel_diff = 0.0;
};

struct VerificationReport {
  SuiteConfig config;
  std::vector<CaseResult> cases;
  ReportSummary summary;
  std::string version;
  /// Not serialized: reports must be byte-identical across reruns.
  double wall_seconds = 0.0;
};

VerificationReport run_suite(const SuiteConfig& config);

/// 0 when every non-adjudication case passes; the bisectional suite always
/// returns 0.
int exit_status(const VerificationReport& report);

std::string render_json(const VerificationReport& report);
std::string render_csv(const VerificationReport& report);
std::string render(const VerificationReport& report);

enum class FixtureKind { constant_hsc, diagonal, wedge, random_kahler, random_hermitian };
FixtureKind parse_fixture_kind(std::string_view name);

struct FixtureParams {
  double a = 1.0;  // diagonal: R[0][0][0][0]
  double b = 2.0;  // diagonal: R[i][i][i][i] for i >= 1
  double c = 1.0;  // constant-hsc curvature; wedge scale
};

/// constant-hsc: constant_hsc(n, c). diagonal: entries (a, b, ..., b).
/// wedge: w = c (e_0∧e_1), needs n >= 2. random-*: seeded draws.
CurvatureTensor make_fixture(FixtureKind kind, std::size_t n, const FixtureParams& params, std::uint64_t seed);

}  // namespace curvlab
