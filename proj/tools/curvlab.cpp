// curvlab: fixture generator and verification harness front end.
//
//   curvlab verify  [--suite S] [--n N]... [--trials T] [--mc-samples M]
//                   [--seed X] [--rel-tol E] [--format json|csv] [--out PATH]
//                   [--fixture TENSOR.json]
//   curvlab fixture --kind K --n N [--a A] [--b B] [--c C] [--seed X] [--out PATH]
//
// Exit status: 0 all cases pass, 1 some case failed, 2 usage error, 3 other error.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/harness.hpp"
#include "curvlab/serialize.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify sphere-average identities for curvature tensors"};
  app.require_subcommand(1);

  curvlab::SuiteConfig config;
  std::string suite = "all";
  std::vector<std::size_t> dims;
  std::string format = "json";
  std::string out_path;
  std::string fixture_path;

  auto* verify = app.add_subcommand("verify", "Run a verification suite and emit a report");
  verify->add_option("--suite", suite, "projection, kahler-mean, kahler-l2, hermitian-mean, hermitian-l2, "
                                       "bisectional, zero-hsc, trace-table or all")
      ->capture_default_str();
  verify->add_option("--n", dims, "Dimension (repeatable, 1..6)")->take_all();
  verify->add_option("--trials", config.trials, "Random tensors per dimension")->capture_default_str();
  verify->add_option("--mc-samples", config.mc_samples, "Monte Carlo samples per case (0 = skip)")
      ->capture_default_str();
  verify->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  verify->add_option("--rel-tol", config.rel_tol, "Relative tolerance")->capture_default_str();
  verify->add_option("--format", format, "json or csv")->capture_default_str();
  verify->add_option("--out", out_path, "Output path (default standard output)");
  verify->add_option("--fixture", fixture_path, "Tensor JSON to verify instead of random draws");

  std::string kind;
  std::size_t fixture_n = 2;
  curvlab::FixtureParams params;
  std::uint64_t fixture_seed = 42;
  std::string fixture_out;

  auto* fixture = app.add_subcommand("fixture", "Write a curvature tensor as JSON");
  fixture->add_option("--kind", kind, "constant-hsc, diagonal, wedge, random-kahler or random-hermitian")
      ->required();
  fixture->add_option("--n", fixture_n, "Dimension")->capture_default_str();
  fixture->add_option("--a", params.a, "diagonal: first entry")->capture_default_str();
  fixture->add_option("--b", params.b, "diagonal: remaining entries")->capture_default_str();
  fixture->add_option("--c", params.c, "constant-hsc curvature or wedge scale")->capture_default_str();
  fixture->add_option("--seed", fixture_seed, "Seed for random kinds")->capture_default_str();
  fixture->add_option("--out", fixture_out, "Output path (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*fixture) {
      const auto tensor = curvlab::make_fixture(curvlab::parse_fixture_kind(kind), fixture_n, params, fixture_seed);
      write_output(fixture_out, curvlab::tensor_to_json(tensor) + "\n");
      return 0;
    }

    config.suite = curvlab::parse_suite(suite);
    config.format = curvlab::parse_format(format);
    if (!dims.empty()) config.n_list = dims;
    if (!fixture_path.empty()) config.fixture = fixture_path;
    config.validate();

    const curvlab::VerificationReport report = curvlab::run_suite(config);
    write_output(out_path, curvlab::render(report));
    std::cerr << fmt::format("{} cases, {} passed, {} failed in {:.3f} s\n", report.summary.cases,
                             report.summary.passes, report.summary.failures, report.wall_seconds);
    return curvlab::exit_status(report);
  } catch (const curvlab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
