#include <fmt/format.h>

#include <optional>
#include <string>

#include "curvlab/harness.hpp"
#include "json_writer.hpp"

namespace curvlab {

namespace {

using detail::format_double;
using detail::JsonWriter;

std::string_view format_name(ReportFormat f) { return f == ReportFormat::csv ? "csv" : "json"; }

void write_config(JsonWriter& w, const SuiteConfig& c) {
  w.key("config").begin_object();
  w.field("suite", suite_name(c.suite));
  w.key("n_list").begin_array();
  for (const std::size_t n : c.n_list) w.value(static_cast<std::uint64_t>(n));
  w.end_array();
  w.field("trials", c.trials);
  w.field("mc_samples", c.mc_samples);
  w.field("seed", c.seed);
  w.field("rel_tol", c.rel_tol);
  w.field("format", format_name(c.format));
  w.key("fixture");
  if (c.fixture) {
    w.value(c.fixture->generic_string());
  } else {
    w.null();
  }
  w.end_object();
}

void write_optional(JsonWriter& w, std::string_view key, const std::optional<double>& v) {
  if (v) w.field(key, *v);
}

void write_case(JsonWriter& w, const CaseResult& c) {
  const IdentityResult& id = c.identity;
  w.begin_object();
  w.field("suite", c.suite);
  w.field("n", static_cast<std::uint64_t>(c.n));
  w.field("trial", c.trial);
  w.field("name", id.name);
  w.field("closed_form", id.closed_form);
  w.field("exact_oracle", id.exact_oracle);
  w.key("mc");
  if (id.mc) {
    w.begin_object();
    w.field("mean", id.mc->mean);
    w.field("std_error", id.mc->std_error);
    w.field("samples", id.mc->samples);
    w.end_object();
  } else {
    w.null();
  }
  w.field("abs_diff", id.abs_diff);
  w.field("rel_diff", id.rel_diff);
  w.field("pass", id.pass);
  write_optional(w, "closed_form_imag", c.closed_form_imag);
  write_optional(w, "exact_oracle_imag", c.exact_oracle_imag);
  write_optional(w, "closed_form_paper", c.closed_form_paper);
  write_optional(w, "closed_form_derived", c.closed_form_derived);
  if (c.oracle_match) w.field("oracle_match", to_string(*c.oracle_match));
  w.end_object();
}

std::string csv_number(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string render_json(const VerificationReport& report) {
  JsonWriter w;
  w.begin_object();
  write_config(w, report.config);
  w.key("cases").begin_array();
  for (const CaseResult& c : report.cases) write_case(w, c);
  w.end_array();
  w.key("summary").begin_object();
  w.field("cases", report.summary.cases);
  w.field("passes", report.summary.passes);
  w.field("failures", report.summary.failures);
  w.field("worst_rel_diff", report.summary.worst_rel_diff);
  w.end_object();
  w.field("version", report.version);
  w.end_object();
  return w.str();
}

std::string render_csv(const VerificationReport& report) {
  std::string out =
      "suite,n,trial,name,closed_form,exact_oracle,mc_mean,mc_std_error,mc_samples,abs_diff,rel_diff,pass,"
      "closed_form_imag,exact_oracle_imag,closed_form_paper,closed_form_derived,oracle_match\n";
  for (const CaseResult& c : report.cases) {
    const IdentityResult& id = c.identity;
    std::optional<double> mc_mean;
    std::optional<double> mc_err;
    std::string mc_samples;
    if (id.mc) {
      mc_mean = id.mc->mean;
      mc_err = id.mc->std_error;
      mc_samples = std::to_string(id.mc->samples);
    }
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(c.suite), c.n, c.trial,
                       csv_field(id.name), format_double(id.closed_form), format_double(id.exact_oracle),
                       csv_number(mc_mean), csv_number(mc_err), mc_samples, format_double(id.abs_diff),
                       format_double(id.rel_diff), id.pass ? "true" : "false", csv_number(c.closed_form_imag),
                       csv_number(c.exact_oracle_imag), csv_number(c.closed_form_paper),
                       csv_number(c.closed_form_derived), c.oracle_match ? to_string(*c.oracle_match) : "");
  }
  return out;
}

std::string render(const VerificationReport& report) {
  return report.config.format == ReportFormat::csv ? render_csv(report) : render_json(report);
}

}  // namespace curvlab
