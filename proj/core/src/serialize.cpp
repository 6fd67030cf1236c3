#include "curvlab/serialize.hpp"

#include <fmt/format.h>

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "curvlab/errors.hpp"
#include "json_writer.hpp"

namespace curvlab {

std::string tensor_to_json(const CurvatureTensor& r) {
  detail::JsonWriter w;
  w.begin_object();
  w.field("n", static_cast<std::uint64_t>(r.dim()));
  w.key("entries").begin_array();
  for (const Complex& x : r.entries()) w.pair(x.real(), x.imag());
  w.end_array();
  w.end_object();
  return w.str();
}

CurvatureTensor tensor_from_json(std::string_view text, double tol) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(fmt::format("tensor JSON: {}", e.what()));
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw InvalidArgument("tensor JSON: expected an object with keys \"n\" and \"entries\"");
  }
  if (!doc["n"].is_number_unsigned()) throw InvalidArgument("tensor JSON: \"n\" must be a positive integer");
  const auto n = doc["n"].get<std::size_t>();
  const auto& entries = doc["entries"];
  if (!entries.is_array()) throw InvalidArgument("tensor JSON: \"entries\" must be an array");

  std::vector<Complex> values;
  values.reserve(entries.size());
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InvalidArgument("tensor JSON: each entry must be a [re, im] pair of numbers");
    }
    values.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return CurvatureTensor::from_entries(n, values, tol);
}

CurvatureTensor load_tensor(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot open tensor file '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return tensor_from_json(buffer.str(), tol);
}

void save_tensor(const std::filesystem::path& path, const CurvatureTensor& r) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument(fmt::format("cannot write tensor file '{}'", path.string()));
  out << tensor_to_json(r);
}

}  // namespace curvlab
