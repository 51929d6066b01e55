#include "curvkit/metric_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace curvkit {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::vector<std::string> string_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) throw SchemaError(path + "[" + std::to_string(i) + "]: expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

std::string entry_string(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw SchemaError(path + ": expected an expression string");
}

}  // namespace

MetricSpec parse_metric_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("document root must be an object");

  MetricSpec spec;
  const json& name = require(doc, "name");
  if (!name.is_string()) throw SchemaError("name: expected a string");
  spec.name = name.get<std::string>();

  const json& dim = require(doc, "dim");
  if (!dim.is_number_integer()) throw SchemaError("dim: expected an integer");
  spec.dim = dim.get<int>();
  if (spec.dim < 3) throw SchemaError("dim: must be at least 3");
  if (spec.dim > 7) throw SchemaError("dim: at most 7 coordinates are supported");

  spec.coords = string_list(require(doc, "coords"), "coords");
  if (static_cast<int>(spec.coords.size()) != spec.dim) throw SchemaError("coords: expected dim entries");
  spec.params = doc.contains("params") ? string_list(doc.at("params"), "params") : std::vector<std::string>{};

  const json& metric = require(doc, "metric");
  if (!metric.is_array()) throw SchemaError("metric: expected an array");
  const auto n = static_cast<std::size_t>(spec.dim);
  const bool nested = !metric.empty() && metric[0].is_array();
  if (nested) {
    if (metric.size() != n) throw SchemaError("metric: expected dim rows");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string path = "metric[" + std::to_string(i) + "]";
      const json& row = metric[i];
      if (!row.is_array() || row.size() != i + 1)
        throw SchemaError(path + ": expected " + std::to_string(i + 1) + " lower-triangle entries");
      std::vector<std::string> r;
      for (std::size_t j = 0; j <= i; ++j) r.push_back(entry_string(row[j], path + "[" + std::to_string(j) + "]"));
      spec.metric.push_back(std::move(r));
    }
  } else {
    if (metric.size() != n * (n + 1) / 2)
      throw SchemaError("metric: flat lower triangle must hold dim*(dim+1)/2 entries");
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> r;
      for (std::size_t j = 0; j <= i; ++j, ++k) r.push_back(entry_string(metric[k], "metric[" + std::to_string(k) + "]"));
      spec.metric.push_back(std::move(r));
    }
  }
  return spec;
}

MetricSpec load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metric file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_metric_document(buf.str());
}

std::string render_metric_document(const MetricSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["dim"] = spec.dim;
  doc["coords"] = spec.coords;
  doc["params"] = spec.params;
  doc["metric"] = spec.metric;
  return doc.dump(2) + "\n";
}

MetricSpec resolve_metric(const std::string& name_or_path) {
  for (const auto& b : builtin_names())
    if (b == name_or_path) return builtin(b);
  if (!std::filesystem::exists(name_or_path))
    throw std::runtime_error("'" + name_or_path + "' is neither a builtin nor an existing file");
  return load_metric_file(name_or_path);
}

}  // namespace curvkit
