#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "curvkit/chart.hpp"

namespace curvkit {

/// Malformed metric document; the message names the offending field path.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> builtin_names();
/// Throws std::invalid_argument for an unknown name.
MetricSpec builtin(const std::string& name);

/// Metric document: {"name", "dim", "coords", "params", "metric"} where
/// "metric" is the row-major lower triangle, either nested per row or flat.
MetricSpec parse_metric_document(const std::string& text);
MetricSpec load_metric_file(const std::string& path);
std::string render_metric_document(const MetricSpec& spec);

/// A builtin name or a path to a metric document.
MetricSpec resolve_metric(const std::string& name_or_path);

}  // namespace curvkit
