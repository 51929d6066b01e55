#pragma once

#include <string>
#include <vector>

#include "curvkit/chart.hpp"
#include "curvkit/metric_io.hpp"

namespace testsupport {

inline curvkit::Chart chart(const std::string& name) { return curvkit::build_chart(curvkit::builtin(name)); }

inline curvkit::Expr E(const curvkit::Chart& c, const std::string& s) { return c.parse(s); }

inline curvkit::Tensor form(const curvkit::Chart& c, const std::vector<std::string>& parts) {
  std::vector<curvkit::Expr> v;
  for (const auto& p : parts) v.push_back(c.parse(p));
  return curvkit::Tensor::one_form(v);
}

inline const std::vector<std::string>& corpus() {
  static const std::vector<std::string> names = curvkit::builtin_names();
  return names;
}

/// Chart from explicit lower-triangle rows.
inline curvkit::Chart chart_of(const std::string& name, std::vector<std::string> coords,
                               std::vector<std::vector<std::string>> rows, std::vector<std::string> params = {}) {
  curvkit::MetricSpec s;
  s.name = name;
  s.dim = static_cast<int>(coords.size());
  s.coords = std::move(coords);
  s.params = std::move(params);
  s.metric = std::move(rows);
  return curvkit::build_chart(s);
}

}  // namespace testsupport
