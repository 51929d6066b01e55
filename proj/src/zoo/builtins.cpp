#include <stdexcept>

#include "curvkit/metric_io.hpp"

namespace curvkit {

namespace {

MetricSpec diagonal(std::string name, std::vector<std::string> coords, std::vector<std::string> params,
                    const std::vector<std::string>& diag) {
  MetricSpec s;
  s.name = std::move(name);
  s.dim = static_cast<int>(coords.size());
  s.coords = std::move(coords);
  s.params = std::move(params);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    std::vector<std::string> row(i + 1, "0");
    row[i] = diag[i];
    s.metric.push_back(std::move(row));
  }
  return s;
}

MetricSpec flat(int n) {
  std::vector<std::string> coords;
  for (int i = 1; i <= n; ++i) coords.push_back("x" + std::to_string(i));
  return diagonal("flat" + std::to_string(n), coords, {}, std::vector<std::string>(static_cast<std::size_t>(n), "1"));
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"ex5_1", "ex5_2", "ex5_3", "ex5_4", "ex5_5", "flat3", "flat4", "flat5"};
}

MetricSpec builtin(const std::string& name) {
  const std::vector<std::string> x4{"x1", "x2", "x3", "x4"};
  const std::vector<std::string> x5{"x1", "x2", "x3", "x4", "x5"};
  if (name == "ex5_1")
    return diagonal(name, x5, {}, {"exp(x1)", "exp(x1)*exp(x5)", "exp(x1)", "exp(x1)", "exp(x1)"});
  if (name == "ex5_2") return diagonal(name, x4, {}, {"x1", "x1", "x1", "x1"});
  if (name == "ex5_3") {
    // a^2 (-(dx1)^2 + 1/2 e^{2x1} (dx2)^2 - (dx3)^2 + (dx4)^2 + 2 e^{x1} dx2 dx4)
    MetricSpec s = diagonal(name, x4, {"a"}, {"-a^2", "a^2*exp(2*x1)/2", "-a^2", "a^2"});
    s.metric[3][1] = "a^2*exp(x1)";
    return s;
  }
  if (name == "ex5_4") return diagonal(name, x4, {}, {"exp(x1) + 1", "exp(x1)", "exp(x1)", "exp(x1)"});
  if (name == "ex5_5") {
    // dx^2 + dy^2 + du^2 + dv^2 + rho^2 (x du - y dv + dz)^2
    MetricSpec s = diagonal(name, {"x", "y", "z", "u", "v"}, {"rho"},
                            {"1", "1", "rho^2", "1 + rho^2*x^2", "1 + rho^2*y^2"});
    s.metric[3][2] = "rho^2*x";
    s.metric[4][2] = "-rho^2*y";
    s.metric[4][3] = "-rho^2*x*y";
    return s;
  }
  if (name == "flat3") return flat(3);
  if (name == "flat4") return flat(4);
  if (name == "flat5") return flat(5);
  throw std::invalid_argument("unknown builtin metric '" + name + "'");
}

}  // namespace curvkit
