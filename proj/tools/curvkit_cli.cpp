#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvkit/metric_io.hpp"
#include "curvkit/report.hpp"

namespace {

std::vector<std::string> non_empty(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& s : items)
    if (!s.empty()) out.push_back(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact curvature and pseudosymmetry classification of coordinate metrics"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-builtins", "Print the builtin metric names");

  auto* cls = app.add_subcommand("classify", "Classify a builtin metric or a metric file");
  std::string source;
  std::vector<std::string> checks = curvkit::check_names();
  std::vector<std::string> tensors = curvkit::tensor_names();
  std::string format = "text";
  int samples = 50;
  std::uint64_t seed = 42;
  cls->add_option("metric", source, "Builtin name or path to a metric file")->required();
  cls->add_option("--check", checks, "Classifiers to run (comma separated; empty for none)")->delimiter(',');
  cls->add_option("--tensor", tensors, "Tensors among R,C,K,conh,P,S (comma separated)")->delimiter(',');
  cls->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  cls->add_option("--oracle-samples", samples, "Random evaluations per identity")->check(CLI::PositiveNumber);
  cls->add_option("--seed", seed, "Oracle seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*list) {
    for (const auto& name : curvkit::builtin_names()) std::cout << name << "\n";
    return 0;
  }

  try {
    const curvkit::Chart chart = curvkit::build_chart(curvkit::resolve_metric(source));
    curvkit::ClassifyOptions options;
    options.checks = non_empty(checks);
    options.tensors = non_empty(tensors);
    curvkit::Report report = curvkit::classify(chart, options);
    report.oracle = curvkit::oracle_crosscheck(report, samples, seed);
    std::cout << (format == "json" ? curvkit::render_json(report) : curvkit::render_text(report));
    if (report.oracle.disagreements > 0) {
      std::cerr << "oracle disagreements: " << report.oracle.disagreements << "\n";
      return 1;
    }
    return 0;
  } catch (const curvkit::InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
