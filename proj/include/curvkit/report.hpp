#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "curvkit/chart.hpp"
#include "curvkit/classifiers.hpp"

namespace curvkit {

/// Classifier groups, in report order.
const std::vector<std::string>& check_names();
/// Tensors the per-tensor classifiers run on, in report order.
const std::vector<std::string>& tensor_names();

struct ClassifyOptions {
  std::vector<std::string> checks = check_names();
  std::vector<std::string> tensors = tensor_names();
};

struct OracleSummary {
  int samples = 0;
  std::uint64_t seed = 0;
  int identities = 0;
  int disagreements = 0;
  int inconclusive = 0;
};

struct Report {
  std::string chart;
  std::vector<std::string> coords;
  std::vector<std::string> params;
  std::vector<std::pair<std::string, std::string>> summary;  // e.g. ("kappa", "rho^2")
  std::vector<ClassifierVerdict> verdicts;
  OracleSummary oracle;
};

/// Runs the selected classifiers in fixed order.  Unknown check or tensor
/// names throw std::invalid_argument.
Report classify(const Chart& chart, const ClassifyOptions& options = {});

struct OracleOutcome {
  int disagreements = 0;  // samples at which the identity evaluated nonzero
  bool inconclusive = false;
};

/// Evaluates Σ coeff·tensor at `samples` random rational atom assignments.
OracleOutcome oracle_check(const Identity& id, const Symbols& sym, int samples, std::uint64_t seed);

/// Re-verifies every identity behind a positive verdict; one random stream
/// per identity, derived from `seed` and the identity's position.
OracleSummary oracle_crosscheck(const Report& report, int samples, std::uint64_t seed);

std::string render_text(const Report& report);
std::string render_json(const Report& report);

// Witness formatting shared by the classifiers and the acceptance suite.
std::string form_string(const Chart& chart, const Tensor& form);
/// One (name, expression) pair per unknown.  Free unknowns appear by name
/// when the chart has room for them as extra symbols.
std::vector<std::pair<std::string, std::string>> space_witness(const Chart& chart, const SolutionSpace& space);

}  // namespace curvkit
