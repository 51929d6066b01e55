#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>

#include "curvkit/report.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace curvkit;
using testsupport::chart;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("curvkit_test_" + name);
  std::ofstream(path) << body;
  return path;
}

bool same_spec(const MetricSpec& a, const MetricSpec& b) {
  return a.name == b.name && a.dim == b.dim && a.coords == b.coords && a.params == b.params && a.metric == b.metric;
}

Report classified(const std::string& name, int samples = 10) {
  Report r = classify(chart(name));
  r.oracle = oracle_crosscheck(r, samples, 42);
  return r;
}

#ifdef CURVKIT_CLI
int run_cli(const std::string& args) {
  const std::string cmd = std::string(CURVKIT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

}  // namespace

// -------------------------------------------------------------- metric files

TEST_CASE("every builtin round-trips through the metric document format") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const MetricSpec s = builtin(name);
    CHECK(same_spec(parse_metric_document(render_metric_document(s)), s));
  }
}

TEST_CASE("builtin transcriptions") {
  const Chart e1 = chart("ex5_1");
  CHECK(e1.n() == 5);
  CHECK(e1.g(0, 0) == e1.parse("exp(x1)"));
  CHECK(e1.g(1, 1) == e1.parse("exp(x1) * exp(x5)"));
  const MetricSpec e5 = builtin("ex5_5");
  CHECK(e5.dim == 5);
  CHECK(e5.params == std::vector<std::string>{"rho"});
  CHECK(builtin("ex5_3").params == std::vector<std::string>{"a"});
  CHECK_THROWS_AS(builtin("ex9_9"), std::invalid_argument);
}

TEST_CASE("metric files load from disk, nested or flat") {
  const auto nested = temp_file("ex5_2.json", R"({"name": "ex5_2", "dim": 4, "coords": ["x1","x2","x3","x4"],
    "metric": [["x1"], ["0","x1"], ["0","0","x1"], ["0","0","0","x1"]]})");
  const MetricSpec s = load_metric_file(nested.string());
  CHECK(s.params.empty());
  CHECK(build_chart(s).scalar_curvature() == chart("ex5_2").scalar_curvature());

  const auto flat = temp_file("flat.json", R"({"name": "g", "dim": 3, "coords": ["u","v","x"], "params": ["a"],
    "metric": ["a", "0", "1", "0", "0", "1"]})");
  const MetricSpec f = load_metric_file(flat.string());
  CHECK(f.params.size() == 1);
  CHECK(f.metric[2] == std::vector<std::string>{"0", "0", "1"});
  CHECK(same_spec(resolve_metric(flat.string()), f));
  std::filesystem::remove(nested);
  std::filesystem::remove(flat);
}

TEST_CASE("schema violations are reported with their field") {
  auto message = [](const std::string& doc) {
    try {
      parse_metric_document(doc);
    } catch (const SchemaError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"name":"p","dim":2,"coords":["x","y"],"metric":[["1"],["0","1"]]})").find("dim") != std::string::npos);
  CHECK(message(R"({"name":"p","dim":3,"coords":["x","y","z"]})").find("metric") != std::string::npos);
  CHECK(message(R"({"name":"p","dim":3,"coords":["x","y"],"metric":[]})").find("coords") != std::string::npos);
  CHECK(message(R"({"name":"p","dim":3,"coords":["x","y","z"],"metric":[["1"],["0","1"],["0",true,"1"]]})")
            .find("metric[2][1]") != std::string::npos);
  CHECK(message("{not json").find("malformed") != std::string::npos);
  CHECK_THROWS_AS(resolve_metric("/nonexistent/metric.json"), std::runtime_error);
}

TEST_CASE("bad expressions fail with a parse error") {
  MetricSpec s = builtin("flat3");
  s.metric[1][1] = "1 + * x";
  CHECK_THROWS_AS(build_chart(s), ParseError);
  s.metric[1][1] = "b";
  CHECK_THROWS_AS(build_chart(s), ParseError);
}

// ------------------------------------------------------------------- reports

TEST_CASE("text report carries the scalar curvature") {
  const std::string text = render_text(classify(chart("ex5_1"), ClassifyOptions{{}, {}}));
  CHECK(text.find("kappa = 7/2 * exp(-x1)") != std::string::npos);
}

TEST_CASE("an empty selection gives zero verdicts in both formats") {
  const Report r = classify(chart("ex5_2"), ClassifyOptions{{}, {}});
  CHECK(r.verdicts.empty());
  const auto doc = nlohmann::json::parse(render_json(r));
  CHECK(doc.at("verdicts").empty());
  CHECK(doc.at("chart") == "ex5_2");
  CHECK_FALSE(render_text(r).empty());
}

TEST_CASE("unknown check or tensor names are rejected") {
  CHECK_THROWS_AS(classify(chart("flat3"), ClassifyOptions{{"bogus"}, {"R"}}), std::invalid_argument);
  CHECK_THROWS_AS(classify(chart("flat3"), ClassifyOptions{{"deszcz"}, {"W"}}), std::invalid_argument);
}

TEST_CASE("json report has the stable keys and preserves witnesses byte-exactly") {
  const Report r = classified("ex5_4", 3);
  const auto doc = nlohmann::json::parse(render_json(r));
  for (const char* key : {"chart", "coords", "params", "summary", "verdicts", "oracle"}) CHECK(doc.contains(key));
  REQUIRE(doc.at("verdicts").size() == r.verdicts.size());
  for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
    const auto& v = doc.at("verdicts")[i];
    CHECK(v.at("name") == r.verdicts[i].name);
    CHECK(v.at("tensor") == r.verdicts[i].tensor);
    for (const auto& [k, w] : r.verdicts[i].witness) CHECK(v.at("witness").at(k).get<std::string>() == w);
  }
  CHECK(doc.at("oracle").at("seed") == 42);
  CHECK(doc.at("oracle").at("disagreements") == 0);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const char* name : {"ex5_2", "ex5_5", "flat4"}) {
    CAPTURE(name);
    CHECK(render_json(classified(name, 5)) == render_json(classified(name, 5)));
    CHECK(render_text(classified(name, 5)) == render_text(classified(name, 5)));
  }
}

TEST_CASE("classification outcomes of the corpus") {
  auto outcome = [](const Report& r, const std::string& name, const std::string& tensor) {
    for (const auto& v : r.verdicts)
      if (v.name == name && v.tensor == tensor) return v.outcome;
    FAIL("missing verdict " << name << " " << tensor);
    return Outcome::Fails;
  };
  const Report e4 = classify(chart("ex5_4"), ClassifyOptions{{"deszcz", "chaki", "roter"}, {"R"}});
  CHECK(outcome(e4, "chaki", "R") == Outcome::Holds);
  CHECK(outcome(e4, "deszcz", "R") == Outcome::Holds);
  CHECK(outcome(e4, "roter", "R") == Outcome::Holds);

  const Report e3 = classify(chart("ex5_3"), ClassifyOptions{{"deszcz", "ricci-generalized", "chaki", "quasi-einstein"}, {"R", "S"}});
  CHECK(outcome(e3, "chaki", "R") == Outcome::Fails);
  CHECK(outcome(e3, "deszcz", "R") == Outcome::Fails);
  CHECK(outcome(e3, "ricci-generalized", "R") == Outcome::Holds);
  CHECK(outcome(e3, "quasi-einstein", "S") == Outcome::Holds);

  const Report f = classify(chart("flat4"));
  for (const auto& v : f.verdicts) {
    CAPTURE(v.name);
    CAPTURE(v.tensor);
    CHECK(v.outcome != Outcome::Fails);
  }
}

// -------------------------------------------------------------------- oracle

TEST_CASE("oracle passes the ex5_2 report") {
  const Report r = classified("ex5_2", 50);
  CHECK(r.oracle.samples == 50);
  CHECK(r.oracle.identities > 0);
  CHECK(r.oracle.disagreements == 0);
  CHECK(r.oracle.inconclusive == 0);
}

TEST_CASE("oracle: the trivial identity never disagrees") {
  const Chart c = chart("flat3");
  Identity zero{"0 = 0", {}};
  CHECK(oracle_check(zero, c.symbols(), 50, 1).disagreements == 0);
  Identity zeros{"0 R = 0", {{Expr(5L), std::make_shared<const Tensor>(c.riemann())}}};
  CHECK(oracle_check(zeros, c.symbols(), 50, 1).disagreements == 0);
}

TEST_CASE("oracle catches perturbed identities") {
  int perturbed = 0;
  for (const char* name : {"ex5_2", "ex5_4", "ex5_5"}) {
    const Chart c = chart(name);
    const Report r = classify(c);
    for (const auto& v : r.verdicts) {
      if (v.outcome != Outcome::Holds) continue;
      for (const Identity& id : v.identities) {
        if (id.terms.size() < 2 || id.terms.back().tensor->is_zero() || perturbed >= 10) continue;
        CAPTURE(id.label);
        CHECK(oracle_check(id, c.symbols(), 50, 42).disagreements == 0);
        Identity bad = id;
        bad.terms.back().coeff += Expr(1L);
        CHECK(oracle_check(bad, c.symbols(), 50, 42).disagreements >= 1);
        ++perturbed;
      }
    }
  }
  CHECK(perturbed == 10);
}

TEST_CASE("oracle is deterministic in the seed") {
  const Report r = classify(chart("ex5_5"), ClassifyOptions{{"deszcz", "pseudosymmetry-type"}, {"R", "C", "K", "S"}});
  const OracleSummary a = oracle_crosscheck(r, 7, 3);
  const OracleSummary b = oracle_crosscheck(r, 7, 3);
  CHECK(a.identities == b.identities);
  CHECK(a.disagreements == 0);
  CHECK(b.seed == 3);
}

// ----------------------------------------------------------------------- CLI

#ifdef CURVKIT_CLI
TEST_CASE("command line exit codes") {
  CHECK(run_cli("list-builtins") == 0);
  CHECK(run_cli("classify flat3 --oracle-samples 3") == 0);
  CHECK(run_cli("classify ex5_2 --check deszcz --tensor R --format json") == 0);
  CHECK(run_cli("classify flat3 --check \"\"") == 0);
  CHECK(run_cli("classify no_such_metric") == 2);
  CHECK(run_cli("classify flat3 --check bogus") == 2);
  CHECK(run_cli("classify flat3 --format xml") == 2);
  const auto bad = temp_file("bad.json", R"({"name":"p","dim":2,"coords":["x","y"],"metric":[["1"],["0","1"]]})");
  CHECK(run_cli("classify " + bad.string()) == 2);
  std::filesystem::remove(bad);
}
#endif
