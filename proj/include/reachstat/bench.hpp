#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reachstat/generators.hpp"
#include "reachstat/io.hpp"
#include "reachstat/scenario.hpp"
#include "reachstat/verifier.hpp"

namespace reachstat {

inline constexpr const char* kToolVersion = "0.1.0";

struct BenchmarkCase {
  std::string name;
  UncertainSystem system;
  Box theta;
  long horizon = 1;  // reporting step
  double step_size = 0.01;
  std::pair<int, int> projection{0, 1};
  std::string provenance;
  bool stand_in = false;
  SampleCounts learn_counts;
  std::vector<std::string> notes;

  double time_at(long step) const { return static_cast<double>(step) * step_size; }
};

// Parses a case file: a model file plus theta, horizon, step_size,
// projection, provenance and optional learn counts.
BenchmarkCase case_from_json(const io::json& j, const std::string& name);

// Bundled data directory; the REACHSTAT_DATA_DIR environment variable overrides it.
std::string data_dir();
const std::vector<std::string>& case_names();
BenchmarkCase load_case(const std::string& name, const std::string& dir = data_dir());
std::vector<BenchmarkCase> registry(const std::string& dir = data_dir());

struct RunReport {
  std::string case_name;
  std::string kind;    // "verify" or "learn"
  std::string method;  // generator name or "learn-model"
  std::string status;  // accepted | rejected | budget-exhausted | skipped | learned
  std::string reason;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  long step = 0;
  double t = 0.0;
  std::optional<io::VerdictRecord> verdict;
  std::optional<TemplatePolytope> candidate;
  std::size_t refinements = 0;
  double epsilon_final = 0.0;
  std::optional<LearnedModel> model;
  std::optional<PacCertificate> certificate;
  std::optional<TemplatePolytope> model_set;
  std::vector<std::string> notes;
};

io::json to_json(const RunReport& r);
RunReport report_from_json(const io::json& j);

RunReport run_verify(const BenchmarkCase& bc, GeneratorMethod method, const BayesConfig& bayes, GeneratorConfig gen,
                     std::uint64_t seed, std::optional<long> step = std::nullopt);
RunReport run_learn(const BenchmarkCase& bc, SampleCounts counts, double beta, std::uint64_t seed,
                    std::optional<long> step = std::nullopt);

using Polygon = std::vector<std::pair<double, double>>;

// Counterclockwise vertices of the projection onto the axes pair, from the
// support points of 64 planar directions. Flat projections give 2 points.
Polygon emit_projection(const TemplatePolytope& t, std::pair<int, int> axes);
Polygon emit_projection(const Box& b, std::pair<int, int> axes);
Polygon emit_projection(const StarSet& s, std::pair<int, int> axes);

std::string polygon_csv(const Polygon& p);
Polygon polygon_from_csv(const std::string& text);
double polygon_area(const Polygon& p);

}  // namespace reachstat
