#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reachstat/scenario.hpp"
#include "reachstat/set_geometry.hpp"
#include "reachstat/uncertain_dynamics.hpp"
#include "reachstat/verifier.hpp"

namespace reachstat::io {

using json = nlohmann::json;

// Model files: {"dim", "vars", "terms": [{"monomial": {name: power}, "matrix"}],
// "domain": {name: [lo, hi]}, "distribution"} or the "interval_matrix" form.
UncertainSystem system_from_json(const json& j);
json system_to_json(const UncertainSystem& sys);
UncertainSystem load_system(const std::string& path);

json read_json_file(const std::string& path);
// Writes through a temporary file and a rename.
void write_text_file(const std::string& path, const std::string& text);
void write_json_file(const std::string& path, const json& j);

json to_json(const Box& b);
Box box_from_json(const json& j);
json to_json(const TemplatePolytope& t);
TemplatePolytope template_from_json(const json& j);
json to_json(const StarSet& s);
StarSet star_from_json(const json& j);
json to_json(const Vector& v);
Vector vector_from_json(const json& j);
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// Serializable part of a Verdict.
struct VerdictRecord {
  bool accepted = false;
  std::size_t K = 0;
  std::size_t samples_checked = 0;
  double type1_error = 0.0;
  std::optional<Vector> counterexample_valuation;
  std::uint64_t seed = 0;

  static VerdictRecord from(const Verdict& v);
};

json to_json(const VerdictRecord& v);
VerdictRecord verdict_from_json(const json& j);

json to_json(const LearnedModel& m);
LearnedModel learned_model_from_json(const json& j);
json to_json(const PacCertificate& c);
PacCertificate certificate_from_json(const json& j);

}  // namespace reachstat::io
