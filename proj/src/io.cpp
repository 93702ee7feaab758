#include "reachstat/io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "reachstat/errors.hpp"

namespace reachstat::io {

namespace {

Interval interval_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("interval must be [lo, hi]: " + j.dump());
  const Interval iv(j[0].get<double>(), j[1].get<double>());
  if (!iv.is_valid()) throw InputError("interval with lo > hi: " + j.dump());
  return iv;
}

json interval_to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

UncertainSystem system_from_interval_json(const json& j, Distribution dist) {
  const json& rows = j.at("interval_matrix");
  if (!rows.is_array() || rows.empty()) throw InputError("interval_matrix must be a nonempty array");
  const auto n = static_cast<Eigen::Index>(rows.size());
  IntervalMatrix om(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != n)
      throw InputError("interval_matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& e = rows[r][c];
      om(r, c) = e.is_number() ? Interval(e.get<double>()) : interval_from_json(e);
    }
  }
  return system_from_interval_matrix(om, dist);
}

}  // namespace

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of numbers");
  const auto vals = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_json(Vector(m.row(r).transpose())));
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rows");
  if (j.empty()) return Matrix(0, 0);
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Vector row = vector_from_json(j[r]);
    if (row.size() != cols) throw InputError("ragged matrix rows");
    m.row(r) = row.transpose();
  }
  return m;
}

UncertainSystem system_from_json(const json& j) {
  const Distribution dist =
      j.contains("distribution") ? distribution_from_string(j.at("distribution").get<std::string>())
                                 : Distribution::kUniform;
  if (j.contains("interval_matrix")) return system_from_interval_json(j, dist);

  const auto n = field(j, "dim").get<Eigen::Index>();
  if (n < 1) throw InputError("dim must be >= 1");
  const auto names = j.contains("vars") ? j.at("vars").get<std::vector<std::string>>() : std::vector<std::string>{};
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second) throw InputError("duplicate variable '" + names[i] + "'");
  }

  PolyMatrixExpr expr(n, names.size());
  for (const json& t : field(j, "terms")) {
    std::map<std::size_t, int> powers;
    if (t.contains("monomial")) {
      for (const auto& [name, pow] : t.at("monomial").items()) {
        const auto it = index.find(name);
        if (it == index.end()) throw InputError("monomial uses undeclared variable '" + name + "'");
        powers[it->second] = pow.get<int>();
      }
    }
    const Matrix coeff = matrix_from_json(field(t, "matrix"));
    if (coeff.rows() != n || coeff.cols() != n) throw InputError("term matrix must be dim x dim");
    expr.add_term(coeff, Monomial(powers));
  }

  VarDomain dom;
  dom.intervals.resize(names.size());
  const json& d = names.empty() ? json::object() : field(j, "domain");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!d.contains(names[i])) throw InputError("domain is missing variable '" + names[i] + "'");
    dom.intervals[i] = interval_from_json(d.at(names[i]));
  }
  return UncertainSystem(std::move(expr), std::move(dom), dist, names);
}

json system_to_json(const UncertainSystem& sys) {
  json j;
  j["dim"] = sys.dim();
  j["vars"] = sys.var_names;
  json terms = json::array();
  for (const auto& t : sys.expr.terms()) {
    json mono = json::object();
    for (const auto& [var, pow] : t.monomial.powers()) mono[sys.var_names[var]] = pow;
    terms.push_back({{"monomial", mono}, {"matrix", to_json(t.coefficient)}});
  }
  j["terms"] = terms;
  json dom = json::object();
  for (std::size_t i = 0; i < sys.var_count(); ++i) dom[sys.var_names[i]] = interval_to_json(sys.domain.intervals[i]);
  j["domain"] = dom;
  j["distribution"] = to_string(sys.distribution);
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

UncertainSystem load_system(const std::string& path) {
  try {
    return system_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw InputError("invalid model file '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw LoadError("cannot write '" + tmp.string() + "'");
    out << text;
  }
  std::filesystem::rename(tmp, target);
}

void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

json to_json(const Box& b) {
  json j = json::array();
  for (const auto& iv : b.intervals) j.push_back(interval_to_json(iv));
  return j;
}

Box box_from_json(const json& j) {
  if (!j.is_array()) throw InputError("box must be an array of intervals");
  std::vector<Interval> ivs;
  for (const json& e : j) ivs.push_back(interval_from_json(e));
  return Box(std::move(ivs));
}

json to_json(const TemplatePolytope& t) {
  return {{"dirs", to_json(t.directions.vectors)}, {"lb", to_json(t.lower)}, {"ub", to_json(t.upper)}};
}

TemplatePolytope template_from_json(const json& j) {
  return TemplatePolytope(DirectionSet(matrix_from_json(field(j, "dirs"))), vector_from_json(field(j, "lb")),
                          vector_from_json(field(j, "ub")));
}

json to_json(const StarSet& s) {
  return {{"anchor", to_json(s.anchor())},
          {"generators", to_json(Matrix(s.generators().transpose()))},
          {"pred", {{"A", to_json(s.predicate_a())}, {"b", to_json(s.predicate_b())}}}};
}

StarSet star_from_json(const json& j) {
  const Vector anchor = vector_from_json(field(j, "anchor"));
  // One JSON row per generator vector.
  const Matrix gens = matrix_from_json(field(j, "generators")).transpose();
  const json& pred = field(j, "pred");
  return StarSet(anchor, gens, matrix_from_json(field(pred, "A")), vector_from_json(field(pred, "b")));
}

VerdictRecord VerdictRecord::from(const Verdict& v) {
  VerdictRecord r;
  r.accepted = v.accepted;
  r.K = v.K;
  r.samples_checked = v.samples_checked;
  r.type1_error = v.type1_error;
  if (v.counterexample) r.counterexample_valuation = v.counterexample->valuation;
  r.seed = v.seed;
  return r;
}

json to_json(const VerdictRecord& v) {
  json j = {{"accepted", v.accepted},
            {"K", v.K},
            {"samples_checked", v.samples_checked},
            {"type1_error", v.type1_error},
            {"seed", v.seed}};
  if (v.counterexample_valuation) j["counterexample_valuation"] = to_json(*v.counterexample_valuation);
  return j;
}

VerdictRecord verdict_from_json(const json& j) {
  VerdictRecord v;
  v.accepted = field(j, "accepted").get<bool>();
  v.K = field(j, "K").get<std::size_t>();
  v.samples_checked = j.value("samples_checked", std::size_t{0});
  v.type1_error = field(j, "type1_error").get<double>();
  v.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("counterexample_valuation")) v.counterexample_valuation = vector_from_json(j["counterexample_valuation"]);
  return v;
}

json to_json(const LearnedModel& m) {
  json dom = json::array();
  for (const auto& iv : m.domain.intervals) dom.push_back(interval_to_json(iv));
  return {{"A_c", to_json(m.a_c)},
          {"C", to_json(m.C)},
          {"kappa", m.kappa},
          {"theta", to_json(m.theta)},
          {"domain", dom},
          {"t_range", interval_to_json(m.t_range)},
          {"U_C", m.u_c},
          {"U_kappa", m.u_kappa},
          {"counts", {{"M", m.counts.M}, {"N", m.counts.N}, {"O", m.counts.O}}},
          {"seed", m.seed},
          {"warnings", m.warnings}};
}

LearnedModel learned_model_from_json(const json& j) {
  LearnedModel m;
  m.a_c = matrix_from_json(field(j, "A_c"));
  m.theta = box_from_json(field(j, "theta"));
  for (const json& iv : field(j, "domain")) m.domain.intervals.push_back(interval_from_json(iv));
  m.C = matrix_from_json(field(j, "C"));
  if (m.C.size() == 0) m.C = Matrix(m.a_c.rows(), static_cast<Eigen::Index>(m.domain.size()));
  m.kappa = field(j, "kappa").get<double>();
  m.t_range = interval_from_json(field(j, "t_range"));
  m.u_c = field(j, "U_C").get<double>();
  m.u_kappa = field(j, "U_kappa").get<double>();
  const json& c = field(j, "counts");
  m.counts = {c.at("M").get<std::size_t>(), c.at("N").get<std::size_t>(), c.at("O").get<std::size_t>()};
  m.seed = j.value("seed", std::uint64_t{0});
  m.warnings = j.value("warnings", std::vector<std::string>{});
  return m;
}

json to_json(const PacCertificate& c) {
  return {{"epsilon", c.epsilon},
          {"beta", c.beta},
          {"K_effective", c.K_effective},
          {"decision_dim", c.decision_dim},
          {"epsilon_M", c.epsilon_M},
          {"epsilon_N", c.epsilon_N},
          {"epsilon_O", c.epsilon_O},
          {"epsilon_nested", c.epsilon_nested},
          {"vacuous", c.vacuous}};
}

PacCertificate certificate_from_json(const json& j) {
  PacCertificate c;
  c.epsilon = field(j, "epsilon").get<double>();
  c.beta = field(j, "beta").get<double>();
  c.K_effective = field(j, "K_effective").get<std::size_t>();
  c.decision_dim = field(j, "decision_dim").get<std::size_t>();
  c.epsilon_M = field(j, "epsilon_M").get<double>();
  c.epsilon_N = field(j, "epsilon_N").get<double>();
  c.epsilon_O = field(j, "epsilon_O").get<double>();
  c.epsilon_nested = field(j, "epsilon_nested").get<double>();
  c.vacuous = field(j, "vacuous").get<bool>();
  return c;
}

}  // namespace reachstat::io
