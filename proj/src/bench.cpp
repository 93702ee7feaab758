#include "reachstat/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>

#include "reachstat/errors.hpp"

#ifndef REACHSTAT_DEFAULT_DATA_DIR
#define REACHSTAT_DEFAULT_DATA_DIR "data/benchmarks"
#endif

namespace reachstat {

using io::json;

BenchmarkCase case_from_json(const json& j, const std::string& name) {
  try {
    BenchmarkCase bc{name, io::system_from_json(j), {}, 1, 0.01, {0, 1}, "", false, {}, {}};
    if (!j.contains("theta")) throw InputError("case '" + name + "' has no theta");
    bc.theta = io::box_from_json(j.at("theta"));
    bc.horizon = j.value("horizon", 1L);
    bc.step_size = j.value("step_size", 0.01);
    if (j.contains("projection")) {
      const auto p = j.at("projection").get<std::vector<int>>();
      if (p.size() != 2) throw InputError("projection must name two axes");
      bc.projection = {p[0], p[1]};
    }
    bc.provenance = j.value("provenance", std::string{});
    bc.stand_in = j.value("stand_in", false);
    bc.notes = j.value("notes", std::vector<std::string>{});
    if (j.contains("learn")) {
      const json& l = j.at("learn");
      bc.learn_counts.N = l.value("N", std::size_t{1});
      bc.learn_counts.O = l.value("O", std::size_t{1});
      bc.learn_counts.M = l.value("M", bc.learn_counts.N);
    }
    if (bc.horizon < 1) throw InputError("case '" + name + "': horizon must be >= 1");
    if (!(bc.step_size > 0.0)) throw InputError("case '" + name + "': step_size must be > 0");
    if (bc.theta.dim() != bc.system.dim()) throw InputError("case '" + name + "': theta dimension mismatch");
    const auto n = static_cast<int>(bc.system.dim());
    if (bc.projection.first < 0 || bc.projection.second < 0 || bc.projection.first >= n ||
        bc.projection.second >= n || bc.projection.first == bc.projection.second)
      throw InputError("case '" + name + "': projection axes must be distinct and < n");
    return bc;
  } catch (const json::exception& e) {
    throw InputError("case '" + name + "': " + e.what());
  }
}

std::string data_dir() {
  if (const char* env = std::getenv("REACHSTAT_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return REACHSTAT_DEFAULT_DATA_DIR;
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names = {"flight-collision",   "platoon", "rendezvous", "acc", "anaesthesia",
                                                 "motor-transmission", "robot",   "quadrotor"};
  return names;
}

BenchmarkCase load_case(const std::string& name, const std::string& dir) {
  const std::filesystem::path path = std::filesystem::path(dir) / (name + ".json");
  if (!std::filesystem::exists(path))
    throw LoadError("benchmark case '" + name + "': missing data file " + path.string());
  return case_from_json(io::read_json_file(path.string()), name);
}

std::vector<BenchmarkCase> registry(const std::string& dir) {
  std::vector<BenchmarkCase> out;
  for (const auto& n : case_names()) out.push_back(load_case(n, dir));
  return out;
}

json to_json(const RunReport& r) {
  json j = {{"case", r.case_name},
            {"kind", r.kind},
            {"method", r.method},
            {"status", r.status},
            {"reason", r.reason},
            {"wall_time_s", r.wall_time_s},
            {"seed", r.seed},
            {"tool_version", r.tool_version},
            {"step", r.step},
            {"t", r.t},
            {"refinements", r.refinements},
            {"epsilon_final", r.epsilon_final},
            {"notes", r.notes}};
  if (r.verdict) j["verdict"] = io::to_json(*r.verdict);
  if (r.candidate) j["candidate"] = io::to_json(*r.candidate);
  if (r.model) j["model"] = io::to_json(*r.model);
  if (r.certificate) j["certificate"] = io::to_json(*r.certificate);
  if (r.model_set) j["model_set"] = io::to_json(*r.model_set);
  return j;
}

RunReport report_from_json(const json& j) {
  try {
    RunReport r;
    r.case_name = j.at("case").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.reason = j.value("reason", std::string{});
    r.wall_time_s = j.value("wall_time_s", 0.0);
    r.seed = j.value("seed", std::uint64_t{0});
    r.tool_version = j.value("tool_version", std::string{});
    r.step = j.value("step", 0L);
    r.t = j.value("t", 0.0);
    r.refinements = j.value("refinements", std::size_t{0});
    r.epsilon_final = j.value("epsilon_final", 0.0);
    r.notes = j.value("notes", std::vector<std::string>{});
    if (j.contains("verdict")) r.verdict = io::verdict_from_json(j["verdict"]);
    if (j.contains("candidate")) r.candidate = io::template_from_json(j["candidate"]);
    if (j.contains("model")) r.model = io::learned_model_from_json(j["model"]);
    if (j.contains("certificate")) r.certificate = io::certificate_from_json(j["certificate"]);
    if (j.contains("model_set")) r.model_set = io::template_from_json(j["model_set"]);
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid run report: ") + e.what());
  }
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

RunReport base_report(const BenchmarkCase& bc, const std::string& kind, const std::string& method,
                      std::uint64_t seed, long step) {
  RunReport r;
  r.case_name = bc.name;
  r.kind = kind;
  r.method = method;
  r.seed = seed;
  r.step = step;
  r.t = bc.time_at(step);
  r.notes = bc.notes;
  if (bc.stand_in) r.notes.push_back("provenance: stand-in");
  return r;
}

}  // namespace

RunReport run_verify(const BenchmarkCase& bc, GeneratorMethod method, const BayesConfig& bayes, GeneratorConfig gen,
                     std::uint64_t seed, std::optional<long> step) {
  gen.method = method;
  RunReport r = base_report(bc, "verify", to_string(method), seed, step.value_or(bc.horizon));
  const auto start = std::chrono::steady_clock::now();
  Rng rng(seed);
  try {
    const ReachResult res = compute_reach(bc.system, box_to_star(bc.theta), r.t, gen, bayes, rng);
    r.status = "accepted";
    r.verdict = io::VerdictRecord::from(res.verdict);
    r.verdict->seed = seed;
    r.candidate = res.candidate.set;
    r.refinements = res.refinements;
    r.epsilon_final = res.candidate.epsilon_used;
  } catch (const BudgetExhausted& e) {
    r.status = "budget-exhausted";
    r.reason = e.what();
    r.epsilon_final = e.last_epsilon();
    io::VerdictRecord v;
    v.K = required_samples(bayes.B, bayes.c);
    v.type1_error = type1_error(bayes.B, bayes.c);
    v.counterexample_valuation = e.last_counterexample().valuation;
    v.seed = seed;
    r.verdict = v;
  } catch (const CapacityError& e) {
    r.status = "skipped";
    r.reason = e.what();
  } catch (const UnsupportedFormError& e) {
    r.status = "skipped";
    r.reason = e.what();
  }
  r.wall_time_s = seconds_since(start);
  return r;
}

RunReport run_learn(const BenchmarkCase& bc, SampleCounts counts, double beta, std::uint64_t seed,
                    std::optional<long> step) {
  RunReport r = base_report(bc, "learn", "learn-model", seed, step.value_or(bc.horizon));
  // A single reporting time makes every time sample identical.
  if (counts.O > 1) {
    r.notes.push_back("single reporting step: O=" + std::to_string(counts.O) + " collapsed to 1");
    counts.O = 1;
  }
  const auto start = std::chrono::steady_clock::now();
  Rng rng(seed);
  LearnedModel m =
      learn_with_margin(bc.system, bc.theta, bc.system.domain, Interval(r.t), Margins{}, counts, rng);
  m.seed = seed;
  r.model_set = model_reach(m, r.t);
  r.certificate = pac_certificate(counts, beta, static_cast<std::size_t>(bc.system.dim()), bc.system.var_count());
  for (const auto& w : m.warnings) r.notes.push_back(w);
  r.model = std::move(m);
  r.status = "learned";
  r.wall_time_s = seconds_since(start);
  return r;
}

namespace {

double cross(const std::pair<double, double>& o, const std::pair<double, double>& a,
             const std::pair<double, double>& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

Polygon project_support(Eigen::Index n, std::pair<int, int> axes, const std::function<Vector(const Vector&)>& argmax) {
  if (axes.first == axes.second || axes.first < 0 || axes.second < 0 || axes.first >= n || axes.second >= n)
    throw InputError("emit_projection: axes must be distinct and < n");
  constexpr int kDirections = 64;
  Polygon pts;
  double scale = 0.0;
  for (int k = 0; k < kDirections; ++k) {
    const double phi = 2.0 * M_PI * k / kDirections;
    Vector d = Vector::Zero(n);
    d(axes.first) = std::cos(phi);
    d(axes.second) = std::sin(phi);
    const Vector x = argmax(d);
    pts.emplace_back(x(axes.first), x(axes.second));
    scale = std::max({scale, std::abs(x(axes.first)), std::abs(x(axes.second))});
  }
  const double tol = 1e-9 * std::max(1.0, scale);
  const double area_tol = tol * std::max(1.0, scale);
  std::sort(pts.begin(), pts.end());
  // Andrew's monotone chain; collinear and duplicate points are dropped.
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= area_tol) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= area_tol) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  auto same = [&](const std::pair<double, double>& a, const std::pair<double, double>& b) {
    return std::abs(a.first - b.first) <= tol && std::abs(a.second - b.second) <= tol;
  };
  if (hull.size() < 3) {
    // Segment or point: report the two extreme points of the sorted list.
    Polygon seg{pts.front(), pts.back()};
    if (same(seg[0], seg[1])) seg[1] = seg[0];
    return seg;
  }
  return hull;
}

}  // namespace

Polygon emit_projection(const TemplatePolytope& t, std::pair<int, int> axes) {
  return project_support(t.dim(), axes, [&](const Vector& d) { return template_support(t, d).second; });
}

Polygon emit_projection(const Box& b, std::pair<int, int> axes) { return emit_projection(template_from_box(b), axes); }

Polygon emit_projection(const StarSet& s, std::pair<int, int> axes) {
  return project_support(s.dim(), axes, [&](const Vector& d) { return s.argmax(d); });
}

std::string polygon_csv(const Polygon& p) {
  std::ostringstream out;
  out.precision(17);
  out << "x,y\n";
  for (const auto& [x, y] : p) out << x << ',' << y << '\n';
  return out.str();
}

Polygon polygon_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y", 0) != 0) throw InputError("polygon CSV must start with 'x,y'");
  Polygon p;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      p.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw InputError("polygon CSV line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
  }
  return p;
}

double polygon_area(const Polygon& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& u = p[i];
    const auto& v = p[(i + 1) % p.size()];
    a += u.first * v.second - v.first * u.second;
  }
  return 0.5 * a;
}

}  // namespace reachstat
