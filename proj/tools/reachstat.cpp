#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "reachstat/bench.hpp"
#include "reachstat/errors.hpp"

using namespace reachstat;
namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kReject = 2, kInput = 3, kSkip = 4 };

int exit_for(const RunReport& r) {
  if (r.status == "accepted" || r.status == "learned") return kOk;
  if (r.status == "skipped") return kSkip;
  return kReject;
}

BenchmarkCase load_model_case(const std::string& path) {
  return case_from_json(io::read_json_file(path), fs::path(path).stem().string());
}

struct StepRange {
  long first = 0;
  long last = 0;
  long stride = 1;
};

StepRange parse_steps(const std::string& s) {
  StepRange r;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> r.first >> c1 >> r.last) || c1 != ':') throw InputError("--steps must look like a:b or a:b:stride");
  if (in >> c2 && !(c2 == ':' && in >> r.stride)) throw InputError("--steps must look like a:b or a:b:stride");
  if (r.first < 0 || r.last < r.first || r.stride < 1) throw InputError("--steps needs 0 <= a <= b and stride >= 1");
  return r;
}

std::pair<int, int> parse_axes(const std::string& s) {
  int i = 0, j = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> i >> comma >> j) || comma != ',') throw InputError("--axes must look like i,j");
  return {i, j};
}

void print_summary(const RunReport& r) {
  std::printf("%-20s %-14s %-17s %8.2fs", r.case_name.c_str(), r.method.c_str(), r.status.c_str(), r.wall_time_s);
  if (r.model) std::printf("  kappa=%.6g", r.model->kappa);
  if (!r.reason.empty()) std::printf("  (%s)", r.reason.c_str());
  std::printf("\n");
}

// A set file may hold a box, a template, a star, or a run report.
Polygon project_file(const std::string& path, std::pair<int, int> axes) {
  const io::json j = io::read_json_file(path);
  if (j.is_array()) return emit_projection(io::box_from_json(j), axes);
  if (j.contains("dirs")) return emit_projection(io::template_from_json(j), axes);
  if (j.contains("anchor")) return emit_projection(io::star_from_json(j), axes);
  const RunReport r = report_from_json(j);
  if (r.candidate) return emit_projection(*r.candidate, axes);
  if (r.model_set) return emit_projection(*r.model_set, axes);
  throw InputError("'" + path + "' holds no set to project");
}

void write_projection(const std::string& path, const Polygon& p) { io::write_text_file(path, polygon_csv(p)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical reachability for uncertain linear systems"};
  app.require_subcommand(1);

  std::string model, out, method = "box", steps = "", in, axes = "0,1", case_name = "all";
  long step = -1;
  double B = 9000.0, c = 0.99, epsilon = 0.01, beta = 0.01, u_c = kDefaultCoefficientBound,
         u_kappa = kDefaultKappaBound;
  std::uint64_t seed = 1;
  std::size_t n_samples = 20, max_ref = 20, N = 100, O = 100, M = 0;
  Margins margins;
  bool skip_learn = false;

  auto* verify = app.add_subcommand("verify", "generate and statistically verify a reachable set");
  verify->add_option("--model", model, "model file with theta")->required();
  verify->add_option("--method", method, "mean|sv|orh|uniform|box")->capture_default_str();
  verify->add_option("--step", step, "reporting step (default: the file's horizon)");
  verify->add_option("--B", B, "Bayes factor threshold")->capture_default_str();
  verify->add_option("--c", c, "confidence threshold")->capture_default_str();
  verify->add_option("--epsilon", epsilon, "initial bloating")->capture_default_str();
  verify->add_option("--samples", n_samples, "generator sample count N")->capture_default_str();
  verify->add_option("--max-refinements", max_ref)->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--out", out, "report JSON")->required();

  auto* learn = app.add_subcommand("learn", "learn a surrogate model and its reach tube");
  learn->add_option("--model", model)->required();
  learn->add_option("--N", N, "valuation samples")->capture_default_str();
  learn->add_option("--O", O, "time samples")->capture_default_str();
  learn->add_option("--M", M, "initial-state samples (default N)");
  learn->add_option("--beta", beta)->capture_default_str();
  learn->add_option("--steps", steps, "a:b:stride (default: the file's horizon)");
  learn->add_option("--U_C", u_c)->capture_default_str();
  learn->add_option("--U_kappa", u_kappa)->capture_default_str();
  learn->add_option("--margin-theta", margins.theta)->capture_default_str();
  learn->add_option("--margin-domain", margins.domain)->capture_default_str();
  learn->add_option("--margin-time", margins.time)->capture_default_str();
  learn->add_option("--seed", seed)->capture_default_str();
  learn->add_option("--out", out)->required();

  auto* bench = app.add_subcommand("bench", "run the bundled benchmark cases");
  bench->add_option("--case", case_name, "case name or all")->capture_default_str();
  bench->add_option("--out", out, "output directory")->required();
  bench->add_option("--seed", seed)->capture_default_str();
  bench->add_flag("--skip-learn", skip_learn);

  auto* project = app.add_subcommand("project", "2-D projection of a set file to CSV");
  project->add_option("--in", in)->required();
  project->add_option("--axes", axes)->capture_default_str();
  project->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*verify) {
      const BenchmarkCase bc = load_model_case(model);
      BayesConfig bayes{B, c, max_ref};
      GeneratorConfig gen;
      gen.epsilon = epsilon;
      gen.sample_count = n_samples;
      gen.validate();
      bayes.validate();
      const RunReport r =
          run_verify(bc, method_from_string(method), bayes, gen, seed, step >= 0 ? std::optional<long>(step) : std::nullopt);
      io::write_json_file(out, to_json(r));
      print_summary(r);
      return exit_for(r);
    }
    if (*learn) {
      const BenchmarkCase bc = load_model_case(model);
      const StepRange sr = steps.empty() ? StepRange{bc.horizon, bc.horizon, 1} : parse_steps(steps);
      SampleCounts counts{M == 0 ? N : M, N, O};
      if (sr.first == sr.last) counts.O = 1;
      const Interval t_range(bc.time_at(sr.first), bc.time_at(sr.last));
      const auto start = std::chrono::steady_clock::now();
      Rng rng(seed);
      LearnedModel m = learn_with_margin(bc.system, bc.theta, bc.system.domain, t_range, margins, counts, rng, u_c, u_kappa);
      m.seed = seed;
      RunReport r;
      r.case_name = bc.name;
      r.kind = "learn";
      r.method = "learn-model";
      r.status = "learned";
      r.seed = seed;
      r.step = sr.last;
      r.t = t_range.hi;
      r.certificate = pac_certificate(counts, beta, static_cast<std::size_t>(bc.system.dim()), bc.system.var_count());
      r.model_set = model_reach(m, r.t);
      r.notes = m.warnings;
      if (counts.O == 1 && O > 1) r.notes.push_back("single reporting step: O collapsed to 1");
      io::json tube = io::json::array();
      for (long s = sr.first; s <= sr.last; s += sr.stride)
        tube.push_back({{"step", s}, {"t", bc.time_at(s)}, {"set", io::to_json(model_reach(m, bc.time_at(s)))}});
      r.model = std::move(m);
      r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      io::json j = to_json(r);
      j["tube"] = tube;
      io::write_json_file(out, j);
      print_summary(r);
      return kOk;
    }
    if (*bench) {
      const std::vector<std::string> names =
          case_name == "all" ? case_names() : std::vector<std::string>{case_name};
      int worst = kOk;
      for (const auto& name : names) {
        const BenchmarkCase bc = load_case(name);
        const fs::path dir = fs::path(out) / name;
        for (auto m : {GeneratorMethod::kBloatMean, GeneratorMethod::kMaxSv, GeneratorMethod::kEncloseOrh,
                       GeneratorMethod::kUniformOrh, GeneratorMethod::kBoxBloat}) {
          const RunReport r = run_verify(bc, m, BayesConfig{}, GeneratorConfig{}, seed);
          io::write_json_file((dir / ("verify-" + to_string(m) + ".json")).string(), to_json(r));
          if (r.candidate)
            write_projection((dir / (to_string(m) + ".csv")).string(), emit_projection(*r.candidate, bc.projection));
          print_summary(r);
          if (exit_for(r) == kReject) worst = kReject;
        }
        Rng rng(derive_seed(seed, 7));
        const StarSet theta = box_to_star(bc.theta);
        for (int i = 0; i < 5; ++i) {
          const StarSet s = reach_star(theta, sample_dynamics(bc.system, rng).second, bc.time_at(bc.horizon));
          write_projection((dir / ("sample-" + std::to_string(i) + ".csv")).string(), emit_projection(s, bc.projection));
        }
        if (!skip_learn) {
          const RunReport r = run_learn(bc, bc.learn_counts, 0.01, seed);
          io::write_json_file((dir / "learn.json").string(), to_json(r));
          write_projection((dir / "learn-model.csv").string(), emit_projection(*r.model_set, bc.projection));
          print_summary(r);
        }
      }
      return worst;
    }
    if (*project) {
      write_projection(out, project_file(in, parse_axes(axes)));
      return kOk;
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kSkip;
  } catch (const BudgetExhausted& e) {
    std::cerr << e.what() << "\n";
    return kReject;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kReject;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
