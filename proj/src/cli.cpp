#include <fstream>
#include <map>

#include <CLI11.hpp>

#include "ncat/cli.hpp"
#include "ncat/json_io.hpp"

namespace ncat {

namespace {

struct Options {
  double tol_residual = 1e-9;
  double tol_root = 1e-9;
  std::uint64_t seed = SolveOptions{}.seed;
  int contour_samples = 1024;
  std::string input;
  std::string output;
  std::string sampling_path;
  std::string name;
  std::vector<std::string> params;
  int index = 0;
};

void diagnose(std::ostream& err, const std::string& level, const std::string& code, const std::string& message) {
  err << json{{"level", level}, {"code", code}, {"message", message}}.dump() << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

void emit(const json& j, const Options& o, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output);
  f << text;
  if (!f) throw Error(ErrorCode::SinkFailure, "cannot write " + o.output);
}

SolveOptions solve_options(const Options& o) {
  SolveOptions s;
  s.tol_residual = o.tol_residual;
  s.tol_root = o.tol_root;
  s.seed = o.seed;
  return s;
}

SamplingConfig sampling(const Options& o) {
  SamplingConfig cfg = o.sampling_path.empty() ? SamplingConfig{} : sampling_from_json(read_json(o.sampling_path));
  cfg.contour_samples = o.contour_samples;
  cfg.validate();
  return cfg;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const std::string& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::InvalidInput, "--param expects k=v, got " + s);
    try {
      std::size_t used = 0;
      const double v = std::stod(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1) throw std::invalid_argument(s);
      out[s.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidInput, "--param value is not a number: " + s);
    }
  }
  return out;
}

json solutions_json(const std::vector<SolutionCandidate>& c, double tol) {
  json out = json::array();
  for (const SolutionCandidate& x : c) out.push_back(candidate_to_json(x, tol));
  return out;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const FluxData d = flux_from_json(read_json(o.input));
  json j = type_to_json(classify_type(d));
  j["balanced"] = is_balanced(d);
  j["balance_residual"] = check_balance(d);
  j["obstructions"] = obstructions_to_json(detect_obstructions(d));
  emit(j, o, out);
  return 0;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const FluxData d = flux_from_json(read_json(o.input));
  const SolveResult r = solve(d, solve_options(o));
  json j{{"type", type_to_json(r.type)},
         {"obstructions", obstructions_to_json(r.obstructions)},
         {"solutions", solutions_json(r.solutions, o.tol_residual)}};
  if (r.family) j["family"] = family_to_json(*r.family);
  if (!r.note.empty()) j["note"] = r.note;
  emit(j, o, out);
  if (r.solutions.empty()) {
    diagnose(err, "error", r.obstructions.any() ? "ObstructedInput" : "NoSolution",
             r.note.empty() ? "no solution" : r.note);
    return 1;
  }
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const std::vector<SolutionCandidate> cs = candidates_from_json(read_json(o.input));
  const SamplingConfig cfg = sampling(o);
  json results = json::array();
  bool all = true;
  for (const SolutionCandidate& c : cs) {
    const VerificationReport v = verify_solution(c, o.tol_residual);
    const OracleReport orc = check_oracles(c, cfg);
    const bool ok = v.single_valued && orc.passed();
    all = all && ok;
    results.push_back({{"label", c.label},
                       {"verification", verification_to_json(v)},
                       {"oracles", oracles_to_json(orc)},
                       {"passed", ok}});
    if (!ok) diagnose(err, "error", "VerificationFailed", "candidate " + c.label + " failed verification");
  }
  emit({{"results", results}, {"passed", all}}, o, out);
  return all ? 0 : 1;
}

int cmd_mesh(const Options& o, std::ostream& out) {
  if (o.output.empty()) throw Error(ErrorCode::InvalidInput, "mesh needs -o <file.obj>");
  const std::vector<SolutionCandidate> cs = candidates_from_json(read_json(o.input));
  if (o.index < 0 || o.index >= static_cast<int>(cs.size()))
    throw Error(ErrorCode::InvalidInput, "--index out of range");
  const SolutionCandidate& c = cs[o.index];
  const SurfaceMesh m = sample_surface(weierstrass_from_solution(c), sampling(o));
  std::ofstream f(o.output);
  if (!f) throw Error(ErrorCode::SinkFailure, "cannot write " + o.output);
  export_obj(m, f);
  out << json{{"label", c.label},
              {"vertices", m.vertices.size()},
              {"triangles", m.triangles.size()},
              {"output", o.output}}
             .dump(2)
      << '\n';
  return 0;
}

int cmd_example(const Options& o, std::ostream& out, std::ostream& err) {
  const NamedExample ex = named_example(o.name, parse_params(o.params));
  json j{{"example", o.name}, {"flagged", ex.flagged}, {"solutions", solutions_json(ex.candidates, o.tol_residual)}};
  if (!ex.note.empty()) j["note"] = ex.note;
  if (ex.family) {
    j["family"] = family_to_json(*ex.family);
    j["family"]["t"] = complex_to_json(ex.family_t);
  }
  emit(j, o, out);
  if (ex.flagged) diagnose(err, "warning", "Flagged", ex.note);
  return 0;
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoSolution:
    case ErrorCode::ObstructedInput: return 1;
    case ErrorCode::InvalidInput:
    case ErrorCode::CoincidentPunctures:
    case ErrorCode::InfinityEnd:
    case ErrorCode::DegenerateData:
    case ErrorCode::UnknownName:
    case ErrorCode::ParamOutOfRange:
    case ErrorCode::AtPuncture:
    case ErrorCode::SinkFailure: return 2;
    default: return 3;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Construction and verification of n-end catenoids", "ncat"};
  app.require_subcommand(1);

  auto tolerances = [&](CLI::App* s) {
    s->add_option("--tol-residual", o.tol_residual, "Residual tolerance for verification");
    s->add_option("--tol-root", o.tol_root, "Root clustering tolerance");
    s->add_option("--seed", o.seed, "Seed for randomized restarts");
    s->add_option("-o,--output", o.output, "Output file");
  };
  auto surface_opts = [&](CLI::App* s) {
    s->add_option("--contour-samples", o.contour_samples, "Samples on each contour")->check(CLI::PositiveNumber);
    s->add_option("--sampling", o.sampling_path, "Sampling config JSON");
  };

  CLI::App* classify = app.add_subcommand("classify", "Classify flux data and screen obstructions");
  classify->add_option("input", o.input, "Flux data JSON")->required();
  tolerances(classify);
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve for n-end catenoids with given flux");
  solve_cmd->add_option("input", o.input, "Flux data JSON")->required();
  tolerances(solve_cmd);
  CLI::App* verify = app.add_subcommand("verify", "Re-verify solutions with contour oracles");
  verify->add_option("input", o.input, "Solutions JSON")->required();
  tolerances(verify);
  surface_opts(verify);
  CLI::App* mesh = app.add_subcommand("mesh", "Sample a solution and export an OBJ mesh");
  mesh->add_option("input", o.input, "Solutions JSON")->required();
  mesh->add_option("--index", o.index, "Which solution to mesh");
  tolerances(mesh);
  surface_opts(mesh);
  CLI::App* example = app.add_subcommand("example", "Materialize a named example");
  example->add_option("name", o.name, "Example name")->required();
  example->add_option("--param", o.params, "Parameter k=v (repeatable)");
  tolerances(example);

  std::vector<const char*> argv{"ncat"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    diagnose(err, "error", "InvalidInput", e.what());
    return 2;
  }

  try {
    if (classify->parsed()) return cmd_classify(o, out);
    if (solve_cmd->parsed()) return cmd_solve(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (mesh->parsed()) return cmd_mesh(o, out);
    if (example->parsed()) return cmd_example(o, out, err);
  } catch (const Error& e) {
    diagnose(err, "error", to_string(e.code()), e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    diagnose(err, "error", "Internal", e.what());
    return 3;
  }
  return 2;
}

}  // namespace ncat
