#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sbls/generators.hpp"
#include "sbls/instance_io.hpp"
#include "sbls/likeproj.hpp"
#include "sbls/oracle.hpp"
#include "sbls/bundled_examples.hpp"
#include "sbls/report_json.hpp"
#include "sbls/solvers.hpp"
#include "sbls/stationarity.hpp"

namespace sbls::cli {

namespace {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Vec parse_reals(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t\n"));
    item.erase(item.find_last_not_of(" \t\n") + 1);
    if (item.empty()) throw UsageError("empty entry in point list '" + text + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError("'" + item + "' is not a finite number");
    values.push_back(v);
  }
  return Eigen::Map<Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Accepts a comma-separated list, "known" for the file's known point, or
// @path for a file holding the comma-separated list.
Point parse_point(const std::string& spec, const InstanceFile* file, int m, int n) {
  Vec z;
  if (spec == "known") {
    if (!file || !file->known_point) throw UsageError("the instance has no known_point");
    z = file->known_point->concatenated();
  } else if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw UsageError("cannot open point file '" + spec.substr(1) + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::replace(text.begin(), text.end(), '\n', ',');
    while (!text.empty() && text.back() == ',') text.pop_back();
    z = parse_reals(text);
  } else {
    z = parse_reals(spec);
  }
  if (z.size() != m + n) {
    throw UsageError("point has " + std::to_string(z.size()) + " entries, expected m + n = " +
                     std::to_string(m + n));
  }
  return Point::from_concatenated(z, m);
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

struct GenOptions {
  int l = 3, m = 5, n = 5, s = 2, t = 2;
  std::uint64_t seed = 0;
  std::string output;
};

void add_gen_options(CLI::App* app, GenOptions& g) {
  app->add_option("--l", g.l, "number of measurements")->check(CLI::PositiveNumber);
  app->add_option("--m", g.m, "length of x")->check(CLI::PositiveNumber);
  app->add_option("--n", g.n, "length of y")->check(CLI::PositiveNumber);
  app->add_option("--s", g.s, "sparsity of x")->check(CLI::PositiveNumber);
  app->add_option("--t", g.t, "sparsity of y")->check(CLI::PositiveNumber);
  app->add_option("--seed", g.seed, "random seed");
  app->add_option("-o,--output", g.output, "write the instance here instead of stdout");
}

void write_instance(const InstanceFile& file, const GenOptions& g, std::ostream& out,
                    std::ostream& err) {
  if (g.output.empty()) {
    out << serialize_instance(file);
  } else {
    save_instance_file(g.output, file);
    err << "wrote " << g.output << "\n";
  }
}

void check_gen_dims(const GenOptions& g) {
  if (g.s >= g.m || g.t >= g.n) throw UsageError("need s < m and t < n");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse bilinear least squares: stationarity checks, projections and solvers"};
  app.require_subcommand(1);

  Tolerance tol_override;
  std::optional<double> grad_tol, obj_tol, zero_tol;

  // check
  std::string check_file, check_point;
  std::optional<double> check_L;
  auto* check = app.add_subcommand("check", "classify a point of an instance");
  check->add_option("file", check_file, "instance JSON")->required();
  check->add_option("--point", check_point, "comma-separated z, 'known', or @file")->required();
  check->add_option("--L", check_L, "also test L-like stationarity at this L");
  check->add_option("--grad-tol", grad_tol, "gradient tolerance");
  check->add_option("--obj-tol", obj_tol, "objective tolerance");
  check->add_option("--zero-tol", zero_tol, "support tolerance");

  // project
  std::string project_source, project_point;
  std::optional<int> project_s, project_t;
  bool project_classic = false;
  auto* project = app.add_subcommand("project", "like-projection (or classic projection) of a point");
  project->add_option("source", project_source, "instance JSON, or dims as 'm,n'")->required();
  project->add_option("--point", project_point, "comma-separated z, 'known', or @file")->required();
  project->add_option("--s", project_s, "sparsity of x (required with dims)");
  project->add_option("--t", project_t, "sparsity of y (required with dims)");
  project->add_flag("--classic", project_classic, "Euclidean projection instead");

  // solve
  std::string solve_file, solve_method = "both", solve_start;
  SolveConfig cfg;
  auto* solve = app.add_subcommand("solve", "run the solvers from random or given starts");
  solve->add_option("file", solve_file, "instance JSON")->required();
  solve->add_option("--method", solve_method, "liht, alt or both")
      ->check(CLI::IsMember({"liht", "alt", "both"}));
  solve->add_option("--starts", cfg.n_starts, "number of random starts")->check(CLI::PositiveNumber);
  solve->add_option("--seed", cfg.seed, "random seed");
  solve->add_option("--start", solve_start, "single start point instead of random starts");
  solve->add_option("--L0", cfg.L0, "initial L")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", cfg.max_iter, "iteration limit")->check(CLI::PositiveNumber);

  // oracle
  std::string oracle_file;
  RestrictedOptions ropts;
  auto* oracle = app.add_subcommand("oracle", "brute-force support enumeration");
  oracle->add_option("file", oracle_file, "instance JSON")->required();
  oracle->add_option("--starts", ropts.n_starts, "random restarts per support pair")
      ->check(CLI::NonNegativeNumber);
  oracle->add_option("--seed", ropts.seed, "random seed");
  oracle->add_flag("--grid", ropts.grid_fallback, "add the grid search for up to 3 free x entries");

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->require_subcommand(1);
  GenOptions gb, gm, gp;
  auto* gen_bd = gen->add_subcommand("blind-deconv", "a_ijk = h_ij g_ik with random H, G");
  add_gen_options(gen_bd, gb);
  auto* gen_ms = gen->add_subcommand("matrix-sensing", "a_ijk = (M_i)_jk with random M_i");
  add_gen_options(gen_ms, gm);
  auto* gen_pl = gen->add_subcommand("planted", "random dense tensor with a zero-residual point");
  add_gen_options(gen_pl, gp);

  // repro
  std::string repro_name;
  auto* repro = app.add_subcommand("repro", "recompute a bundled example");
  repro->add_option("name", repro_name, "paperA, paperB, likeproj1, likeproj2, likeproj3 or all")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*check) {
      const InstanceFile file = load_instance_file(check_file);
      const Instance& inst = file.instance;
      const Point z = parse_point(check_point, &file, inst.m(), inst.n());
      require_feasible(z, inst.s, inst.t, zero_tol.value_or(kDefaultZeroTol));
      Tolerance tol = default_tolerance(inst, z);
      if (grad_tol) tol.grad_tol = *grad_tol;
      if (obj_tol) tol.obj_tol = *obj_tol;
      if (zero_tol) tol.zero_tol = *zero_tol;
      if (check_L && !(*check_L > 0.0)) throw UsageError("--L must be positive");
      emit(out, to_json(classify(inst, z, check_L, tol)));
      return kExitOk;
    }

    if (*project) {
      static const std::regex dims_pattern(R"(\s*(\d+)\s*,\s*(\d+)\s*)");
      std::smatch match;
      std::optional<InstanceFile> file;
      int m = 0, n = 0, s = 0, t = 0;
      if (std::regex_match(project_source, match, dims_pattern)) {
        m = std::stoi(match[1]);
        n = std::stoi(match[2]);
        if (!project_s || !project_t) throw UsageError("--s and --t are required with dims");
      } else {
        file = load_instance_file(project_source);
        m = file->instance.m();
        n = file->instance.n();
        s = file->instance.s;
        t = file->instance.t;
      }
      if (project_s) s = *project_s;
      if (project_t) t = *project_t;
      if (s < 1 || s >= m || t < 1 || t >= n) throw UsageError("need 1 <= s < m and 1 <= t < n");
      const Point z = parse_point(project_point, file ? &*file : nullptr, m, n);
      const ProjectionResult result = project_classic ? classic_project(z, s, t) : like_project(z, s, t);
      json doc = to_json(result);
      doc["kind"] = project_classic ? "classic" : "like";
      emit(out, doc);
      return kExitOk;
    }

    if (*solve) {
      const InstanceFile file = load_instance_file(solve_file);
      const Instance& inst = file.instance;
      SolveTrace trace;
      if (!solve_start.empty()) {
        const Point z0 = parse_point(solve_start, &file, inst.m(), inst.n());
        require_feasible(z0, inst.s, inst.t);
        trace = solve_method == "alt" ? alternating_ht(inst, z0, cfg) : liht_solve(inst, z0, cfg);
        if (solve_method == "both") {
          SolveTrace other = alternating_ht(inst, z0, cfg);
          if (other.final_f() < trace.final_f()) trace = std::move(other);
        }
      } else {
        const SolverChoice choice = solve_method == "liht" ? SolverChoice::Liht
                                    : solve_method == "alt" ? SolverChoice::Alternating
                                                            : SolverChoice::Both;
        trace = multistart(inst, cfg, choice);
      }
      emit(out, to_json(trace));
      return kExitOk;
    }

    if (*oracle) {
      const InstanceFile file = load_instance_file(oracle_file);
      emit(out, to_json(global_brute(file.instance, ropts)));
      return kExitOk;
    }

    if (*gen) {
      if (*gen_bd) {
        check_gen_dims(gb);
        Tensor3 a = gen_blind_deconv(random_normal_matrix(gb.l, gb.m, gb.seed),
                                     random_normal_matrix(gb.l, gb.n, gb.seed + 1));
        PlantedInstance p = plant_on(std::move(a), gb.s, gb.t, gb.seed);
        write_instance({p.instance, p.planted, "blind-deconv"}, gb, out, err);
      } else if (*gen_ms) {
        check_gen_dims(gm);
        std::vector<Mat> ms;
        for (int i = 0; i < gm.l; ++i) ms.push_back(random_normal_matrix(gm.m, gm.n, gm.seed + i));
        PlantedInstance p = plant_on(gen_matrix_sensing(ms), gm.s, gm.t, gm.seed);
        write_instance({p.instance, p.planted, "matrix-sensing"}, gm, out, err);
      } else {
        check_gen_dims(gp);
        PlantedInstance p = gen_planted(gp.l, gp.m, gp.n, gp.s, gp.t, gp.seed);
        write_instance({p.instance, p.planted, "planted"}, gp, out, err);
      }
      return kExitOk;
    }

    if (*repro) {
      std::vector<std::string> names;
      if (repro_name == "all") {
        names = repro_names();
      } else if (std::find(repro_names().begin(), repro_names().end(), repro_name) !=
                 repro_names().end()) {
        names = {repro_name};
      } else {
        throw UsageError("unknown example '" + repro_name + "'");
      }
      bool passed = true;
      json reports = json::array();
      for (const std::string& name : names) {
        ReproResult r = run_repro(name);
        err << name << ": " << (r.passed ? "PASS" : "FAIL") << "\n";
        for (const std::string& msg : r.mismatches) err << "  " << msg << "\n";
        passed = passed && r.passed;
        reports.push_back(std::move(r.report));
      }
      emit(out, names.size() == 1 ? reports[0] : reports);
      return passed ? kExitOk : kExitReproMismatch;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasiblePointError& e) {
    err << "infeasible point: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace sbls::cli
