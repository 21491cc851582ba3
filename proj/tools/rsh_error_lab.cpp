// rsh-error-lab: analytic error curves, simulations and invariant checks for
// elitist RLS and (1+1)EA on OneMax, Peak, Deceptive and Knapsack.

#include "rsh/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Flags {
  std::string config;
  std::string problem;
  std::string algorithm;
  std::vector<std::string> n;
  std::string alpha;
  std::vector<std::string> t;
  long long t_max = 0;
  long long t_step = 1;
  long long runs = 0;
  unsigned long long seed = 0;
  std::string methods;
  std::string numeric_mode;
  std::string out;
  std::string model;
  std::vector<std::string> suites;
  bool oracle_fallback = false;
  unsigned threads = 0;
  std::string plot_script;
};

struct Registered {
  CLI::Option* config;
  CLI::Option* problem;
  CLI::Option* algorithm;
  CLI::Option* n;
  CLI::Option* alpha;
  CLI::Option* t;
  CLI::Option* t_max;
  CLI::Option* t_step;
  CLI::Option* runs;
  CLI::Option* seed;
  CLI::Option* methods;
  CLI::Option* numeric_mode;
  CLI::Option* out;
  CLI::Option* model;
  CLI::Option* suites;
  CLI::Option* oracle_fallback;
  CLI::Option* threads;
  CLI::Option* plot_script;
};

Registered add_common(CLI::App* sub, Flags& f) {
  Registered r{};
  r.config = sub->add_option("--config", f.config, "JSON experiment spec; flags override its values");
  r.problem = sub->add_option("--problem", f.problem, "onemax | peak | deceptive | knapsack");
  r.algorithm = sub->add_option("--algorithm", f.algorithm, "rls | ea");
  r.n = sub->add_option("--n", f.n, "problem size; repeatable, accepts 4..12 and 10,20,30");
  r.alpha = sub->add_option("--alpha", f.alpha, "knapsack fraction, e.g. 1/2");
  r.t = sub->add_option("--t", f.t, "explicit t values (strictly increasing)")->delimiter(',');
  r.t_max = sub->add_option("--t-max", f.t_max, "last t of the schedule (default 100*n)");
  r.t_step = sub->add_option("--t-step", f.t_step, "schedule step (default 1)");
  r.runs = sub->add_option("--runs", f.runs, "Monte Carlo runs (default 1000)");
  r.seed = sub->add_option("--seed", f.seed, "Monte Carlo seed (default 0)");
  r.methods = sub->add_option("--methods", f.methods, "oracle,spectral,closed-form,bounds,monte-carlo");
  r.numeric_mode = sub->add_option("--numeric-mode", f.numeric_mode, "float64 | rational");
  r.out = sub->add_option("--out", f.out, "output file (default stdout)");
  r.model = sub->add_option("--model", f.model, "StatusModel JSON file instead of a built-in problem");
  r.suites = sub->add_option("--suite", f.suites, "verify suites (repeatable, comma separated)")->delimiter(',');
  r.oracle_fallback = sub->add_flag("--oracle-fallback", f.oracle_fallback,
                                    "use the matrix-power oracle when the spectral path does not apply");
  r.threads = sub->add_option("--threads", f.threads, "worker threads (RSH_ERROR_LAB_THREADS caps this)");
  r.plot_script = sub->add_option("--plot-script", f.plot_script, "also write a matplotlib script to this path");
  return r;
}

rsh::ExperimentSpec build_spec(const Flags& f, const Registered& r) {
  rsh::ExperimentSpec spec = r.config->count() ? rsh::load_spec_file(f.config) : rsh::ExperimentSpec{};
  try {
    if (r.problem->count()) spec.problem = rsh::parse_problem_kind(f.problem);
    if (r.algorithm->count()) spec.algorithm = rsh::parse_algorithm_kind(f.algorithm);
    if (r.alpha->count()) spec.alpha = rsh::parse_rational(f.alpha);
    if (r.numeric_mode->count()) spec.numeric_mode = rsh::parse_numeric_mode(f.numeric_mode);
  } catch (const rsh::UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw rsh::UsageError(e.what());
  }
  if (r.n->count()) {
    spec.n_values.clear();
    for (const auto& s : f.n) rsh::parse_n_list(s, spec.n_values);
  }
  if (r.t->count()) {
    spec.t_values_given = true;
    spec.t_values.clear();
    for (const auto& s : f.t) {
      if (s.empty()) continue;
      try {
        spec.t_values.push_back(std::stoull(s));
      } catch (const std::exception&) {
        throw rsh::UsageError("invalid t value '" + s + "'");
      }
    }
  }
  if (r.t_max->count()) spec.t_max = f.t_max;
  if (r.t_step->count()) spec.t_step = f.t_step;
  if (r.runs->count()) spec.runs = f.runs;
  if (r.seed->count()) spec.seed = f.seed;
  if (r.methods->count()) spec.methods = rsh::parse_methods(f.methods);
  if (r.out->count()) spec.out_path = f.out;
  if (r.model->count()) spec.model_path = f.model;
  if (r.suites->count()) spec.suites = f.suites;
  if (r.oracle_fallback->count()) spec.oracle_fallback = f.oracle_fallback;
  if (r.threads->count()) spec.threads = f.threads;
  return spec;
}

int emit(const rsh::CommandOutput& out, const rsh::ExperimentSpec& spec) {
  if (spec.out_path.empty()) {
    std::cout << out.text;
  } else {
    std::ofstream file(spec.out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << spec.out_path << "\n";
      return 2;
    }
    file << out.text;
  }
  if (!out.summary.empty()) std::cerr << out.summary << "\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected approximation error of elitist RLS and (1+1)EA as absorbing Markov chains"};
  app.set_version_flag("--version", std::string(rsh::version()));
  app.require_subcommand(1);

  Flags flags;
  struct Command {
    CLI::App* app;
    Registered opts;
    rsh::CommandOutput (*run)(const rsh::ExperimentSpec&);
  };
  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help, rsh::CommandOutput (*run)(const rsh::ExperimentSpec&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.push_back({sub, add_common(sub, flags), run});
  };
  add("analyze", "analytic error curves (oracle, spectral, closed forms, bounds) as CSV", rsh::cmd_analyze);
  add("simulate", "Monte Carlo error curves as CSV", rsh::cmd_simulate);
  add("compare", "simulation means joined with analytic curves; flags bound violations", rsh::cmd_compare);
  add("verify", "run invariant suites and print a JSON report", rsh::cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      const auto spec = build_spec(flags, cmd.opts);
      if (cmd.opts.plot_script->count()) {
        std::ofstream script(flags.plot_script);
        if (!script) throw rsh::UsageError("cannot write " + flags.plot_script);
        script << rsh::plot_script_text();
      }
      return emit(cmd.run(spec), spec);
    } catch (const rsh::UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
    } catch (const rsh::CapacityError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}
