#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "cbfl/cli/commands.hpp"
#include "cbfl/config.hpp"

namespace cbfl::cli {

namespace {

struct CommonFlags {
  std::string config;
  std::vector<std::string> overrides;
  std::uint64_t seed = 1;
  std::string out;
};

void add_config_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "key=value configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", flags.overrides, "override one key, e.g. --set lambda=150");
}

SystemParams load_params(const CommonFlags& flags) {
  SystemParams p = flags.config.empty() ? SystemParams{} : parse_config(flags.config);
  for (const auto& kv : flags.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("set", "--set expects key=value");
    set_param(p, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return validate_params(p);
}

// Runs `body` with the stream chosen by --out (stdout when empty).
template <typename Body>
int with_output(const std::string& path, std::ostream& out, Body&& body) {
  if (path.empty()) return body(out);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open output '" + path + "'");
  const int rc = body(file);
  file.flush();
  if (!file) throw Error("write failed for '" + path + "'");
  return rc;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consortium-blockchained federated learning latency simulator"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CommonFlags flags;
  std::size_t reps = 10000;
  unsigned threads = 0;
  double n_i = 500.0;
  std::optional<double> check_tol;
  std::optional<double> batch;

  auto* model_cmd = app.add_subcommand("model", "closed-form latency breakdown");
  add_config_flags(model_cmd, flags);
  model_cmd->add_option("--b", batch, "batch size (default n_block)")->check(CLI::Range(1.0, 1e12));
  model_cmd->add_option("--n-i", n_i, "samples at the observed enterprise")->check(CLI::PositiveNumber);
  model_cmd->add_option("--out", flags.out, "CSV output path");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo consensus latency vs model");
  add_config_flags(sim_cmd, flags);
  sim_cmd->add_option("--seed", flags.seed, "master seed");
  sim_cmd->add_option("--reps", reps, "replications")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  sim_cmd->add_option("--n-i", n_i, "samples at the observed enterprise")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  sim_cmd->add_option("--check-tol", check_tol, "fail if t_consensus rel_error exceeds this");
  sim_cmd->add_option("--out", flags.out, "CSV output path");

  SweepSpec sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "simulate a parameter grid");
  add_config_flags(sweep_cmd, flags);
  sweep_cmd->add_option("--param", sweep.param, "lambda, f, n_block or mu")->required();
  sweep_cmd->add_option("--from", sweep.start, "first value")->required();
  sweep_cmd->add_option("--to", sweep.stop, "last value")->required();
  sweep_cmd->add_option("--step", sweep.step, "grid step")->required();
  sweep_cmd->add_option("--seed", flags.seed, "master seed");
  sweep_cmd->add_option("--reps", reps, "replications per point")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  sweep_cmd->add_option("--n-i", n_i, "samples at the observed enterprise")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep_cmd->add_option("--check-tol", check_tol, "fail if any t_consensus rel_error exceeds this");
  sweep_cmd->add_option("--out", flags.out, "CSV output path");

  auto* opt_cmd = app.add_subcommand("optimal-lambda", "closed-form optimal arrival rate vs grid search");
  add_config_flags(opt_cmd, flags);
  opt_cmd->add_option("--out", flags.out, "CSV output path");

  FlRunOptions fl;
  std::vector<std::string> data_paths;
  std::string test_path;
  auto* fl_cmd = app.add_subcommand("fl-run", "end-to-end training until convergence");
  add_config_flags(fl_cmd, flags);
  fl_cmd->add_option("--seed", flags.seed, "master seed");
  fl_cmd->add_option("--data", data_paths, "training samples file, one per enterprise");
  fl_cmd->add_option("--test", test_path, "held-out samples file (required with --data)");
  fl_cmd->add_option("--enterprises", fl.enterprises, "synthetic: number of enterprises");
  fl_cmd->add_option("--samples", fl.samples, "synthetic: training samples per enterprise");
  fl_cmd->add_option("--test-samples", fl.test_samples, "synthetic: verification samples per enterprise");
  fl_cmd->add_option("--holdout", fl.holdout_samples, "synthetic: held-out samples");
  fl_cmd->add_option("--dim", fl.synth.dim, "synthetic: feature dimension");
  fl_cmd->add_option("--separation", fl.synth.separation, "synthetic: class mean distance");
  fl_cmd->add_option("--margin", fl.synth.margin, "synthetic: separating margin");
  fl_cmd->add_option("--adversaries", fl.adversaries, "enterprises submitting random weights");
  fl_cmd->add_option("--cycles", fl.max_cycles, "cycle cap")->check(CLI::PositiveNumber);
  fl_cmd->add_option("--out", flags.out, "CSV output path");

  GenDataOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "write a synthetic samples file");
  gen_cmd->add_option("--seed", gen.seed, "seed");
  gen_cmd->add_option("--count", gen.count, "number of samples")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dim", gen.synth.dim, "feature dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--separation", gen.synth.separation, "class mean distance");
  gen_cmd->add_option("--margin", gen.synth.margin, "separating margin");
  gen_cmd->add_option("--out", flags.out, "samples output path");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (model_cmd->parsed()) {
      ModelOptions o{load_params(flags), batch, n_i};
      return with_output(flags.out, out, [&](std::ostream& os) {
        cmd_model(o, os);
        return static_cast<int>(kOk);
      });
    }
    if (sim_cmd->parsed()) {
      SimulateOptions o{load_params(flags), reps, flags.seed, n_i, threads, check_tol,
                        flags.config.empty() ? "default" : flags.config};
      return with_output(flags.out, out, [&](std::ostream& os) { return cmd_simulate(o, os, err); });
    }
    if (sweep_cmd->parsed()) {
      sweep.reps = reps;
      sweep.seed = flags.seed;
      SweepOptions o{load_params(flags), sweep, n_i, threads, check_tol};
      // Validate the whole grid before touching the output file.
      expand_sweep(o.base, o.sweep);
      return with_output(flags.out, out, [&](std::ostream& os) { return cmd_sweep(o, os, err); });
    }
    if (opt_cmd->parsed()) {
      const SystemParams p = load_params(flags);
      return with_output(flags.out, out,
                         [&](std::ostream& os) { return cmd_optimal_lambda(p, os, err); });
    }
    if (fl_cmd->parsed()) {
      fl.params = load_params(flags);
      fl.seed = flags.seed;
      for (const auto& d : data_paths) fl.data_paths.emplace_back(d);
      if (!test_path.empty()) fl.test_path = test_path;
      return with_output(flags.out, out, [&](std::ostream& os) { return cmd_fl_run(fl, os, err); });
    }
    if (gen_cmd->parsed()) {
      return with_output(flags.out, out, [&](std::ostream& os) {
        cmd_gen_data(gen, os);
        return static_cast<int>(kOk);
      });
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace cbfl::cli
