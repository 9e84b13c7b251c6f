#include "cbfl/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cbfl/cycle.hpp"
#include "cbfl/experiment.hpp"
#include "cbfl/latency_model.hpp"
#include "cbfl/text.hpp"

namespace cbfl::cli {

namespace {

std::string cell(double v) { return text::sig12(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(const std::optional<double>& v) {
  return v ? text::sig12(*v) : std::string(kAbsent);
}

void write_row(std::ostream& out, std::initializer_list<std::string> cells) {
  out << csv_line(std::vector<std::string>(cells));
}

bool is_integral_param(const std::string& name) { return name == "f" || name == "n_block"; }

void apply_sweep_value(SystemParams& p, const std::string& name, double v) {
  if (name == "lambda") {
    p.lambda = v;
  } else if (name == "mu") {
    p.mu = v;
  } else if (name == "f") {
    p.f = static_cast<int>(std::lround(v));
    p.n_peers = 3 * p.f + 1;
  } else if (name == "n_block") {
    p.n_block = static_cast<int>(std::lround(v));
  } else {
    throw ValidationError("param", "sweep parameter must be one of lambda, f, n_block, mu");
  }
}

}  // namespace

std::string csv_line(std::span<const std::string> cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

void cmd_model(const ModelOptions& opts, std::ostream& out) {
  const SystemParams p = validate_params(opts.params);
  const double b = opts.b.value_or(static_cast<double>(p.n_block));
  const auto a = model::t_total(p, opts.n_i, b);
  std::vector<std::string> header = {"b", "n_i"};
  std::vector<std::string> row = {cell(b), cell(opts.n_i)};
  for (auto name : latency_component_names()) {
    header.emplace_back(name);
    row.push_back(cell(latency_component(a, name)));
  }
  out << csv_line(header) << csv_line(row);
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  const SystemParams p = validate_params(opts.params);
  sim::ExperimentOptions eo{opts.config_id, opts.n_i, opts.threads};
  const ExperimentStats stats = sim::run_experiment(p, opts.reps, opts.seed, eo);

  write_row(out, {"config_id", "component", "replications", "b", "mean", "std_err", "analytic",
                  "rel_error"});
  for (const auto& c : stats.components) {
    write_row(out, {stats.config_id, c.name, cell(stats.replications), cell(stats.mean_b),
                    cell(c.mean), cell(c.std_err), cell(c.analytic), cell(c.rel_error)});
  }
  if (opts.check_tol) {
    const auto& c = stats.component("t_consensus");
    if (!c.rel_error || *c.rel_error > *opts.check_tol) {
      err << "check_failed: t_consensus rel_error=" << cell(c.rel_error)
          << " exceeds " << cell(*opts.check_tol) << '\n';
      return kCheckFailed;
    }
  }
  return kOk;
}

std::vector<std::pair<double, SystemParams>> expand_sweep(const SystemParams& base,
                                                          const SweepSpec& sweep) {
  if (sweep.param != "lambda" && sweep.param != "f" && sweep.param != "n_block" &&
      sweep.param != "mu") {
    throw ValidationError("param", "sweep parameter must be one of lambda, f, n_block, mu");
  }
  if (!(sweep.step > 0.0) || !std::isfinite(sweep.step)) {
    throw ValidationError("step", "sweep step must be > 0");
  }
  if (!(sweep.start < sweep.stop)) {
    throw ValidationError("from", "sweep range is empty: need from < to");
  }
  const double span = (sweep.stop - sweep.start) / sweep.step;
  if (!(span < 1e6)) throw ValidationError("step", "sweep has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;

  std::vector<std::pair<double, SystemParams>> grid;
  grid.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double v = sweep.start + static_cast<double>(k) * sweep.step;
    if (is_integral_param(sweep.param) && std::abs(v - std::round(v)) > 1e-9) {
      throw ValidationError(sweep.param, "sweep point " + text::sig12(v) + " of " +
                                             sweep.param + " is not an integer");
    }
    SystemParams p = base;
    apply_sweep_value(p, sweep.param, v);
    try {
      validate_params(p);
    } catch (const ValidationError& e) {
      throw ValidationError(e.key(), "sweep point " + sweep.param + "=" + text::sig12(v) +
                                         ": " + e.what());
    }
    grid.emplace_back(is_integral_param(sweep.param) ? std::round(v) : v, p);
  }
  return grid;
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  const auto grid = expand_sweep(opts.base, opts.sweep);

  std::ostringstream buf;
  write_row(buf, {opts.sweep.param, "replications", "b", "mean_t_consensus",
                  "std_err_t_consensus", "analytic_t_consensus", "rel_error_t_consensus",
                  "mean_t_total", "std_err_t_total", "analytic_t_total", "rel_error_t_total"});
  bool ok = true;
  for (const auto& [value, p] : grid) {
    sim::ExperimentOptions eo{opts.sweep.param + "=" + text::sig12(value), opts.n_i, opts.threads};
    const auto stats = sim::run_experiment(p, opts.sweep.reps, opts.sweep.seed, eo);
    const auto& cons = stats.component("t_consensus");
    const auto& total = stats.component("t_total");
    write_row(buf, {cell(value), cell(stats.replications), cell(stats.mean_b), cell(cons.mean),
                    cell(cons.std_err), cell(cons.analytic), cell(cons.rel_error),
                    cell(total.mean), cell(total.std_err), cell(total.analytic),
                    cell(total.rel_error)});
    if (opts.check_tol && (!cons.rel_error || *cons.rel_error > *opts.check_tol)) {
      err << "check_failed: " << opts.sweep.param << '=' << cell(value)
          << " t_consensus rel_error=" << cell(cons.rel_error) << " exceeds "
          << cell(*opts.check_tol) << '\n';
      ok = false;
    }
  }
  out << buf.str();
  return ok ? kOk : kCheckFailed;
}

int cmd_optimal_lambda(const SystemParams& params, std::ostream& out, std::ostream& err) {
  const SystemParams p = validate_params(params);
  const double lambda_star = model::optimal_lambda(p.f, p.n_block, p.mu);
  const double step = p.mu / 1000.0;
  const auto grid = model::argmin_consensus_grid(p.f, p.n_block, p.mu, step);
  const bool agree = std::abs(grid.lambda - lambda_star) <= step;

  write_row(out, {"f", "n_block", "mu", "lambda_star", "grid_argmin", "grid_step",
                  "min_second_difference", "convex", "agree"});
  write_row(out, {std::to_string(p.f), std::to_string(p.n_block), cell(p.mu), cell(lambda_star),
                  cell(grid.lambda), cell(step), cell(grid.min_second_difference),
                  grid.convex ? "1" : "0", agree ? "1" : "0"});
  if (!agree || !grid.convex) {
    err << "check_failed: lambda_star=" << cell(lambda_star) << " grid_argmin=" << cell(grid.lambda)
        << " convex=" << (grid.convex ? 1 : 0) << '\n';
    return kCheckFailed;
  }
  return kOk;
}

namespace {

struct FlSetup {
  std::vector<sim::Enterprise> enterprises;
  Dataset holdout;
};

FlSetup build_setup(const FlRunOptions& opts) {
  FlSetup s;
  if (!opts.data_paths.empty()) {
    if (!opts.test_path) throw ValidationError("test", "--test is required with --data");
    s.holdout = load_samples(*opts.test_path);
    for (std::size_t i = 0; i < opts.data_paths.size(); ++i) {
      sim::Enterprise e;
      e.train = load_samples(opts.data_paths[i], static_cast<std::uint32_t>(i));
      e.test = s.holdout;
      e.test.owner = static_cast<std::uint32_t>(i);
      s.enterprises.push_back(std::move(e));
    }
  } else {
    if (opts.enterprises == 0) throw ValidationError("enterprises", "need at least one enterprise");
    if (opts.samples == 0 || opts.test_samples == 0 || opts.holdout_samples == 0) {
      throw ValidationError("samples", "sample counts must be >= 1");
    }
    RandomStreams gen = RandomStreams::derive(opts.seed, 0);
    for (std::size_t i = 0; i < opts.enterprises; ++i) {
      sim::Enterprise e;
      const auto owner = static_cast<std::uint32_t>(i);
      e.train = generate_gaussian_classes(opts.synth, opts.samples, gen.data, owner);
      e.test = generate_gaussian_classes(opts.synth, opts.test_samples, gen.data, owner);
      s.enterprises.push_back(std::move(e));
    }
    s.holdout = generate_gaussian_classes(opts.synth, opts.holdout_samples, gen.data);
  }
  if (opts.adversaries > s.enterprises.size()) {
    throw ValidationError("adversaries", "more adversaries than enterprises");
  }
  for (std::size_t i = 0; i < opts.adversaries; ++i) s.enterprises[i].adversarial = true;
  const std::size_t dim = s.enterprises.front().train.dim();
  for (const auto& e : s.enterprises) {
    check_dataset(e.train);
    check_dataset(e.test);
    if (e.train.dim() != dim || e.test.dim() != dim) {
      throw DimensionError("all datasets must share one feature dimension");
    }
  }
  check_dataset(s.holdout);
  if (s.holdout.dim() != dim) throw DimensionError("held-out set dimension mismatch");
  return s;
}

bool audit_block(const Block& block, const std::vector<sim::Enterprise>& enterprises, double e0) {
  for (const auto& tx : block.txs()) {
    if (!digest_valid(tx)) return false;
    for (std::size_t j = 0; j < enterprises.size(); ++j) {
      if (j == tx.enterprise_id && enterprises.size() > 1) continue;
      if (accuracy(tx.weights, enterprises[j].test) < e0) return false;
    }
  }
  return true;
}

}  // namespace

FlRunResult run_fl(const FlRunOptions& opts) {
  const SystemParams p = validate_params(opts.params);
  if (opts.max_cycles == 0) throw ValidationError("cycles", "cycle cap must be >= 1");
  const FlSetup setup = build_setup(opts);

  std::vector<Dataset> train_parts;
  for (const auto& e : setup.enterprises) train_parts.push_back(e.train);

  FlRunResult result;
  GlobalModel g;
  g.weights.assign(setup.enterprises.front().train.dim(), 0.0);
  result.initial_loss = empirical_loss(g.weights, train_parts);

  for (std::size_t cycle = 1; cycle <= opts.max_cycles; ++cycle) {
    RandomStreams streams = RandomStreams::derive(opts.seed, cycle);
    const sim::CycleResult r = sim::run_cycle(p, setup.enterprises, g, streams);
    result.audit_passed = result.audit_passed && audit_block(r.block, setup.enterprises, p.e0);

    FlCycleRow row;
    row.cycle = cycle;
    Vector diff(g.weights.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = r.model.weights[i] - g.weights[i];
    row.delta_norm = norm2(diff);
    row.accuracy = accuracy(r.model.weights, setup.holdout);
    row.loss = empirical_loss(r.model.weights, train_parts);
    row.block_txs = r.block.size();
    for (const auto& v : r.verdicts) row.rejected_txs += v.accepted ? 0 : 1;
    for (const auto& tx : r.block.txs()) {
      if (tx.enterprise_id < opts.adversaries) ++row.adversarial_txs;
    }
    row.latency = r.latency;
    result.rows.push_back(row);

    const bool converged = has_converged(r.model.weights, g.weights, p.epsilon);
    g = r.model;
    if (converged) {
      result.stop = StopReason::Converged;
      break;
    }
  }
  return result;
}

int cmd_fl_run(const FlRunOptions& opts, std::ostream& out, std::ostream& err) {
  const FlRunResult result = run_fl(opts);
  std::vector<std::string> header = {"cycle",     "delta_norm",   "accuracy",
                                     "loss",      "block_txs",    "rejected_txs",
                                     "adversarial_txs"};
  for (auto name : latency_component_names()) header.emplace_back(name);
  out << csv_line(header);
  for (const auto& row : result.rows) {
    std::vector<std::string> cells = {cell(row.cycle),        cell(row.delta_norm),
                                      cell(row.accuracy),     cell(row.loss),
                                      cell(row.block_txs),    cell(row.rejected_txs),
                                      cell(row.adversarial_txs)};
    for (auto name : latency_component_names()) cells.push_back(cell(latency_component(row.latency, name)));
    out << csv_line(cells);
  }
  err << "stop=" << (result.stop == StopReason::Converged ? "converged" : "cycle_cap")
      << " cycles=" << result.rows.size() << '\n';
  if (!result.audit_passed) {
    err << "check_failed: block audit found a tx below e0 or with a bad digest\n";
    return kCheckFailed;
  }
  return kOk;
}

void cmd_gen_data(const GenDataOptions& opts, std::ostream& out) {
  RandomStreams gen = RandomStreams::derive(opts.seed, 0);
  write_samples(out, generate_gaussian_classes(opts.synth, opts.count, gen.data));
}

}  // namespace cbfl::cli
