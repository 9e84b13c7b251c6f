#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbfl/dataset.hpp"
#include "cbfl/domain.hpp"

namespace cbfl::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // a requested check (tolerance, agreement) failed
  kUsage = 2,        // bad flags, config, or parameter domain
  kRuntime = 3,      // IO failure, divergence, empty block, ...
};

// Marker written for absent values (std_err with one replication, ...).
inline constexpr std::string_view kAbsent = "NA";

struct ModelOptions {
  SystemParams params;
  std::optional<double> b;  // defaults to n_block
  double n_i = 500.0;
};
void cmd_model(const ModelOptions& opts, std::ostream& out);

struct SimulateOptions {
  SystemParams params;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  double n_i = 500.0;
  unsigned threads = 0;
  std::optional<double> check_tol;  // bound on t_consensus rel_error
  std::string config_id = "config";
};
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

struct SweepSpec {
  std::string param;  // lambda, f, n_block or mu
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
};

// Every grid point with its parameter set. The whole grid is validated before
// anything runs; the first invalid point throws. Sweeping f also sets
// n_peers = 3f + 1.
std::vector<std::pair<double, SystemParams>> expand_sweep(const SystemParams& base,
                                                          const SweepSpec& sweep);

struct SweepOptions {
  SystemParams base;
  SweepSpec sweep;
  double n_i = 500.0;
  unsigned threads = 0;
  std::optional<double> check_tol;
};
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

// Prints the closed-form optimum and the grid argmin (step mu/1000); fails
// when they disagree by more than one grid step or the scan is not convex.
int cmd_optimal_lambda(const SystemParams& params, std::ostream& out, std::ostream& err);

struct FlRunOptions {
  SystemParams params;
  std::uint64_t seed = 1;
  // One training file per enterprise; empty means synthetic data.
  std::vector<std::filesystem::path> data_paths;
  // Held-out set, also the verification set for file-based runs.
  std::optional<std::filesystem::path> test_path;
  std::size_t enterprises = 4;
  std::size_t samples = 500;         // training samples per enterprise
  std::size_t test_samples = 200;    // verification instances per enterprise
  std::size_t holdout_samples = 1000;
  SynthSpec synth;
  std::size_t adversaries = 0;  // the first k enterprises submit random weights
  std::size_t max_cycles = 500;
};

enum class StopReason { Converged, CycleCap };

struct FlCycleRow {
  std::size_t cycle = 0;
  double delta_norm = 0.0;
  double accuracy = 0.0;
  double loss = 0.0;
  std::size_t block_txs = 0;
  std::size_t rejected_txs = 0;
  std::size_t adversarial_txs = 0;  // adversarial txs that made the block
  LatencyBreakdown latency;
};

struct FlRunResult {
  std::vector<FlCycleRow> rows;
  StopReason stop = StopReason::CycleCap;
  double initial_loss = 0.0;
  // Post-hoc audit: every block tx re-verified against every test set.
  bool audit_passed = true;
};

FlRunResult run_fl(const FlRunOptions& opts);
int cmd_fl_run(const FlRunOptions& opts, std::ostream& out, std::ostream& err);

struct GenDataOptions {
  SynthSpec synth;
  std::size_t count = 500;
  std::uint64_t seed = 1;
};
void cmd_gen_data(const GenDataOptions& opts, std::ostream& out);

// CSV line from already formatted cells.
std::string csv_line(std::span<const std::string> cells);

// Full command-line entry point; args[0] is the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cbfl::cli
