// spinwhiten: command-line front end for the phase-whitening / QFT simulator.
//
//   spinwhiten run <program.pp> [--seed S] [--ensemble-size M] [--out F] [--format json|csv]
//   spinwhiten qft-verify [--max-qubits k]
//   spinwhiten cat [--n-list 1,4,16] [--seeds s] [--amp A] [--noise sigma] ...
//   spinwhiten budget [--stages label:exp,...] [--set label=exp]...
//   spinwhiten peak-sweep [--qubits n] [--grid g]
//   spinwhiten enhancement [--spins n]
//
// Exit status: 0 ok, 1 usage, 2 syntax, 3 protocol, 4 I/O, 5 verification.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spinwhiten/commands.hpp"
#include "spinwhiten/config.hpp"
#include "spinwhiten/error.hpp"

using namespace spinwhiten;

int main(int argc, char** argv) {
  CLI::App app{"Phase-whitening and quantum Fourier transform NMR simulator"};
  app.require_subcommand(1);
  std::string config_path(kConfigFileName);
  app.add_option("--config", config_path, "key=value config file")->capture_default_str();

  cli::RunOptions run;
  std::string run_format;
  auto* run_cmd = app.add_subcommand("run", "Execute a pulse program");
  run_cmd->add_option("program", run.program_path, ".pp source file")->required();
  run_cmd->add_option("--seed", run.seed, "master seed");
  run_cmd->add_option("--ensemble-size", run.ensemble_size, "spins per target");
  run_cmd->add_option("--out", run.out, "report path (default: standard output)");
  run_cmd->add_option("--format", run_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  run_cmd->add_flag("--timings", run.timings, "include per-statement wall time in the JSON report");

  cli::QftVerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("qft-verify", "Compare QFT circuits with the DFT matrix");
  verify_cmd->add_option("--max-qubits", verify.max_qubits, "largest register, <= 10")->capture_default_str();
  verify_cmd->add_option("--out", verify.out, "CSV path");
  verify_cmd->add_option("--tolerance", verify.tolerance, "max allowed entrywise error")->capture_default_str();

  cli::CatOptions cat;
  std::string t2 = "inf";
  auto* cat_cmd = app.add_subcommand("cat", "Signal averaging SNR study");
  cat_cmd->add_option("--n-list", cat.params.n_list, "numbers of averaged transients")->delimiter(',');
  cat_cmd->add_option("--seeds", cat.params.seeds, "Monte Carlo seeds per N")->capture_default_str();
  cat_cmd->add_option("--seed", cat.seed, "master seed");
  cat_cmd->add_option("--length", cat.params.length, "samples per trace")->capture_default_str();
  cat_cmd->add_option("--dwell", cat.params.dwell_s, "dwell time in seconds")->capture_default_str();
  cat_cmd->add_option("--freq", cat.params.freq_hz, "line frequency in Hz");
  cat_cmd->add_option("--amp", cat.params.amp, "line amplitude")->capture_default_str();
  cat_cmd->add_option("--t2", t2, "line T2 in seconds, or inf")->capture_default_str();
  cat_cmd->add_option("--noise", cat.params.noise_sigma, "noise std per component")->capture_default_str();
  cat_cmd->add_option("--out", cat.out, "CSV path");
  cat_cmd->add_option("--spectrum-out", cat.spectrum_out, "CSV of the averaged spectrum at the last N");
  cat_cmd->add_option("--snr-json", cat.snr_json_out, "JSON SNR reports for seed 0");

  cli::BudgetOptions budget;
  std::string stages;
  auto* budget_cmd = app.add_subcommand("budget", "Spin population chain");
  auto* stages_opt = budget_cmd->add_option("--stages", stages, "replacement list label:exp,...");
  budget_cmd->add_option("--set", budget.overrides, "override one stage, label=exp");
  budget_cmd->add_option("--out", budget.out, "CSV path");

  cli::PeakSweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("peak-sweep", "Peak probability of inverse QFT over a phase grid");
  sweep_cmd->add_option("--qubits", sweep.qubits, "register size, <= 12")->capture_default_str();
  sweep_cmd->add_option("--grid", sweep.grid, "number of phases j/grid")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "CSV path");

  cli::EnhancementOptions enh;
  auto* enh_cmd = app.add_subcommand("enhancement", "Register bookkeeping report");
  enh_cmd->add_option("--spins", enh.spins, "register spins")->capture_default_str();
  enh_cmd->add_option("--out", enh.out, "JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  CliConfig config;
  try {
    config = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cli::kExitUsage;
  }

  if (*run_cmd) {
    if (!run_format.empty()) run.format = parse_output_format(run_format);
    return cli::cmd_run(run, config, std::cout, std::cerr);
  }
  if (*verify_cmd) return cli::cmd_qft_verify(verify, std::cout, std::cerr);
  if (*cat_cmd) {
    if (t2 == "inf") {
      cat.params.t2_s = kInfiniteT2;
    } else {
      try {
        cat.params.t2_s = std::stod(t2);
      } catch (const std::exception&) {
        std::cerr << "usage error: --t2 expects a number or inf\n";
        return cli::kExitUsage;
      }
    }
    return cli::cmd_cat(cat, config, std::cout, std::cerr);
  }
  if (*budget_cmd) {
    if (stages_opt->count() > 0) budget.stages = stages;
    return cli::cmd_budget(budget, std::cout, std::cerr);
  }
  if (*sweep_cmd) return cli::cmd_peak_sweep(sweep, std::cout, std::cerr);
  if (*enh_cmd) return cli::cmd_enhancement(enh, std::cout, std::cerr);
  return cli::kExitUsage;
}
