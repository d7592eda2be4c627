#include "spinwhiten/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "spinwhiten/error.hpp"
#include "spinwhiten/export.hpp"
#include "spinwhiten/pulse_program.hpp"
#include "spinwhiten/qft.hpp"
#include "spinwhiten/rng.hpp"

namespace spinwhiten::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes through `body` to `path`, or to `fallback` when no path is given.
void emit(const std::optional<std::string>& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& body) {
  if (!path || path->empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot open '" + *path + "' for writing");
  body(file);
  file.flush();
  if (!file) throw Error(ErrorCode::Io, "failed writing '" + *path + "'");
}

bool to_file(const std::optional<std::string>& path) { return path && !path->empty(); }

/// Runs `fn`, mapping library errors onto the exit-status contract.
int guarded(std::ostream& err, const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSyntax;
  } catch (const ProtocolError& e) {
    err << "error: " << e.what() << '\n';
    return kExitProtocol;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Io ? kExitIo : kExitUsage;
  }
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double m) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

int parse_exponent(std::string_view text, std::string_view context) {
  int v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::InvalidArgument, "malformed exponent in '" + std::string(context) + "'");
  }
  return v;
}

}  // namespace

// ---- run ----------------------------------------------------------------

int cmd_run(const RunOptions& options, const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::ifstream in(options.program_path, std::ios::binary);
    if (!in) {
      err << "error: cannot read program '" << options.program_path << "'\n";
      return kExitIo;
    }
    std::ostringstream text;
    text << in.rdbuf();

    const pp::PulseProgram program = pp::check(pp::parse(text.str(), options.program_path));

    pp::ExecOptions exec;
    exec.ensemble_size = options.ensemble_size.value_or(config.default_ensemble_size);
    exec.master_seed = options.seed.value_or(config.master_seed);
    exec.max_qubits = config.max_qubits;
    if (exec.ensemble_size < 1) throw UsageError("ensemble size must be >= 1");
    const pp::RunReport report = pp::execute(program, exec);

    const OutputFormat format = options.format.value_or(config.output_format);
    std::optional<std::string> path = options.out;
    if (!path && !config.out_path.empty()) path = config.out_path;
    emit(path, out, [&](std::ostream& os) {
      if (format == OutputFormat::Json) {
        os << to_json(report, options.timings).dump(2) << '\n';
      } else {
        write_run_csv(os, report);
      }
    });
    if (to_file(path)) {
      if (report.acquisition) {
        const auto& a = *report.acquisition;
        out << "peak_index=" << a.peak.index << " peak_probability=" << format_real(a.peak.probability)
            << " mode=" << a.mode << " mode_frequency=" << format_real(a.mode_frequency) << '\n';
      } else {
        out << "no acquisition\n";
      }
    }
    return kExitOk;
  });
}

// ---- qft-verify ----------------------------------------------------------

std::vector<QftVerifyRow> qft_verify(int max_qubits) {
  if (max_qubits < 1 || max_qubits > kOracleMaxQubits) {
    throw Error(ErrorCode::OracleScaleExceeded,
                "qft-verify supports 1.." + std::to_string(kOracleMaxQubits) + " qubits");
  }
  std::vector<QftVerifyRow> rows;
  for (int n = 1; n <= max_qubits; ++n) {
    const ComplexMatrix u = dense_matrix(qft_circuit({n, false, true}));
    rows.push_back({n, max_abs_diff(u, dft_matrix(n)), unitarity_error(u)});
  }
  return rows;
}

int cmd_qft_verify(const QftVerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.max_qubits < 1 || options.max_qubits > kOracleMaxQubits) {
      throw UsageError("--max-qubits must be in [1, " + std::to_string(kOracleMaxQubits) + "]");
    }
    const auto rows = qft_verify(options.max_qubits);
    bool ok = true;
    emit(options.out, out, [&](std::ostream& os) {
      os << "n,max_error,unitarity_error,pass\n";
      for (const auto& r : rows) {
        const bool pass = r.max_error <= options.tolerance;
        ok = ok && pass;
        os << r.num_qubits << ',' << format_real(r.max_error) << ',' << format_real(r.unitarity_error)
           << ',' << (pass ? "true" : "false") << '\n';
      }
    });
    if (!ok) {
      err << "error: QFT deviates from the DFT matrix by more than " << format_real(options.tolerance) << '\n';
      return kExitVerify;
    }
    return kExitOk;
  });
}

// ---- cat -----------------------------------------------------------------

CatStudy run_cat_study(const CatParams& p, std::uint64_t master_seed) {
  if (p.n_list.empty()) throw Error(ErrorCode::EmptyInput, "N list is empty");
  if (p.seeds < 1) throw Error(ErrorCode::OutOfRange, "seed count must be >= 1");
  if (p.length < 16 || !is_power_of_two(p.length)) {
    throw Error(ErrorCode::NotPowerOfTwo, "trace length must be a power of two >= 16");
  }
  for (int n : p.n_list) {
    if (n < 1) throw Error(ErrorCode::OutOfRange, "every N must be >= 1");
  }

  const std::size_t L = p.length;
  const double freq = p.freq_hz.value_or(1.0 / (16.0 * p.dwell_s));
  const SpectralLine line{freq, p.amp, p.t2_s};
  const FidTrace clean = synth_fid({&line, 1}, L, p.dwell_s, 0.0, 0);

  const double bin = freq * static_cast<double>(L) * p.dwell_s;
  const auto signed_bin = static_cast<long long>(std::llround(bin));
  const std::size_t line_bin =
      static_cast<std::size_t>((signed_bin % static_cast<long long>(L) + static_cast<long long>(L)) %
                               static_cast<long long>(L));

  CatStudy study;
  study.peak_window = {line_bin >= 2 ? line_bin - 2 : 0, std::min(L, line_bin + 3)};
  study.noise_window = line_bin < L / 2 ? BinRange{L / 2 + L / 8, L - L / 8}
                                        : BinRange{L / 8, L / 2 - L / 8};

  const std::uint64_t base = rng::derive(master_seed, rng::tag_of("cat"));
  for (int n : p.n_list) {
    const std::uint64_t n_stream = rng::derive(base, static_cast<std::uint64_t>(n));
    std::vector<double> snrs;
    snrs.reserve(static_cast<std::size_t>(p.seeds));
    CatRow row;
    row.n = n;
    for (int s = 0; s < p.seeds; ++s) {
      const std::uint64_t s_stream = rng::derive(n_stream, static_cast<std::uint64_t>(s));
      std::vector<FidTrace> traces;
      traces.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        traces.push_back(add_noise(clean, p.noise_sigma, rng::derive(s_stream, static_cast<std::uint64_t>(i))));
      }
      const Spectrum spectrum = fft(cat_average(traces));
      const SnrReport report = estimate_snr(spectrum, study.peak_window, study.noise_window, n);
      snrs.push_back(report.snr);
      if (s == 0) {
        row.first_seed = report;
        study.last_spectrum = spectrum;
      }
    }
    row.mean_snr = mean(snrs);
    row.std_snr = sample_std(snrs, row.mean_snr);
    study.rows.push_back(row);
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const CatRow& r : study.rows) {
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(r.mean_snr));
  }
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx > 0.0) study.slope = sxy / sxx;
  return study;
}

int cmd_cat(const CatOptions& options, const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CatStudy study = run_cat_study(options.params, options.seed.value_or(config.master_seed));
    emit(options.out, out, [&](std::ostream& os) {
      os << "N,mean_snr,std_snr\n";
      for (const CatRow& r : study.rows) {
        os << r.n << ',' << format_real(r.mean_snr) << ',' << format_real(r.std_snr) << '\n';
      }
    });
    if (options.spectrum_out) {
      emit(options.spectrum_out, out, [&](std::ostream& os) { write_spectrum_csv(os, study.last_spectrum); });
    }
    if (options.snr_json_out) {
      auto arr = nlohmann::ordered_json::array();
      for (const CatRow& r : study.rows) arr.push_back(to_json(r.first_seed));
      emit(options.snr_json_out, out, [&](std::ostream& os) { os << arr.dump(2) << '\n'; });
    }
    std::ostream& summary = to_file(options.out) ? out : err;
    summary << "slope=" << (study.slope ? format_real(*study.slope) : std::string("n/a")) << '\n';
    return kExitOk;
  });
}

// ---- budget --------------------------------------------------------------

SpinBudget build_budget(const BudgetOptions& options) {
  SpinBudget budget = SpinBudget::standard();
  if (options.stages) {
    budget.stages.clear();
    std::string_view list = *options.stages;
    while (!list.empty()) {
      const auto comma = list.find(',');
      const std::string_view item = list.substr(0, comma);
      list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
      const auto colon = item.find(':');
      if (colon == std::string_view::npos || colon == 0) {
        throw Error(ErrorCode::InvalidArgument, "stage '" + std::string(item) + "' is not label:exponent");
      }
      budget.stages.push_back({std::string(item.substr(0, colon)), parse_exponent(item.substr(colon + 1), item)});
    }
    if (budget.stages.empty()) throw Error(ErrorCode::InvalidArgument, "stage list is empty");
  }
  for (const std::string& o : options.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::InvalidArgument, "override '" + o + "' is not label=exponent");
    }
    const std::string label = o.substr(0, eq);
    auto it = std::find_if(budget.stages.begin(), budget.stages.end(),
                           [&](const BudgetStage& s) { return s.label == label; });
    if (it == budget.stages.end()) throw Error(ErrorCode::InvalidArgument, "unknown stage '" + label + "'");
    it->decade_exponent = parse_exponent(std::string_view(o).substr(eq + 1), o);
  }
  return budget;
}

int cmd_budget(const BudgetOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SpinBudget budget;
    try {
      budget = build_budget(options);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    const auto chain = spin_budget_chain(budget);
    emit(options.out, out, [&](std::ostream& os) { write_budget_csv(os, budget, chain); });
    if (to_file(options.out)) {
      for (std::size_t i = 0; i < chain.size(); ++i) {
        out << (i ? " -> " : "") << "10^" << chain[i].log10_population;
      }
      out << '\n';
    }
    return kExitOk;
  });
}

// ---- peak-sweep ----------------------------------------------------------

PeakSweep run_peak_sweep(int num_qubits, std::size_t grid) {
  if (num_qubits < 1 || num_qubits > 12) throw Error(ErrorCode::OutOfRange, "sweep qubits must be in [1, 12]");
  if (grid < 2) throw Error(ErrorCode::OutOfRange, "sweep grid must be >= 2");
  const Circuit inverse = qft_circuit({num_qubits, true, true});
  PeakSweep sweep;
  sweep.rows.reserve(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double gamma = static_cast<double>(j) / static_cast<double>(grid);
    StateVector state = phase_encode(PhaseSample(gamma), num_qubits);
    state.apply(inverse);
    const PeakReadout peak = peak_readout(state);
    sweep.rows.push_back({gamma, peak.index, peak.probability});
    if (peak.probability < sweep.min_peak) {
      sweep.min_peak = peak.probability;
      sweep.min_gamma = gamma;
    }
  }
  return sweep;
}

int cmd_peak_sweep(const PeakSweepOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.qubits < 1 || options.qubits > 12) throw UsageError("--qubits must be in [1, 12]");
    if (options.grid < 2) throw UsageError("--grid must be >= 2");
    const PeakSweep sweep = run_peak_sweep(options.qubits, options.grid);
    emit(options.out, out, [&](std::ostream& os) {
      os << "gamma,argmax,peak_probability\n";
      for (const SweepRow& r : sweep.rows) {
        os << format_real(r.gamma) << ',' << r.argmax << ',' << format_real(r.peak_probability) << '\n';
      }
    });
    std::ostream& summary = to_file(options.out) ? out : err;
    summary << "min_peak_probability=" << format_real(sweep.min_peak)
            << " at_gamma=" << format_real(sweep.min_gamma) << '\n';
    return kExitOk;
  });
}

// ---- enhancement ---------------------------------------------------------

int cmd_enhancement(const EnhancementOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.spins < 1 || options.spins > 64) throw UsageError("--spins must be in [1, 64]");
    const EnhancementReport report = enhancement_report(options.spins);
    emit(options.out, out, [&](std::ostream& os) { os << to_json(report).dump(2) << '\n'; });
    return kExitOk;
  });
}

}  // namespace spinwhiten::cli
