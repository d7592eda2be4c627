#include "spinwhiten/export.hpp"

#include <cstdio>
#include <ostream>

namespace spinwhiten {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "bin_index,freq_Hz,re,im,magnitude\n";
  for (std::size_t k = 0; k < spectrum.bins.size(); ++k) {
    const Complex& z = spectrum.bins[k];
    out << k << ',' << format_real(spectrum.frequency_hz(k)) << ',' << format_real(z.real()) << ','
        << format_real(z.imag()) << ',' << format_real(std::abs(z)) << '\n';
  }
}

void write_budget_csv(std::ostream& out, const SpinBudget& budget,
                      std::span<const StagePopulation> chain) {
  out << "stage,label,decade_exponent,log10_population\n";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    out << i << ',' << chain[i].label << ',' << budget.stages[i].decade_exponent << ','
        << chain[i].log10_population << '\n';
  }
}

nlohmann::ordered_json to_json(const SnrReport& r) {
  return {{"peak_mag", r.peak_mag}, {"noise_rms", r.noise_rms}, {"snr", r.snr},
          {"n_averages", r.n_averages}};
}

nlohmann::ordered_json to_json(const EnhancementReport& r) {
  nlohmann::ordered_json j;
  j["n_register_spins"] = r.n_register_spins;
  j["register_states"] = r.register_states;
  j["register_states_decimal"] = r.register_states_decimal;
  j["claimed_factor_at_14"] =
      r.claimed_factor_at_14 ? nlohmann::ordered_json(*r.claimed_factor_at_14) : nullptr;
  j["claimed_spins_log10_at_14"] = r.claimed_spins_log10_at_14;
  j["supporting_arithmetic_consistent"] = r.supporting_arithmetic_consistent;
  j["notes"] = r.notes;
  return j;
}

nlohmann::ordered_json to_json(const pp::RunReport& r, bool include_timings) {
  nlohmann::ordered_json j;
  j["source_name"] = r.source_name;
  j["ensemble_size"] = r.ensemble_size;
  j["master_seed"] = r.master_seed;

  auto log = nlohmann::ordered_json::array();
  for (const pp::StatementLog& s : r.log) {
    nlohmann::ordered_json e{{"line", s.line_no}, {"keyword", s.keyword}, {"detail", s.detail}};
    if (include_timings) e["elapsed_s"] = s.elapsed_s;
    log.push_back(std::move(e));
  }
  j["log"] = std::move(log);

  if (r.whitening) {
    const auto& w = *r.whitening;
    j["whitening"] = {{"target", w.target},
                      {"seed", w.seed},
                      {"ensemble_size", w.ensemble_size},
                      {"receiver_signal_before", w.signal_before},
                      {"receiver_signal_after", w.signal_after},
                      {"representative_gamma", w.representative_gamma}};
  } else {
    j["whitening"] = nullptr;
  }

  if (r.acquisition) {
    const auto& a = *r.acquisition;
    auto hist = nlohmann::ordered_json::array();
    for (const pp::HistogramBin& b : a.histogram) hist.push_back({{"index", b.index}, {"count", b.count}});
    j["acquisition"] = {{"register", a.reg},
                        {"qubits", a.qubits},
                        {"shots", a.shots},
                        {"mode", a.mode},
                        {"mode_frequency", a.mode_frequency},
                        {"peak_index", a.peak.index},
                        {"peak_probability", a.peak.probability}};
    j["histogram"] = std::move(hist);
  } else {
    j["acquisition"] = nullptr;
    j["histogram"] = nlohmann::ordered_json::array();
  }
  return j;
}

void write_run_csv(std::ostream& out, const pp::RunReport& report) {
  out << "index,count\n";
  if (!report.acquisition) return;
  for (const pp::HistogramBin& b : report.acquisition->histogram) {
    out << b.index << ',' << b.count << '\n';
  }
}

}  // namespace spinwhiten
