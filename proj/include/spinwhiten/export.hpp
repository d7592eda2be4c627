#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "spinwhiten/pulse_program.hpp"
#include "spinwhiten/signal.hpp"

namespace spinwhiten {

/// 17 significant digits, as used by every CSV.
std::string format_real(double value);

/// Columns: bin_index,freq_Hz,re,im,magnitude. LF line endings.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

/// Columns: stage,label,decade_exponent,log10_population.
void write_budget_csv(std::ostream& out, const SpinBudget& budget,
                      std::span<const StagePopulation> chain);

nlohmann::ordered_json to_json(const SnrReport& report);
nlohmann::ordered_json to_json(const EnhancementReport& report);
/// Per-statement timings are omitted unless requested; they are the only
/// non-reproducible field.
nlohmann::ordered_json to_json(const pp::RunReport& report, bool include_timings = false);

/// Columns: index,count (the acquisition histogram).
void write_run_csv(std::ostream& out, const pp::RunReport& report);

}  // namespace spinwhiten
