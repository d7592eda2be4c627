#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "spinwhiten/state_vector.hpp"

namespace spinwhiten {

enum class OutputFormat { Csv, Json };

std::optional<OutputFormat> parse_output_format(std::string_view text);

struct CliConfig {
  int max_qubits = kDefaultMaxQubits;
  std::size_t default_ensemble_size = 1'000'000;
  OutputFormat output_format = OutputFormat::Json;
  std::string out_path;  // empty: standard output
  std::uint64_t master_seed = 0;

  /// max_qubits in [1, 30], ensemble size >= 1.
  void validate() const;
};

inline constexpr std::string_view kConfigFileName = "spinwhiten.conf";

/// key=value lines; '#' comments and blank lines ignored. Keys:
/// max_qubits, ensemble_size, format, out, seed. Unknown keys are errors.
CliConfig parse_config(std::string_view text, CliConfig base = {});

/// Reads `path` if it exists, otherwise returns the defaults.
CliConfig load_config(const std::filesystem::path& path);

}  // namespace spinwhiten
