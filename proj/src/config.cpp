#include "spinwhiten/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "spinwhiten/error.hpp"

namespace spinwhiten {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class Int>
Int to_int(std::string_view text, int line, std::string_view key) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(line) + ": " +
                                                std::string(key) + " expects an integer");
  }
  return v;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  return std::nullopt;
}

void CliConfig::validate() const {
  if (max_qubits < 1 || max_qubits > kHardMaxQubits) {
    throw Error(ErrorCode::OutOfRange, "max_qubits must be in [1, " + std::to_string(kHardMaxQubits) + "]");
  }
  if (default_ensemble_size < 1) throw Error(ErrorCode::OutOfRange, "ensemble size must be >= 1");
}

CliConfig parse_config(std::string_view text, CliConfig cfg) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(line) + ": expected key=value");
    }
    const std::string_view key = trim(s.substr(0, eq));
    const std::string_view value = trim(s.substr(eq + 1));
    if (key == "max_qubits") {
      cfg.max_qubits = to_int<int>(value, line, key);
    } else if (key == "ensemble_size") {
      cfg.default_ensemble_size = to_int<std::size_t>(value, line, key);
    } else if (key == "format") {
      const auto f = parse_output_format(value);
      if (!f) throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(line) + ": format is csv or json");
      cfg.output_format = *f;
    } else if (key == "out") {
      cfg.out_path = std::string(value);
    } else if (key == "seed") {
      cfg.master_seed = to_int<std::uint64_t>(value, line, key);
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "config line " + std::to_string(line) + ": unknown key '" + std::string(key) + "'");
    }
  }
  cfg.validate();
  return cfg;
}

CliConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace spinwhiten
