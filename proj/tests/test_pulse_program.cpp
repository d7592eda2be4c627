#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "spinwhiten/error.hpp"
#include "spinwhiten/export.hpp"
#include "spinwhiten/pulse_program.hpp"
#include "spinwhiten/rng.hpp"

using namespace spinwhiten;
using namespace spinwhiten::pp;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SyntaxError syntax_error_of(std::string_view src) {
  try {
    parse(src);
  } catch (const SyntaxError& e) {
    return e;
  }
  FAIL("expected SyntaxError for: " << src);
  return SyntaxError(0, 0, "");
}

ProtocolError protocol_error_of(std::string_view src) {
  try {
    check(parse(src));
  } catch (const ProtocolError& e) {
    return e;
  }
  FAIL("expected ProtocolError for: " << src);
  return ProtocolError(0, "");
}

std::string dyadic_program(std::uint64_t k, int n, int shots) {
  const double gamma = static_cast<double>(k) / static_cast<double>(std::uint64_t{1} << n);
  return "pulse90 t\nwhiten t seed=" + std::to_string(rng::seed_with_first_uniform(gamma)) + "\nencode r " +
         std::to_string(n) + "\niqft r\nacquire shots=" + std::to_string(shots) + "\n";
}

}  // namespace

TEST_CASE("parse the canonical program") {
  const PulseProgram p = parse("pulse90 t\nwhiten t seed=7\nencode r 4\niqft r\nacquire shots=1024");
  REQUIRE(p.statements.size() == 5);
  CHECK(std::get<Pulse90>(p.statements[0].op).target == "t");
  CHECK(std::get<Whiten>(p.statements[1].op).seed == 7u);
  CHECK(std::get<Encode>(p.statements[2].op).qubits == 4);
  CHECK(std::get<Encode>(p.statements[2].op).reg == "r");
  CHECK(std::holds_alternative<Iqft>(p.statements[3].op));
  CHECK(std::get<Acquire>(p.statements[4].op).shots == 1024);
  for (int i = 0; i < 5; ++i) CHECK(p.statements[static_cast<std::size_t>(i)].line_no == i + 1);
  CHECK_FALSE(p.versioned);
}

TEST_CASE("empty and comment-only sources") {
  CHECK(parse("").statements.empty());
  CHECK(parse("# hi\n\n   \n").statements.empty());
  CHECK(parse("# ppv1\n").versioned);
}

TEST_CASE("syntax errors carry 1-based line and column") {
  const SyntaxError a = syntax_error_of("qft 4 r");
  CHECK(a.line() == 1);
  CHECK(a.column() == 5);

  const SyntaxError b = syntax_error_of("pulse90 t\n\nfrobnicate t\n");
  CHECK(b.line() == 3);
  CHECK(b.column() == 1);

  CHECK(syntax_error_of("pulse90 t\nencode r four").column() == 10);
  CHECK(syntax_error_of("encode r 0").line() == 1);
  CHECK(syntax_error_of("acquire").line() == 1);
  CHECK(syntax_error_of("acquire shots=-1").column() == 15);
  CHECK(syntax_error_of("acquire shots=1 shots=2").column() == 17);
  CHECK(syntax_error_of("whiten t speed=3").column() == 10);
  CHECK(syntax_error_of("whiten t seed=").line() == 1);
  CHECK(syntax_error_of("whiten T").column() == 8);
  CHECK(syntax_error_of("pulse90").line() == 1);
  CHECK(syntax_error_of("pulse90 a b").column() == 11);
  CHECK(syntax_error_of("iqft").line() == 1);
  CHECK(syntax_error_of("\n\n  # ppv2\n").line() == 3);
  CHECK(syntax_error_of("pulse90 t\n# ppv1\n").line() == 2);
  CHECK(syntax_error_of("whiten t seed=99999999999999999999").line() == 1);
}

TEST_CASE("check enforces protocol order") {
  CHECK_NOTHROW(check(parse("pulse90 t\nwhiten t seed=7\nencode r 4\niqft r\nacquire shots=1024")));

  const ProtocolError a = protocol_error_of("whiten t");
  CHECK(a.line() == 1);
  CHECK(a.detail().find("pulse90") != std::string::npos);

  const ProtocolError b = protocol_error_of("encode r 4");
  CHECK(b.line() == 1);
  CHECK(b.detail().find("whitened") != std::string::npos);

  CHECK(protocol_error_of("pulse90 a\nwhiten b").line() == 2);
  CHECK(protocol_error_of("pulse90 t\nwhiten t\nqft r").line() == 3);
  CHECK(protocol_error_of("pulse90 t\nwhiten t\nencode r 2\niqft s").line() == 4);
  CHECK(protocol_error_of("pulse90 t\n\nacquire shots=3").line() == 3);
  CHECK(protocol_error_of("pulse90 t\nencode r 4\niqft r\nacquire shots=4096").line() == 2);
}

TEST_CASE("golden corpus: print then parse is the identity") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(SPINWHITEN_GOLDEN_DIR)) {
    if (entry.path().extension() != ".pp") continue;
    ++count;
    CAPTURE(entry.path().filename().string());
    const PulseProgram p = parse(read_file(entry.path()), entry.path().filename().string());
    const std::string printed = print(p);
    CHECK(parse(printed, p.source_name) == p);
    CHECK(print(parse(printed)) == printed);
  }
  CHECK(count == 20);
}

TEST_CASE("print is canonical") {
  const PulseProgram p = parse("# ppv1\n\n  pulse90   t # x\nwhiten t seed=3\n");
  CHECK(print(p) == "# ppv1\n\npulse90 t\nwhiten t seed=3\n");
}

TEST_CASE("execute the canonical scheme with a forced dyadic phase") {
  // seed_with_first_uniform(5/16) makes spin 0 of the whitened ensemble carry gamma = 5/16.
  const std::uint64_t seed = rng::seed_with_first_uniform(5.0 / 16.0);
  const PulseProgram p = parse("pulse90 t\nwhiten t seed=" + std::to_string(seed) +
                               "\nencode r 4\niqft r\nacquire shots=4096\n");
  const RunReport r = execute(p, {1000, 0, kDefaultMaxQubits});
  REQUIRE(r.whitening);
  CHECK(r.whitening->representative_gamma == 5.0 / 16.0);
  CHECK(r.whitening->signal_before == doctest::Approx(1.0));
  CHECK(r.whitening->signal_after < 0.2);
  REQUIRE(r.acquisition);
  CHECK(r.acquisition->mode == 5);
  CHECK(r.acquisition->mode_frequency >= 0.99);
  CHECK(r.acquisition->peak.index == 5);
  CHECK(std::abs(r.acquisition->peak.probability - 1.0) <= 1e-12);
  const auto total = std::accumulate(r.acquisition->histogram.begin(), r.acquisition->histogram.end(),
                                     std::uint64_t{0}, [](std::uint64_t s, const HistogramBin& b) { return s + b.count; });
  CHECK(total == 4096);
  CHECK(r.log.size() == 5);
  CHECK(r.log[1].keyword == "whiten");
}

TEST_CASE("execute refuses unchecked programs") {
  CHECK_THROWS_AS(execute(parse("pulse90 t\nencode r 2\n"), {}), ProtocolError);
}

TEST_CASE("execute attaches line numbers to module errors") {
  try {
    execute(parse("pulse90 t\nwhiten t\n\nencode r 40\n"), {10, 0, kDefaultMaxQubits});
    FAIL("expected ExecutionError");
  } catch (const ExecutionError& e) {
    CHECK(e.line() == 4);
    CHECK(e.code() == ErrorCode::QubitCountExceeded);
  }
}

TEST_CASE("execute is bit-reproducible") {
  const PulseProgram p = parse("pulse90 t\nwhiten t\nencode r 6\niqft r\nacquire shots=2000\n");
  const RunReport a = execute(p, {5000, 42, kDefaultMaxQubits});
  const RunReport b = execute(p, {5000, 42, kDefaultMaxQubits});
  CHECK(to_json(a).dump() == to_json(b).dump());
  const RunReport c = execute(p, {5000, 43, kDefaultMaxQubits});
  CHECK(to_json(a).dump() != to_json(c).dump());
}

TEST_CASE("property: dyadic representative phase k/2^n reads back k") {
  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      const RunReport r = execute(parse(dyadic_program(k, n, 64)), {8, 1, kDefaultMaxQubits});
      REQUIRE(r.acquisition);
      CHECK(r.acquisition->mode == k);
      CHECK(r.acquisition->mode_frequency == 1.0);
    }
  }
}

TEST_CASE("run report JSON schema") {
  const RunReport r = execute(parse(dyadic_program(3, 3, 100)), {16, 0, kDefaultMaxQubits});
  const auto j = to_json(r);
  CHECK(j["histogram"].is_array());
  CHECK(j["histogram"][0]["index"] == 3);
  CHECK(j["histogram"][0]["count"] == 100);
  CHECK(j["whitening"]["receiver_signal_before"] == 1.0);
  CHECK_FALSE(j["log"][0].contains("elapsed_s"));
  CHECK(to_json(r, true)["log"][0].contains("elapsed_s"));

  std::ostringstream csv;
  write_run_csv(csv, r);
  CHECK(csv.str() == "index,count\n3,100\n");
}
