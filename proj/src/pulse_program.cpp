#include "spinwhiten/pulse_program.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "spinwhiten/ensemble.hpp"
#include "spinwhiten/error.hpp"
#include "spinwhiten/rng.hpp"

namespace spinwhiten::pp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

bool is_name(std::string_view s) {
  if (s.empty() || s.front() < 'a' || s.front() > 'z') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line_no) : tokens_(std::move(tokens)), line_(line_no) {
    for (std::size_t i = 1; i < tokens_.size(); ++i) {
      const auto eq = tokens_[i].text.find('=');
      if (eq == std::string_view::npos) {
        positional_.push_back(tokens_[i]);
        continue;
      }
      const std::string_view key = tokens_[i].text.substr(0, eq);
      const std::string_view value = tokens_[i].text.substr(eq + 1);
      if (!is_name(key) || value.empty()) fail(tokens_[i], "malformed option '" + std::string(tokens_[i].text) + "'");
      if (options_.count(std::string(key))) fail(tokens_[i], "duplicate option '" + std::string(key) + "'");
      options_.emplace(std::string(key), Token{value, tokens_[i].column + static_cast<int>(eq) + 1});
      option_tokens_.emplace(std::string(key), tokens_[i]);
    }
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw SyntaxError(line_, at.column, message);
  }
  [[noreturn]] void fail_end(const std::string& message) const {
    const Token& last = tokens_.back();
    throw SyntaxError(line_, last.column + static_cast<int>(last.text.size()), message);
  }

  void expect_positional(std::size_t count, std::string_view usage) const {
    // A statement whose arguments all start with a name reports a bad name first.
    if (count > 0 && !positional_.empty() && !is_name(positional_[0].text)) {
      fail(positional_[0], "name expected, got '" + std::string(positional_[0].text) + "'; usage: " +
                               std::string(usage));
    }
    if (positional_.size() > count) fail(positional_[count], "unexpected argument; usage: " + std::string(usage));
    if (positional_.size() < count) fail_end("missing argument; usage: " + std::string(usage));
  }

  void allow_options(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, tok] : option_tokens_) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(tok, "unknown option '" + key + "'");
      }
    }
  }

  std::string name_at(std::size_t i, std::string_view what) const {
    const Token& t = positional_.at(i);
    if (!is_name(t.text)) fail(t, std::string(what) + " name expected, got '" + std::string(t.text) + "'");
    return std::string(t.text);
  }

  template <class Int>
  Int integer(const Token& t, Int min_value, std::string_view what) const {
    Int value{};
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      fail(t, std::string(what) + " must be an integer, got '" + std::string(t.text) + "'");
    }
    if (value < min_value) fail(t, std::string(what) + " must be >= " + std::to_string(min_value));
    return value;
  }

  template <class Int>
  Int positional_integer(std::size_t i, Int min_value, std::string_view what) const {
    return integer(positional_.at(i), min_value, what);
  }

  const Token* option(const std::string& key) const {
    const auto it = options_.find(key);
    return it == options_.end() ? nullptr : &it->second;
  }

  const Token& head() const { return tokens_.front(); }

 private:
  std::vector<Token> tokens_;
  int line_;
  std::vector<Token> positional_;
  std::map<std::string, Token> options_;
  std::map<std::string, Token> option_tokens_;
};

Op parse_statement(std::vector<Token> tokens, int line_no) {
  const LineParser p(std::move(tokens), line_no);
  const std::string_view kw = p.head().text;

  if (kw == "pulse90") {
    p.expect_positional(1, "pulse90 <target>");
    p.allow_options({});
    return Pulse90{p.name_at(0, "target")};
  }
  if (kw == "whiten") {
    p.expect_positional(1, "whiten <target> [seed=N]");
    p.allow_options({"seed"});
    Whiten w{p.name_at(0, "target"), std::nullopt};
    if (const Token* seed = p.option("seed")) w.seed = p.integer<std::uint64_t>(*seed, 0, "seed");
    return w;
  }
  if (kw == "encode") {
    p.expect_positional(2, "encode <register> <qubits>");
    p.allow_options({});
    return Encode{p.name_at(0, "register"), p.positional_integer<int>(1, 1, "qubit count")};
  }
  if (kw == "qft" || kw == "iqft") {
    p.expect_positional(1, std::string(kw) + " <register>");
    p.allow_options({});
    std::string reg = p.name_at(0, "register");
    if (kw == "qft") return Qft{std::move(reg)};
    return Iqft{std::move(reg)};
  }
  if (kw == "acquire") {
    p.expect_positional(0, "acquire shots=N");
    p.allow_options({"shots"});
    const Token* shots = p.option("shots");
    if (!shots) p.fail_end("acquire requires shots=N");
    return Acquire{p.integer<int>(*shots, 1, "shots")};
  }
  p.fail(p.head(), "unknown keyword '" + std::string(kw) + "'");
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string render(const Op& op) {
  return std::visit(Overloaded{
                        [](const Pulse90& s) { return "pulse90 " + s.target; },
                        [](const Whiten& s) {
                          std::string out = "whiten " + s.target;
                          if (s.seed) out += " seed=" + std::to_string(*s.seed);
                          return out;
                        },
                        [](const Encode& s) { return "encode " + s.reg + " " + std::to_string(s.qubits); },
                        [](const Qft& s) { return "qft " + s.reg; },
                        [](const Iqft& s) { return "iqft " + s.reg; },
                        [](const Acquire& s) { return "acquire shots=" + std::to_string(s.shots); },
                    },
                    op);
}

}  // namespace

std::string_view keyword(const Op& op) {
  static constexpr std::string_view names[] = {"pulse90", "whiten", "encode", "qft", "iqft", "acquire"};
  return names[op.index()];
}

PulseProgram parse(std::string_view source, std::string source_name) {
  PulseProgram program;
  program.source_name = std::move(source_name);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    const auto nl = source.find('\n', pos);
    const std::string_view line =
        source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;

    const std::string_view trimmed = trim(line);
    if (trimmed.starts_with("# ppv")) {
      if (!program.statements.empty() || program.versioned) {
        throw SyntaxError(line_no, static_cast<int>(line.find('#')) + 1,
                          "version header must precede all statements");
      }
      if (trimmed != "# ppv1") {
        throw SyntaxError(line_no, static_cast<int>(line.find('#')) + 1,
                          "unsupported version header '" + std::string(trimmed) + "'");
      }
      program.versioned = true;
      continue;
    }
    auto tokens = tokenize(strip_comment(line));
    if (tokens.empty()) continue;
    program.statements.push_back({parse_statement(std::move(tokens), line_no), line_no});
  }
  return program;
}

std::string print(const PulseProgram& program) {
  std::string out;
  int line = 1;
  if (program.versioned) {
    out += "# ppv1\n";
    ++line;
  }
  for (const Statement& s : program.statements) {
    for (; line < s.line_no; ++line) out += '\n';
    out += render(s.op);
    out += '\n';
    ++line;
  }
  return out;
}

PulseProgram check(PulseProgram program) {
  std::set<std::string> excited;
  std::set<std::string> encoded;
  bool any_whitened = false;
  for (const Statement& s : program.statements) {
    std::visit(Overloaded{
                   [&](const Pulse90& st) { excited.insert(st.target); },
                   [&](const Whiten& st) {
                     if (!excited.count(st.target)) {
                       throw ProtocolError(s.line_no, "whiten before pulse90 on target '" + st.target +
                                                          "'; whitening acts on transverse spins only");
                     }
                     any_whitened = true;
                   },
                   [&](const Encode& st) {
                     if (!any_whitened) {
                       throw ProtocolError(s.line_no, "encode on register '" + st.reg +
                                                          "' has no whitened target phase to encode");
                     }
                     encoded.insert(st.reg);
                   },
                   [&](const Qft& st) {
                     if (!encoded.count(st.reg)) {
                       throw ProtocolError(s.line_no, "qft before encode on register '" + st.reg + "'");
                     }
                   },
                   [&](const Iqft& st) {
                     if (!encoded.count(st.reg)) {
                       throw ProtocolError(s.line_no, "iqft before encode on register '" + st.reg + "'");
                     }
                   },
                   [&](const Acquire&) {
                     if (encoded.empty()) {
                       throw ProtocolError(s.line_no, "acquire without an encoded register");
                     }
                   },
               },
               s.op);
  }
  return program;
}

namespace {

struct Machine {
  const ExecOptions& options;
  RunReport& report;
  std::map<std::string, SpinEnsemble> targets;
  std::map<std::string, StateVector> registers;
  std::optional<double> whitened_gamma;
  std::string last_register;
  std::uint64_t acquisitions = 0;

  SpinEnsemble& target(const std::string& name) {
    auto it = targets.find(name);
    if (it == targets.end()) {
      const std::uint64_t seed = rng::derive(options.master_seed, rng::tag_of("target:" + name));
      it = targets.emplace(name, SpinEnsemble(options.ensemble_size, seed)).first;
    }
    return it->second;
  }

  StateVector& reg(const std::string& name) {
    auto it = registers.find(name);
    if (it == registers.end()) throw Error(ErrorCode::InvalidArgument, "register '" + name + "' not encoded");
    return it->second;
  }

  std::string operator()(const Pulse90& s) {
    SpinEnsemble& e = target(s.target);
    e = pulse90(std::move(e));
    return "target " + s.target + ": " + std::to_string(e.size()) + " spins transverse";
  }

  std::string operator()(const Whiten& s) {
    SpinEnsemble& e = target(s.target);
    if (s.seed) e.reseed(*s.seed);
    WhiteningRecord rec;
    rec.target = s.target;
    rec.seed = e.seed();
    rec.ensemble_size = e.size();
    rec.signal_before = std::abs(receiver_signal(e));
    WhitenResult w = gz_whiten(std::move(e));
    e = std::move(w.ensemble);
    rec.signal_after = std::abs(receiver_signal(e));
    rec.representative_gamma = w.gammas.front();
    whitened_gamma = rec.representative_gamma;
    report.whitening = rec;
    std::ostringstream msg;
    msg.precision(17);
    msg << "target " << s.target << ": seed " << rec.seed << ", |signal| " << rec.signal_before
        << " -> " << rec.signal_after << ", gamma[0] " << rec.representative_gamma;
    return msg.str();
  }

  std::string operator()(const Encode& s) {
    if (!whitened_gamma) throw Error(ErrorCode::InvalidArgument, "no whitened phase to encode");
    registers.insert_or_assign(
        s.reg, phase_encode(PhaseSample(*whitened_gamma), s.qubits, options.max_qubits));
    last_register = s.reg;
    return "register " + s.reg + ": " + std::to_string(s.qubits) + " qubits phase-encoded";
  }

  std::string transform(const std::string& name, bool inverse) {
    StateVector& state = reg(name);
    state.apply(qft_circuit({state.num_qubits(), inverse, true}, options.max_qubits));
    last_register = name;
    return "register " + name + ": " + (inverse ? "inverse QFT" : "QFT") + " applied";
  }
  std::string operator()(const Qft& s) { return transform(s.reg, false); }
  std::string operator()(const Iqft& s) { return transform(s.reg, true); }

  std::string operator()(const Acquire& s) {
    const StateVector& state = reg(last_register);
    const std::vector<double> p = probabilities(state);
    std::vector<double> cdf(p.size());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = total += p[i];

    const std::uint64_t stream =
        rng::derive(rng::derive(options.master_seed, rng::tag_of("acquire")), acquisitions++);
    std::vector<std::uint64_t> counts(p.size());
    for (int shot = 0; shot < s.shots; ++shot) {
      const double u = rng::uniform(stream, static_cast<std::uint64_t>(shot)) * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }

    AcquisitionRecord rec;
    rec.reg = last_register;
    rec.qubits = state.num_qubits();
    rec.shots = s.shots;
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      rec.histogram.push_back({i, counts[i]});
      if (counts[i] > best) {
        best = counts[i];
        rec.mode = i;
      }
    }
    rec.mode_frequency = static_cast<double>(best) / static_cast<double>(s.shots);
    rec.peak = peak_readout(state);
    report.acquisition = rec;
    return "register " + rec.reg + ": " + std::to_string(s.shots) + " shots, mode " +
           std::to_string(rec.mode);
  }
};

}  // namespace

RunReport execute(const PulseProgram& program, const ExecOptions& options) {
  if (options.ensemble_size == 0) throw Error(ErrorCode::EmptyInput, "ensemble size must be >= 1");
  const PulseProgram checked = check(program);
  RunReport report;
  report.source_name = program.source_name;
  report.ensemble_size = options.ensemble_size;
  report.master_seed = options.master_seed;

  Machine machine{options, report, {}, {}, std::nullopt, {}, 0};
  for (const Statement& s : checked.statements) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = std::visit(machine, s.op);
    } catch (const Error& e) {
      throw ExecutionError(s.line_no, e);
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report.log.push_back({s.line_no, std::string(keyword(s.op)), std::move(detail), elapsed.count()});
  }
  return report;
}

}  // namespace spinwhiten::pp
