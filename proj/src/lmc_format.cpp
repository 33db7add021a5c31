#include "tvd/lmc_format.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace tvd {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, std::size_t first_column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back(Token{line.substr(start, i - start), first_column + start});
  }
  return out;
}

struct PendingTransition {
  Token from, letter, to, probability;
  std::size_t line;
};

struct PendingInit {
  std::vector<Token> pairs;
  std::size_t line;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ProblemInstance run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos), text_.size());
      ++line_no;
      handle_line(text_.substr(pos, end - pos), line_no);
      if (end == text_.size()) break;
      pos = end + 1;
    }
    last_line_ = line_no;
    return finish();
  }

 private:
  void handle_line(std::string_view line, std::size_t line_no) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return;

    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, first + 1, "expected '<keyword>:'");
    }
    std::string_view keyword = line.substr(first, colon - first);
    while (!keyword.empty() && (keyword.back() == ' ' || keyword.back() == '\t')) keyword.remove_suffix(1);
    auto tokens = tokenize(line.substr(colon + 1), colon + 2);

    if (keyword == "states") {
      declare(states_, tokens, line_no, first + 1, "states");
    } else if (keyword == "alphabet") {
      declare(letters_, tokens, line_no, first + 1, "alphabet");
    } else if (keyword == "init1" || keyword == "init2") {
      auto& slot = keyword == "init1" ? init1_ : init2_;
      if (slot) throw ParseError(line_no, first + 1, "repeated '" + std::string(keyword) + ":' line");
      if (tokens.empty()) throw ParseError(line_no, colon + 2, "expected state=rational pairs");
      slot = PendingInit{std::move(tokens), line_no};
    } else if (keyword == "trans") {
      if (tokens.size() != 4) {
        throw ParseError(line_no, colon + 2, "expected 'trans: <from> <letter> <to> <probability>'");
      }
      transitions_.push_back(PendingTransition{tokens[0], tokens[1], tokens[2], tokens[3], line_no});
    } else {
      throw ParseError(line_no, first + 1, "unknown keyword '" + std::string(keyword) + "'");
    }
  }

  static void declare(std::optional<std::vector<std::string>>& names, const std::vector<Token>& tokens,
                      std::size_t line_no, std::size_t column, const char* what) {
    if (names) throw ParseError(line_no, column, std::string("repeated '") + what + ":' line");
    if (tokens.empty()) throw ParseError(line_no, column, std::string("empty ") + what + " list");
    names.emplace();
    for (const auto& tok : tokens) {
      for (const auto& existing : *names) {
        if (existing == tok.text) {
          throw ParseError(line_no, tok.column,
                           std::string("duplicate ") + (what[0] == 's' ? "state" : "letter") + " '" +
                               std::string(tok.text) + "'");
        }
      }
      names->emplace_back(tok.text);
    }
  }

  static std::optional<std::size_t> lookup(const std::vector<std::string>& names, std::string_view name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return i;
    }
    return std::nullopt;
  }

  std::size_t state(const Token& tok, std::size_t line_no) const {
    auto q = lookup(*states_, tok.text);
    if (!q) throw ParseError(line_no, tok.column, "unknown state '" + std::string(tok.text) + "'");
    return *q;
  }

  static Rational probability(const Token& tok, std::size_t line_no) {
    try {
      return parse_rational(tok.text);
    } catch (const std::invalid_argument&) {
      throw ParseError(line_no, tok.column, "invalid probability literal '" + std::string(tok.text) + "'");
    }
  }

  SubDistribution build_init(const PendingInit& init) const {
    SubDistribution pi(states_->size());
    std::vector<bool> seen(states_->size(), false);
    for (const auto& tok : init.pairs) {
      const auto eq = tok.text.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(init.line, tok.column, "expected state=rational");
      }
      Token name{tok.text.substr(0, eq), tok.column};
      Token value{tok.text.substr(eq + 1), tok.column + eq + 1};
      const std::size_t q = state(name, init.line);
      if (seen[q]) throw ParseError(init.line, tok.column, "state listed twice in initial distribution");
      seen[q] = true;
      pi[q] = probability(value, init.line);
    }
    return pi;
  }

  ProblemInstance finish() {
    if (!states_) throw ParseError(last_line_, 1, "missing 'states:' line");
    if (!letters_) throw ParseError(last_line_, 1, "missing 'alphabet:' line");
    if (!init1_) throw ParseError(last_line_, 1, "missing 'init1:' line");
    if (!init2_) throw ParseError(last_line_, 1, "missing 'init2:' line");

    std::vector<Transition> transitions;
    for (const auto& p : transitions_) {
      const std::size_t from = state(p.from, p.line);
      auto letter = lookup(*letters_, p.letter.text);
      if (!letter) throw ParseError(p.line, p.letter.column, "unknown letter '" + std::string(p.letter.text) + "'");
      const std::size_t to = state(p.to, p.line);
      for (const auto& t : transitions) {
        if (t.from == from && t.letter == *letter && t.to == to) {
          throw ParseError(p.line, p.from.column, "duplicate transition");
        }
      }
      transitions.push_back(Transition{from, *letter, to, probability(p.probability, p.line)});
    }

    auto pi1 = build_init(*init1_);
    auto pi2 = build_init(*init2_);
    return make_instance(Lmc(*states_, *letters_, std::move(transitions)), std::move(pi1), std::move(pi2));
  }

  std::string_view text_;
  std::optional<std::vector<std::string>> states_;
  std::optional<std::vector<std::string>> letters_;
  std::optional<PendingInit> init1_;
  std::optional<PendingInit> init2_;
  std::vector<PendingTransition> transitions_;
  std::size_t last_line_ = 0;
};

void write_init(std::ostream& os, const char* key, const Lmc& lmc, const SubDistribution& pi) {
  os << key << ":";
  for (StateIndex q = 0; q < pi.size(); ++q) {
    if (sgn(pi[q]) != 0) os << " " << lmc.state_name(q) << "=" << to_string(pi[q]);
  }
  os << "\n";
}

}  // namespace

ProblemInstance parse_lmc(std::string_view text) {
  return Parser(text).run();
}

ProblemInstance read_lmc_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_lmc(buffer.str());
}

std::string serialize_lmc(const ProblemInstance& instance) {
  const Lmc& lmc = instance.lmc;
  std::ostringstream os;
  os << "states:";
  for (const auto& s : lmc.states()) os << " " << s;
  os << "\nalphabet:";
  for (const auto& a : lmc.alphabet()) os << " " << a;
  os << "\n";
  write_init(os, "init1", lmc, instance.pi1);
  write_init(os, "init2", lmc, instance.pi2);
  for (const auto& t : lmc.transitions()) {
    os << "trans: " << lmc.state_name(t.from) << " " << lmc.letter_name(t.letter) << " "
       << lmc.state_name(t.to) << " " << to_string(t.probability) << "\n";
  }
  return os.str();
}

void write_lmc_file(const std::string& path, const ProblemInstance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << serialize_lmc(instance);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace tvd
