#include "normfuzz/sleec_dsl.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

namespace normfuzz::sleec {

namespace {

constexpr std::array kKeywords = {"rule", "when", "then", "unless", "not", "in", "which",
                                  "case", "on",   "if",   "else",   "do"};

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

enum class TokenKind { Identifier, Keyword, LBrace, RBrace, End };

struct Token {
  TokenKind kind;
  std::string text;
  SourcePosition pos;
};

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::Identifier: return "identifier '" + tok.text + "'";
    case TokenKind::Keyword: return "keyword '" + tok.text + "'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      SourcePosition start = pos_;
      if (at_end()) {
        out.push_back({TokenKind::End, "", start});
        return out;
      }
      char c = src_[i_];
      if (c == '{' || c == '}') {
        advance();
        out.push_back({c == '{' ? TokenKind::LBrace : TokenKind::RBrace, std::string(1, c), start});
      } else if (is_ident_start(c)) {
        std::size_t begin = i_;
        while (!at_end() && is_ident_char(src_[i_])) advance();
        std::string word(src_.substr(begin, i_ - begin));
        out.push_back({is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, std::move(word), start});
      } else {
        throw ParseError(start, "unexpected character '" + std::string(1, c) + "'");
      }
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }

  void advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      // columns count code points, not UTF-8 continuation bytes
      ++pos_.column;
    }
  }

  void skip_blank() {
    while (!at_end()) {
      char c = src_[i_];
      if (c == '#') {
        while (!at_end() && src_[i_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePosition pos_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<RuleAst> rule_set() {
    std::vector<RuleAst> rules;
    std::map<std::string, SourcePosition> seen;
    while (peek().kind != TokenKind::End) {
      if (!peek_keyword("rule")) fail({"'rule'"});
      RuleAst rule = parse_rule();
      if (auto it = seen.find(rule.name); it != seen.end()) {
        std::ostringstream msg;
        msg << "duplicate rule name '" << rule.name << "' (first defined at " << it->second.line << ":"
            << it->second.column << ")";
        throw ParseError(name_pos_, msg.str());
      }
      seen.emplace(rule.name, name_pos_);
      rules.push_back(std::move(rule));
    }
    return rules;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token next() { return toks_[i_++]; }

  bool peek_keyword(std::string_view kw) const {
    return peek().kind == TokenKind::Keyword && peek().text == kw;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().pos, "unexpected " + describe(peek()), std::move(expected));
  }

  void expect_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) fail({"'" + std::string(kw) + "'"});
    next();
  }

  void expect(TokenKind kind, const char* what) {
    if (peek().kind != kind) fail({what});
    next();
  }

  std::string identifier() {
    if (peek().kind != TokenKind::Identifier) fail({"identifier"});
    return next().text;
  }

  ConditionExpr condition() {
    ConditionExpr cond;
    if (peek_keyword("not")) {
      next();
      cond.negated = true;
    }
    if (peek().kind != TokenKind::Identifier) {
      if (cond.negated)
        fail({"identifier"});
      else
        fail({"'not'", "identifier"});
    }
    cond.atom = next().text;
    return cond;
  }

  RuleAst parse_rule() {
    RuleAst rule;
    rule.position = peek().pos;
    expect_keyword("rule");
    name_pos_ = peek().pos;
    rule.name = identifier();
    expect(TokenKind::LBrace, "'{'");
    if (peek_keyword("when")) {
      next();
      chain_body(rule);
    } else if (peek_keyword("on")) {
      next();
      if_body(rule);
    } else {
      fail({"'when'", "'on'"});
    }
    expect(TokenKind::RBrace, "'}'");
    return rule;
  }

  void chain_body(RuleAst& rule) {
    rule.form = SurfaceForm::DefeaterChain;
    rule.trigger = identifier();
    expect_keyword("then");
    rule.base_action = identifier();
    while (peek_keyword("unless")) {
      next();
      Defeater d;
      d.condition = condition();
      expect_keyword("in");
      expect_keyword("which");
      expect_keyword("case");
      d.action = identifier();
      rule.defeaters.push_back(std::move(d));
    }
    if (peek().kind != TokenKind::RBrace) fail({"'unless'", "'}'"});
  }

  void if_body(RuleAst& rule) {
    rule.form = SurfaceForm::IfElse;
    rule.trigger = identifier();
    if (peek_keyword("do")) {
      next();
      rule.base_action = identifier();
      return;
    }
    if (!peek_keyword("if")) fail({"'if'", "'do'"});
    next();
    std::vector<Branch> branches;
    std::string default_action;
    while (true) {
      Branch b;
      b.condition = condition();
      expect_keyword("then");
      b.action = identifier();
      branches.push_back(std::move(b));
      expect_keyword("else");
      if (peek_keyword("if")) {
        next();
        continue;
      }
      if (peek().kind != TokenKind::Identifier) fail({"'if'", "identifier"});
      default_action = next().text;
      break;
    }
    // Invert the normalization so both surface forms share one AST.
    rule.base_action = branches.front().action;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const std::string& action = i + 1 < branches.size() ? branches[i + 1].action : default_action;
      rule.defeaters.push_back({branches[i].condition.negate(), action});
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  SourcePosition name_pos_;
};

}  // namespace

std::vector<RuleAst> parse_rule_set(std::string_view source) {
  return Parser(Lexer(source).run()).rule_set();
}

NormalizedRule normalize(const RuleAst& rule) {
  NormalizedRule out;
  out.name = rule.name;
  out.trigger = rule.trigger;
  std::string in_force = rule.base_action;
  for (const auto& d : rule.defeaters) {
    out.branches.push_back({d.condition.negate(), in_force});
    in_force = d.action;
  }
  out.default_action = in_force;
  return out;
}

std::vector<NormalizedRule> normalize_all(const std::vector<RuleAst>& rules) {
  std::vector<NormalizedRule> out;
  out.reserve(rules.size());
  for (const auto& r : rules) out.push_back(normalize(r));
  return out;
}

std::string to_string(const ConditionExpr& condition) {
  return condition.negated ? "not " + condition.atom : condition.atom;
}

std::string pretty_print(const NormalizedRule& rule) {
  std::ostringstream out;
  out << "rule " << rule.name << " {\n  on " << rule.trigger << "\n";
  if (rule.branches.empty()) {
    out << "  do " << rule.default_action << "\n";
  } else {
    for (std::size_t i = 0; i < rule.branches.size(); ++i) {
      out << (i == 0 ? "  if " : "  else if ") << to_string(rule.branches[i].condition) << " then "
          << rule.branches[i].action << "\n";
    }
    out << "  else " << rule.default_action << "\n";
  }
  out << "}\n";
  return out.str();
}

ValidationReport validate(const std::vector<NormalizedRule>& rules, const Vocabulary& vocabulary) {
  ValidationReport report;
  auto check = [&](const std::string& rule, AtomKind kind, const std::string& atom,
                   const std::set<std::string>& declared) {
    if (declared.count(atom)) return;
    LinkError err{rule, kind, atom};
    if (std::find(report.errors.begin(), report.errors.end(), err) == report.errors.end())
      report.errors.push_back(std::move(err));
  };

  std::vector<std::string> trigger_order;
  std::map<std::string, std::vector<std::string>> by_trigger;
  for (const auto& r : rules) {
    check(r.name, AtomKind::Event, r.trigger, vocabulary.events);
    for (const auto& b : r.branches) {
      check(r.name, AtomKind::Condition, b.condition.atom, vocabulary.conditions);
      check(r.name, AtomKind::Action, b.action, vocabulary.actions);
    }
    check(r.name, AtomKind::Action, r.default_action, vocabulary.actions);
    auto& names = by_trigger[r.trigger];
    if (names.empty()) trigger_order.push_back(r.trigger);
    names.push_back(r.name);
  }
  for (const auto& t : trigger_order) {
    if (by_trigger[t].size() > 1) report.warnings.push_back({t, by_trigger[t]});
  }
  return report;
}

std::string to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Event: return "event";
    case AtomKind::Action: return "action";
    case AtomKind::Condition: return "condition";
  }
  return "atom";
}

std::string to_string(const LinkError& error) {
  return "rule " + error.rule + ": undeclared " + to_string(error.kind) + " '" + error.atom + "'";
}

}  // namespace normfuzz::sleec
