#pragma once

// Front end for SLEEC-style normative rules.
//
// Two surface forms are accepted:
//
//   rule NAME { when EVENT then ACTION (unless [not] COND in which case ACTION)* }
//   rule NAME { on EVENT if COND then ACTION (else if COND then ACTION)* else ACTION }
//   rule NAME { on EVENT do ACTION }
//
// The first is the defeater chain as written by stakeholders; the second is the
// canonical if/else-if/else form produced by normalize() and pretty_print().
// Both parse to the same RuleAst representation.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "normfuzz/errors.hpp"

namespace normfuzz::sleec {

struct ConditionExpr {
  bool negated = false;
  std::string atom;

  ConditionExpr negate() const { return {!negated, atom}; }
  bool operator==(const ConditionExpr&) const = default;
};

struct Defeater {
  ConditionExpr condition;
  std::string action;
  bool operator==(const Defeater&) const = default;
};

enum class SurfaceForm { DefeaterChain, IfElse };

struct RuleAst {
  std::string name;
  std::string trigger;
  std::string base_action;
  std::vector<Defeater> defeaters;  // source order
  SourcePosition position;          // of the `rule` keyword
  SurfaceForm form = SurfaceForm::DefeaterChain;
};

struct Branch {
  ConditionExpr condition;
  std::string action;
  bool operator==(const Branch&) const = default;
};

struct NormalizedRule {
  std::string name;
  std::string trigger;
  std::vector<Branch> branches;
  std::string default_action;
  bool operator==(const NormalizedRule&) const = default;
};

/// Parses every `rule` block in `source`. Throws ParseError (with position and
/// the set of expected tokens) on malformed input or a duplicate rule name.
std::vector<RuleAst> parse_rule_set(std::string_view source);

/// Rewrites the defeater chain into ordered branches: branch i tests the
/// negation of defeater i and yields the action in force before it fired; the
/// default is the last defeater's action.
NormalizedRule normalize(const RuleAst& rule);

std::vector<NormalizedRule> normalize_all(const std::vector<RuleAst>& rules);

/// Canonical if/else-if/else text; reparses to an identical NormalizedRule.
std::string pretty_print(const NormalizedRule& rule);

struct Vocabulary {
  std::set<std::string> events;
  std::set<std::string> actions;
  std::set<std::string> conditions;
};

enum class AtomKind { Event, Action, Condition };

struct LinkError {
  std::string rule;
  AtomKind kind;
  std::string atom;
  bool operator==(const LinkError&) const = default;
};

/// Several rules share a trigger. Evaluation uses the first one in file order.
struct ConflictWarning {
  std::string trigger;
  std::vector<std::string> rules;
  bool operator==(const ConflictWarning&) const = default;
};

struct ValidationReport {
  std::vector<LinkError> errors;
  std::vector<ConflictWarning> warnings;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const std::vector<NormalizedRule>& rules, const Vocabulary& vocabulary);

std::string to_string(AtomKind kind);
std::string to_string(const ConditionExpr& condition);
std::string to_string(const LinkError& error);

}  // namespace normfuzz::sleec
