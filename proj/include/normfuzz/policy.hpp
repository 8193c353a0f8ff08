#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "normfuzz/distress_inference.hpp"
#include "normfuzz/dressing.hpp"
#include "normfuzz/sleec_dsl.hpp"

namespace normfuzz {

/// Condition is true when the worn garments pass the dressing check.
struct DressingEvaluator {
  bool operator==(const DressingEvaluator&) const = default;
};
/// Condition is true when the defuzzified distress strictly exceeds the
/// threshold. Without an explicit threshold the profile's one is used.
struct DistressAboveThreshold {
  std::optional<double> threshold;
  bool operator==(const DistressAboveThreshold&) const = default;
};
struct ConstantBoolean {
  bool value = false;
  bool operator==(const ConstantBoolean&) const = default;
};

using EvaluatorSpec = std::variant<DressingEvaluator, DistressAboveThreshold, ConstantBoolean>;

std::string evaluator_kind_name(const EvaluatorSpec& spec);

struct Profile {
  static constexpr double kDefaultDistressThreshold = 0.6;

  GarmentProfile garments;
  RuleBase rule_base;
  DistressVariables variables;
  double distress_threshold = kDefaultDistressThreshold;
  std::map<std::string, EvaluatorSpec> bindings;
  std::set<std::string> events;
  std::set<std::string> actions;

  /// Throws ConfigError on out-of-range thresholds or malformed variables.
  void validate() const;
  sleec::Vocabulary vocabulary() const;
  bool operator==(const Profile&) const = default;
};

struct Scenario {
  std::string event;
  std::set<std::string> worn;
  VitalReading vitals;
};

/// Lazily computed inputs to condition evaluation. decide() asks for each
/// quantity at most once, and only if a condition needs it.
class FactSource {
 public:
  virtual ~FactSource() = default;
  virtual DressingResult dressing() = 0;
  /// Throws NoRuleFired when the rule base does not cover the vitals.
  virtual DefuzzResult distress() = 0;
};

/// Computes facts from a scenario and profile.
class ScenarioFacts : public FactSource {
 public:
  ScenarioFacts(const Scenario& scenario, const Profile& profile) : scenario_(scenario), profile_(profile) {}
  DressingResult dressing() override;
  DefuzzResult distress() override;

 private:
  const Scenario& scenario_;
  const Profile& profile_;
};

struct ConditionValue {
  sleec::ConditionExpr condition;
  bool value = false;  // after negation
  double degree = 0;   // of the underlying atom, never negated
  bool degraded = false;
};

/// Record of one evaluation. Facts that were never needed stay empty.
struct DecisionTrace {
  std::string rule;
  std::string event;
  bool triggered = false;
  std::optional<DressingResult> dressing;
  std::optional<DefuzzResult> distress;
  bool no_rule_fired = false;
  bool degraded = false;
  std::vector<ConditionValue> condition_values;
  std::optional<std::size_t> branch_taken;  // nullopt means the default action
  std::string action;
};

/// Evaluates one condition atom. A NoRuleFired from the distress evaluator
/// propagates; decide() is where it is turned into a degraded false.
ConditionValue evaluate_condition(const sleec::ConditionExpr& condition, FactSource& facts, const Profile& profile);
ConditionValue evaluate_condition(const sleec::ConditionExpr& condition, const Scenario& scenario,
                                  const Profile& profile);

/// Runs the branches in order and stops at the first true condition. An
/// event that does not match the rule's trigger yields an untriggered trace.
DecisionTrace decide(const sleec::NormalizedRule& rule, const Scenario& scenario, const Profile& profile);
DecisionTrace decide(const sleec::NormalizedRule& rule, const Scenario& scenario, const Profile& profile,
                     FactSource& facts);

struct BatchItem {
  std::optional<DecisionTrace> trace;
  std::optional<ErrorCode> error_code;
  std::string error;
  bool ok() const { return trace.has_value(); }
};

/// Per scenario, the first rule (in file order) whose trigger matches the
/// event decides. Output order equals input order; errors are embedded.
/// `threads` = 0 picks the hardware concurrency.
std::vector<BatchItem> decide_batch(const std::vector<sleec::NormalizedRule>& rules,
                                    const std::vector<Scenario>& scenarios, const Profile& profile,
                                    unsigned threads = 0);

BatchItem decide_one(const std::vector<sleec::NormalizedRule>& rules, const Scenario& scenario,
                     const Profile& profile);

}  // namespace normfuzz
