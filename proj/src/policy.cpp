#include "normfuzz/policy.hpp"

#include <algorithm>
#include <thread>

namespace normfuzz {

std::string evaluator_kind_name(const EvaluatorSpec& spec) {
  if (std::holds_alternative<DressingEvaluator>(spec)) return "dressing";
  if (std::holds_alternative<DistressAboveThreshold>(spec)) return "distress_above";
  return "constant";
}

void Profile::validate() const {
  if (!(distress_threshold > 0.0 && distress_threshold < 1.0))
    throw ConfigError("distress_threshold must lie in (0,1), got " + std::to_string(distress_threshold));
  variables.validate();
  for (const auto& [name, spec] : bindings) {
    if (const auto* d = std::get_if<DistressAboveThreshold>(&spec); d && d->threshold) {
      if (!(*d->threshold > 0.0 && *d->threshold < 1.0))
        throw ConfigError("binding '" + name + "': threshold must lie in (0,1)");
    }
  }
}

sleec::Vocabulary Profile::vocabulary() const {
  sleec::Vocabulary v;
  v.events = events;
  v.actions = actions;
  for (const auto& [name, spec] : bindings) v.conditions.insert(name);
  return v;
}

DressingResult ScenarioFacts::dressing() { return is_dressed(profile_.garments, scenario_.worn); }

DefuzzResult ScenarioFacts::distress() {
  return assess_distress(scenario_.vitals, profile_.rule_base, profile_.variables);
}

namespace {

/// Memoizes an inner source so each fact is computed once per decision and
/// can be copied into the trace afterwards.
class RecordingFacts : public FactSource {
 public:
  explicit RecordingFacts(FactSource& inner) : inner_(inner) {}

  DressingResult dressing() override {
    if (!dressing_) dressing_ = inner_.dressing();
    return *dressing_;
  }

  DefuzzResult distress() override {
    if (no_rule_fired_) throw NoRuleFired();
    if (!distress_) {
      try {
        distress_ = inner_.distress();
      } catch (const NoRuleFired&) {
        no_rule_fired_ = true;
        throw;
      }
    }
    return *distress_;
  }

  std::optional<DressingResult> dressing_;
  std::optional<DefuzzResult> distress_;
  bool no_rule_fired_ = false;

 private:
  FactSource& inner_;
};

}  // namespace

ConditionValue evaluate_condition(const sleec::ConditionExpr& condition, FactSource& facts, const Profile& profile) {
  auto it = profile.bindings.find(condition.atom);
  if (it == profile.bindings.end()) throw ConfigError("condition '" + condition.atom + "' is not bound");

  ConditionValue out;
  out.condition = condition;
  bool atom_value = std::visit(
      [&](const auto& spec) -> bool {
        using S = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<S, DressingEvaluator>) {
          DressingResult r = facts.dressing();
          out.degree = r.degree();
          return r.dressed;
        } else if constexpr (std::is_same_v<S, DistressAboveThreshold>) {
          DefuzzResult r = facts.distress();
          out.degree = r.d_star;
          return r.d_star > spec.threshold.value_or(profile.distress_threshold);
        } else {
          out.degree = spec.value ? 1.0 : 0.0;
          return spec.value;
        }
      },
      it->second);
  out.value = condition.negated ? !atom_value : atom_value;
  return out;
}

ConditionValue evaluate_condition(const sleec::ConditionExpr& condition, const Scenario& scenario,
                                  const Profile& profile) {
  ScenarioFacts facts(scenario, profile);
  return evaluate_condition(condition, facts, profile);
}

DecisionTrace decide(const sleec::NormalizedRule& rule, const Scenario& scenario, const Profile& profile,
                     FactSource& facts) {
  DecisionTrace trace;
  trace.rule = rule.name;
  trace.event = scenario.event;
  if (scenario.event != rule.trigger) return trace;
  trace.triggered = true;

  RecordingFacts recording(facts);
  for (std::size_t i = 0; i < rule.branches.size() && !trace.branch_taken; ++i) {
    const auto& branch = rule.branches[i];
    ConditionValue cv;
    try {
      cv = evaluate_condition(branch.condition, recording, profile);
    } catch (const NoRuleFired&) {
      // The atom is taken as false; with the curtain rule this keeps the
      // curtains shut.
      cv.condition = branch.condition;
      cv.value = branch.condition.negated;
      cv.degree = 0.0;
      cv.degraded = true;
      trace.degraded = true;
    }
    trace.condition_values.push_back(cv);
    if (cv.value) trace.branch_taken = i;
  }
  trace.action = trace.branch_taken ? rule.branches[*trace.branch_taken].action : rule.default_action;
  trace.dressing = recording.dressing_;
  trace.distress = recording.distress_;
  trace.no_rule_fired = recording.no_rule_fired_;
  return trace;
}

DecisionTrace decide(const sleec::NormalizedRule& rule, const Scenario& scenario, const Profile& profile) {
  ScenarioFacts facts(scenario, profile);
  return decide(rule, scenario, profile, facts);
}

BatchItem decide_one(const std::vector<sleec::NormalizedRule>& rules, const Scenario& scenario,
                     const Profile& profile) {
  BatchItem item;
  try {
    if (!profile.events.count(scenario.event))
      throw ConfigError("scenario event '" + scenario.event + "' is not declared in the profile");
    auto rule = std::find_if(rules.begin(), rules.end(),
                             [&](const sleec::NormalizedRule& r) { return r.trigger == scenario.event; });
    if (rule == rules.end()) {
      DecisionTrace t;
      t.event = scenario.event;
      item.trace = std::move(t);
    } else {
      item.trace = decide(*rule, scenario, profile);
    }
  } catch (const Error& e) {
    item.error_code = e.code();
    item.error = e.what();
  }
  return item;
}

std::vector<BatchItem> decide_batch(const std::vector<sleec::NormalizedRule>& rules,
                                    const std::vector<Scenario>& scenarios, const Profile& profile,
                                    unsigned threads) {
  std::vector<BatchItem> out(scenarios.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, scenarios.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < scenarios.size(); ++i) out[i] = decide_one(rules, scenarios[i], profile);
    return out;
  }
  // Strided partition; each slot is written by exactly one worker.
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < scenarios.size(); i += threads) out[i] = decide_one(rules, scenarios[i], profile);
      });
    }
  }
  return out;
}

}  // namespace normfuzz
