#include <random>

#include "doctest.h"
#include "normfuzz/policy.hpp"
#include "normfuzz/profile_io.hpp"
#include "oracles.hpp"

using namespace normfuzz;
using namespace normfuzz::sleec;

namespace {

const char* kCurtain =
    "rule curtains { when ask_open then open_curtains unless not dressed in which case do_not_open "
    "unless highly_distressed in which case open_curtains }";

NormalizedRule curtain_rule() { return normalize(parse_rule_set(kCurtain).front()); }

/// Facts with fixed values; counts how often each one is requested.
class FixedFacts : public FactSource {
 public:
  FixedFacts(bool dressed, std::optional<double> d_star) : dressed_(dressed), d_star_(d_star) {}

  DressingResult dressing() override {
    ++dressing_calls;
    DressingResult r;
    r.dressed = dressed_;
    r.accumulated_sum = dressed_ ? 1.0 : 0.0;
    r.decisive_step = dressed_ ? DecisiveStep::SingleMax : DecisiveStep::Exhausted;
    return r;
  }
  DefuzzResult distress() override {
    ++distress_calls;
    if (!d_star_) throw NoRuleFired();
    DefuzzResult r;
    r.d_star = *d_star_;
    r.numerator = *d_star_;
    r.denominator = 1;
    return r;
  }

  int dressing_calls = 0;
  int distress_calls = 0;

 private:
  bool dressed_;
  std::optional<double> d_star_;
};

Scenario scenario(std::set<std::string> worn, VitalReading v = {40, 120, 80, 36.8}) {
  return {"ask_open", std::move(worn), v};
}

}  // namespace

TEST_CASE("dressing condition reports the accumulated possibility") {
  const Profile profile = default_profile();
  const ConditionValue c = evaluate_condition({false, "dressed"}, scenario({"sock", "hat"}), profile);
  CHECK_FALSE(c.value);
  CHECK(c.degree == 0.1);

  Profile flat = profile;
  flat.garments = GarmentProfile(PossibilityDistribution({{"one_sock", 0.12}, {"hat", 0.11}}), {}, 0.8);
  const ConditionValue d = evaluate_condition({false, "dressed"}, scenario({"one_sock", "hat"}), flat);
  CHECK_FALSE(d.value);
  CHECK(std::abs(d.degree - 0.23) <= 1e-12);
  const ConditionValue n = evaluate_condition({true, "dressed"}, scenario({"one_sock", "hat"}), flat);
  CHECK(n.value);
  CHECK(n.degree == d.degree);
}

TEST_CASE("distress condition uses a strict threshold") {
  const Profile profile = default_profile();
  FixedFacts above(false, 0.635);
  const ConditionValue a = evaluate_condition({false, "highly_distressed"}, above, profile);
  CHECK(a.value);
  CHECK(a.degree == 0.635);

  FixedFacts at(false, 0.6);
  CHECK_FALSE(evaluate_condition({false, "highly_distressed"}, at, profile).value);

  Profile custom = profile;
  custom.bindings["highly_distressed"] = DistressAboveThreshold{0.7};
  CHECK_FALSE(evaluate_condition({false, "highly_distressed"}, above, custom).value);
}

TEST_CASE("constant and unbound conditions") {
  Profile profile = default_profile();
  profile.bindings["always"] = ConstantBoolean{true};
  FixedFacts facts(false, 0.5);
  CHECK(evaluate_condition({false, "always"}, facts, profile).value);
  CHECK_FALSE(evaluate_condition({true, "always"}, facts, profile).value);
  CHECK(facts.dressing_calls == 0);
  CHECK(facts.distress_calls == 0);
  CHECK_THROWS_AS(evaluate_condition({false, "sleepy"}, facts, profile), ConfigError);
}

TEST_CASE("undressed and distressed opens the curtains") {
  const Profile profile = default_profile();
  const DecisionTrace t = decide(curtain_rule(), scenario({"sock", "hat"}, {80, 170, 190, 39.0}), profile);
  CHECK(t.triggered);
  CHECK(t.action == "open_curtains");
  CHECK_FALSE(t.branch_taken.has_value());
  REQUIRE(t.distress.has_value());
  CHECK(std::abs(t.distress->d_star - 0.8) <= 1e-9);
  CHECK(t.condition_values.size() == 2);
}

TEST_CASE("a dressed user short-circuits the distress assessment") {
  const Profile profile = default_profile();
  const DecisionTrace t = decide(curtain_rule(), scenario({"sundress"}), profile);
  CHECK(t.action == "open_curtains");
  CHECK(t.branch_taken == std::optional<std::size_t>(0));
  CHECK_FALSE(t.distress.has_value());
  CHECK(t.condition_values.size() == 1);

  FixedFacts facts(true, 0.1);
  decide(curtain_rule(), scenario({}), profile, facts);
  CHECK(facts.dressing_calls == 1);
  CHECK(facts.distress_calls == 0);
}

TEST_CASE("undressed and calm keeps the curtains closed") {
  const Profile profile = default_profile();
  const DecisionTrace t = decide(curtain_rule(), scenario({"sock"}, {30, 120, 75, 36.8}), profile);
  CHECK(t.action == "do_not_open");
  CHECK(t.branch_taken == std::optional<std::size_t>(1));
  REQUIRE(t.distress.has_value());
  CHECK(t.distress->d_star <= 0.6);
}

TEST_CASE("property: decisions match the plain curtain procedure on a grid") {
  const Profile profile = default_profile();
  const NormalizedRule rule = curtain_rule();
  for (int dressed = 0; dressed <= 1; ++dressed) {
    for (int i = 0; i <= 20; ++i) {
      const double d = i / 20.0;
      FixedFacts facts(dressed == 1, d);
      const DecisionTrace t = decide(rule, scenario({}), profile, facts);
      REQUIRE(t.action == oracle::curtain_opener(dressed, d));
      CHECK(facts.distress_calls == (dressed ? 0 : 1));
    }
  }
}

TEST_CASE("property: the recorded branch is consistent with the condition values") {
  std::mt19937_64 rng(3);
  Profile profile = default_profile();
  for (int a = 0; a < 5; ++a) profile.bindings["c" + std::to_string(a)] = ConstantBoolean{};
  for (int i = 0; i < 300; ++i) {
    const RuleAst ast = oracle::random_rule(rng, i, 6, 5);
    const NormalizedRule rule = normalize(ast);
    std::map<std::string, bool> values;
    for (int a = 0; a < 5; ++a) {
      const bool v = rng() & 1u;
      values["c" + std::to_string(a)] = v;
      profile.bindings["c" + std::to_string(a)] = ConstantBoolean{v};
    }
    FixedFacts facts(false, 0.5);
    const DecisionTrace t = decide(rule, {rule.trigger, {}, {}}, profile, facts);
    CHECK(t.action == oracle::defeater_chain(ast, values));
    const std::size_t evaluated = t.condition_values.size();
    if (t.branch_taken) {
      CHECK(*t.branch_taken + 1 == evaluated);
      CHECK(t.condition_values.back().value);
      CHECK(t.action == rule.branches[*t.branch_taken].action);
    } else {
      CHECK(evaluated == rule.branches.size());
      CHECK(t.action == rule.default_action);
    }
    for (std::size_t k = 0; k + 1 < evaluated; ++k) CHECK_FALSE(t.condition_values[k].value);
  }
}

TEST_CASE("property: raising the distress threshold never opens more often") {
  const NormalizedRule rule = curtain_rule();
  for (int i = 0; i <= 100; ++i) {
    const double d = i / 100.0;
    bool previously_open = true;
    for (int k = 1; k < 20; ++k) {
      Profile profile = default_profile();
      profile.distress_threshold = k / 20.0;
      FixedFacts facts(false, d);
      const bool open = decide(rule, scenario({}), profile, facts).action == "open_curtains";
      CHECK((previously_open || !open));
      previously_open = open;
    }
  }
}

TEST_CASE("double negation is rejected by the parser, single negation is involutive") {
  CHECK_THROWS_AS(parse_rule_set("rule r { when e then a unless not not c in which case b }"), ParseError);
  const ConditionExpr c{false, "dressed"};
  CHECK(c.negate().negate() == c);
  const Profile profile = default_profile();
  const auto s = scenario({"sock"});
  CHECK(evaluate_condition(c.negate(), s, profile).value == !evaluate_condition(c, s, profile).value);
}

TEST_CASE("a distress assessment with no firing rule degrades to false") {
  const Profile profile = default_profile();
  FixedFacts facts(false, std::nullopt);
  const DecisionTrace t = decide(curtain_rule(), scenario({}), profile, facts);
  CHECK(t.degraded);
  CHECK(t.no_rule_fired);
  CHECK_FALSE(t.distress.has_value());
  REQUIRE(t.condition_values.size() == 2);
  CHECK(t.condition_values[1].degraded);
  // highly_distressed is taken as false, so "not highly_distressed" holds
  CHECK(t.action == "do_not_open");
  CHECK_THROWS_AS(evaluate_condition({false, "highly_distressed"}, facts, profile), NoRuleFired);
}

TEST_CASE("an event that does not match the trigger leaves the rule untriggered") {
  const Profile profile = default_profile();
  FixedFacts facts(false, 0.9);
  const DecisionTrace t = decide(curtain_rule(), {"knock", {}, {}}, profile, facts);
  CHECK_FALSE(t.triggered);
  CHECK(t.action.empty());
  CHECK(facts.dressing_calls == 0);
}

TEST_CASE("batch decisions") {
  Profile profile = default_profile();
  CHECK(decide_batch({curtain_rule()}, {}, profile).empty());

  profile.events.insert("knock");
  profile.actions.insert("wave");
  auto rules = normalize_all(parse_rule_set(std::string(kCurtain) +
                                            "\nrule greet { when knock then wave }\n"
                                            "rule shadow { when ask_open then do_not_open }"));
  std::vector<Scenario> in{scenario({"sundress"}), {"knock", {}, {40, 120, 80, 36.8}}, {"ring", {}, {}},
                           scenario({"cape"})};
  auto out = decide_batch(rules, in, profile, 2);
  REQUIRE(out.size() == 4);
  REQUIRE(out[0].ok());
  CHECK(out[0].trace->rule == "curtains");
  REQUIRE(out[1].ok());
  CHECK(out[1].trace->action == "wave");
  CHECK_FALSE(out[2].ok());
  CHECK(out[2].error_code == ErrorCode::Config);
  CHECK_FALSE(out[3].ok());
  CHECK(out[3].error_code == ErrorCode::UnknownItem);
}

TEST_CASE("property: parallel batches equal serial evaluation") {
  std::mt19937_64 rng(8);
  const Profile profile = default_profile();
  const std::vector<NormalizedRule> rules{curtain_rule()};
  const std::vector<std::string> garments{"sock", "hat", "t_shirt", "pants", "sundress", "watch", "robe"};
  std::vector<Scenario> in;
  for (int i = 0; i < 1000; ++i) {
    Scenario s = scenario({}, oracle::random_vitals(rng));
    for (const auto& g : garments)
      if (rng() % 3 == 0) s.worn.insert(g);
    if (i % 97 == 0) s.vitals.age = -1;
    in.push_back(s);
  }
  const auto parallel = decide_batch(rules, in, profile, 4);
  const auto serial = decide_batch(rules, in, profile, 1);
  REQUIRE(parallel.size() == in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    REQUIRE(parallel[i].ok() == serial[i].ok());
    const BatchItem one = decide_one(rules, in[i], profile);
    REQUIRE(one.ok() == serial[i].ok());
    if (serial[i].ok()) {
      CHECK(parallel[i].trace->action == serial[i].trace->action);
      CHECK(parallel[i].trace->branch_taken == serial[i].trace->branch_taken);
      CHECK(one.trace->action == serial[i].trace->action);
    } else {
      CHECK(parallel[i].error_code == serial[i].error_code);
      CHECK(serial[i].error_code == ErrorCode::NegativeAge);
    }
  }
}
