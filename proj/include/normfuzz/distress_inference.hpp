#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normfuzz/fuzzy_core.hpp"

namespace normfuzz {

enum class Level { Low, Medium, High };

inline constexpr std::array kAgeTerms = {AgeTerm::Young, AgeTerm::Middle, AgeTerm::Old};
inline constexpr std::array kLevels = {Level::Low, Level::Medium, Level::High};

std::string to_string(Level level);
std::string to_lower_name(Level level);
std::string to_lower_name(AgeTerm term);
std::optional<Level> parse_level(std::string_view lowercase);
std::optional<AgeTerm> parse_age_term(std::string_view lowercase);

struct VitalReading {
  double age = 0;
  double blood_pressure = 0;    // systolic, mmHg
  double heart_rate = 0;        // beats per minute
  double body_temperature = 0;  // degrees Celsius

  /// Throws NegativeAge for a negative age and ConfigError for any other
  /// negative or non-finite value.
  void validate() const;
};

struct Antecedent {
  AgeTerm age;
  Level bp;
  Level hr;
  Level bt;
  bool operator==(const Antecedent&) const = default;
};

struct FuzzyRule {
  Antecedent antecedent;
  Level distress;
  bool operator==(const FuzzyRule&) const = default;
};

struct Centroids {
  double low = 0.2;
  double medium = 0.5;
  double high = 0.8;
  double of(Level level) const;
  bool operator==(const Centroids&) const = default;
};

/// A complete, functional table over Age x BP x HR x BT.
class RuleBase {
 public:
  static constexpr std::size_t kSize = 81;

  /// Throws RuleBaseError when a combination is missing or repeated, or the
  /// centroids are not strictly increasing inside (0,1).
  RuleBase(std::vector<FuzzyRule> rules, Centroids centroids);

  const std::vector<FuzzyRule>& rules() const { return rules_; }
  const Centroids& centroids() const { return centroids_; }
  Level consequent(const Antecedent& a) const;

  bool operator==(const RuleBase& other) const;

 private:
  static std::size_t index(const Antecedent& a);

  std::vector<FuzzyRule> rules_;
  Centroids centroids_;
  std::array<Level, kSize> table_{};
};

/// Fills every combination: s = number of BP/HR/BT terms that are not Medium,
/// plus one for Old age when s >= 1; Low for s = 0, Medium for s = 1, High
/// otherwise.
RuleBase default_rule_base();

/// Reads `{ "centroids": {low, medium, high}, "rules": [{age, bp, hr, bt, distress}] }`.
RuleBase load_rule_base(std::string_view json_text);
std::string serialize_rule_base(const RuleBase& base);

struct DistressVariables {
  LinguisticVariable age;  // terms Young, Middle, Old
  LinguisticVariable bp;   // terms Low, Medium, High
  LinguisticVariable hr;
  LinguisticVariable bt;

  /// Throws ConfigError if a variable lacks a required term or uses a
  /// label-valued shape.
  void validate() const;
  bool operator==(const DistressVariables&) const = default;
};

/// Per-term degrees of the four inputs, indexed by AgeTerm / Level.
struct FuzzifiedVitals {
  std::array<double, 3> age{};
  std::array<double, 3> bp{};
  std::array<double, 3> hr{};
  std::array<double, 3> bt{};
};

FuzzifiedVitals fuzzify_vitals(const VitalReading& vitals, const DistressVariables& vars);

struct FiringRecord {
  FuzzyRule rule;
  double weight = 0;        // min of the four antecedent memberships
  double centroid = 0;      // of the consequent
  double contribution = 0;  // centroid * weight
};

struct DefuzzResult {
  double d_star = 0;
  std::vector<FiringRecord> firings;  // one per rule, in rule-base order
  double numerator = 0;
  double denominator = 0;
  FuzzifiedVitals memberships;
};

/// Fires every rule with min-AND and returns the weight-averaged centroid.
/// Throws NoRuleFired if all weights are 0.
DefuzzResult defuzzify(const RuleBase& base, const FuzzifiedVitals& memberships);

DefuzzResult assess_distress(const VitalReading& vitals, const RuleBase& base, const DistressVariables& vars);

}  // namespace normfuzz
