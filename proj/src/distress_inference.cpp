#include "normfuzz/distress_inference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace normfuzz {

using nlohmann::json;

std::string to_string(Level level) {
  switch (level) {
    case Level::Low: return "Low";
    case Level::Medium: return "Medium";
    case Level::High: return "High";
  }
  return "?";
}

std::string to_lower_name(Level level) {
  switch (level) {
    case Level::Low: return "low";
    case Level::Medium: return "medium";
    case Level::High: return "high";
  }
  return "?";
}

std::string to_lower_name(AgeTerm term) {
  switch (term) {
    case AgeTerm::Young: return "young";
    case AgeTerm::Middle: return "middle";
    case AgeTerm::Old: return "old";
  }
  return "?";
}

std::optional<Level> parse_level(std::string_view s) {
  if (s == "low") return Level::Low;
  if (s == "medium") return Level::Medium;
  if (s == "high") return Level::High;
  return std::nullopt;
}

std::optional<AgeTerm> parse_age_term(std::string_view s) {
  if (s == "young") return AgeTerm::Young;
  if (s == "middle") return AgeTerm::Middle;
  if (s == "old") return AgeTerm::Old;
  return std::nullopt;
}

void VitalReading::validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0) {
      std::ostringstream msg;
      msg << "vital '" << name << "' must be finite and nonnegative, got " << v;
      throw ConfigError(msg.str());
    }
  };
  if (std::isfinite(age) && age < 0) throw NegativeAge(age);
  check(age, "age");
  check(blood_pressure, "bp");
  check(heart_rate, "hr");
  check(body_temperature, "bt");
}

double Centroids::of(Level level) const {
  switch (level) {
    case Level::Low: return low;
    case Level::Medium: return medium;
    case Level::High: return high;
  }
  return 0;
}

namespace {

std::string describe(const Antecedent& a) {
  return "(age=" + to_lower_name(a.age) + ", bp=" + to_lower_name(a.bp) + ", hr=" + to_lower_name(a.hr) +
         ", bt=" + to_lower_name(a.bt) + ")";
}

}  // namespace

std::size_t RuleBase::index(const Antecedent& a) {
  return ((static_cast<std::size_t>(a.age) * 3 + static_cast<std::size_t>(a.bp)) * 3 +
          static_cast<std::size_t>(a.hr)) *
             3 +
         static_cast<std::size_t>(a.bt);
}

RuleBase::RuleBase(std::vector<FuzzyRule> rules, Centroids centroids)
    : rules_(std::move(rules)), centroids_(centroids) {
  const Centroids& c = centroids_;
  if (!(c.low > 0 && c.low < c.medium && c.medium < c.high && c.high < 1)) {
    std::ostringstream msg;
    msg << "centroids must satisfy 0 < low < medium < high < 1, got (" << c.low << ", " << c.medium << ", "
        << c.high << ")";
    throw RuleBaseError(RuleBaseErrorKind::BadCentroid, msg.str());
  }
  std::array<bool, kSize> seen{};
  for (const auto& r : rules_) {
    std::size_t i = index(r.antecedent);
    if (seen[i])
      throw RuleBaseError(RuleBaseErrorKind::DuplicateCombination, "antecedent " + describe(r.antecedent));
    seen[i] = true;
    table_[i] = r.distress;
  }
  for (AgeTerm age : kAgeTerms)
    for (Level bp : kLevels)
      for (Level hr : kLevels)
        for (Level bt : kLevels) {
          Antecedent a{age, bp, hr, bt};
          if (!seen[index(a)])
            throw RuleBaseError(RuleBaseErrorKind::MissingCombination, "antecedent " + describe(a));
        }
}

Level RuleBase::consequent(const Antecedent& a) const { return table_[index(a)]; }

bool RuleBase::operator==(const RuleBase& other) const {
  return centroids_ == other.centroids_ && table_ == other.table_;
}

RuleBase default_rule_base() {
  std::vector<FuzzyRule> rules;
  rules.reserve(RuleBase::kSize);
  for (AgeTerm age : kAgeTerms)
    for (Level bp : kLevels)
      for (Level hr : kLevels)
        for (Level bt : kLevels) {
          int s = (bp != Level::Medium) + (hr != Level::Medium) + (bt != Level::Medium);
          if (age == AgeTerm::Old && s >= 1) ++s;
          Level d = s == 0 ? Level::Low : s == 1 ? Level::Medium : Level::High;
          rules.push_back({{age, bp, hr, bt}, d});
        }
  return RuleBase(std::move(rules), Centroids{});
}

namespace {

template <class T, class Parse>
T term_field(const json& row, const char* key, Parse parse, std::size_t index) {
  auto fail = [&](const std::string& why) {
    throw RuleBaseError(RuleBaseErrorKind::BadFormat, "rules[" + std::to_string(index) + "]." + key + ": " + why);
  };
  if (!row.contains(key)) fail("missing");
  if (!row[key].is_string()) fail("expected a string");
  auto parsed = parse(row[key].get<std::string>());
  if (!parsed) fail("unknown term '" + row[key].get<std::string>() + "'");
  return *parsed;
}

double centroid_field(const json& c, const char* key) {
  if (!c.contains(key) || !c[key].is_number())
    throw RuleBaseError(RuleBaseErrorKind::BadCentroid, std::string("centroids.") + key + " missing or not a number");
  return c[key].get<double>();
}

}  // namespace

RuleBase load_rule_base(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw RuleBaseError(RuleBaseErrorKind::BadFormat, e.what());
  }
  if (!doc.is_object()) throw RuleBaseError(RuleBaseErrorKind::BadFormat, "top level must be an object");

  Centroids centroids;
  if (doc.contains("centroids")) {
    const json& c = doc["centroids"];
    if (!c.is_object()) throw RuleBaseError(RuleBaseErrorKind::BadCentroid, "centroids must be an object");
    centroids = {centroid_field(c, "low"), centroid_field(c, "medium"), centroid_field(c, "high")};
  }
  if (!doc.contains("rules") || !doc["rules"].is_array())
    throw RuleBaseError(RuleBaseErrorKind::BadFormat, "'rules' must be an array");

  std::vector<FuzzyRule> rules;
  const json& rows = doc["rules"];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_object())
      throw RuleBaseError(RuleBaseErrorKind::BadFormat, "rules[" + std::to_string(i) + "] must be an object");
    FuzzyRule r;
    r.antecedent.age = term_field<AgeTerm>(row, "age", parse_age_term, i);
    r.antecedent.bp = term_field<Level>(row, "bp", parse_level, i);
    r.antecedent.hr = term_field<Level>(row, "hr", parse_level, i);
    r.antecedent.bt = term_field<Level>(row, "bt", parse_level, i);
    r.distress = term_field<Level>(row, "distress", parse_level, i);
    rules.push_back(r);
  }
  return RuleBase(std::move(rules), centroids);
}

std::string serialize_rule_base(const RuleBase& base) {
  // One row per line keeps the file diffable.
  std::ostringstream out;
  const Centroids& c = base.centroids();
  out << "{\n  \"centroids\": " << nlohmann::ordered_json{{"low", c.low}, {"medium", c.medium}, {"high", c.high}}.dump()
      << ",\n  \"rules\": [\n";
  const auto& rules = base.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    out << "    {\"age\": \"" << to_lower_name(r.antecedent.age) << "\", \"bp\": \"" << to_lower_name(r.antecedent.bp)
        << "\", \"hr\": \"" << to_lower_name(r.antecedent.hr) << "\", \"bt\": \"" << to_lower_name(r.antecedent.bt)
        << "\", \"distress\": \"" << to_lower_name(r.distress) << "\"}" << (i + 1 < rules.size() ? "," : "")
        << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

void DistressVariables::validate() const {
  auto require = [](const LinguisticVariable& v, std::initializer_list<const char*> labels) {
    for (const char* l : labels) {
      if (!v.has_term(l)) throw ConfigError("variable '" + v.name() + "' lacks term '" + l + "'");
      if (!v.term(l).is_numeric())
        throw ConfigError("variable '" + v.name() + "' term '" + l + "' must be numeric");
    }
  };
  require(age, {"Young", "Middle", "Old"});
  for (const auto* v : {&bp, &hr, &bt}) require(*v, {"Low", "Medium", "High"});
}

FuzzifiedVitals fuzzify_vitals(const VitalReading& vitals, const DistressVariables& vars) {
  vitals.validate();
  FuzzifiedVitals f;
  for (AgeTerm t : kAgeTerms) f.age[static_cast<int>(t)] = vars.age.term(to_string(t))(vitals.age);
  for (Level l : kLevels) {
    int i = static_cast<int>(l);
    f.bp[i] = vars.bp.term(to_string(l))(vitals.blood_pressure);
    f.hr[i] = vars.hr.term(to_string(l))(vitals.heart_rate);
    f.bt[i] = vars.bt.term(to_string(l))(vitals.body_temperature);
  }
  return f;
}

DefuzzResult defuzzify(const RuleBase& base, const FuzzifiedVitals& m) {
  DefuzzResult result;
  result.memberships = m;
  result.firings.reserve(base.rules().size());
  for (const auto& rule : base.rules()) {
    const Antecedent& a = rule.antecedent;
    FiringRecord rec;
    rec.rule = rule;
    rec.weight = std::min({m.age[static_cast<int>(a.age)], m.bp[static_cast<int>(a.bp)],
                           m.hr[static_cast<int>(a.hr)], m.bt[static_cast<int>(a.bt)]});
    rec.centroid = base.centroids().of(rule.distress);
    rec.contribution = rec.centroid * rec.weight;
    result.numerator += rec.contribution;
    result.denominator += rec.weight;
    result.firings.push_back(rec);
  }
  if (!(result.denominator > 0)) throw NoRuleFired();
  result.d_star = result.numerator / result.denominator;
  return result;
}

DefuzzResult assess_distress(const VitalReading& vitals, const RuleBase& base, const DistressVariables& vars) {
  return defuzzify(base, fuzzify_vitals(vitals, vars));
}

}  // namespace normfuzz
