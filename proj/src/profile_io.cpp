#include "normfuzz/profile_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace normfuzz {

using nlohmann::json;

GarmentProfile default_garment_profile() {
  PossibilityDistribution categories({
      {"Tops", 0.4},
      {"Bottoms", 0.5},
      {"Dresses", 1.0},
      {"Sleepwear", 0.8},
      {"Accessories", 0.0},
      {"Others", 0.1},
  });
  std::map<std::string, std::string> items;
  auto assign = [&](const char* category, std::initializer_list<const char*> garments) {
    for (const char* g : garments) items[g] = category;
  };
  assign("Tops", {"t_shirt", "shirt", "blouse", "sweatshirt"});
  assign("Bottoms", {"skirt", "pants", "leggings", "capri_pants"});
  assign("Dresses", {"sundress", "evening_dress", "gown"});
  assign("Sleepwear", {"nightgown", "robe"});
  assign("Accessories", {"jewelry", "sunglasses", "watch"});
  assign("Others", {"sock", "socks", "hat", "belt", "tie"});
  return GarmentProfile(std::move(categories), std::move(items), GarmentProfile::kDefaultThreshold);
}

DistressVariables default_distress_variables() {
  LinguisticVariable age("age", "years",
                         {
                             {"Young", MembershipFunction::age(AgeTerm::Young)},
                             {"Middle", MembershipFunction::age(AgeTerm::Middle)},
                             {"Old", MembershipFunction::age(AgeTerm::Old)},
                         });
  return DistressVariables{
      std::move(age),
      LinguisticVariable::from_bands("bp", "mmHg", {90, 110}, {130, 150}),
      LinguisticVariable::from_bands("hr", "bpm", {60, 90}, {153, 180}),
      LinguisticVariable::from_bands("bt", "degC", {35.5, 36.1}, {37.2, 38.0}),
  };
}

Profile default_profile() {
  Profile p{
      default_garment_profile(),
      default_rule_base(),
      default_distress_variables(),
      Profile::kDefaultDistressThreshold,
      {{"dressed", DressingEvaluator{}}, {"highly_distressed", DistressAboveThreshold{}}},
      {"ask_open"},
      {"open_curtains", "do_not_open"},
  };
  p.validate();
  return p;
}

namespace {

[[noreturn]] void config_fail(const std::string& where, const std::string& why) {
  throw ConfigError(where + ": " + why);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) config_fail(where, "expected a number");
  return j.get<double>();
}

std::string string(const json& j, const std::string& where) {
  if (!j.is_string()) config_fail(where, "expected a string");
  return j.get<std::string>();
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) config_fail(where, "expected an object");
  if (!obj.contains(key)) config_fail(where, std::string("missing '") + key + "'");
  return obj.at(key);
}

std::set<std::string> string_set(const json& j, const std::string& where) {
  if (!j.is_array()) config_fail(where, "expected an array of strings");
  std::set<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.insert(string(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

double corner(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -kInf;
    if (s == "inf" || s == "+inf") return kInf;
    config_fail(where, "expected a number, \"-inf\" or \"inf\"");
  }
  return number(j, where);
}

std::pair<double, double> band(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) config_fail(where, "expected [from, to]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

MembershipFunction parse_shape(const json& t, const std::string& where) {
  const std::string shape = string(field(t, "shape", where), where + ".shape");
  if (shape == "trapezoid") {
    const json& c = field(t, "corners", where);
    if (!c.is_array() || c.size() != 4) config_fail(where + ".corners", "expected four corners");
    return MembershipFunction::trapezoid(corner(c[0], where), corner(c[1], where), corner(c[2], where),
                                         corner(c[3], where));
  }
  if (shape == "zadeh_young") return MembershipFunction::age(AgeTerm::Young);
  if (shape == "zadeh_middle") return MembershipFunction::age(AgeTerm::Middle);
  if (shape == "zadeh_old") return MembershipFunction::age(AgeTerm::Old);
  if (shape == "crisp_threshold")
    return MembershipFunction(CrispThreshold{number(field(t, "threshold", where), where + ".threshold")});
  if (shape == "discrete") {
    const json& d = field(t, "degrees", where);
    if (!d.is_object()) config_fail(where + ".degrees", "expected an object");
    Discrete out;
    for (const auto& [label, v] : d.items()) out.degrees[label] = number(v, where + ".degrees." + label);
    return MembershipFunction(std::move(out));
  }
  config_fail(where + ".shape", "unknown shape '" + shape + "'");
}

LinguisticVariable parse_variable(const std::string& name, const json& v) {
  const std::string where = "variables." + name;
  if (!v.is_object()) config_fail(where, "expected an object");
  std::string unit = v.contains("unit") ? string(v["unit"], where + ".unit") : "";
  if (v.contains("bands")) {
    const json& b = v["bands"];
    return LinguisticVariable::from_bands(name, unit, band(field(b, "low_medium", where + ".bands"), where),
                                          band(field(b, "medium_high", where + ".bands"), where));
  }
  const json& terms = field(v, "terms", where);
  if (!terms.is_array()) config_fail(where + ".terms", "expected an array");
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tw = where + ".terms[" + std::to_string(i) + "]";
    out.push_back({string(field(terms[i], "label", tw), tw + ".label"), parse_shape(terms[i], tw)});
  }
  return LinguisticVariable(name, unit, std::move(out));
}

EvaluatorSpec parse_binding(const std::string& name, const json& b) {
  const std::string where = "bindings." + name;
  const std::string kind = string(field(b, "kind", where), where + ".kind");
  if (kind == "dressing") return DressingEvaluator{};
  if (kind == "distress_above") {
    DistressAboveThreshold spec;
    if (b.contains("threshold")) spec.threshold = number(b["threshold"], where + ".threshold");
    return spec;
  }
  if (kind == "constant") {
    const json& v = field(b, "value", where);
    if (!v.is_boolean()) config_fail(where + ".value", "expected a boolean");
    return ConstantBoolean{v.get<bool>()};
  }
  config_fail(where + ".kind", "unknown evaluator kind '" + kind + "'");
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Profile load_profile(std::string_view json_text) {
  const json doc = parse_json(json_text, "profile");
  if (!doc.is_object()) config_fail("profile", "top level must be an object");
  Profile p = default_profile();

  if (doc.contains("vocabulary")) {
    const json& v = doc["vocabulary"];
    if (v.contains("events")) p.events = string_set(v["events"], "vocabulary.events");
    if (v.contains("actions")) p.actions = string_set(v["actions"], "vocabulary.actions");
  }

  if (doc.contains("garments")) {
    const json& g = doc["garments"];
    if (!g.is_object()) config_fail("garments", "expected an object");
    PossibilityDistribution categories = p.garments.categories();
    std::map<std::string, std::string> items = p.garments.garments();
    double threshold = p.garments.threshold();
    if (g.contains("categories")) {
      if (!g["categories"].is_object()) config_fail("garments.categories", "expected an object");
      std::map<std::string, double> entries;
      for (const auto& [label, v] : g["categories"].items())
        entries[label] = number(v, "garments.categories." + label);
      categories = PossibilityDistribution(std::move(entries));
      // garments of the default profile refer to default categories
      if (!g.contains("items")) items.clear();
    }
    if (g.contains("items")) {
      if (!g["items"].is_object()) config_fail("garments.items", "expected an object");
      items.clear();
      for (const auto& [label, v] : g["items"].items()) items[label] = string(v, "garments.items." + label);
    }
    if (g.contains("threshold")) threshold = number(g["threshold"], "garments.threshold");
    p.garments = GarmentProfile(std::move(categories), std::move(items), threshold);
  }

  if (doc.contains("variables")) {
    const json& vars = doc["variables"];
    if (!vars.is_object()) config_fail("variables", "expected an object");
    for (const auto& [name, v] : vars.items()) {
      if (name == "age")
        p.variables.age = parse_variable(name, v);
      else if (name == "bp")
        p.variables.bp = parse_variable(name, v);
      else if (name == "hr")
        p.variables.hr = parse_variable(name, v);
      else if (name == "bt")
        p.variables.bt = parse_variable(name, v);
      else
        config_fail("variables." + name, "unknown variable (expected age, bp, hr or bt)");
    }
  }

  if (doc.contains("distress_threshold")) p.distress_threshold = number(doc["distress_threshold"], "distress_threshold");
  if (doc.contains("rule_base")) p.rule_base = load_rule_base(doc["rule_base"].dump());

  if (doc.contains("bindings")) {
    const json& b = doc["bindings"];
    if (!b.is_object()) config_fail("bindings", "expected an object");
    p.bindings.clear();
    for (const auto& [name, spec] : b.items()) p.bindings[name] = parse_binding(name, spec);
  }

  p.validate();
  return p;
}

std::vector<Scenario> load_scenarios(std::string_view json_text) {
  const json doc = parse_json(json_text, "scenario");
  std::vector<json> items;
  if (doc.is_array())
    items.assign(doc.begin(), doc.end());
  else
    items.push_back(doc);

  std::vector<Scenario> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string where = "scenario[" + std::to_string(i) + "]";
    const json& s = items[i];
    Scenario sc;
    sc.event = string(field(s, "event", where), where + ".event");
    if (s.contains("worn")) sc.worn = string_set(s["worn"], where + ".worn");
    const json& v = field(s, "vitals", where);
    sc.vitals.age = number(field(v, "age", where + ".vitals"), where + ".vitals.age");
    sc.vitals.blood_pressure = number(field(v, "bp", where + ".vitals"), where + ".vitals.bp");
    sc.vitals.heart_rate = number(field(v, "hr", where + ".vitals"), where + ".vitals.hr");
    sc.vitals.body_temperature = number(field(v, "bt", where + ".vitals"), where + ".vitals.bt");
    out.push_back(std::move(sc));
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace normfuzz
