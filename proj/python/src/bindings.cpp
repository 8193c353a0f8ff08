#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "normfuzz/cli.hpp"
#include "normfuzz/distress_inference.hpp"
#include "normfuzz/dressing.hpp"
#include "normfuzz/fuzzy_core.hpp"
#include "normfuzz/policy.hpp"
#include "normfuzz/profile_io.hpp"
#include "normfuzz/report.hpp"
#include "normfuzz/sleec_dsl.hpp"

namespace py = pybind11;
using namespace normfuzz;

namespace {

Profile profile_from(const std::optional<std::string>& profile_json) {
  return profile_json ? load_profile(*profile_json) : default_profile();
}

py::dict dressing_dict(const DressingResult& r) {
  py::dict d;
  d["dressed"] = r.dressed;
  d["accumulated_sum"] = r.accumulated_sum;
  d["distinct_values"] = r.distinct_values_used;
  d["step"] = to_string(r.decisive_step);
  return d;
}

py::dict distress_dict(const DefuzzResult& r) {
  py::dict d;
  d["d_star"] = r.d_star;
  d["numerator"] = r.numerator;
  d["denominator"] = r.denominator;
  py::dict m;
  auto terms = [](const std::array<double, 3>& values, auto labels) {
    py::dict out;
    for (std::size_t i = 0; i < 3; ++i) out[py::str(to_string(labels[i]))] = values[i];
    return out;
  };
  m["age"] = terms(r.memberships.age, kAgeTerms);
  m["bp"] = terms(r.memberships.bp, kLevels);
  m["hr"] = terms(r.memberships.hr, kLevels);
  m["bt"] = terms(r.memberships.bt, kLevels);
  d["memberships"] = m;
  py::list fired;
  for (const auto& f : r.firings) {
    if (f.weight <= 0) continue;
    py::dict row;
    row["age"] = to_lower_name(f.rule.antecedent.age);
    row["bp"] = to_lower_name(f.rule.antecedent.bp);
    row["hr"] = to_lower_name(f.rule.antecedent.hr);
    row["bt"] = to_lower_name(f.rule.antecedent.bt);
    row["distress"] = to_lower_name(f.rule.distress);
    row["weight"] = f.weight;
    row["centroid"] = f.centroid;
    fired.append(row);
  }
  d["fired"] = fired;
  return d;
}

AgeTerm age_term(const std::string& name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (auto t = parse_age_term(lower)) return *t;
  throw ConfigError("unknown age term '" + name + "' (expected young, middle or old)");
}

}  // namespace

PYBIND11_MODULE(_normfuzz, m) {
  m.doc() = "Defeasible rules with fuzzy dressing and distress conditions";

  // translators registered later are tried first, so the base goes first
  auto& base = py::register_exception<Error>(m, "NormfuzzError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<UnknownItem>(m, "UnknownItem", base.ptr());
  py::register_exception<NoRuleFired>(m, "NoRuleFired", base.ptr());
  py::register_exception<RuleBaseError>(m, "RuleBaseError", base.ptr());
  py::register_exception<NegativeAge>(m, "NegativeAge", base.ptr());
  py::register_exception<InvalidCorners>(m, "InvalidCorners", base.ptr());

  m.def(
      "pretty_print",
      [](const std::string& source) {
        std::string out;
        for (const auto& rule : sleec::normalize_all(sleec::parse_rule_set(source))) out += sleec::pretty_print(rule);
        return out;
      },
      py::arg("source"), "Parses rules and returns their normalized if/else form.");

  m.def(
      "check",
      [](const std::string& source, std::optional<std::string> profile_json) {
        const auto rules = sleec::normalize_all(sleec::parse_rule_set(source));
        const auto report = sleec::validate(rules, profile_from(profile_json).vocabulary());
        py::dict out;
        py::list names, errors, warnings;
        for (const auto& r : rules) names.append(r.name);
        for (const auto& e : report.errors) errors.append(sleec::to_string(e));
        for (const auto& w : report.warnings) warnings.append(py::make_tuple(w.trigger, w.rules));
        out["rules"] = names;
        out["errors"] = errors;
        out["warnings"] = warnings;
        return out;
      },
      py::arg("source"), py::arg("profile_json") = py::none(),
      "Validates rules against the profile vocabulary.");

  m.def(
      "eval_trapezoid",
      [](double x, std::array<double, 4> c) { return eval_trapezoid(x, {c[0], c[1], c[2], c[3]}); },
      py::arg("x"), py::arg("corners"));
  m.def(
      "eval_age", [](double x, const std::string& term) { return eval_age(x, age_term(term)); }, py::arg("x"),
      py::arg("term"));
  m.def(
      "possibility_of_union",
      [](std::map<std::string, double> dist, std::set<std::string> items) {
        return possibility_of_union(PossibilityDistribution(std::move(dist)), items);
      },
      py::arg("distribution"), py::arg("items"));

  m.def(
      "is_dressed",
      [](std::set<std::string> worn, std::optional<std::map<std::string, double>> categories,
         std::optional<std::map<std::string, std::string>> items, std::optional<double> threshold) {
        GarmentProfile profile = default_garment_profile();
        if (categories)
          profile = GarmentProfile(PossibilityDistribution(*categories), items.value_or(std::map<std::string, std::string>{}),
                                   profile.threshold());
        if (threshold) profile = profile.with_threshold(*threshold);
        return dressing_dict(is_dressed(profile, worn));
      },
      py::arg("worn"), py::arg("categories") = py::none(), py::arg("items") = py::none(),
      py::arg("threshold") = py::none(),
      "Dressing check; without `categories` the built-in garment table is used.");

  m.def(
      "assess_distress",
      [](double age, double bp, double hr, double bt, std::optional<std::string> profile_json) {
        const Profile p = profile_from(profile_json);
        return distress_dict(assess_distress({age, bp, hr, bt}, p.rule_base, p.variables));
      },
      py::arg("age"), py::arg("bp"), py::arg("hr"), py::arg("bt"), py::arg("profile_json") = py::none());

  m.def(
      "evaluate",
      [](const std::string& rules_source, const std::string& scenarios_json, std::optional<std::string> profile_json,
         bool trace) {
        const Profile profile = profile_from(profile_json);
        const auto rules = sleec::normalize_all(sleec::parse_rule_set(rules_source));
        const auto scenarios = load_scenarios(scenarios_json);
        std::vector<BatchItem> items;
        {
          py::gil_scoped_release release;
          items = decide_batch(rules, scenarios, profile);
        }
        std::vector<std::string> lines;
        for (std::size_t i = 0; i < items.size(); ++i) {
          std::ostringstream out;
          write_jsonl(out, i, items[i], trace);
          std::string line = out.str();
          if (!line.empty() && line.back() == '\n') line.pop_back();
          lines.push_back(std::move(line));
        }
        return lines;
      },
      py::arg("rules_source"), py::arg("scenarios_json"), py::arg("profile_json") = py::none(),
      py::arg("trace") = false, "Decides each scenario; returns one JSON line per scenario.");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line interface in-process; returns (exit_code, stdout, stderr).");

  m.def("default_rule_base_json", [] { return serialize_rule_base(default_rule_base()); },
        "The built-in 81-row rule base as JSON.");
}
