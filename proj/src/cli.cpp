#include "normfuzz/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>

#include "CLI11.hpp"
#include "normfuzz/profile_io.hpp"
#include "normfuzz/report.hpp"
#include "normfuzz/sleec_dsl.hpp"

namespace normfuzz::cli {

namespace {

struct Options {
  std::string rules_path;
  std::string profile_path;
  std::string scenario_path;
  std::string format = "human";
  bool trace = false;
  std::optional<double> distress_threshold;
  std::optional<double> dressing_threshold;

  std::string variable;
  std::optional<double> from, to, step;
};

Profile resolve_profile(const Options& opt) {
  std::string path = opt.profile_path;
  if (path.empty()) {
    if (const char* env = std::getenv("NORMFUZZ_PROFILE"); env && *env) path = env;
  }
  Profile profile = path.empty() ? default_profile() : load_profile(read_text_file(path));
  if (opt.dressing_threshold) profile.garments = profile.garments.with_threshold(*opt.dressing_threshold);
  if (opt.distress_threshold) {
    profile.distress_threshold = *opt.distress_threshold;
    // the override wins over thresholds pinned on individual bindings
    for (auto& [name, spec] : profile.bindings) {
      if (auto* d = std::get_if<DistressAboveThreshold>(&spec)) d->threshold.reset();
    }
  }
  profile.validate();
  return profile;
}

std::vector<sleec::NormalizedRule> load_rules(const std::string& path) {
  const std::string source = read_text_file(path);
  try {
    return sleec::normalize_all(sleec::parse_rule_set(source));
  } catch (const ParseError& e) {
    throw ConfigError(path + ":" + e.what());
  }
}

void print_diagnostics(const sleec::ValidationReport& report, std::ostream& err) {
  for (const auto& e : report.errors) err << "error: " << sleec::to_string(e) << "\n";
  for (const auto& w : report.warnings) {
    err << "warning: trigger '" << w.trigger << "' is shared by rules";
    for (const auto& r : w.rules) err << " " << r;
    err << " (the first in file order is used)\n";
  }
}

int cmd_check(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto rules = load_rules(opt.rules_path);
  const Profile profile = resolve_profile(opt);
  for (const auto& r : rules) out << sleec::pretty_print(r);
  const auto report = sleec::validate(rules, profile.vocabulary());
  print_diagnostics(report, err);
  out << rules.size() << (rules.size() == 1 ? " rule" : " rules") << ", " << report.errors.size()
      << (report.errors.size() == 1 ? " error" : " errors") << ", " << report.warnings.size()
      << (report.warnings.size() == 1 ? " warning" : " warnings") << "\n";
  return report.ok() ? kSuccess : kStaticError;
}

int cmd_eval(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto rules = load_rules(opt.rules_path);
  const Profile profile = resolve_profile(opt);
  const auto report = sleec::validate(rules, profile.vocabulary());
  if (!report.ok()) {
    print_diagnostics(report, err);
    return kStaticError;
  }
  const auto scenarios = load_scenarios(read_text_file(opt.scenario_path));
  const auto results = decide_batch(rules, scenarios, profile);

  int status = kSuccess;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (opt.format == "jsonl")
      write_jsonl(out, i, results[i], opt.trace);
    else
      write_human(out, i, results[i], opt.trace);
    if (!results[i].ok()) {
      err << "error: scenario " << i << ": " << error_code_name(*results[i].error_code) << ": "
          << results[i].error << "\n";
      status = kRuntimeError;
    }
  }
  return status;
}

struct Grid {
  double from, to, step;
};

Grid default_grid(const std::string& variable) {
  if (variable == "age") return {0, 100, 5};
  if (variable == "bp") return {60, 200, 10};
  if (variable == "hr") return {40, 220, 10};
  return {34, 41, 0.5};
}

int cmd_table(const Options& opt, std::ostream& out, std::ostream& err) {
  const Profile profile = resolve_profile(opt);
  if (opt.variable == "garments") {
    const auto& g = profile.garments;
    out << "threshold: " << format_degree(g.threshold()) << "\n";
    for (const auto& [category, poss] : g.categories().entries()) {
      out << category << ": " << format_degree(poss) << " (";
      bool first = true;
      for (const auto& [garment, c] : g.garments()) {
        if (c != category) continue;
        out << (first ? "" : ", ") << garment;
        first = false;
      }
      out << ")\n";
    }
    return kSuccess;
  }

  const LinguisticVariable* var = nullptr;
  if (opt.variable == "age") var = &profile.variables.age;
  if (opt.variable == "bp") var = &profile.variables.bp;
  if (opt.variable == "hr") var = &profile.variables.hr;
  if (opt.variable == "bt") var = &profile.variables.bt;
  if (!var) {
    err << "error: unknown variable '" << opt.variable << "' (expected age, bp, hr, bt or garments)\n";
    return kStaticError;
  }
  Grid grid = default_grid(opt.variable);
  if (opt.from) grid.from = *opt.from;
  if (opt.to) grid.to = *opt.to;
  if (opt.step) grid.step = *opt.step;
  if (!(grid.step > 0) || !(grid.from <= grid.to) || !std::isfinite(grid.from) || !std::isfinite(grid.to)) {
    err << "error: the grid needs from <= to and step > 0\n";
    return kStaticError;
  }
  out << var->name() << (var->unit().empty() ? "" : " (" + var->unit() + ")") << "\n";
  const auto count = static_cast<long>(std::floor((grid.to - grid.from) / grid.step + 1e-9));
  for (long i = 0; i <= count; ++i) {
    const double x = grid.from + static_cast<double>(i) * grid.step;
    out << format_table_row(x, fuzzify(*var, x)) << "\n";
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normative rule compiler and fuzzy decision engine", "normfuzz"};
  app.require_subcommand(1);
  Options opt;

  auto add_profile = [&](CLI::App* cmd) {
    cmd->add_option("--profile", opt.profile_path, "Profile JSON (falls back to $NORMFUZZ_PROFILE, then the built-in default)");
  };
  auto unit_interval = [](bool include_one) {
    return CLI::Validator(
        [include_one](std::string& text) -> std::string {
          double v = 0;
          try {
            std::size_t used = 0;
            v = std::stod(text, &used);
            if (used != text.size()) return "not a number: " + text;
          } catch (const std::exception&) {
            return "not a number: " + text;
          }
          const bool ok = v > 0.0 && (include_one ? v <= 1.0 : v < 1.0);
          return ok ? std::string() : text + " is outside " + (include_one ? "(0,1]" : "(0,1)");
        },
        include_one ? "in (0,1]" : "in (0,1)");
  };
  auto add_thresholds = [&](CLI::App* cmd) {
    cmd->add_option("--distress-threshold", opt.distress_threshold, "Override the distress threshold")
        ->check(unit_interval(false));
    cmd->add_option("--dressing-threshold", opt.dressing_threshold, "Override the dressing threshold T")
        ->check(unit_interval(true));
  };

  auto* check = app.add_subcommand("check", "Parse, normalize and link a rule file");
  check->add_option("rules", opt.rules_path, "Rule file (.sleec)")->required();
  add_profile(check);

  auto* eval = app.add_subcommand("eval", "Evaluate scenarios against a rule file");
  eval->add_option("rules", opt.rules_path, "Rule file (.sleec)")->required();
  eval->add_option("--scenario", opt.scenario_path, "Scenario JSON (object or array)")->required();
  add_profile(eval);
  eval->add_flag("--trace", opt.trace, "Include the full decision trace");
  eval->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"human", "jsonl"}));
  add_thresholds(eval);

  auto* table = app.add_subcommand("table", "Tabulate the membership degrees of a variable");
  table->add_option("variable", opt.variable, "age, bp, hr, bt or garments")->required();
  add_profile(table);
  table->add_option("--from", opt.from, "Grid start");
  table->add_option("--to", opt.to, "Grid end (inclusive)");
  table->add_option("--step", opt.step, "Grid step");
  add_thresholds(table);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kStaticError;
  }

  try {
    if (check->parsed()) return cmd_check(opt, out, err);
    if (eval->parsed()) return cmd_eval(opt, out, err);
    return cmd_table(opt, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kStaticError;
  }
}

}  // namespace normfuzz::cli
