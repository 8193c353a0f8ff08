#include "normfuzz/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace normfuzz {

std::string format_degree(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::string format_exact(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidCorners: return "InvalidCorners";
    case ErrorCode::NegativeAge: return "NegativeAge";
    case ErrorCode::UnknownItem: return "UnknownItem";
    case ErrorCode::NoRuleFired: return "NoRuleFired";
    case ErrorCode::RuleBase: return "RuleBaseError";
    case ErrorCode::Config: return "ConfigError";
  }
  return "Error";
}

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

/// Minimal streaming writer; the caller controls key order.
class JsonLine {
 public:
  explicit JsonLine(std::ostream& out) : out_(out) {}

  JsonLine& open(char c) {
    comma();
    out_ << c;
    first_ = true;
    return *this;
  }
  JsonLine& close(char c) {
    out_ << c;
    first_ = false;
    return *this;
  }
  JsonLine& key(const std::string& k) {
    comma();
    out_ << quote(k) << ':';
    first_ = true;
    return *this;
  }
  JsonLine& raw(const std::string& v) {
    comma();
    out_ << v;
    return *this;
  }
  JsonLine& str(const std::string& v) { return raw(quote(v)); }
  JsonLine& boolean(bool v) { return raw(v ? "true" : "false"); }
  JsonLine& degree(double v) { return raw(format_degree(v)); }

 private:
  void comma() {
    if (!first_) out_ << ',';
    first_ = false;
  }

  std::ostream& out_;
  bool first_ = true;
};

template <std::size_t N, class Names>
void write_memberships(JsonLine& j, const char* name, const std::array<double, N>& degrees, const Names& terms) {
  j.key(name).open('{');
  for (std::size_t i = 0; i < N; ++i) j.key(to_string(terms[i])).degree(degrees[i]);
  j.close('}');
}

void write_dressing(JsonLine& j, const DressingResult& d) {
  j.open('{');
  j.key("dressed").boolean(d.dressed);
  j.key("step").str(to_string(d.decisive_step));
  j.key("accumulated_sum").degree(d.accumulated_sum);
  j.key("distinct_values").open('[');
  for (double v : d.distinct_values_used) j.degree(v);
  j.close(']');
  j.close('}');
}

void write_distress(JsonLine& j, const DefuzzResult& r) {
  j.open('{');
  j.key("d_star").degree(r.d_star);
  j.key("numerator").raw(format_exact(r.numerator));
  j.key("denominator").raw(format_exact(r.denominator));
  j.key("memberships").open('{');
  write_memberships(j, "age", r.memberships.age, kAgeTerms);
  write_memberships(j, "bp", r.memberships.bp, kLevels);
  write_memberships(j, "hr", r.memberships.hr, kLevels);
  write_memberships(j, "bt", r.memberships.bt, kLevels);
  j.close('}');
  j.key("firings").open('[');
  for (const auto& f : r.firings) {
    j.open('{');
    j.key("age").str(to_lower_name(f.rule.antecedent.age));
    j.key("bp").str(to_lower_name(f.rule.antecedent.bp));
    j.key("hr").str(to_lower_name(f.rule.antecedent.hr));
    j.key("bt").str(to_lower_name(f.rule.antecedent.bt));
    j.key("distress").str(to_lower_name(f.rule.distress));
    j.key("weight").degree(f.weight);
    j.key("centroid").degree(f.centroid);
    j.key("contribution").degree(f.contribution);
    j.close('}');
  }
  j.close(']');
  j.close('}');
}

std::string branch_label(const DecisionTrace& t) {
  return t.branch_taken ? "branch " + std::to_string(*t.branch_taken) : "default branch";
}

}  // namespace

void write_jsonl(std::ostream& out, std::size_t index, const BatchItem& item, bool with_trace) {
  JsonLine j(out);
  j.open('{');
  j.key("index").raw(std::to_string(index));
  if (!item.ok()) {
    j.key("error").str(error_code_name(*item.error_code));
    j.key("message").str(item.error);
    j.close('}');
    out << '\n';
    return;
  }
  const DecisionTrace& t = *item.trace;
  j.key("event").str(t.event);
  j.key("rule").str(t.rule);
  j.key("triggered").boolean(t.triggered);
  j.key("action").str(t.action);
  j.key("branch");
  if (t.branch_taken)
    j.raw(std::to_string(*t.branch_taken));
  else
    j.str("default");
  j.key("degraded").boolean(t.degraded);
  if (with_trace) {
    j.key("conditions").open('[');
    for (const auto& cv : t.condition_values) {
      j.open('{');
      j.key("atom").str(cv.condition.atom);
      j.key("negated").boolean(cv.condition.negated);
      j.key("value").boolean(cv.value);
      j.key("degree").degree(cv.degree);
      j.key("degraded").boolean(cv.degraded);
      j.close('}');
    }
    j.close(']');
    j.key("dressing");
    if (t.dressing)
      write_dressing(j, *t.dressing);
    else
      j.raw("null");
    j.key("distress");
    if (t.distress)
      write_distress(j, *t.distress);
    else if (t.no_rule_fired)
      j.str("no_rule_fired");
    else
      j.raw("null");
  }
  j.close('}');
  out << '\n';
}

void write_human(std::ostream& out, std::size_t index, const BatchItem& item, bool with_trace) {
  out << "scenario " << index << ": ";
  if (!item.ok()) {
    out << "error " << error_code_name(*item.error_code) << ": " << item.error << "\n";
    return;
  }
  const DecisionTrace& t = *item.trace;
  if (!t.triggered) {
    out << "not triggered (event " << t.event << ")\n";
    return;
  }
  out << t.action << " (rule " << t.rule << ", " << branch_label(t) << (t.degraded ? ", degraded" : "") << ")\n";
  if (!with_trace) return;

  for (const auto& cv : t.condition_values) {
    out << "  condition " << sleec::to_string(cv.condition) << " = " << (cv.value ? "true" : "false") << " (degree "
        << format_degree(cv.degree) << (cv.degraded ? ", no rule fired" : "") << ")\n";
  }
  if (t.dressing) {
    const auto& d = *t.dressing;
    out << "  dressing: " << (d.dressed ? "dressed" : "undressed") << " via " << to_string(d.decisive_step)
        << ", sum " << format_degree(d.accumulated_sum) << ", values [";
    for (std::size_t i = 0; i < d.distinct_values_used.size(); ++i)
      out << (i ? ", " : "") << format_degree(d.distinct_values_used[i]);
    out << "]\n";
  }
  if (t.no_rule_fired) out << "  distress: no rule fired\n";
  if (t.distress) {
    const auto& r = *t.distress;
    out << "  distress: d* = " << format_degree(r.d_star) << " = " << format_exact(r.numerator) << " / "
        << format_exact(r.denominator) << "\n";
    auto row = [&](const char* name, const auto& degrees, const auto& terms) {
      out << "    " << name << ":";
      for (std::size_t i = 0; i < degrees.size(); ++i)
        out << " " << to_string(terms[i]) << "=" << format_degree(degrees[i]);
      out << "\n";
    };
    row("age", r.memberships.age, kAgeTerms);
    row("bp", r.memberships.bp, kLevels);
    row("hr", r.memberships.hr, kLevels);
    row("bt", r.memberships.bt, kLevels);
    for (const auto& f : r.firings) {
      if (f.weight == 0) continue;
      const auto& a = f.rule.antecedent;
      out << "    fired (" << to_lower_name(a.age) << ", " << to_lower_name(a.bp) << ", " << to_lower_name(a.hr)
          << ", " << to_lower_name(a.bt) << ") -> " << to_lower_name(f.rule.distress)
          << "  w=" << format_degree(f.weight) << " c=" << format_degree(f.centroid)
          << " w*c=" << format_degree(f.contribution) << "\n";
    }
  }
}

std::string format_table_row(double x, const Fuzzified& degrees) {
  std::ostringstream out;
  out << format_exact(x) << ":";
  char buf[32];
  for (const auto& [label, d] : degrees) {
    std::snprintf(buf, sizeof buf, "%.3f", d);
    out << " " << label << "=" << buf;
  }
  return out.str();
}

}  // namespace normfuzz
