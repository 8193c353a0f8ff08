#include "normfuzz/fuzzy_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

namespace normfuzz {

void check_corners(const TrapezoidCorners& c) {
  const bool nan = std::isnan(c.x1) || std::isnan(c.x2) || std::isnan(c.x3) || std::isnan(c.x4);
  if (nan || !(c.x1 <= c.x2 && c.x2 <= c.x3 && c.x3 <= c.x4)) {
    std::ostringstream msg;
    msg << "trapezoid corners must satisfy x1 <= x2 <= x3 <= x4, got (" << c.x1 << ", " << c.x2 << ", " << c.x3
        << ", " << c.x4 << ")";
    throw InvalidCorners(msg.str());
  }
}

double eval_trapezoid(double x, const TrapezoidCorners& c) {
  check_corners(c);
  if (std::isnan(x)) throw ConfigError("membership input is NaN");
  double rise;
  if (std::isinf(c.x1))
    rise = 1.0;
  else if (c.x2 == c.x1)
    rise = x >= c.x1 ? 1.0 : 0.0;
  else
    rise = (x - c.x1) / (c.x2 - c.x1);

  double fall;
  if (std::isinf(c.x4))
    fall = 1.0;
  else if (c.x4 == c.x3)
    fall = x <= c.x4 ? 1.0 : 0.0;
  else
    fall = (c.x4 - x) / (c.x4 - c.x3);

  return std::max(std::min({rise, 1.0, fall}), 0.0);
}

double eval_age(double x, AgeTerm term) {
  if (std::isnan(x)) throw ConfigError("age is NaN");
  if (x < 0) throw NegativeAge(x);
  switch (term) {
    case AgeTerm::Young:
      if (x <= 25) return 1.0;
      return 1.0 / (1.0 + std::pow((x - 25.0) / 5.0, 2.0));
    case AgeTerm::Middle:
      if (x < 35) return 0.0;
      if (x < 45) return 1.0 / (1.0 + std::pow((x - 45.0) / 4.0, 4.0));
      return 1.0 / (1.0 + std::pow((x - 45.0) / 5.0, 2.0));
    case AgeTerm::Old:
      if (x <= 50) return 0.0;
      return 1.0 / (1.0 + std::pow((x - 50.0) / 5.0, -2.0));
  }
  return 0.0;
}

std::string to_string(AgeTerm term) {
  switch (term) {
    case AgeTerm::Young: return "Young";
    case AgeTerm::Middle: return "Middle";
    case AgeTerm::Old: return "Old";
  }
  return "?";
}

namespace {

void check_degree(double d, const std::string& what) {
  if (!(d >= 0.0 && d <= 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in [0,1], got " << d;
    throw ConfigError(msg.str());
  }
}

}  // namespace

MembershipFunction::MembershipFunction(Shape shape) : shape_(std::move(shape)) {
  if (const auto* t = std::get_if<Trapezoid>(&shape_)) check_corners(t->corners);
  if (const auto* d = std::get_if<Discrete>(&shape_)) {
    for (const auto& [label, degree] : d->degrees) check_degree(degree, "degree of '" + label + "'");
  }
  if (const auto* c = std::get_if<CrispThreshold>(&shape_)) {
    if (std::isnan(c->threshold)) throw ConfigError("crisp threshold is NaN");
  }
}

double MembershipFunction::operator()(double x) const {
  return std::visit(
      [x](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Trapezoid>) {
          return eval_trapezoid(x, s.corners);
        } else if constexpr (std::is_same_v<S, ZadehAge>) {
          return eval_age(x, s.term);
        } else if constexpr (std::is_same_v<S, CrispThreshold>) {
          if (std::isnan(x)) throw ConfigError("membership input is NaN");
          return x >= s.threshold ? 1.0 : 0.0;
        } else {
          throw ConfigError("discrete membership function evaluated on a numeric input");
        }
      },
      shape_);
}

double MembershipFunction::operator()(const std::string& label) const {
  const auto* d = std::get_if<Discrete>(&shape_);
  if (!d) throw ConfigError("numeric membership function evaluated on label '" + label + "'");
  auto it = d->degrees.find(label);
  if (it == d->degrees.end()) throw UnknownItem(label);
  return it->second;
}

LinguisticVariable::LinguisticVariable(std::string name, std::string unit, std::vector<Term> terms)
    : name_(std::move(name)), unit_(std::move(unit)), terms_(std::move(terms)) {
  if (terms_.empty()) throw ConfigError("linguistic variable '" + name_ + "' has no terms");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[i].label == terms_[j].label)
        throw ConfigError("linguistic variable '" + name_ + "' repeats term '" + terms_[i].label + "'");
    }
  }
}

LinguisticVariable LinguisticVariable::from_bands(std::string name, std::string unit,
                                                  std::pair<double, double> low_medium,
                                                  std::pair<double, double> medium_high) {
  auto [a, b] = low_medium;
  auto [c, d] = medium_high;
  std::vector<Term> terms{
      {"Low", MembershipFunction::trapezoid(-kInf, -kInf, a, b)},
      {"Medium", MembershipFunction::trapezoid(a, b, c, d)},
      {"High", MembershipFunction::trapezoid(c, d, kInf, kInf)},
  };
  return LinguisticVariable(std::move(name), std::move(unit), std::move(terms));
}

const MembershipFunction& LinguisticVariable::term(const std::string& label) const {
  for (const auto& t : terms_) {
    if (t.label == label) return t.membership;
  }
  throw ConfigError("linguistic variable '" + name_ + "' has no term '" + label + "'");
}

bool LinguisticVariable::has_term(const std::string& label) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.label == label; });
}

Fuzzified fuzzify(const LinguisticVariable& var, double x) {
  Fuzzified out;
  out.reserve(var.terms().size());
  for (const auto& t : var.terms()) out.emplace_back(t.label, t.membership(x));
  return out;
}

PossibilityDistribution::PossibilityDistribution(std::map<std::string, double> entries)
    : entries_(std::move(entries)) {
  for (const auto& [label, degree] : entries_) check_degree(degree, "possibility of '" + label + "'");
}

double PossibilityDistribution::at(const std::string& label) const {
  auto it = entries_.find(label);
  if (it == entries_.end()) throw UnknownItem(label);
  return it->second;
}

double possibility_of_union(const PossibilityDistribution& dist, const std::set<std::string>& items) {
  double best = 0.0;
  for (const auto& item : items) best = std::max(best, dist.at(item));
  return best;
}

}  // namespace normfuzz
