#pragma once

#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "normfuzz/errors.hpp"

namespace normfuzz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Corners of a trapezoid, x1 <= x2 <= x3 <= x4. x1 = x2 = -inf or
/// x3 = x4 = +inf encode left and right shoulders.
struct TrapezoidCorners {
  double x1, x2, x3, x4;
  bool operator==(const TrapezoidCorners&) const = default;
};

/// Throws InvalidCorners unless the corners are ordered and not NaN.
void check_corners(const TrapezoidCorners& c);

/// max(min((x-x1)/(x2-x1), 1, (x4-x)/(x4-x3)), 0). A ramp with an infinite or
/// coincident pair of corners degenerates to a step.
double eval_trapezoid(double x, const TrapezoidCorners& c);

enum class AgeTerm { Young, Middle, Old };

/// Zadeh's age membership functions. Throws NegativeAge for x < 0.
double eval_age(double years, AgeTerm term);

struct Trapezoid {
  TrapezoidCorners corners;
  bool operator==(const Trapezoid&) const = default;
};
struct ZadehAge {
  AgeTerm term;
  bool operator==(const ZadehAge&) const = default;
};
/// Label-valued membership (e.g. a possibility table over named states).
struct Discrete {
  std::map<std::string, double> degrees;
  bool operator==(const Discrete&) const = default;
};
/// 1 for x >= threshold, else 0.
struct CrispThreshold {
  double threshold;
  bool operator==(const CrispThreshold&) const = default;
};

class MembershipFunction {
 public:
  using Shape = std::variant<Trapezoid, ZadehAge, Discrete, CrispThreshold>;

  /// Validates the shape (corner ordering, degrees in [0,1]).
  explicit MembershipFunction(Shape shape);

  static MembershipFunction trapezoid(double x1, double x2, double x3, double x4) {
    return MembershipFunction(Trapezoid{{x1, x2, x3, x4}});
  }
  static MembershipFunction age(AgeTerm term) { return MembershipFunction(ZadehAge{term}); }

  const Shape& shape() const { return shape_; }
  bool is_numeric() const { return !std::holds_alternative<Discrete>(shape_); }

  /// Numeric shapes only; a Discrete shape throws ConfigError.
  double operator()(double x) const;
  /// Discrete shapes only; unknown labels throw UnknownItem.
  double operator()(const std::string& label) const;

  bool operator==(const MembershipFunction&) const = default;

 private:
  Shape shape_;
};

struct Term {
  std::string label;
  MembershipFunction membership;
  bool operator==(const Term&) const = default;
};

class LinguisticVariable {
 public:
  /// Throws ConfigError if `terms` is empty or has a repeated label.
  LinguisticVariable(std::string name, std::string unit, std::vector<Term> terms);

  /// Three trapezoids sharing the two transition zones as opposing ramps:
  /// Low = (-inf,-inf,a,b), Medium = (a,b,c,d), High = (c,d,+inf,+inf).
  static LinguisticVariable from_bands(std::string name, std::string unit, std::pair<double, double> low_medium,
                                       std::pair<double, double> medium_high);

  const std::string& name() const { return name_; }
  const std::string& unit() const { return unit_; }
  const std::vector<Term>& terms() const { return terms_; }
  const MembershipFunction& term(const std::string& label) const;
  bool has_term(const std::string& label) const;

  bool operator==(const LinguisticVariable&) const = default;

 private:
  std::string name_;
  std::string unit_;
  std::vector<Term> terms_;
};

/// Term label -> degree, in the variable's term order.
using Fuzzified = std::vector<std::pair<std::string, double>>;

Fuzzified fuzzify(const LinguisticVariable& var, double x);

class PossibilityDistribution {
 public:
  PossibilityDistribution() = default;
  /// Throws ConfigError for degrees outside [0,1].
  explicit PossibilityDistribution(std::map<std::string, double> entries);

  const std::map<std::string, double>& entries() const { return entries_; }
  bool contains(const std::string& label) const { return entries_.count(label) > 0; }
  /// Throws UnknownItem.
  double at(const std::string& label) const;

  bool operator==(const PossibilityDistribution&) const = default;

 private:
  std::map<std::string, double> entries_;
};

/// Possibility of the union of `items`: the max of their degrees, 0 when empty.
double possibility_of_union(const PossibilityDistribution& dist, const std::set<std::string>& items);

std::string to_string(AgeTerm term);

}  // namespace normfuzz
