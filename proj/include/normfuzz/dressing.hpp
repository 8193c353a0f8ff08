#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "normfuzz/fuzzy_core.hpp"

namespace normfuzz {

/// Category possibilities plus the garment -> category assignment. A worn
/// label that is not a listed garment is looked up as a category name.
class GarmentProfile {
 public:
  static constexpr double kDefaultThreshold = 0.8;

  /// Throws ConfigError if threshold is outside (0,1] or a garment names an
  /// unknown category.
  GarmentProfile(PossibilityDistribution categories, std::map<std::string, std::string> garments,
                 double threshold = kDefaultThreshold);

  const PossibilityDistribution& categories() const { return categories_; }
  const std::map<std::string, std::string>& garments() const { return garments_; }
  double threshold() const { return threshold_; }
  GarmentProfile with_threshold(double threshold) const;

  /// Category that `label` contributes to. Throws UnknownItem.
  const std::string& category_of(const std::string& label) const;

  bool operator==(const GarmentProfile&) const = default;

 private:
  PossibilityDistribution categories_;
  std::map<std::string, std::string> garments_;
  double threshold_;
};

enum class DecisiveStep { SingleMax, AccumulatedSum, Exhausted };

struct DressingResult {
  bool dressed = false;
  /// Sum of the distinct values consumed; equals the max for SingleMax.
  double accumulated_sum = 0.0;
  std::vector<double> distinct_values_used;  // non-increasing
  DecisiveStep decisive_step = DecisiveStep::Exhausted;

  /// The degree reported alongside the boolean outcome.
  double degree() const { return accumulated_sum; }
};

/// Sorts the distinct category possibilities of the worn garments in
/// non-increasing order; dressed when the largest reaches the threshold or
/// the running sum of distinct values does. Repeated categories and repeated
/// values count once.
DressingResult is_dressed(const GarmentProfile& profile, const std::set<std::string>& worn);

/// Distinct category possibilities of `worn` (one per category, unsorted).
std::vector<double> worn_category_values(const GarmentProfile& profile, const std::set<std::string>& worn);

std::string to_string(DecisiveStep step);

}  // namespace normfuzz
