#include "normfuzz/dressing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace normfuzz {

GarmentProfile::GarmentProfile(PossibilityDistribution categories, std::map<std::string, std::string> garments,
                               double threshold)
    : categories_(std::move(categories)), garments_(std::move(garments)), threshold_(threshold) {
  if (!(threshold_ > 0.0 && threshold_ <= 1.0))
    throw ConfigError("dressing threshold must lie in (0,1], got " + std::to_string(threshold_));
  for (const auto& [garment, category] : garments_) {
    if (!categories_.contains(category))
      throw ConfigError("garment '" + garment + "' refers to unknown category '" + category + "'");
  }
}

GarmentProfile GarmentProfile::with_threshold(double threshold) const {
  return GarmentProfile(categories_, garments_, threshold);
}

const std::string& GarmentProfile::category_of(const std::string& label) const {
  if (auto it = garments_.find(label); it != garments_.end()) return it->second;
  if (auto it = categories_.entries().find(label); it != categories_.entries().end()) return it->first;
  throw UnknownItem(label);
}

std::vector<double> worn_category_values(const GarmentProfile& profile, const std::set<std::string>& worn) {
  std::set<std::string> categories;
  for (const auto& label : worn) categories.insert(profile.category_of(label));
  std::vector<double> values;
  values.reserve(categories.size());
  for (const auto& c : categories) values.push_back(profile.categories().at(c));
  return values;
}

DressingResult is_dressed(const GarmentProfile& profile, const std::set<std::string>& worn) {
  std::vector<double> values = worn_category_values(profile, worn);
  std::sort(values.begin(), values.end(), std::greater<>());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  const double threshold = profile.threshold();
  DressingResult result;
  if (!values.empty() && values.front() >= threshold) {
    result.dressed = true;
    result.accumulated_sum = values.front();
    result.distinct_values_used = {values.front()};
    result.decisive_step = DecisiveStep::SingleMax;
    return result;
  }
  for (double v : values) {
    result.accumulated_sum += v;
    result.distinct_values_used.push_back(v);
    if (result.accumulated_sum >= threshold) {
      result.dressed = true;
      result.decisive_step = DecisiveStep::AccumulatedSum;
      return result;
    }
  }
  result.decisive_step = DecisiveStep::Exhausted;
  return result;
}

std::string to_string(DecisiveStep step) {
  switch (step) {
    case DecisiveStep::SingleMax: return "single_max";
    case DecisiveStep::AccumulatedSum: return "accumulated_sum";
    case DecisiveStep::Exhausted: return "exhausted";
  }
  return "?";
}

}  // namespace normfuzz
