#pragma once

// JSON file formats for profiles and scenarios.
//
// Profile (every section optional; a missing one falls back to the default):
//
//   {
//     "vocabulary": { "events": [str], "actions": [str] },
//     "garments": { "threshold": num, "categories": { str: num }, "items": { str: str } },
//     "variables": {
//       "age" | "bp" | "hr" | "bt": {
//         "unit": str,
//         "bands": { "low_medium": [num, num], "medium_high": [num, num] }
//         -- or --
//         "terms": [ { "label": str, "shape": "trapezoid", "corners": [num|"-inf"|"inf", x4] }
//                  | { "label": str, "shape": "zadeh_young" | "zadeh_middle" | "zadeh_old" }
//                  | { "label": str, "shape": "crisp_threshold", "threshold": num }
//                  | { "label": str, "shape": "discrete", "degrees": { str: num } } ]
//       }
//     },
//     "distress_threshold": num,
//     "rule_base": { "centroids": {...}, "rules": [...] },
//     "bindings": { str: { "kind": "dressing" | "distress_above" | "constant", ... } }
//   }
//
// Scenario file: one object or an array of objects
//   { "event": str, "worn": [str], "vitals": { "age": num, "bp": num, "hr": num, "bt": num } }

#include <string>
#include <string_view>
#include <vector>

#include "normfuzz/policy.hpp"

namespace normfuzz {

/// Garment possibilities of the clothing example, T = 0.8, Zadeh age terms,
/// band-derived BP/HR/BT terms, the generated rule base, threshold 0.6, and
/// the `dressed` / `highly_distressed` bindings.
Profile default_profile();

GarmentProfile default_garment_profile();
DistressVariables default_distress_variables();

/// Throws ConfigError (or RuleBaseError for the embedded rule base).
Profile load_profile(std::string_view json_text);

/// Throws ConfigError.
std::vector<Scenario> load_scenarios(std::string_view json_text);

std::string read_text_file(const std::string& path);

}  // namespace normfuzz
