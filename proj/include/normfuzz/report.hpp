#pragma once

#include <ostream>
#include <string>

#include "normfuzz/fuzzy_core.hpp"
#include "normfuzz/policy.hpp"

namespace normfuzz {

/// Fixed-point, 6 decimals.
std::string format_degree(double value);
/// Shortest round-trippable representation (up to 17 significant digits).
std::string format_exact(double value);

std::string error_code_name(ErrorCode code);

/// One JSON object on one line. Keys appear in a fixed order; degrees use
/// format_degree, the defuzzification numerator and denominator format_exact.
void write_jsonl(std::ostream& out, std::size_t index, const BatchItem& item, bool with_trace);

void write_human(std::ostream& out, std::size_t index, const BatchItem& item, bool with_trace);

/// "25: Young=1.000 Middle=0.000 Old=0.000"
std::string format_table_row(double x, const Fuzzified& degrees);

}  // namespace normfuzz
