#include "normfuzz/errors.hpp"

#include <sstream>

namespace normfuzz {

namespace {

std::string format_parse_error(const SourcePosition& pos, const std::string& message,
                               const std::vector<std::string>& expected) {
  std::ostringstream out;
  out << pos.line << ":" << pos.column << ": " << message;
  if (!expected.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out << (i + 1 == expected.size() ? " or " : ", ");
      out << expected[i];
    }
    out << ")";
  }
  return out.str();
}

const char* rule_base_kind_name(RuleBaseErrorKind kind) {
  switch (kind) {
    case RuleBaseErrorKind::MissingCombination: return "MissingCombination";
    case RuleBaseErrorKind::DuplicateCombination: return "DuplicateCombination";
    case RuleBaseErrorKind::BadCentroid: return "BadCentroid";
    case RuleBaseErrorKind::BadFormat: return "BadFormat";
  }
  return "RuleBaseError";
}

}  // namespace

ParseError::ParseError(SourcePosition pos, std::string message, std::vector<std::string> expected)
    : Error(ErrorCode::Parse, format_parse_error(pos, message, expected)),
      pos_(pos),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

NegativeAge::NegativeAge(double age)
    : Error(ErrorCode::NegativeAge, "age must be nonnegative, got " + std::to_string(age)) {}

UnknownItem::UnknownItem(std::string item)
    : Error(ErrorCode::UnknownItem, "unknown item '" + item + "'"), item_(std::move(item)) {}

RuleBaseError::RuleBaseError(RuleBaseErrorKind kind, const std::string& detail)
    : Error(ErrorCode::RuleBase, std::string(rule_base_kind_name(kind)) + ": " + detail), kind_(kind) {}

}  // namespace normfuzz
