#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace normfuzz {

enum class ErrorCode {
  Parse,
  InvalidCorners,
  NegativeAge,
  UnknownItem,
  NoRuleFired,
  RuleBase,
  Config,
};

/// Base of every error thrown by the library. `code()` lets callers (the CLI
/// in particular) map failures to exit codes without RTTI chains.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct SourcePosition {
  int line = 1;
  int column = 1;
  bool operator==(const SourcePosition&) const = default;
};

class ParseError : public Error {
 public:
  ParseError(SourcePosition pos, std::string message, std::vector<std::string> expected = {});
  const SourcePosition& position() const noexcept { return pos_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& message() const noexcept { return message_; }

 private:
  SourcePosition pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

class InvalidCorners : public Error {
 public:
  explicit InvalidCorners(const std::string& what) : Error(ErrorCode::InvalidCorners, what) {}
};

class NegativeAge : public Error {
 public:
  explicit NegativeAge(double age);
};

class UnknownItem : public Error {
 public:
  explicit UnknownItem(std::string item);
  const std::string& item() const noexcept { return item_; }

 private:
  std::string item_;
};

class NoRuleFired : public Error {
 public:
  NoRuleFired() : Error(ErrorCode::NoRuleFired, "no fuzzy rule fired (sum of firing weights is 0)") {}
};

enum class RuleBaseErrorKind { MissingCombination, DuplicateCombination, BadCentroid, BadFormat };

class RuleBaseError : public Error {
 public:
  RuleBaseError(RuleBaseErrorKind kind, const std::string& detail);
  RuleBaseErrorKind kind() const noexcept { return kind_; }

 private:
  RuleBaseErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::Config, what) {}
};

}  // namespace normfuzz
