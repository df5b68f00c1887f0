#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetnet {

enum class ErrorKind {
  ParseError,
  MissingField,
  UnknownKey,
  BadReference,
  OutOfRange,
  DegenerateScenario,
  InvalidMode,
  TooLarge,
  NoFeasibleUser,
  UndefinedUtility,
  EmptySamples,
  NonPositiveSample,
  Io,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type. `key` names the
// offending config key or object when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string key, const std::string& detail = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }

 private:
  ErrorKind kind_;
  std::string key_;
};

}  // namespace hetnet
