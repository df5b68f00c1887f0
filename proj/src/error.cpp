#include "hetnet/error.hpp"

namespace hetnet {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingField: return "MissingField";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::BadReference: return "BadReference";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateScenario: return "DegenerateScenario";
    case ErrorKind::InvalidMode: return "InvalidMode";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NoFeasibleUser: return "NoFeasibleUser";
    case ErrorKind::UndefinedUtility: return "UndefinedUtility";
    case ErrorKind::EmptySamples: return "EmptySamples";
    case ErrorKind::NonPositiveSample: return "NonPositiveSample";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& key, const std::string& detail) {
  std::string msg(to_string(kind));
  if (!key.empty()) msg += "(" + key + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorKind kind, std::string key, const std::string& detail)
    : std::runtime_error(compose(kind, key, detail)), kind_(kind), key_(std::move(key)) {}

}  // namespace hetnet
