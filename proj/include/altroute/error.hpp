#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace altroute {

enum class ErrorCode {
  InvalidInput,
  Parse,
  EmptyNetwork,
  UnknownVertex,
  NoRoute,
  MismatchedTrees,
  VersionMismatch,
  CorruptFile,
  Io,
  UndefinedSimilarity,
  EmptyCohort,
  IncompleteScores,
  OutOfArea,
  SameEndpoints,
  UnknownQuery,
  UnknownEngine,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure the library reports. The code is stable
/// and is what the CLI and HTTP layers map to exit codes / status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace altroute
