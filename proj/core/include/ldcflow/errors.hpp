#pragma once

#include <stdexcept>
#include <string>

namespace ldc {

enum class ErrorCode {
  Parse,
  Io,
  InvalidNetwork,
  UnknownEdge,
  EdgeOverlap,
  RoleConflict,
  MalformedProgram,
  NotFixedSusceptance,
  NotATree,
  TooLarge,
  TooManyFactsEdges,
  NonpositiveX,
  InvalidInstance,
  NotACertificate,
  NotOptimal,
  DecodingFailed,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library. The code tells callers (and the CLI's
// exit-code mapping) which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ldc
