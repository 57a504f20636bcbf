#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gdist {

enum class ErrorCode {
  ParseError,
  NonPositiveWeight,
  DuplicateEdge,
  SelfLoop,
  IsolatedNode,
  Disconnected,
  ParamOutOfRange,
  GraphTooLarge,
  BetaTooLarge,
  SingularSystem,
  UnderflowZ,
  SolverNotConverged,
  EnsembleTooLarge,
  DegenerateEnsemble,
  DegenerateSigma,
  EmptyClusterUnrecoverable,
  CouldNotConnect,
  IoError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Numerical failures map to CLI exit code 3, everything else to 2.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace gdist
