#include "gdist/error.hpp"

namespace gdist {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return "ParseError";
    case ErrorCode::NonPositiveWeight:
      return "NonPositiveWeight";
    case ErrorCode::DuplicateEdge:
      return "DuplicateEdge";
    case ErrorCode::SelfLoop:
      return "SelfLoop";
    case ErrorCode::IsolatedNode:
      return "IsolatedNode";
    case ErrorCode::Disconnected:
      return "Disconnected";
    case ErrorCode::ParamOutOfRange:
      return "ParamOutOfRange";
    case ErrorCode::GraphTooLarge:
      return "GraphTooLarge";
    case ErrorCode::BetaTooLarge:
      return "BetaTooLarge";
    case ErrorCode::SingularSystem:
      return "SingularSystem";
    case ErrorCode::UnderflowZ:
      return "UnderflowZ";
    case ErrorCode::SolverNotConverged:
      return "SolverNotConverged";
    case ErrorCode::EnsembleTooLarge:
      return "EnsembleTooLarge";
    case ErrorCode::DegenerateEnsemble:
      return "DegenerateEnsemble";
    case ErrorCode::DegenerateSigma:
      return "DegenerateSigma";
    case ErrorCode::EmptyClusterUnrecoverable:
      return "EmptyClusterUnrecoverable";
    case ErrorCode::CouldNotConnect:
      return "CouldNotConnect";
    case ErrorCode::IoError:
      return "IoError";
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::BetaTooLarge:
    case ErrorCode::SingularSystem:
    case ErrorCode::UnderflowZ:
    case ErrorCode::SolverNotConverged:
    case ErrorCode::DegenerateSigma:
    case ErrorCode::EmptyClusterUnrecoverable:
      return true;
    default:
      return false;
  }
}

}  // namespace gdist
