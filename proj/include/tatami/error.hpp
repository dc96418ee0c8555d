#pragma once

#include <stdexcept>
#include <string>

namespace tatami {

enum class ErrorCode {
  EmptyRegion,
  IllegalPlacement,
  UnknownTile,
  IncompleteCovering,
  NonRectangular,
  MalformedPuzzle,
  InconsistentConstraints,
  RegionTooLarge,
  BudgetExceeded,
  SyntaxError,
  SchemaError,
  UnknownPuzzle,
  SessionNotFound,
  NotYourTurn,
  PuzzleComplete,
  HintUnavailable,
  RemovalForbidden,
  KindNotAllowed,
  WrongMode,
  BadRequest,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::IllegalPlacement: return "IllegalPlacement";
    case ErrorCode::UnknownTile: return "UnknownTile";
    case ErrorCode::IncompleteCovering: return "IncompleteCovering";
    case ErrorCode::NonRectangular: return "NonRectangular";
    case ErrorCode::MalformedPuzzle: return "MalformedPuzzle";
    case ErrorCode::InconsistentConstraints: return "InconsistentConstraints";
    case ErrorCode::RegionTooLarge: return "RegionTooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownPuzzle: return "UnknownPuzzle";
    case ErrorCode::SessionNotFound: return "SessionNotFound";
    case ErrorCode::NotYourTurn: return "NotYourTurn";
    case ErrorCode::PuzzleComplete: return "PuzzleComplete";
    case ErrorCode::HintUnavailable: return "HintUnavailable";
    case ErrorCode::RemovalForbidden: return "RemovalForbidden";
    case ErrorCode::KindNotAllowed: return "KindNotAllowed";
    case ErrorCode::WrongMode: return "WrongMode";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, const std::string& message)
      : Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace tatami
