#pragma once

#include <stdexcept>
#include <string>

namespace topraag {

enum class ErrorCode {
  DuplicateVertex,
  SelfLoop,
  UnknownEndpoint,
  LabelClash,
  NotInDomain,
  NotShrinkingModel,
  InvalidModel,
  UnknownGenerator,
  GraphMismatch,
  NotAJoinFactor,
  WordTooLong,
  RegimeMismatch,
  DisconnectedGraph,
  RelationViolation,
  ResourceCap,
  InfiniteStabiliser,
  EmptyWindow,
  NoInteriorVertices,
  NonClosedComplex,
  ParseError,
  Overflow
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::LabelClash: return "LabelClash";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::NotShrinkingModel: return "NotShrinkingModel";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::GraphMismatch: return "GraphMismatch";
    case ErrorCode::NotAJoinFactor: return "NotAJoinFactor";
    case ErrorCode::WordTooLong: return "WordTooLong";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::ResourceCap: return "ResourceCap";
    case ErrorCode::InfiniteStabiliser: return "InfiniteStabiliser";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::NoInteriorVertices: return "NoInteriorVertices";
    case ErrorCode::NonClosedComplex: return "NonClosedComplex";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode c, const std::string& what) { throw Error(c, what); }

}  // namespace topraag
