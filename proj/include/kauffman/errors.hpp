#pragma once

#include <stdexcept>
#include <string>

namespace kauffman {

enum class ErrorKind {
  Parse,
  Range,
  NonPlanar,
  BadIncidence,
  WideEdgeCrossing,
  OddVertexCount,
  BadEdge,
  DivisionFailure,
  Internal,
  MixedArity,
  MissingWrithe,
  CeilingExceeded,
  CacheCorrupt,
  InvalidGraph,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` says which contract failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::NonPlanar: return "NonPlanar";
    case ErrorKind::BadIncidence: return "BadIncidence";
    case ErrorKind::WideEdgeCrossing: return "WideEdgeCrossing";
    case ErrorKind::OddVertexCount: return "OddVertexCount";
    case ErrorKind::BadEdge: return "BadEdge";
    case ErrorKind::DivisionFailure: return "DivisionFailure";
    case ErrorKind::Internal: return "InternalError";
    case ErrorKind::MixedArity: return "MixedArity";
    case ErrorKind::MissingWrithe: return "MissingWrithe";
    case ErrorKind::CeilingExceeded: return "CeilingExceeded";
    case ErrorKind::CacheCorrupt: return "CacheCorrupt";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
  }
  return "Error";
}

}  // namespace kauffman
