#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frechet {

enum class ErrorKind {
  InvalidArgument,
  PointNotInSpace,
  PointAtBase,
  NonUniqueProjection,
  IncompatibleSpace,
  EmptySample,
  EmptyRegion,
  UnboundedRegion,
  NothingToFit,
  AllZeroLoss,
  InvalidCenter,
  TooFewReplications,
  UnknownLemma,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PointNotInSpace: return "PointNotInSpace";
    case ErrorKind::PointAtBase: return "PointAtBase";
    case ErrorKind::NonUniqueProjection: return "NonUniqueProjection";
    case ErrorKind::IncompatibleSpace: return "IncompatibleSpace";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::UnboundedRegion: return "UnboundedRegion";
    case ErrorKind::NothingToFit: return "NothingToFit";
    case ErrorKind::AllZeroLoss: return "AllZeroLoss";
    case ErrorKind::InvalidCenter: return "InvalidCenter";
    case ErrorKind::TooFewReplications: return "TooFewReplications";
    case ErrorKind::UnknownLemma: return "UnknownLemma";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) fail(kind, what);
}

}  // namespace frechet
