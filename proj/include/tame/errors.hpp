#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tame {

enum class ErrorKind {
  NonInvertible,
  InfiniteOrder,
  SingularMatrix,
  PDivisibleDeterminant,
  DimensionMismatch,
  BadPairing,
  NotPinned,
  MetacyclicViolation,
  WildRamification,
  Explosion,
  UnknownGroup,
  BadParams,
  RankMismatch,
  LevelNotCoprime,
  IntegralityFailure,
  NoTwistingElement,
  NotSimplyConnected,
  NotRegular,
  TorsionUnavailable,
  HypothesisViolation,
  SearchSpaceExceeded,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::InfiniteOrder: return "InfiniteOrder";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::PDivisibleDeterminant: return "PDivisibleDeterminant";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadPairing: return "BadPairing";
    case ErrorKind::NotPinned: return "NotPinned";
    case ErrorKind::MetacyclicViolation: return "MetacyclicViolation";
    case ErrorKind::WildRamification: return "WildRamification";
    case ErrorKind::Explosion: return "Explosion";
    case ErrorKind::UnknownGroup: return "UnknownGroup";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::LevelNotCoprime: return "LevelNotCoprime";
    case ErrorKind::IntegralityFailure: return "IntegralityFailure";
    case ErrorKind::NoTwistingElement: return "NoTwistingElement";
    case ErrorKind::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::TorsionUnavailable: return "TorsionUnavailable";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::SearchSpaceExceeded: return "SearchSpaceExceeded";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace tame
