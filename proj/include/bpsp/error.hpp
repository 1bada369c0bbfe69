#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bpsp {

enum class ErrorKind {
  WrongMultiplicity,
  BadIdentifier,
  TooLarge,
  SupportTooLarge,
  NotATree,
  NonUnitCoupling,
  UnknownParams,
  UnknownAlgo,
  DegenerateBaseline,
  InvalidArgument,
  Parse,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::WrongMultiplicity: return "WrongMultiplicity";
    case ErrorKind::BadIdentifier: return "BadIdentifier";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::NonUnitCoupling: return "NonUnitCoupling";
    case ErrorKind::UnknownParams: return "UnknownParams";
    case ErrorKind::UnknownAlgo: return "UnknownAlgo";
    case ErrorKind::DegenerateBaseline: return "DegenerateBaseline";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bpsp
