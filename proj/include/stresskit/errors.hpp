#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stresskit {

enum class ErrorKind {
  InvalidInput,
  SpanDeficient,
  NotEquilibrium,
  Unresolvable,
  NotAStressMatrix,
  NotAStress,
  WrongRank,
  PinningFailed,
  NotConnectedEnough,
  OutsideDomain,
  NotCentered,
  ConstructionFailed,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::SpanDeficient: return "SpanDeficient";
    case ErrorKind::NotEquilibrium: return "NotEquilibrium";
    case ErrorKind::Unresolvable: return "Unresolvable";
    case ErrorKind::NotAStressMatrix: return "NotAStressMatrix";
    case ErrorKind::NotAStress: return "NotAStress";
    case ErrorKind::WrongRank: return "WrongRank";
    case ErrorKind::PinningFailed: return "PinningFailed";
    case ErrorKind::NotConnectedEnough: return "NotConnectedEnough";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::NotCentered: return "NotCentered";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
  }
  return "Unknown";
}

}  // namespace stresskit
