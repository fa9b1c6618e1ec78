#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlat {

enum class ErrorKind {
  CycleDetected,
  IndexOutOfRange,
  NotALattice,
  TooLarge,
  NotContinuous,
  DomainMismatch,
  CapExceeded,
  NotEndoHomset,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// CLI can map it to an exit code without string matching.
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
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotContinuous: return "NotContinuous";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotEndoHomset: return "NotEndoHomset";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace qlat
