#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellstat {

enum class ErrorCode {
  NotPrime,
  PrimeTooSmall,
  CapacityExceeded,
  IndexOutOfRange,
  SingularCurve,
  UndefinedForSpecialClass,
  InvalidInterval,
  InvalidArgument,
  InvalidM,
  ZeroTrace,
  InvalidStatistic,
  VersionMismatch,
  CorruptCache,
  CacheMiss,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and tests) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ellstat
