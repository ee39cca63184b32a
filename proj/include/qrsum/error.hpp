#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrsum {

enum class ErrorCode {
  CompositeInput,
  EvenInput,
  OutOfRange,
  NotDistinct,
  OddK,
  BudgetExceeded,
  EmptySet,
  ModulusMismatch,
  HypothesisViolated,
  EtaOutOfRange,
  DeltaOutOfRange,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this type; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qrsum
