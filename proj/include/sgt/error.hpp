#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgt {

enum class Errc {
  InvalidArgument,
  NotPrimePower,
  FieldTooLarge,
  DivisionByZero,
  IndexOutOfRange,
  SelfInSet,
  MalformedHeader,
  RaggedRow,
  InvalidCharacter,
  RowCountMismatch,
  BlockLengthExceedsField,
  TooManyColumns,
  WeightExceedsLength,
  DegenerateParameters,
  WorkBudgetExceeded,
  LengthMismatch,
  PlanMismatch,
  GuaranteeExceeded,
  SearchExhausted,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sgt
