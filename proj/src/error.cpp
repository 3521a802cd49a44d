#include "sgt/error.hpp"

namespace sgt {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SelfInSet: return "SelfInSet";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::RaggedRow: return "RaggedRow";
    case Errc::InvalidCharacter: return "InvalidCharacter";
    case Errc::RowCountMismatch: return "RowCountMismatch";
    case Errc::BlockLengthExceedsField: return "BlockLengthExceedsField";
    case Errc::TooManyColumns: return "TooManyColumns";
    case Errc::WeightExceedsLength: return "WeightExceedsLength";
    case Errc::DegenerateParameters: return "DegenerateParameters";
    case Errc::WorkBudgetExceeded: return "WorkBudgetExceeded";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::PlanMismatch: return "PlanMismatch";
    case Errc::GuaranteeExceeded: return "GuaranteeExceeded";
    case Errc::SearchExhausted: return "SearchExhausted";
  }
  return "Unknown";
}

}  // namespace sgt
