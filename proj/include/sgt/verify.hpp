#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgt/error.hpp"
#include "sgt/matrix.hpp"

namespace sgt {

struct CorrelationStats {
  std::size_t w_min = 0;
  /// Largest |supp(M_i) & supp(M_j)| over column pairs i != j.
  std::size_t lambda_max = 0;
};

CorrelationStats correlation_stats(const CodeMatrix& m);

enum class VerifyMethod { Sufficient, Exact };

struct Witness {
  std::size_t column = 0;
  std::vector<std::size_t> cover;  // sorted
  std::size_t residual = 0;
};

struct VerifyReport {
  VerifyMethod method = VerifyMethod::Exact;
  bool is_disjunct = false;
  /// False only for a failed sufficient test, which decides nothing.
  bool conclusive = true;
  std::size_t d = 0;
  std::size_t nu = 0;
  std::optional<Witness> witness;
  CorrelationStats stats;
  std::uint64_t subsets_examined = 0;
};

/// One-sided test: w_min >= d * lambda_max + nu + 1 implies (d, nu)-disjunct.
/// With lambda_max = 0 every column only needs nu + 1 ones, for any d.
VerifyReport disjunct_sufficient(const CodeMatrix& m, std::size_t d, std::size_t nu);

struct ExactOptions {
  /// Maximum number of candidate covering sets evaluated.
  std::uint64_t work_budget = 1'000'000'000;
  unsigned workers = 1;
};

/// Thrown by disjunct_exact when the budget runs out.
class WorkBudgetExceeded : public Error {
 public:
  WorkBudgetExceeded(std::uint64_t examined, std::size_t columns_done, std::size_t columns_total)
      : Error(Errc::WorkBudgetExceeded, "examined " + std::to_string(examined) + " sets, finished " +
                                            std::to_string(columns_done) + " of " +
                                            std::to_string(columns_total) + " columns"),
        examined_(examined),
        columns_done_(columns_done) {}

  std::uint64_t examined() const noexcept { return examined_; }
  std::size_t columns_done() const noexcept { return columns_done_; }

 private:
  std::uint64_t examined_;
  std::size_t columns_done_;
};

/// Exhaustive (d, nu)-disjunctness check. On failure the witness is the
/// smallest column i that can be covered, with the smallest covering set
/// size for that column and then the lexicographically smallest set. The
/// witness does not depend on the worker count.
VerifyReport disjunct_exact(const CodeMatrix& m, std::size_t d, std::size_t nu, const ExactOptions& options = {});

std::string format_report(const VerifyReport& report);

}  // namespace sgt
