#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sgt/construct.hpp"

namespace sgt {

/// Which counting argument produced a lower bound.
enum class BoundRule {
  /// min{C(d+2, 2), n}, no weight constraint.
  Unrestricted,
  /// Column budget w_max <= d + nu forces (nu + 1) n tests.
  IndividualTesting,
  /// Column budget d + nu + 1: private pairs give sqrt((d+nu)(d+nu+1) n).
  PrivatePairs,
  /// Column budget l d + nu + 1 with l >= 2: private (l+1)-sets.
  PrivateSets,
  /// Row budget rho_max: counting ones gives (d + nu + 1) n / rho_max.
  RowCounting,
  /// Row budget rho_max <= (d + nu + 1) / (nu + 1) forces (nu + 1) n tests.
  RowIndividual,
};

std::string_view to_string(BoundRule rule) noexcept;

struct BoundResult {
  double value = 0.0;
  BoundRule rule = BoundRule::Unrestricted;
  std::string regime;

  /// Smallest integer t satisfying t >= value.
  std::uint64_t tests() const;
};

BoundResult lb_unrestricted(std::uint64_t n, std::uint64_t d);

/// Private-set bound for column budget l d + nu + 1 with l >= 2. Throws
/// DegenerateParameters for d < 2 or l < 2.
double private_sets_bound(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t l);

/// Lower bound on t for (d, nu)-disjunct matrices with column weights <= w_max.
BoundResult lb_sparse_codewords(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t w_max);

/// Lower bound on t for (d, nu)-disjunct matrices with row weights <= rho_max.
BoundResult lb_sparse_tests(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t rho_max);

/// Smallest prime power q >= t_q with q^k_q >= n, or 0 when none is <= 2^16.
std::uint64_t ks_field_size(std::uint64_t n, std::uint64_t k_q, std::uint64_t t_q);

/// Fewest-tests plan with column weight <= w_max, over the identity stack and
/// Kautz-Singleton plans with t_q = l d + nu + 1, k_q = l + 1.
CodePlan plan_sparse_codewords(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t w_max);

/// Fewest-tests plan with row weight <= rho_max, over the identity stack and
/// Kautz-Singleton plans with k_q >= 2, t_q = (k_q - 1) d + nu + 1.
CodePlan plan_sparse_tests(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t rho_max);

/// Kautz-Singleton plan decodable by list recovery under nu errors:
/// t_q = l d + (l + 2) nu + 1, k_q = l + 1. Throws InvalidArgument when no
/// field size up to 2^16 fits.
CodePlan plan_list_decodable(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t l);

}  // namespace sgt
