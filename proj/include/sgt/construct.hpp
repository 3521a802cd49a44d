#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sgt/gf.hpp"
#include "sgt/matrix.hpp"

namespace sgt {

enum class PlanKind { KautzSingleton, IdentityStack, RandomConstantWeight };

std::string_view to_string(PlanKind kind) noexcept;
PlanKind parse_plan_kind(std::string_view text);

/// Fully resolved construction parameters.
///
/// KautzSingleton: Reed-Solomon code of dimension k_q and block length t_q
/// over GF(q), concatenated with the q-ary identity code; t = q * t_q tests,
/// column weight w = t_q, row weight at most rho_bound = q^(k_q - 1).
/// IdentityStack: nu + 1 stacked identities, t = (nu + 1) n, w = nu + 1.
/// RandomConstantWeight: t x n with independent uniform weight-w columns.
struct CodePlan {
  PlanKind kind = PlanKind::IdentityStack;
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  std::uint64_t nu = 0;
  std::uint64_t l = 0;
  std::uint64_t q = 0;
  std::uint64_t k_q = 0;
  std::uint64_t t_q = 0;
  std::uint64_t t = 0;
  std::uint64_t w = 0;
  std::uint64_t rho_bound = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const CodePlan&, const CodePlan&) = default;
};

/// Checks the kind-specific invariants; throws InvalidArgument.
void validate(const CodePlan& plan);

CodePlan make_ks_plan(std::uint64_t q, std::uint64_t k_q, std::uint64_t t_q, std::uint64_t n);
CodePlan make_identity_plan(std::uint64_t n, std::uint64_t nu);

/// Random ensemble sized as t = ceil(c (d + nu) n^(1 - alpha)),
/// w = ceil(c (d + nu)).
CodePlan make_random_plan(std::uint64_t n, std::uint64_t d, std::uint64_t nu, double alpha, double c,
                          std::uint64_t seed);

/// Kautz-Singleton matrix. Column j is the polynomial whose coefficient of
/// x^i is the i-th base-q digit of j, evaluated at the field elements with
/// index 0..t_q-1; symbol s in block b sets row b*q + s.
CodeMatrix ks_build(const Field& field, std::uint64_t k_q, std::uint64_t t_q, std::uint64_t n);

/// Outer-code symbols (one per block) of column j of ks_build.
std::vector<Element> ks_codeword(const Field& field, std::uint64_t k_q, std::uint64_t t_q, std::uint64_t j);

CodeMatrix identity_stack(std::uint64_t n, std::uint64_t nu);

/// Columns drawn independently and uniformly among weight-w vectors by a
/// partial Fisher-Yates shuffle of the row indices.
CodeMatrix random_constant_weight(std::uint64_t t, std::uint64_t n, std::uint64_t w, std::uint64_t seed);

CodeMatrix build(const CodePlan& plan);

Metadata plan_metadata(const CodePlan& plan);
/// Inverse of plan_metadata; nullopt when the "kind" key is absent.
std::optional<CodePlan> plan_from_metadata(const Metadata& metadata);

struct RandomSearchOptions {
  std::uint64_t max_attempts = 5;
  /// Accept only matrices whose row weights all lie in [min, max].
  std::optional<std::pair<std::uint64_t, std::uint64_t>> row_weight_window;
  std::uint64_t work_budget = 1'000'000'000;
  unsigned workers = 1;
};

struct RandomSearchResult {
  CodeMatrix matrix;
  CodePlan plan;
  std::uint64_t attempts = 0;
};

/// Draws random_constant_weight instances with seeds derived from plan.seed
/// until one is verified (d, nu)-disjunct by the exact verifier and meets the
/// row-weight window. Throws SearchExhausted after max_attempts failures.
RandomSearchResult search_random_disjunct(const CodePlan& plan, const RandomSearchOptions& options = {});

}  // namespace sgt
