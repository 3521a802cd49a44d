#pragma once

#include <cstdint>
#include <vector>

#include "sgt/construct.hpp"
#include "sgt/gf.hpp"
#include "sgt/matrix.hpp"

namespace sgt {

enum class DecodeMethod { Cover, ListRecovery };

struct DecodeResult {
  std::vector<std::size_t> items;  // ascending, no duplicates
  DecodeMethod method = DecodeMethod::Cover;
  std::uint64_t columns_scanned = 0;
  std::uint64_t candidates_interpolated = 0;
};

/// Eliminates every item that appears in at least ceil(nu/2) + 1 negative
/// tests and returns the rest.
DecodeResult cover_decode(const CodeMatrix& m, const Outcome& y, std::size_t nu);

/// List-recovery decoder for Kautz-Singleton matrices. Reads the outcome as
/// t_q blocks of q bits, collects the symbol list of each block, then
/// interpolates candidate outer codewords through k_q blocks at a time and
/// keeps those consistent with at least t_q - nu lists. Work is linear in t
/// for the block scan plus a term that depends only on the list sizes,
/// k_q and t_q.
class KsListDecoder {
 public:
  /// Throws PlanMismatch unless plan.kind is KautzSingleton.
  explicit KsListDecoder(const CodePlan& plan);

  const CodePlan& plan() const noexcept { return plan_; }
  const Field& field() const noexcept { return field_; }

  /// nu = 0 interpolates only through the k_q shortest lists; nu > 0 tries
  /// every k_q-subset of blocks and requires t_q - nu >= k_q.
  DecodeResult decode(const Outcome& y, std::size_t nu) const;

 private:
  CodePlan plan_;
  Field field_;
};

DecodeResult ks_list_decode(const CodePlan& plan, const Outcome& y, std::size_t nu);

/// Coefficients (low-order first, size = points) of the unique polynomial of
/// degree < points.size() through the given points; xs must be distinct.
std::vector<Element> lagrange_interpolate(const Field& field, std::span<const Element> xs,
                                          std::span<const Element> ys);

}  // namespace sgt
