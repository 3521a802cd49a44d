#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sgt {

/// Element of GF(q), stored by index in [0, q). For q = p^m with m > 1 the
/// base-p digits of the index are the polynomial coefficients (digit i is the
/// coefficient of x^i).
using Element = std::uint32_t;

inline constexpr std::uint32_t kMaxFieldSize = 1u << 16;

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
};

bool is_prime(std::uint64_t value);

/// Trial factorization. Returns nullopt when q < 2 or q has two distinct
/// prime factors.
std::optional<PrimePower> prime_power(std::uint64_t q);

/// Smallest prime power >= lower_bound, or nullopt above kMaxFieldSize.
std::optional<std::uint32_t> next_prime_power(std::uint64_t lower_bound);

/// Irreducibility of a monic polynomial over GF(p), by trial division with
/// every monic polynomial of degree 1..deg/2. Coefficients are low-order first.
bool is_irreducible(std::span<const std::uint32_t> coeffs, std::uint32_t p);

struct FieldSpec {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  /// Monic modulus, coefficients low-order first (size m + 1). Empty for m = 1.
  std::vector<std::uint32_t> modulus;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Validates q and picks the irreducible modulus whose non-leading
/// coefficients, read as a base-p number with x^(m-1) most significant, are
/// smallest. Throws NotPrimePower / FieldTooLarge / InvalidArgument.
FieldSpec field_new(std::uint64_t q);

/// Arithmetic over GF(q) backed by log/antilog tables. Immutable after
/// construction; every member function is const and thread-safe.
class Field {
 public:
  explicit Field(FieldSpec spec);
  explicit Field(std::uint64_t q) : Field(field_new(q)) {}

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t size() const noexcept { return spec_.q; }
  std::uint32_t characteristic() const noexcept { return spec_.p; }
  Element primitive() const noexcept { return exp_[1]; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  /// Throws DivisionByZero for a == 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  /// Horner evaluation of sum_i coeffs[i] * x^i.
  Element poly_eval(std::span<const Element> coeffs, Element x) const;

  /// Base-p digits of an element (polynomial coefficients, low-order first).
  std::vector<std::uint32_t> to_coefficients(Element a) const;
  Element from_coefficients(std::span<const std::uint32_t> coeffs) const;

 private:
  void check(Element a) const;

  FieldSpec spec_;
  std::vector<std::uint32_t> exp_;  // exp_[k] = g^k, k in [0, 2(q-1))
  std::vector<std::uint32_t> log_;  // log_[a] for a != 0
};

}  // namespace sgt
