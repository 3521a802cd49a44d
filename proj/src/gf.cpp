#include "sgt/gf.hpp"

#include <string>

#include "sgt/error.hpp"

namespace sgt {

namespace {

using Poly = std::vector<std::uint32_t>;

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t value) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t f = 2; f * f <= value; ++f) {
    if (value % f == 0) {
      factors.push_back(f);
      while (value % f == 0) value /= f;
    }
  }
  if (value > 1) factors.push_back(value);
  return factors;
}

// Remainder of a by a monic divisor over GF(p). Both low-order first.
Poly poly_mod(Poly a, const Poly& divisor, std::uint32_t p) {
  const std::size_t dd = divisor.size() - 1;
  while (a.size() > dd) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dd;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dd; ++i) {
        const std::uint64_t sub = static_cast<std::uint64_t>(lead) * divisor[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

bool all_zero(const Poly& a) {
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

// Writes the base-p digits of value into a polynomial of the given length.
Poly digits(std::uint64_t value, std::uint32_t p, std::size_t len) {
  Poly out(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = static_cast<std::uint32_t>(value % p);
    value /= p;
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t f = 2; f * f <= value; ++f)
    if (value % f == 0) return false;
  return true;
}

std::optional<PrimePower> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto factors = distinct_prime_factors(q);
  if (factors.size() != 1) return std::nullopt;
  PrimePower pp{static_cast<std::uint32_t>(factors[0]), 0};
  while (q > 1) {
    q /= pp.p;
    ++pp.m;
  }
  return pp;
}

std::optional<std::uint32_t> next_prime_power(std::uint64_t lower_bound) {
  for (std::uint64_t q = lower_bound < 2 ? 2 : lower_bound; q <= kMaxFieldSize; ++q)
    if (prime_power(q)) return static_cast<std::uint32_t>(q);
  return std::nullopt;
}

bool is_irreducible(std::span<const std::uint32_t> coeffs, std::uint32_t p) {
  if (coeffs.size() < 2 || coeffs.back() != 1) return false;
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 1) return true;
  const Poly f(coeffs.begin(), coeffs.end());
  for (std::size_t dd = 1; dd <= deg / 2; ++dd) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dd; ++i) count *= p;
    for (std::uint64_t tail = 0; tail < count; ++tail) {
      Poly divisor = digits(tail, p, dd);
      divisor.push_back(1);
      if (all_zero(poly_mod(f, divisor, p))) return false;
    }
  }
  return true;
}

FieldSpec field_new(std::uint64_t q) {
  if (q < 2) throw Error(Errc::InvalidArgument, "field size must be >= 2, got " + std::to_string(q));
  if (q > kMaxFieldSize)
    throw Error(Errc::FieldTooLarge, "field size " + std::to_string(q) + " exceeds 2^16");
  const auto pp = prime_power(q);
  if (!pp) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");

  FieldSpec spec{static_cast<std::uint32_t>(q), pp->p, pp->m, {}};
  if (spec.m == 1) return spec;
  for (std::uint64_t tail = 0; tail < q; ++tail) {
    Poly candidate = digits(tail, spec.p, spec.m);
    candidate.push_back(1);
    if (is_irreducible(candidate, spec.p)) {
      spec.modulus = std::move(candidate);
      return spec;
    }
  }
  // Every GF(p)[x] has irreducibles of each degree.
  throw Error(Errc::InvalidArgument, "no irreducible modulus found");
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  const std::uint32_t q = spec_.q;
  const std::uint32_t p = spec_.p;
  if (q < 2 || q > kMaxFieldSize) throw Error(Errc::InvalidArgument, "bad field size");
  if (spec_.m > 1 && (spec_.modulus.size() != spec_.m + 1 || !is_irreducible(spec_.modulus, p)))
    throw Error(Errc::InvalidArgument, "modulus is not a monic irreducible of degree m");

  // Multiplication by polynomial product and reduction; only used to fill tables.
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (spec_.m == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    const Poly da = digits(a, p, spec_.m);
    const Poly db = digits(b, p, spec_.m);
    Poly prod(2 * spec_.m - 1, 0);
    for (std::size_t i = 0; i < spec_.m; ++i)
      for (std::size_t j = 0; j < spec_.m; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p);
    const Poly r = poly_mod(std::move(prod), spec_.modulus, p);
    std::uint32_t out = 0;
    for (std::size_t i = r.size(); i-- > 0;) out = out * p + r[i];
    return out;
  };
  auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t result = 1;
    while (e > 0) {
      if (e & 1) result = slow_mul(result, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return result;
  };

  const std::uint32_t order = q - 1;
  const auto factors = distinct_prime_factors(order);
  std::uint32_t generator = 0;
  for (std::uint32_t g = 1; g < q && generator == 0; ++g) {
    bool primitive = true;
    for (auto r : factors)
      if (slow_pow(g, order / r) == 1) {
        primitive = false;
        break;
      }
    if (primitive) generator = g;
  }

  exp_.assign(2 * static_cast<std::size_t>(order), 0);
  log_.assign(q, 0);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    exp_[k] = x;
    exp_[k + order] = x;
    log_[x] = k;
    x = slow_mul(x, generator);
  }
}

void Field::check(Element a) const {
  if (a >= spec_.q)
    throw Error(Errc::IndexOutOfRange,
                "element " + std::to_string(a) + " outside GF(" + std::to_string(spec_.q) + ")");
}

Element Field::add(Element a, Element b) const {
  check(a);
  check(b);
  const std::uint32_t p = spec_.p;
  if (spec_.m == 1) return (a + b) % p;
  if (p == 2) return a ^ b;
  Element out = 0;
  std::uint32_t place = 1;
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    out += ((a % p + b % p) % p) * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return out;
}

Element Field::neg(Element a) const {
  check(a);
  const std::uint32_t p = spec_.p;
  if (spec_.m == 1) return (p - a) % p;
  if (p == 2) return a;
  Element out = 0;
  std::uint32_t place = 1;
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    out += ((p - a % p) % p) * place;
    a /= p;
    place *= p;
  }
  return out;
}

Element Field::sub(Element a, Element b) const { return add(a, neg(b)); }

Element Field::mul(Element a, Element b) const {
  check(a);
  check(b);
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

Element Field::inv(Element a) const {
  check(a);
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  const std::uint32_t order = spec_.q - 1;
  return exp_[(order - log_[a]) % order];
}

Element Field::pow(Element a, std::uint64_t e) const {
  check(a);
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = spec_.q - 1;
  return exp_[static_cast<std::size_t>(log_[a] * (e % order) % order)];
}

Element Field::poly_eval(std::span<const Element> coeffs, Element x) const {
  Element acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = add(mul(acc, x), coeffs[i]);
  return acc;
}

std::vector<std::uint32_t> Field::to_coefficients(Element a) const {
  check(a);
  return digits(a, spec_.p, spec_.m);
}

Element Field::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > spec_.m) throw Error(Errc::InvalidArgument, "too many coefficients");
  Element out = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= spec_.p) throw Error(Errc::InvalidArgument, "coefficient outside GF(p)");
    out = out * spec_.p + coeffs[i];
  }
  return out;
}

}  // namespace sgt
