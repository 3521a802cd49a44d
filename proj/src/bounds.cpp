#include "sgt/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "sgt/error.hpp"

namespace sgt {

namespace {

double as_real(std::uint64_t v) { return static_cast<double>(v); }

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

// log(e^a + e^b)
double log_add(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::InvalidArgument, what);
}

BoundResult compose(BoundResult branch, std::uint64_t n, std::uint64_t d) {
  const BoundResult floor = lb_unrestricted(n, d);
  if (floor.value > branch.value) {
    branch.value = floor.value;
    branch.rule = floor.rule;
  }
  return branch;
}

}  // namespace

std::string_view to_string(BoundRule rule) noexcept {
  switch (rule) {
    case BoundRule::Unrestricted: return "unrestricted";
    case BoundRule::IndividualTesting: return "individual-testing";
    case BoundRule::PrivatePairs: return "private-pairs";
    case BoundRule::PrivateSets: return "private-sets";
    case BoundRule::RowCounting: return "row-counting";
    case BoundRule::RowIndividual: return "row-individual";
  }
  return "unknown";
}

std::uint64_t BoundResult::tests() const {
  // Absorb rounding noise so that e.g. 75/5 reports 15, not 16.
  const double slack = 1e-9 * std::max(1.0, std::abs(value));
  return static_cast<std::uint64_t>(std::max(0.0, std::ceil(value - slack)));
}

BoundResult lb_unrestricted(std::uint64_t n, std::uint64_t d) {
  require(n >= 1 && d >= 1, "need n, d >= 1");
  const double pairs = as_real(d + 2) * as_real(d + 1) / 2.0;
  return {std::min(pairs, as_real(n)), BoundRule::Unrestricted, "unrestricted"};
}

double private_sets_bound(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t l) {
  if (d < 2 || l < 2)
    throw Error(Errc::DegenerateParameters, "private-set bound needs d >= 2 and l >= 2");
  require(n >= 1, "need n >= 1");
  const double L = as_real(l);
  const double root = 1.0 / (L + 1.0);
  const double log_n = std::log(as_real(n));
  if (nu == 0) {
    // ((l-1)^(l+1) (d-1)^(l+1) / (2 e^l (l-1) (d-1)^(l-1) + 1))^(1/(l+1)) n^(1/(l+1))
    const double lm1 = std::log(L - 1.0);
    const double dm1 = std::log(as_real(d - 1));
    const double log_den = log_add(std::log(2.0) + L + lm1 + (L - 1.0) * dm1, 0.0);
    return std::exp(root * ((L + 1.0) * (lm1 + dm1) - log_den + log_n));
  }
  // (2 e^l / ((d+nu)^2 (l-1)^l) + 1 / ((l-1)(d-1) + nu)^(l+1))^(-1/(l+1)) n^(1/(l+1))
  const double log_x = std::log(2.0) + L - 2.0 * std::log(as_real(d + nu)) - L * std::log(L - 1.0);
  const double log_y = -(L + 1.0) * std::log(as_real((l - 1) * (d - 1) + nu));
  return std::exp(root * (log_n - log_add(log_x, log_y)));
}

BoundResult lb_sparse_codewords(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t w_max) {
  require(n >= 1 && d >= 1 && w_max >= 1, "need n, d, w_max >= 1");
  const std::string regime = "w_max<=" + std::to_string(w_max);
  const double individual = as_real(nu + 1) * as_real(n);
  if (w_max <= d + nu) return compose({individual, BoundRule::IndividualTesting, regime}, n, d);

  // A bound proved for a looser column budget also holds here, and anything
  // below a valid bound is valid; the running minimum over budgets <= w_max
  // keeps the result nonincreasing in w_max.
  const double pairs = std::sqrt(as_real(d + nu) * as_real(d + nu + 1) * as_real(n));
  BoundResult best{std::min(individual, pairs), BoundRule::PrivatePairs, regime};
  if (pairs >= individual) best.rule = BoundRule::IndividualTesting;
  if (w_max > d + nu + 1 && d >= 2 && n >= 2) {
    const std::uint64_t l_max = (w_max - nu - 1 + d - 1) / d;
    for (std::uint64_t l = 2; l <= l_max; ++l) {
      const double v = private_sets_bound(n, d, nu, l);
      if (v < best.value) best = {v, BoundRule::PrivateSets, regime};
    }
  } else if (w_max > d + nu + 1) {
    // d = 1: no private-set bound applies; only the unrestricted floor remains.
    best = {0.0, BoundRule::Unrestricted, regime};
  }
  return compose(best, n, d);
}

BoundResult lb_sparse_tests(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t rho_max) {
  require(n >= 1 && d >= 1 && rho_max >= 1, "need n, d, rho_max >= 1");
  const std::string regime = "rho_max<=" + std::to_string(rho_max);
  // rho_max > (d+nu+1)/(nu+1), compared exactly in integers
  if (rho_max * (nu + 1) > d + nu + 1)
    return compose({as_real(d + nu + 1) * as_real(n) / as_real(rho_max), BoundRule::RowCounting, regime}, n, d);
  return compose({as_real(nu + 1) * as_real(n), BoundRule::RowIndividual, regime}, n, d);
}

std::uint64_t ks_field_size(std::uint64_t n, std::uint64_t k_q, std::uint64_t t_q) {
  if (k_q < 1 || t_q > kMaxFieldSize) return 0;
  // start near the k_q-th root of n
  auto start = static_cast<std::uint64_t>(std::floor(std::pow(as_real(n), 1.0 / as_real(k_q))));
  while (start > 1 && sat_pow(start - 1, k_q) >= n) --start;
  std::uint64_t lo = std::max<std::uint64_t>({t_q, start, 2});
  for (;;) {
    const auto q = next_prime_power(lo);
    if (!q) return 0;
    if (sat_pow(*q, k_q) >= n) return *q;
    lo = *q + 1;
  }
}

CodePlan plan_sparse_codewords(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t w_max) {
  require(n >= 2 && d >= 1 && w_max >= 1, "need n >= 2, d >= 1, w_max >= 1");
  CodePlan best = make_identity_plan(n, nu);
  if (w_max > d + nu) {
    const std::uint64_t l_max = (w_max - nu - 1) / d;
    for (std::uint64_t l = 1; l <= l_max; ++l) {
      const std::uint64_t t_q = l * d + nu + 1;
      if (t_q > kMaxFieldSize) break;
      const std::uint64_t q = ks_field_size(n, l + 1, t_q);
      if (q == 0) continue;
      const CodePlan ks = make_ks_plan(q, l + 1, t_q, n);
      if (ks.t < best.t) best = ks;
    }
  }
  best.d = d;
  best.nu = nu;
  return best;
}

CodePlan plan_sparse_tests(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t rho_max) {
  require(n >= 2 && d >= 1 && rho_max >= 1, "need n >= 2, d >= 1, rho_max >= 1");
  CodePlan best = make_identity_plan(n, nu);
  for (std::uint64_t k_q = 2; k_q <= 64; ++k_q) {
    const std::uint64_t t_q = (k_q - 1) * d + nu + 1;
    if (t_q > kMaxFieldSize || sat_pow(t_q, k_q - 1) > rho_max) break;
    const std::uint64_t q = ks_field_size(n, k_q, t_q);
    if (q == 0) continue;
    const CodePlan ks = make_ks_plan(q, k_q, t_q, n);
    if (ks.rho_bound <= rho_max && ks.t < best.t) best = ks;
  }
  best.d = d;
  best.nu = nu;
  return best;
}

CodePlan plan_list_decodable(std::uint64_t n, std::uint64_t d, std::uint64_t nu, std::uint64_t l) {
  require(n >= 2 && d >= 1 && l >= 1, "need n >= 2, d >= 1, l >= 1");
  const std::uint64_t t_q = l * d + (l + 2) * nu + 1;
  const std::uint64_t q = ks_field_size(n, l + 1, t_q);
  if (q == 0) throw Error(Errc::InvalidArgument, "no field size <= 2^16 fits t_q = " + std::to_string(t_q));
  CodePlan plan = make_ks_plan(q, l + 1, t_q, n);
  plan.d = d;
  plan.nu = nu;
  return plan;
}

}  // namespace sgt
