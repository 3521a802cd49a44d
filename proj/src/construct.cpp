#include "sgt/construct.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "sgt/error.hpp"
#include "sgt/rng.hpp"
#include "sgt/verify.hpp"

namespace sgt {

namespace {

// base^exp, saturating at UINT64_MAX.
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(Errc::MalformedHeader, "metadata " + key + "=" + text + " is not an unsigned integer");
  return value;
}

}  // namespace

std::string_view to_string(PlanKind kind) noexcept {
  switch (kind) {
    case PlanKind::KautzSingleton: return "KautzSingleton";
    case PlanKind::IdentityStack: return "IdentityStack";
    case PlanKind::RandomConstantWeight: return "RandomConstantWeight";
  }
  return "Unknown";
}

PlanKind parse_plan_kind(std::string_view text) {
  if (text == "KautzSingleton" || text == "ks") return PlanKind::KautzSingleton;
  if (text == "IdentityStack" || text == "identity") return PlanKind::IdentityStack;
  if (text == "RandomConstantWeight" || text == "random") return PlanKind::RandomConstantWeight;
  throw Error(Errc::InvalidArgument, "unknown plan kind '" + std::string(text) + "'");
}

void validate(const CodePlan& p) {
  auto fail = [](const std::string& why) { throw Error(Errc::InvalidArgument, "invalid plan: " + why); };
  if (p.n == 0) fail("n must be positive");
  switch (p.kind) {
    case PlanKind::KautzSingleton:
      if (!prime_power(p.q) || p.q > kMaxFieldSize) fail("q must be a prime power <= 2^16");
      if (p.k_q < 1 || p.t_q < 1 || p.t_q > p.q) fail("need k_q >= 1 and 1 <= t_q <= q");
      if (p.n > sat_pow(p.q, p.k_q)) fail("n exceeds q^k_q");
      if (p.t != p.q * p.t_q || p.w != p.t_q) fail("need t = q t_q and w = t_q");
      break;
    case PlanKind::IdentityStack:
      if (p.t != (p.nu + 1) * p.n || p.w != p.nu + 1) fail("need t = (nu+1) n and w = nu+1");
      break;
    case PlanKind::RandomConstantWeight:
      if (p.t == 0 || p.w > p.t) fail("need 0 < w <= t");
      break;
  }
}

CodePlan make_ks_plan(std::uint64_t q, std::uint64_t k_q, std::uint64_t t_q, std::uint64_t n) {
  CodePlan p;
  p.kind = PlanKind::KautzSingleton;
  p.n = n;
  p.q = q;
  p.k_q = k_q;
  p.t_q = t_q;
  p.l = k_q > 0 ? k_q - 1 : 0;
  p.t = q * t_q;
  p.w = t_q;
  p.rho_bound = k_q > 0 ? sat_pow(q, k_q - 1) : 0;
  return p;
}

CodePlan make_identity_plan(std::uint64_t n, std::uint64_t nu) {
  CodePlan p;
  p.kind = PlanKind::IdentityStack;
  p.n = n;
  p.nu = nu;
  p.t = (nu + 1) * n;
  p.w = nu + 1;
  p.rho_bound = 1;
  return p;
}

CodePlan make_random_plan(std::uint64_t n, std::uint64_t d, std::uint64_t nu, double alpha, double c,
                          std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(c > 0.0) || n == 0)
    throw Error(Errc::InvalidArgument, "need 0 < alpha < 1, c > 0, n >= 1");
  const double load = c * static_cast<double>(d + nu);
  CodePlan p;
  p.kind = PlanKind::RandomConstantWeight;
  p.n = n;
  p.d = d;
  p.nu = nu;
  p.t = static_cast<std::uint64_t>(std::ceil(load * std::pow(static_cast<double>(n), 1.0 - alpha) - 1e-9));
  p.w = static_cast<std::uint64_t>(std::ceil(load - 1e-9));
  p.rho_bound = n;
  p.seed = seed;
  if (p.w > p.t) throw Error(Errc::WeightExceedsLength, "column weight exceeds the number of tests");
  return p;
}

std::vector<Element> ks_codeword(const Field& field, std::uint64_t k_q, std::uint64_t t_q, std::uint64_t j) {
  const std::uint64_t q = field.size();
  std::vector<Element> coeffs(k_q);
  for (auto& c : coeffs) {
    c = static_cast<Element>(j % q);
    j /= q;
  }
  std::vector<Element> symbols(t_q);
  for (std::uint64_t b = 0; b < t_q; ++b) symbols[b] = field.poly_eval(coeffs, static_cast<Element>(b));
  return symbols;
}

CodeMatrix ks_build(const Field& field, std::uint64_t k_q, std::uint64_t t_q, std::uint64_t n) {
  const std::uint64_t q = field.size();
  if (k_q < 1) throw Error(Errc::InvalidArgument, "k_q must be >= 1");
  if (t_q < 1) throw Error(Errc::InvalidArgument, "t_q must be >= 1");
  if (t_q > q)
    throw Error(Errc::BlockLengthExceedsField,
                "t_q = " + std::to_string(t_q) + " exceeds q = " + std::to_string(q));
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  if (n > sat_pow(q, k_q))
    throw Error(Errc::TooManyColumns, "n = " + std::to_string(n) + " exceeds q^k_q");

  CodeMatrix::Builder builder(q * t_q, n);
  for (std::uint64_t j = 0; j < n; ++j) {
    const auto symbols = ks_codeword(field, k_q, t_q, j);
    for (std::uint64_t b = 0; b < t_q; ++b) builder.set(b * q + symbols[b], j);
  }
  return std::move(builder).build();
}

CodeMatrix identity_stack(std::uint64_t n, std::uint64_t nu) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  CodeMatrix::Builder builder((nu + 1) * n, n);
  for (std::uint64_t copy = 0; copy <= nu; ++copy)
    for (std::uint64_t j = 0; j < n; ++j) builder.set(copy * n + j, j);
  return std::move(builder).build();
}

CodeMatrix random_constant_weight(std::uint64_t t, std::uint64_t n, std::uint64_t w, std::uint64_t seed) {
  if (w > t)
    throw Error(Errc::WeightExceedsLength, "w = " + std::to_string(w) + " exceeds t = " + std::to_string(t));
  CodeMatrix::Builder builder(t, n);
  Rng rng(seed);
  std::vector<std::uint64_t> rows(t);
  for (std::uint64_t j = 0; j < n; ++j) {
    std::iota(rows.begin(), rows.end(), std::uint64_t{0});
    for (std::uint64_t k = 0; k < w; ++k) {
      const std::uint64_t pick = k + uniform_below(rng, t - k);
      std::swap(rows[k], rows[pick]);
      builder.set(rows[k], j);
    }
  }
  return std::move(builder).build();
}

CodeMatrix build(const CodePlan& plan) {
  validate(plan);
  switch (plan.kind) {
    case PlanKind::KautzSingleton: return ks_build(Field(plan.q), plan.k_q, plan.t_q, plan.n);
    case PlanKind::IdentityStack: return identity_stack(plan.n, plan.nu);
    case PlanKind::RandomConstantWeight: return random_constant_weight(plan.t, plan.n, plan.w, plan.seed);
  }
  throw Error(Errc::InvalidArgument, "unknown plan kind");
}

Metadata plan_metadata(const CodePlan& p) {
  Metadata md;
  md.emplace_back("kind", std::string(to_string(p.kind)));
  auto put = [&](const char* key, std::uint64_t value) { md.emplace_back(key, std::to_string(value)); };
  put("n", p.n);
  put("d", p.d);
  put("nu", p.nu);
  put("l", p.l);
  put("q", p.q);
  put("k_q", p.k_q);
  put("t_q", p.t_q);
  put("t", p.t);
  put("w", p.w);
  put("rho_bound", p.rho_bound);
  put("seed", p.seed);
  return md;
}

std::optional<CodePlan> plan_from_metadata(const Metadata& metadata) {
  CodePlan p;
  bool has_kind = false;
  for (const auto& [key, value] : metadata) {
    if (key == "kind") {
      p.kind = parse_plan_kind(value);
      has_kind = true;
    } else if (key == "n") {
      p.n = parse_u64(key, value);
    } else if (key == "d") {
      p.d = parse_u64(key, value);
    } else if (key == "nu") {
      p.nu = parse_u64(key, value);
    } else if (key == "l") {
      p.l = parse_u64(key, value);
    } else if (key == "q") {
      p.q = parse_u64(key, value);
    } else if (key == "k_q") {
      p.k_q = parse_u64(key, value);
    } else if (key == "t_q") {
      p.t_q = parse_u64(key, value);
    } else if (key == "t") {
      p.t = parse_u64(key, value);
    } else if (key == "w") {
      p.w = parse_u64(key, value);
    } else if (key == "rho_bound") {
      p.rho_bound = parse_u64(key, value);
    } else if (key == "seed") {
      p.seed = parse_u64(key, value);
    }
  }
  if (!has_kind) return std::nullopt;
  return p;
}

RandomSearchResult search_random_disjunct(const CodePlan& plan, const RandomSearchOptions& options) {
  if (plan.kind != PlanKind::RandomConstantWeight) throw Error(Errc::PlanMismatch, "expected a random plan");
  validate(plan);
  for (std::uint64_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    CodePlan candidate = plan;
    candidate.seed = plan.seed + attempt;
    CodeMatrix m = random_constant_weight(candidate.t, candidate.n, candidate.w, candidate.seed);
    if (options.row_weight_window) {
      const auto [lo, hi] = *options.row_weight_window;
      bool inside = true;
      for (auto rw : m.row_weights()) inside = inside && rw >= lo && rw <= hi;
      if (!inside) continue;
    }
    const auto report = disjunct_exact(m, plan.d, plan.nu, {options.work_budget, options.workers});
    if (report.is_disjunct) {
      std::uint64_t rho = 0;
      for (auto rw : m.row_weights()) rho = std::max<std::uint64_t>(rho, rw);
      candidate.rho_bound = rho;
      return {std::move(m), candidate, attempt + 1};
    }
  }
  throw Error(Errc::SearchExhausted,
              "no verified instance within " + std::to_string(options.max_attempts) + " attempts");
}

}  // namespace sgt
