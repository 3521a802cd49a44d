#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgt/construct.hpp"
#include "sgt/decode.hpp"
#include "sgt/matrix.hpp"

namespace sgt {

enum class ErrorMode { Random, Exhaustive };

/// One OR-channel discovery experiment: active devices S transmit their
/// columns, the receiver sees y = OR_{j in S} M_j XOR v and decodes.
struct SimConfig {
  /// Design bound on active devices; d_active must not exceed it.
  std::size_t d = 0;
  /// Error parameter handed to the decoder.
  std::size_t nu = 0;
  std::size_t d_active = 0;
  /// Draw |S| uniformly from [0, d_active] instead of exactly d_active.
  bool mixed_sizes = false;
  /// Flips per trial; Exhaustive mode enumerates every pattern of weight <= error_weight.
  std::size_t error_weight = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  DecodeMethod decoder = DecodeMethod::Cover;
  ErrorMode error_mode = ErrorMode::Random;
  bool allow_beyond_guarantee = false;
  unsigned workers = 1;
  /// Cap on the number of trials Exhaustive mode may enumerate.
  std::uint64_t exhaustive_budget = 200'000'000;
};

struct TrialFailure {
  std::uint64_t trial = 0;
  std::vector<std::size_t> active;
  std::vector<std::size_t> flips;
  std::vector<std::size_t> decoded;

  friend bool operator==(const TrialFailure&, const TrialFailure&) = default;
};

struct SimReport {
  std::uint64_t trials_run = 0;
  std::uint64_t exact_recoveries = 0;
  std::uint64_t false_positive_count = 0;
  std::uint64_t false_negative_count = 0;
  double mean_decode_seconds = 0.0;
  /// First 10 failing trials, by trial index.
  std::vector<TrialFailure> failures;
  std::uint64_t failure_count = 0;
  std::vector<std::string> warnings;
};

inline constexpr std::size_t kMaxRecordedFailures = 10;

/// Largest error weight the decoder is guaranteed to correct.
std::size_t decoder_guarantee(DecodeMethod decoder, std::size_t nu);

/// Runs the experiment. ListRecovery requires a KautzSingleton plan. Random
/// trial k draws from a stream derived from (seed, k), so the report does not
/// depend on the worker count. Throws GuaranteeExceeded when the config asks
/// for more active devices or flips than the decoder guarantees, unless
/// allow_beyond_guarantee is set (then a warning is recorded).
SimReport run_sim(const CodeMatrix& m, const std::optional<CodePlan>& plan, const SimConfig& cfg);

/// Field-wise equality ignoring the timing field.
bool same_results(const SimReport& a, const SimReport& b);

std::string format_text(const SimReport& report);
/// key=value lines.
std::string format_kv(const SimReport& report);

}  // namespace sgt
