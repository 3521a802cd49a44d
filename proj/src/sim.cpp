#include "sgt/sim.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "sgt/error.hpp"
#include "sgt/rng.hpp"

namespace sgt {

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (out > UINT64_MAX / num) return UINT64_MAX;
    out = out * num / i;
  }
  return out;
}

// Lexicographic k-subset of [n] with the given rank.
std::vector<std::size_t> unrank_subset(std::uint64_t n, std::uint64_t k, std::uint64_t rank) {
  std::vector<std::size_t> out;
  out.reserve(k);
  std::uint64_t x = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    for (;;) {
      const std::uint64_t block = binom(n - x - 1, k - i - 1);
      if (rank < block) break;
      rank -= block;
      ++x;
    }
    out.push_back(static_cast<std::size_t>(x++));
  }
  return out;
}

bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  const std::size_t k = s.size();
  std::size_t i = k;
  while (i > 0 && s[i - 1] == n - k + (i - 1)) --i;
  if (i == 0) return false;
  ++s[i - 1];
  for (std::size_t r = i; r < k; ++r) s[r] = s[r - 1] + 1;
  return true;
}

// Floyd's algorithm: k distinct values from [0, n), returned sorted.
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k) {
  std::unordered_set<std::size_t> chosen;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t j = n - k; j < n; ++j) {
    const auto r = static_cast<std::size_t>(uniform_below(rng, j + 1));
    const std::size_t v = chosen.insert(r).second ? r : j;
    if (v == j) chosen.insert(j);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Trial {
  std::vector<std::size_t> active;
  std::vector<std::size_t> flips;
};

class Runner {
 public:
  Runner(const CodeMatrix& m, const std::optional<CodePlan>& plan, const SimConfig& cfg) : m_(m), cfg_(cfg) {
    if (cfg.decoder == DecodeMethod::ListRecovery) {
      if (!plan) throw Error(Errc::PlanMismatch, "list recovery needs the construction plan");
      list_.emplace(*plan);
      if (plan->t != m.tests() || plan->n != m.items())
        throw Error(Errc::PlanMismatch, "plan dimensions do not match the matrix");
    }
  }

  void run(const Trial& trial, std::uint64_t index, SimReport& report, double& seconds) const {
    Outcome y = or_columns(m_, trial.active);
    for (auto f : trial.flips) y.flip(f);
    const auto start = std::chrono::steady_clock::now();
    const DecodeResult result = list_ ? list_->decode(y, cfg_.nu) : cover_decode(m_, y, cfg_.nu);
    seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ++report.trials_run;
    std::size_t fp = 0;
    std::size_t fn = 0;
    {
      std::size_t a = 0;
      std::size_t b = 0;
      const auto& truth = trial.active;
      const auto& got = result.items;
      while (a < truth.size() || b < got.size()) {
        if (b == got.size() || (a < truth.size() && truth[a] < got[b])) {
          ++fn;
          ++a;
        } else if (a == truth.size() || got[b] < truth[a]) {
          ++fp;
          ++b;
        } else {
          ++a;
          ++b;
        }
      }
    }
    report.false_positive_count += fp;
    report.false_negative_count += fn;
    if (fp == 0 && fn == 0) {
      ++report.exact_recoveries;
    } else {
      ++report.failure_count;
      if (report.failures.size() < kMaxRecordedFailures)
        report.failures.push_back({index, trial.active, trial.flips, result.items});
    }
  }

 private:
  const CodeMatrix& m_;
  const SimConfig& cfg_;
  std::optional<KsListDecoder> list_;
};

void merge_into(SimReport& total, SimReport&& part) {
  total.trials_run += part.trials_run;
  total.exact_recoveries += part.exact_recoveries;
  total.false_positive_count += part.false_positive_count;
  total.false_negative_count += part.false_negative_count;
  total.failure_count += part.failure_count;
  for (auto& f : part.failures)
    if (total.failures.size() < kMaxRecordedFailures) total.failures.push_back(std::move(f));
}

template <typename Body>
SimReport parallel_trials(std::uint64_t total, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (total < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(total, 1));
  std::vector<SimReport> parts(workers);
  std::vector<double> seconds(workers, 0.0);
  auto work = [&](unsigned w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    body(begin, end, parts[w], seconds[w]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  SimReport report;
  double secs = 0.0;
  for (unsigned w = 0; w < workers; ++w) {
    merge_into(report, std::move(parts[w]));
    secs += seconds[w];
  }
  report.mean_decode_seconds = report.trials_run ? secs / static_cast<double>(report.trials_run) : 0.0;
  return report;
}

}  // namespace

std::size_t decoder_guarantee(DecodeMethod decoder, std::size_t nu) {
  return decoder == DecodeMethod::Cover ? nu / 2 : nu;
}

SimReport run_sim(const CodeMatrix& m, const std::optional<CodePlan>& plan, const SimConfig& cfg) {
  const std::size_t n = m.items();
  const std::size_t t = m.tests();
  if (cfg.d_active > n) throw Error(Errc::InvalidArgument, "more active devices than items");
  if (cfg.error_weight > t) throw Error(Errc::InvalidArgument, "more flips than tests");

  std::vector<std::string> warnings;
  auto guard = [&](bool exceeded, const std::string& what) {
    if (!exceeded) return;
    if (!cfg.allow_beyond_guarantee) throw Error(Errc::GuaranteeExceeded, what);
    warnings.push_back(what);
  };
  guard(cfg.d_active > cfg.d,
        "d_active = " + std::to_string(cfg.d_active) + " exceeds the design bound d = " + std::to_string(cfg.d));
  const std::size_t limit = decoder_guarantee(cfg.decoder, cfg.nu);
  guard(cfg.error_weight > limit, "error_weight = " + std::to_string(cfg.error_weight) +
                                      " exceeds the decoder guarantee of " + std::to_string(limit) + " flips");

  const Runner runner(m, plan, cfg);
  SimReport report;

  if (cfg.error_mode == ErrorMode::Exhaustive) {
    if (cfg.mixed_sizes) throw Error(Errc::InvalidArgument, "exhaustive mode uses a fixed active-set size");
    std::vector<std::vector<std::size_t>> patterns;
    std::uint64_t pattern_count = 0;
    for (std::size_t w = 0; w <= cfg.error_weight; ++w) pattern_count += binom(t, w);
    const std::uint64_t subsets = binom(n, cfg.d_active);
    if (pattern_count == UINT64_MAX || subsets == UINT64_MAX || subsets > cfg.exhaustive_budget / pattern_count)
      throw Error(Errc::WorkBudgetExceeded, "exhaustive enumeration exceeds the trial budget");
    for (std::size_t w = 0; w <= cfg.error_weight; ++w) {
      std::vector<std::size_t> p(w);
      for (std::size_t k = 0; k < w; ++k) p[k] = k;
      do patterns.push_back(p);
      while (next_subset(p, t));
    }
    report = parallel_trials(subsets, cfg.workers, [&](std::uint64_t begin, std::uint64_t end, SimReport& part,
                                                        double& secs) {
      if (begin == end) return;
      Trial trial{unrank_subset(n, cfg.d_active, begin), {}};
      for (std::uint64_t r = begin; r < end; ++r) {
        for (std::size_t p = 0; p < patterns.size(); ++p) {
          trial.flips = patterns[p];
          runner.run(trial, r * patterns.size() + p, part, secs);
        }
        next_subset(trial.active, n);
      }
    });
  } else {
    report = parallel_trials(cfg.trials, cfg.workers, [&](std::uint64_t begin, std::uint64_t end, SimReport& part,
                                                          double& secs) {
      for (std::uint64_t k = begin; k < end; ++k) {
        Rng rng(derive_seed(cfg.seed, k));
        const std::size_t size =
            cfg.mixed_sizes ? static_cast<std::size_t>(uniform_below(rng, cfg.d_active + 1)) : cfg.d_active;
        Trial trial;
        trial.active = sample_distinct(rng, n, size);
        trial.flips = sample_distinct(rng, t, cfg.error_weight);
        runner.run(trial, k, part, secs);
      }
    });
  }
  report.warnings = std::move(warnings);
  return report;
}

bool same_results(const SimReport& a, const SimReport& b) {
  return a.trials_run == b.trials_run && a.exact_recoveries == b.exact_recoveries &&
         a.false_positive_count == b.false_positive_count && a.false_negative_count == b.false_negative_count &&
         a.failure_count == b.failure_count && a.failures == b.failures && a.warnings == b.warnings;
}

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(v[k]);
  }
  return out;
}

}  // namespace

std::string format_text(const SimReport& r) {
  std::ostringstream out;
  out << "trials run:        " << r.trials_run << '\n'
      << "exact recoveries:  " << r.exact_recoveries << '\n'
      << "failures:          " << r.failure_count << '\n'
      << "false positives:   " << r.false_positive_count << '\n'
      << "false negatives:   " << r.false_negative_count << '\n'
      << "mean decode time:  " << r.mean_decode_seconds * 1e6 << " us\n";
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  for (const auto& f : r.failures)
    out << "failed trial " << f.trial << ": active {" << join(f.active) << "} flips {" << join(f.flips)
        << "} decoded {" << join(f.decoded) << "}\n";
  return out.str();
}

std::string format_kv(const SimReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "trials_run=" << r.trials_run << '\n'
      << "exact_recoveries=" << r.exact_recoveries << '\n'
      << "failure_count=" << r.failure_count << '\n'
      << "false_positive_count=" << r.false_positive_count << '\n'
      << "false_negative_count=" << r.false_negative_count << '\n'
      << "mean_decode_seconds=" << r.mean_decode_seconds << '\n';
  for (std::size_t k = 0; k < r.warnings.size(); ++k) out << "warning." << k << '=' << r.warnings[k] << '\n';
  for (std::size_t k = 0; k < r.failures.size(); ++k) {
    const auto& f = r.failures[k];
    out << "failure." << k << ".trial=" << f.trial << '\n'
        << "failure." << k << ".active=" << join(f.active) << '\n'
        << "failure." << k << ".flips=" << join(f.flips) << '\n'
        << "failure." << k << ".decoded=" << join(f.decoded) << '\n';
  }
  return out.str();
}

}  // namespace sgt
