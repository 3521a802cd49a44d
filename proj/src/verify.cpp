#include "sgt/verify.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace sgt {

CorrelationStats correlation_stats(const CodeMatrix& m) {
  CorrelationStats stats;
  const std::size_t n = m.items();
  stats.w_min = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < n; ++i) {
    const auto ci = m.column_words(i);
    stats.w_min = std::min(stats.w_min, popcount(ci));
    for (std::size_t j = i + 1; j < n; ++j)
      stats.lambda_max = std::max(stats.lambda_max, popcount_and(ci, m.column_words(j)));
  }
  return stats;
}

VerifyReport disjunct_sufficient(const CodeMatrix& m, std::size_t d, std::size_t nu) {
  VerifyReport report;
  report.method = VerifyMethod::Sufficient;
  report.d = d;
  report.nu = nu;
  report.stats = correlation_stats(m);
  const auto& s = report.stats;
  if (s.lambda_max == 0)
    report.is_disjunct = s.w_min >= nu + 1;
  else
    report.is_disjunct = s.w_min >= d * s.lambda_max + nu + 1;
  report.conclusive = report.is_disjunct;
  return report;
}

namespace {

// Searches covering sets for one column. Candidates are the other columns
// that share at least one row with it, projected onto its support.
class ColumnSearch {
 public:
  ColumnSearch(const CodeMatrix& m, std::size_t d, std::size_t nu)
      : m_(m), d_(d), nu_(nu), slot_(m.items(), kNone) {}

  // Returns the witness for column i if one exists. `examined` accumulates
  // the number of visited sets; `tick` is called periodically and returns
  // false to abort.
  template <typename Tick>
  std::optional<Witness> run(std::size_t i, std::uint64_t& examined, Tick&& tick) {
    const auto support = col_support(m_, i);
    const std::size_t w = support.size();
    ++examined;
    if (w <= nu_) return Witness{i, {}, w};
    if (d_ == 0) return std::nullopt;

    local_words_ = words_for(w);
    candidates_.clear();
    masks_.clear();
    for (std::size_t k = 0; k < w; ++k) {
      for_each_set_bit(m_.row_words(support[k]), [&](std::size_t c) {
        if (c == i) return;
        if (slot_[c] == kNone) {
          slot_[c] = candidates_.size();
          candidates_.push_back(c);
          masks_.resize(masks_.size() + local_words_, 0);
        }
        masks_[slot_[c] * local_words_ + k / kWordBits] |= Word{1} << (k % kWordBits);
      });
    }
    for (auto c : candidates_) slot_[c] = kNone;

    // Index order, so the first set found at each size is lexicographically smallest.
    std::vector<std::size_t> order(candidates_.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return candidates_[a] < candidates_[b]; });
    sorted_masks_.assign(order.size() * local_words_, 0);
    overlaps_.assign(order.size(), 0);
    columns_.assign(order.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      std::copy_n(masks_.begin() + static_cast<std::ptrdiff_t>(order[k] * local_words_), local_words_,
                  sorted_masks_.begin() + static_cast<std::ptrdiff_t>(k * local_words_));
      columns_[k] = candidates_[order[k]];
      overlaps_[k] = popcount(mask(k));
    }
    build_suffix_bounds();

    std::vector<Word> uncovered(local_words_, ~Word{0});
    if (w % kWordBits != 0) uncovered.back() = (Word{1} << (w % kWordBits)) - 1;
    for (std::size_t size = 1; size <= std::min(d_, columns_.size()); ++size) {
      chosen_.clear();
      if (dfs(0, size, uncovered, w, examined, tick)) {
        Witness witness{i, {}, 0};
        for (auto k : chosen_) witness.cover.push_back(columns_[k]);
        witness.residual = residual_support(m_, i, witness.cover);
        return witness;
      }
      if (aborted_) return std::nullopt;
    }
    return std::nullopt;
  }

  bool aborted() const noexcept { return aborted_; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::span<const Word> mask(std::size_t k) const {
    return {sorted_masks_.data() + k * local_words_, local_words_};
  }

  // best_[r][pos]: sum of the r largest overlaps among candidates pos..end.
  void build_suffix_bounds() {
    const std::size_t count = columns_.size();
    best_.assign(d_ + 1, std::vector<std::size_t>(count + 1, 0));
    std::vector<std::size_t> top;  // descending, at most d_ entries
    for (std::size_t pos = count; pos-- > 0;) {
      top.insert(std::upper_bound(top.begin(), top.end(), overlaps_[pos], std::greater<>()), overlaps_[pos]);
      if (top.size() > d_) top.pop_back();
      std::size_t acc = 0;
      for (std::size_t r = 1; r <= d_; ++r) {
        if (r <= top.size()) acc += top[r - 1];
        best_[r][pos] = acc;
      }
    }
  }

  template <typename Tick>
  bool dfs(std::size_t pos, std::size_t remaining, std::span<const Word> uncovered, std::size_t residual,
           std::uint64_t& examined, Tick& tick) {
    if (remaining == 0) return residual <= nu_;
    std::vector<Word> next(local_words_);
    const std::size_t last = columns_.size() - remaining;
    for (std::size_t k = pos; k <= last; ++k) {
      if (residual > best_[remaining][k] + nu_) return false;
      ++examined;
      if ((examined & 0xfff) == 0 && !tick()) {
        aborted_ = true;
        return false;
      }
      const auto mk = mask(k);
      for (std::size_t x = 0; x < local_words_; ++x) next[x] = uncovered[x] & ~mk[x];
      const std::size_t next_residual = popcount(next);
      chosen_.push_back(k);
      if (dfs(k + 1, remaining - 1, next, next_residual, examined, tick)) return true;
      chosen_.pop_back();
      if (aborted_) return false;
    }
    return false;
  }

  const CodeMatrix& m_;
  std::size_t d_;
  std::size_t nu_;
  std::vector<std::size_t> slot_;
  std::size_t local_words_ = 0;
  std::vector<std::size_t> candidates_;  // columns in discovery order
  std::vector<Word> masks_;
  std::vector<Word> sorted_masks_;
  std::vector<std::size_t> overlaps_;
  std::vector<std::size_t> columns_;
  std::vector<std::vector<std::size_t>> best_;
  std::vector<std::size_t> chosen_;
  bool aborted_ = false;
};

}  // namespace

VerifyReport disjunct_exact(const CodeMatrix& m, std::size_t d, std::size_t nu, const ExactOptions& options) {
  VerifyReport report;
  report.method = VerifyMethod::Exact;
  report.d = d;
  report.nu = nu;
  report.stats = correlation_stats(m);

  const std::size_t n = m.items();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_bad{n};
  std::atomic<std::uint64_t> examined_total{0};
  std::atomic<std::size_t> columns_done{0};
  std::atomic<bool> over_budget{false};
  std::mutex mu;
  std::vector<std::optional<Witness>> found(n);
  std::vector<std::uint8_t> completed(n, 0);

  auto worker = [&] {
    ColumnSearch search(m, d, nu);
    std::uint64_t flushed = 0;
    std::uint64_t examined = 0;
    auto flush = [&] {
      const auto total = examined_total.fetch_add(examined - flushed) + (examined - flushed);
      flushed = examined;
      if (total > options.work_budget) over_budget = true;
      return !over_budget.load();
    };
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || i > first_bad.load() || over_budget.load()) break;
      auto witness = search.run(i, examined, [&] { return flush() && i < first_bad.load(); });
      flush();
      if (search.aborted()) break;
      columns_done.fetch_add(1);
      completed[i] = 1;
      if (witness) {
        std::size_t cur = first_bad.load();
        while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
        }
        std::lock_guard lock(mu);
        found[i] = std::move(witness);
      }
    }
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(worker);
  }

  report.subsets_examined = examined_total.load();
  const std::size_t bad = first_bad.load();
  if (over_budget.load() && bad == n) throw WorkBudgetExceeded(report.subsets_examined, columns_done.load(), n);
  if (bad < n) {
    // Columns below `bad` may still have been cut short by the budget.
    if (over_budget.load() && !std::all_of(completed.begin(), completed.begin() + static_cast<std::ptrdiff_t>(bad) + 1,
                                           [](std::uint8_t c) { return c != 0; }))
      throw WorkBudgetExceeded(report.subsets_examined, columns_done.load(), n);
    report.is_disjunct = false;
    report.witness = found[bad];
  } else {
    report.is_disjunct = true;
  }
  return report;
}

std::string format_report(const VerifyReport& r) {
  std::ostringstream out;
  out << "method=" << (r.method == VerifyMethod::Exact ? "exact" : "sufficient") << '\n';
  out << "d=" << r.d << '\n' << "nu=" << r.nu << '\n';
  if (r.conclusive)
    out << "is_disjunct=" << (r.is_disjunct ? "true" : "false") << '\n';
  else
    out << "is_disjunct=inconclusive\n";
  out << "w_min=" << r.stats.w_min << '\n' << "lambda_max=" << r.stats.lambda_max << '\n';
  if (r.method == VerifyMethod::Exact) out << "subsets_examined=" << r.subsets_examined << '\n';
  if (r.witness) {
    out << "witness_column=" << r.witness->column << '\n' << "witness_cover=";
    for (std::size_t k = 0; k < r.witness->cover.size(); ++k) out << (k ? " " : "") << r.witness->cover[k];
    out << '\n' << "witness_residual=" << r.witness->residual << '\n';
  }
  return out.str();
}

}  // namespace sgt
