// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bound_oracle.hpp"
#include "oracle.hpp"
#include "sgt/bounds.hpp"
#include "sgt/construct.hpp"
#include "sgt/decode.hpp"
#include "sgt/error.hpp"
#include "sgt/rng.hpp"
#include "sgt/sim.hpp"
#include "sgt/verify.hpp"

using namespace sgt;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

bool valid_witness(const CodeMatrix& m, const VerifyReport& r) {
  if (!r.witness) return false;
  const Witness& w = *r.witness;
  if (w.cover.size() > r.d || std::count(w.cover.begin(), w.cover.end(), w.column) != 0) return false;
  return oracle::residual(oracle::dense(m), w.column, w.cover) <= r.nu && residual_support(m, w.column, w.cover) == w.residual;
}

bool all_equal(const std::vector<std::size_t>& v, std::size_t value) {
  return std::all_of(v.begin(), v.end(), [&](std::size_t x) { return x == value; });
}

void criterion1(Check& c) {
  const auto start = Clock::now();
  const CodeMatrix m = ks_build(Field(5), 2, 3, 25);
  c.expect(m.tests() == 15 && m.tests() == 3 * 5, "t != (d+1) sqrt(n) = 15");
  c.expect(all_equal(m.column_weights(), 3), "column weights != 3");
  c.expect(all_equal(m.row_weights(), 5), "row weights != 5");
  c.expect(disjunct_exact(m, 2, 0).is_disjunct, "KS(5) not 2-disjunct");
  const VerifyReport bad = disjunct_exact(m, 3, 0);
  c.expect(!bad.is_disjunct && valid_witness(m, bad), "KS(5) d=3 lacks a valid witness");

  const CodeMatrix m7 = ks_build(Field(7), 2, 5, 49);
  c.expect(m7.tests() == 35 && m7.items() == 49, "KS(7) is not 35x49");
  c.expect(all_equal(m7.column_weights(), 5) && all_equal(m7.row_weights(), 7), "KS(7) weights");
  c.expect(disjunct_exact(m7, 4, 0).is_disjunct, "KS(7) not 4-disjunct");
  const VerifyReport bad7 = disjunct_exact(m7, 5, 0);
  c.expect(!bad7.is_disjunct && valid_witness(m7, bad7), "KS(7) d=5 lacks a valid witness");
  const double s = seconds_since(start);
  c.expect(s < 5.0, "runtime " + std::to_string(s) + " s >= 5 s");
}

void criterion2(Check& c) {
  const auto start = Clock::now();
  const CodeMatrix m = ks_build(Field(4), 3, 3, 64);
  c.expect(m.tests() == 12 && m.tests() == (2 * 1 + 1) * 4, "t != (ld+1) n^(1/3) = 12");
  c.expect(disjunct_exact(m, 1, 0).is_disjunct, "not 1-disjunct");
  // every ordered pair (i, j): column j does not cover column i
  const auto dense = oracle::dense(m);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j < 64; ++j)
      if (i != j && oracle::residual(dense, i, {j}) == 0) ++covered;
  c.expect(covered == 0, std::to_string(covered) + " covered ordered pairs");
  const double s = seconds_since(start);
  c.expect(s < 1.0, "runtime " + std::to_string(s) + " s >= 1 s");
}

void criterion3(Check& c) {
  const auto start = Clock::now();
  const CodeMatrix m = ks_build(Field(7), 2, 5, 49);
  c.expect(disjunct_exact(m, 2, 2).is_disjunct, "not (2,2)-disjunct");
  std::size_t trials = 0, failures = 0;
  for (std::size_t a = 0; a < 49; ++a)
    for (std::size_t b = a + 1; b < 49; ++b) {
      const std::vector<std::size_t> s{a, b};
      const Outcome clean = or_columns(m, s);
      for (std::size_t r = 0; r < m.tests(); ++r) {
        Outcome y = clean;
        y.flip(r);
        ++trials;
        if (cover_decode(m, y, 2).items != s) ++failures;
      }
    }
  c.expect(trials == 1176 * 35, "trial count " + std::to_string(trials));
  c.expect(failures == 0, std::to_string(failures) + " decoding failures");
  const double s = seconds_since(start);
  c.expect(s < 120.0, "runtime " + std::to_string(s) + " s >= 120 s");
}

void criterion4(Check& c) {
  const auto start = Clock::now();
  const CodePlan p = plan_list_decodable(49, 2, 1, 1);
  c.expect(p.t_q == 6 && p.q == 7 && p.n == 49 && p.t == 42, "plan is not t_q=6, q=7, t=42");
  const CodeMatrix m = build(p);
  const KsListDecoder dec(p);
  std::size_t trials = 0, failures = 0;
  for (std::size_t a = 0; a < 49; ++a)
    for (std::size_t b = a + 1; b < 49; ++b) {
      const std::vector<std::size_t> s{a, b};
      const Outcome clean = or_columns(m, s);
      for (std::size_t r = 0; r <= m.tests(); ++r) {
        Outcome y = clean;
        if (r < m.tests()) y.flip(r);
        ++trials;
        if (dec.decode(y, 1).items != s) ++failures;
      }
    }
  c.expect(trials == 1176 * 43, "trial count " + std::to_string(trials));
  c.expect(failures == 0, std::to_string(failures) + " decoding failures");
  const double s = seconds_since(start);
  c.expect(s < 300.0, "runtime " + std::to_string(s) + " s >= 300 s");
}

// All sets of size <= d, both decoders against ground truth.
void equivalence(Check& c, const CodePlan& p, std::size_t d, const std::string& name) {
  const CodeMatrix m = build(p);
  const KsListDecoder dec(p);
  std::size_t sets = 0, bad = 0;
  for (std::size_t size = 0; size <= d; ++size) {
    if (size == 0) {
      const Outcome y(m.tests());
      ++sets;
      if (!dec.decode(y, 0).items.empty() || !cover_decode(m, y, 0).items.empty()) ++bad;
      continue;
    }
    oracle::for_each_subset(m.items(), size, [&](const std::vector<std::size_t>& s) {
      const Outcome y = or_columns(m, s);
      ++sets;
      if (dec.decode(y, 0).items != s || cover_decode(m, y, 0).items != s) ++bad;
      return true;
    });
  }
  c.expect(bad == 0, name + ": " + std::to_string(bad) + " of " + std::to_string(sets) + " sets disagree");
}

void criterion5(Check& c) {
  CodePlan p5 = make_ks_plan(5, 2, 3, 25);
  equivalence(c, p5, 2, "KS(5)");
  CodePlan p7 = make_ks_plan(7, 2, 5, 49);
  equivalence(c, p7, 4, "KS(7)");
  CodePlan p4 = make_ks_plan(4, 3, 3, 64);
  equivalence(c, p4, 1, "KS(4)");
}

void criterion6(Check& c) {
  const CodePlan a = plan_sparse_tests(25, 2, 0, 5);
  const BoundResult la = lb_sparse_tests(25, 2, 0, 5);
  c.expect(a.t == 15 && la.value == 15.0 && la.tests() == a.t, "(25,2,0,5): t=" + std::to_string(a.t));
  const CodePlan b = plan_sparse_tests(49, 2, 1, 7);
  const BoundResult lbb = lb_sparse_tests(49, 2, 1, 7);
  c.expect(b.t == 28 && lbb.value == 28.0 && lbb.tests() == b.t, "(49,2,1,7): t=" + std::to_string(b.t));
  c.expect(b.rho_bound <= 7 && a.rho_bound <= 5, "row budget exceeded");
}

double rel(double got, const oracle::Real& want) {
  return static_cast<double>(boost::multiprecision::abs(oracle::Real(got) - want) / want);
}

void criterion7(Check& c) {
  // 50 grid points per function
  const std::uint64_t ns[] = {7, 25, 49, 1000, 1000003};
  const std::uint64_t ds[] = {1, 2, 3, 4, 6};
  const std::uint64_t nus[] = {0, 1};
  double worst = 0.0;
  std::size_t points = 0;
  bool branches[4] = {false, false, false, false};
  bool row_branches[2] = {false, false};
  for (std::uint64_t n : ns)
    for (std::uint64_t d : ds)
      for (std::uint64_t nu : nus) {
        ++points;
        worst = std::max(worst, rel(lb_unrestricted(n, d).value, oracle::unrestricted(n, d)));
        // column budgets on all four branches: individual, pairs, l = 2, l = 3
        for (std::uint64_t w : {d + nu, d + nu + 1, 2 * d + nu + 1, 3 * d + nu + 1}) {
          const BoundResult b = lb_sparse_codewords(n, d, nu, w);
          worst = std::max(worst, rel(b.value, oracle::sparse_codewords(n, d, nu, w)));
          branches[static_cast<int>(b.rule) < 4 ? static_cast<int>(b.rule) : 0] = true;
          if (w > d + nu + 1 && d >= 2) {
            const std::uint64_t l = (w - nu - 1) / d;
            worst = std::max(worst, rel(private_sets_bound(n, d, nu, l), oracle::private_sets(n, d, nu, l)));
          }
        }
        for (std::uint64_t rho : {std::uint64_t{1}, d + 2, n}) {
          const BoundResult b = lb_sparse_tests(n, d, nu, rho);
          worst = std::max(worst, rel(b.value, oracle::sparse_tests(n, d, nu, rho)));
          row_branches[b.rule == BoundRule::RowCounting ? 0 : 1] |= b.rule != BoundRule::Unrestricted;
        }
      }
  c.expect(points == 50, "grid has " + std::to_string(points) + " points");
  c.expect(worst < 1e-10, "worst relative error " + std::to_string(worst));
  c.expect(branches[1] && branches[2] && branches[3], "column-budget branches not all exercised");
  c.expect(row_branches[0] && row_branches[1], "row-budget branches not both exercised");

  bool monotone = true;
  for (std::uint64_t n : ns)
    for (std::uint64_t d : ds)
      for (std::uint64_t nu : nus) {
        for (std::uint64_t w = 1; w < 40; ++w)
          monotone &= lb_sparse_codewords(n, d, nu, w + 1).value <= lb_sparse_codewords(n, d, nu, w).value;
        for (std::uint64_t rho = 1; rho < 40; ++rho)
          monotone &= lb_sparse_tests(n, d, nu, rho + 1).value <= lb_sparse_tests(n, d, nu, rho).value;
        monotone &= lb_sparse_codewords(n + 1, d, nu, d + nu + 1).value >= lb_sparse_codewords(n, d, nu, d + nu + 1).value;
        monotone &= lb_sparse_tests(n + 1, d, nu, 3).value >= lb_sparse_tests(n, d, nu, 3).value;
      }
  c.expect(monotone, "monotonicity violated");
}

void criterion8(Check& c, std::string& detail) {
  const auto start = Clock::now();
  const CodePlan p = make_random_plan(400, 2, 0, 0.5, 6.0, 0);
  c.expect(p.w == 12, "w != 12");
  c.expect(p.t == 240, "t != c (d+nu) n^(1-alpha) = 240");
  RandomSearchOptions opts;
  opts.max_attempts = 5;
  opts.row_weight_window = std::pair<std::uint64_t, std::uint64_t>{10, 40};
  opts.workers = 4;
  try {
    const RandomSearchResult r = search_random_disjunct(p, opts);
    c.expect(r.attempts <= 5, "more than 5 attempts");
    c.expect(disjunct_exact(r.matrix, 2, 0, {1'000'000'000, 4}).is_disjunct, "result is not 2-disjunct");
    const auto rows = r.matrix.row_weights();
    c.expect(*std::min_element(rows.begin(), rows.end()) >= 10 && *std::max_element(rows.begin(), rows.end()) <= 40,
             "row weight outside [10, 40]");
    detail = " (attempts " + std::to_string(r.attempts) + ", seed " + std::to_string(r.plan.seed) + ", row weights " +
             std::to_string(*std::min_element(rows.begin(), rows.end())) + ".." +
             std::to_string(*std::max_element(rows.begin(), rows.end())) + ")";
  } catch (const Error& e) {
    c.expect(false, e.what());
  }
  const double s = seconds_since(start);
  c.expect(s < 120.0, "runtime " + std::to_string(s) + " s >= 120 s");
}

// Median over rounds of the mean per-decode time on random pairs.
double decode_seconds(std::uint32_t q) {
  const CodePlan p = make_ks_plan(q, 2, 3, std::uint64_t{q} * q);
  const CodeMatrix m = build(p);
  const KsListDecoder dec(p);
  Rng rng(q);
  std::vector<Outcome> ys;
  for (int k = 0; k < 256; ++k) {
    const std::size_t a = uniform_below(rng, p.n);
    std::size_t b = uniform_below(rng, p.n);
    while (b == a) b = uniform_below(rng, p.n);
    ys.push_back(or_columns(m, std::vector<std::size_t>{std::min(a, b), std::max(a, b)}));
  }
  std::vector<double> rounds;
  std::size_t sink = 0;
  for (int round = 0; round < 15; ++round) {
    const auto start = Clock::now();
    for (int rep = 0; rep < 20; ++rep)
      for (const Outcome& y : ys) sink += dec.decode(y, 0).items.size();
    rounds.push_back(seconds_since(start) / (20.0 * ys.size()));
  }
  if (sink == 0) std::puts("");
  std::nth_element(rounds.begin(), rounds.begin() + rounds.size() / 2, rounds.end());
  return rounds[rounds.size() / 2];
}

void criterion9(Check& c, std::string& detail) {
  const std::uint32_t qs[] = {11, 23, 47};
  double times[3];
  for (int k = 0; k < 3; ++k) times[k] = decode_seconds(qs[k]);
  std::ostringstream s;
  for (int k = 1; k < 3; ++k) {
    const double doublings = std::log2(static_cast<double>(qs[k]) / qs[k - 1]);
    const double per_doubling = std::pow(times[k] / times[k - 1], 1.0 / doublings);
    s << " t=" << 3 * qs[k - 1] << "->" << 3 * qs[k] << ": x" << per_doubling << " per doubling";
    c.expect(per_doubling <= 3.0, "growth x" + std::to_string(per_doubling) + " per doubling of t");
  }
  detail = s.str();
}

void criterion10(Check& c, std::string& detail) {
  std::vector<CodeMatrix> corpus;
  for (std::size_t nu : {0, 1, 2}) corpus.push_back(identity_stack(12, nu));
  corpus.push_back(ks_build(Field(5), 2, 3, 25));
  corpus.push_back(ks_build(Field(4), 3, 3, 64));
  corpus.push_back(ks_build(Field(7), 2, 5, 49));
  corpus.push_back(ks_build(Field(8), 2, 4, 40));
  corpus.push_back(ks_build(Field(9), 3, 4, 60));
  corpus.push_back(ks_build(Field(11), 2, 6, 121));
  for (std::uint64_t seed = 0; seed < 8; ++seed) corpus.push_back(random_constant_weight(14 + seed, 24, 3 + seed % 3, seed));
  // near misses: drop one bit from a column, or duplicate a column
  {
    auto base = ks_build(Field(5), 2, 3, 25);
    for (std::size_t col : {0u, 7u, 24u}) {
      CodeMatrix::Builder b(base.tests(), base.items());
      for (std::size_t r = 0; r < base.tests(); ++r)
        for (std::size_t j = 0; j < base.items(); ++j) b.set(r, j, base.test(r, j));
      b.set(col_support(base, col)[1], col, false);
      corpus.push_back(std::move(b).build());
    }
    CodeMatrix::Builder dup(15, 25);
    for (std::size_t r = 0; r < 15; ++r)
      for (std::size_t j = 0; j < 25; ++j) dup.set(r, j, base.test(r, j == 11 ? 12 : j));
    corpus.push_back(std::move(dup).build());
    auto stack = identity_stack(10, 1);
    CodeMatrix::Builder extra(stack.tests(), stack.items());
    for (std::size_t r = 0; r < stack.tests(); ++r)
      for (std::size_t j = 0; j < stack.items(); ++j) extra.set(r, j, stack.test(r, j));
    extra.set(3, 5);
    extra.set(13, 5);
    corpus.push_back(std::move(extra).build());
  }
  std::size_t checks = 0, sufficient_true = 0, witnesses = 0;
  for (const CodeMatrix& m : corpus)
    for (std::size_t d = 1; d <= 3; ++d)
      for (std::size_t nu = 0; nu <= 2; ++nu) {
        ++checks;
        const VerifyReport exact = disjunct_exact(m, d, nu);
        const VerifyReport quick = disjunct_sufficient(m, d, nu);
        if (quick.is_disjunct) {
          ++sufficient_true;
          c.expect(exact.is_disjunct, "sufficient true but exact false");
        }
        if (!exact.is_disjunct) {
          ++witnesses;
          c.expect(valid_witness(m, exact), "witness fails re-validation");
        }
        if (m.items() <= 25 && d <= 2)
          c.expect(exact.is_disjunct == oracle::disjunct(oracle::dense(m), d, nu), "exact disagrees with brute force");
      }
  c.expect(corpus.size() >= 20, "corpus has " + std::to_string(corpus.size()) + " matrices");
  detail = " (" + std::to_string(corpus.size()) + " matrices, " + std::to_string(checks) + " checks, " +
           std::to_string(sufficient_true) + " sufficient-true, " + std::to_string(witnesses) + " witnesses)";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&, std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "KS d-disjunct at t = (d+1) sqrt(n), q = 5 and q = 7", [](Check& c, std::string&) { criterion1(c); }},
      {2, "KS(GF(4), 3, 3) is 1-disjunct with t = 12", [](Check& c, std::string&) { criterion2(c); }},
      {3, "noisy KS(GF(7), 2, 5) corrects every single flip", [](Check& c, std::string&) { criterion3(c); }},
      {4, "list decoding of all pairs under <= 1 flip", [](Check& c, std::string&) { criterion4(c); }},
      {5, "list and cover decoders agree with ground truth", [](Check& c, std::string&) { criterion5(c); }},
      {6, "row-budget plans meet the lower bound exactly", [](Check& c, std::string&) { criterion6(c); }},
      {7, "bound formulas vs 50-digit oracle, monotonicity", [](Check& c, std::string&) { criterion7(c); }},
      {8, "seeded random search, row weights in [10, 40]", criterion8},
      {9, "list-decode time grows at most 3x per doubling of t", criterion9},
      {10, "sufficient => exact, witnesses re-validate", criterion10},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    std::string detail;
    const auto start = Clock::now();
    try {
      cr.run(check, detail);
    } catch (const std::exception& e) {
      check.problems.push_back(std::string("exception: ") + e.what());
    }
    const double s = seconds_since(start);
    const bool ok = check.problems.empty();
    failed += ok ? 0 : 1;
    std::printf("%s [%d] %s (%.2f s)%s\n", ok ? "PASS" : "FAIL", cr.id, cr.name, s, detail.c_str());
    for (const std::string& p : check.problems) std::printf("      %s\n", p.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
