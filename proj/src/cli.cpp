#include "sgt/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "sgt/bounds.hpp"
#include "sgt/construct.hpp"
#include "sgt/decode.hpp"
#include "sgt/error.hpp"
#include "sgt/matrix.hpp"
#include "sgt/sim.hpp"
#include "sgt/verify.hpp"

namespace sgt {

namespace {

struct PlanArgs {
  std::uint64_t n = 0;
  std::uint64_t d = 1;
  std::uint64_t nu = 0;
  std::optional<std::uint64_t> w_max;
  std::optional<std::uint64_t> rho_max;
  std::optional<std::uint64_t> list_l;

  void add_to(CLI::App& app) {
    app.add_option("--n", n, "number of items")->required()->check(CLI::PositiveNumber);
    app.add_option("--d", d, "bound on defectives")->check(CLI::PositiveNumber);
    app.add_option("--nu", nu, "error parameter (0 = noiseless)");
    auto* w = app.add_option("--wmax", w_max, "maximum column weight (tests per item)");
    auto* r = app.add_option("--rhomax", rho_max, "maximum row weight (items per test)");
    auto* l = app.add_option("--list-l", list_l, "list-decodable plan with k_q = l + 1");
    w->excludes(r)->excludes(l);
    r->excludes(l);
  }

  bool given() const { return w_max || rho_max || list_l; }

  CodePlan plan() const {
    if (w_max) return plan_sparse_codewords(n, d, nu, *w_max);
    if (rho_max) return plan_sparse_tests(n, d, nu, *rho_max);
    if (list_l) return plan_list_decodable(n, d, nu, *list_l);
    throw Error(Errc::InvalidArgument, "one of --wmax, --rhomax, --list-l is required");
  }

  BoundResult bound(const CodePlan& p) const {
    if (rho_max) return lb_sparse_tests(n, d, nu, *rho_max);
    return lb_sparse_codewords(n, d, nu, w_max ? *w_max : p.w);
  }
};

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(v[k]);
  }
  return out;
}

void print_plan(std::ostream& out, const CodePlan& p) {
  for (const auto& [k, v] : plan_metadata(p)) out << k << '=' << v << '\n';
}

std::string full(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::int64_t gap_of(const CodePlan& p, const BoundResult& b) {
  return static_cast<std::int64_t>(p.t) - static_cast<std::int64_t>(b.tests());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse group testing codes: plan, build, verify, decode, simulate", "sgt"};
  app.fallthrough();
  app.require_subcommand(1);
  unsigned workers = 1;
  app.add_option("--workers", workers, "worker threads for verify/simulate")->check(CLI::PositiveNumber);

  // plan
  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "choose a construction and report its lower-bound gap");
  plan_args.add_to(*plan_cmd);

  // build
  PlanArgs build_plan;
  std::string build_kind;
  std::uint64_t b_q = 0, b_kq = 0, b_tq = 0, b_t = 0, b_w = 0, b_seed = 0, b_retries = 5;
  double b_alpha = 0.0, b_c = 0.0;
  std::string build_out;
  auto* build_cmd = app.add_subcommand("build", "construct a matrix and write it as GTM1");
  build_cmd->add_option("--n", build_plan.n, "number of items")->required()->check(CLI::PositiveNumber);
  build_cmd->add_option("--d", build_plan.d, "bound on defectives");
  build_cmd->add_option("--nu", build_plan.nu, "error parameter");
  build_cmd->add_option("--wmax", build_plan.w_max, "plan under a column-weight budget");
  build_cmd->add_option("--rhomax", build_plan.rho_max, "plan under a row-weight budget");
  build_cmd->add_option("--list-l", build_plan.list_l, "list-decodable Kautz-Singleton plan");
  build_cmd->add_option("--kind", build_kind, "explicit construction: ks | identity | random");
  build_cmd->add_option("--q", b_q, "field size (ks)");
  build_cmd->add_option("--kq", b_kq, "outer-code dimension (ks)");
  build_cmd->add_option("--tq", b_tq, "outer-code block length (ks)");
  build_cmd->add_option("--t", b_t, "number of tests (random)");
  build_cmd->add_option("--w", b_w, "column weight (random)");
  build_cmd->add_option("--alpha", b_alpha, "row-weight exponent (random, with --c)");
  build_cmd->add_option("--c", b_c, "size constant (random, with --alpha)");
  build_cmd->add_option("--seed", b_seed, "random seed (default 0)");
  build_cmd->add_option("--retries", b_retries, "random: attempts until exactly verified (0 = no verification)");
  build_cmd->add_option("--out", build_out, "output GTM1 file")->required();

  // verify
  std::string verify_in;
  std::size_t verify_d = 1, verify_nu = 0;
  bool verify_exact = false;
  std::uint64_t verify_budget = 1'000'000'000;
  auto* verify_cmd = app.add_subcommand("verify", "check (d, nu)-disjunctness");
  verify_cmd->add_option("--in", verify_in, "GTM1 file")->required();
  verify_cmd->add_option("--d", verify_d, "bound on defectives")->required();
  verify_cmd->add_option("--nu", verify_nu, "error parameter");
  verify_cmd->add_flag("--exact", verify_exact, "exhaustive check instead of the weight/correlation test");
  verify_cmd->add_option("--budget", verify_budget, "maximum covering sets examined");

  // decode
  std::string decode_in, decode_y;
  std::size_t decode_nu = 0;
  bool decode_list = false;
  auto* decode_cmd = app.add_subcommand("decode", "recover the defective set from an outcome file");
  decode_cmd->add_option("--in", decode_in, "GTM1 file")->required();
  decode_cmd->add_option("--y", decode_y, "outcome file (one line of t bits)")->required();
  decode_cmd->add_option("--nu", decode_nu, "error parameter");
  decode_cmd->add_flag("--list", decode_list, "Kautz-Singleton list recovery (needs plan metadata)");

  // simulate
  std::string sim_in, sim_decoder = "cover", sim_format = "text";
  SimConfig sim;
  std::optional<std::size_t> sim_d;
  bool sim_exhaustive = false;
  auto* sim_cmd = app.add_subcommand("simulate", "OR-channel device discovery trials");
  sim_cmd->add_option("--in", sim_in, "GTM1 file")->required();
  sim_cmd->add_option("--d", sim_d, "design bound on active devices (default: file metadata)");
  sim_cmd->add_option("--nu", sim.nu, "decoder error parameter");
  sim_cmd->add_option("--active", sim.d_active, "active devices per trial")->required();
  sim_cmd->add_option("--errors", sim.error_weight, "bit flips per trial");
  sim_cmd->add_option("--trials", sim.trials, "number of random trials");
  sim_cmd->add_option("--seed", sim.seed, "random seed (default 0)");
  sim_cmd->add_option("--decoder", sim_decoder, "cover | list")->check(CLI::IsMember({"cover", "list"}));
  sim_cmd->add_flag("--exhaustive", sim_exhaustive, "enumerate every active set and error pattern");
  sim_cmd->add_flag("--mixed", sim.mixed_sizes, "draw the active-set size uniformly from [0, active]");
  sim_cmd->add_flag("--force", sim.allow_beyond_guarantee, "allow parameters beyond the decoder guarantee");
  sim_cmd->add_option("--format", sim_format, "text | kv")->check(CLI::IsMember({"text", "kv"}));

  // bounds
  PlanArgs bounds_args;
  std::string sweep;
  std::uint64_t sweep_from = 0, sweep_to = 0, sweep_step = 1;
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate lower bounds, optionally sweeping one parameter");
  bounds_args.add_to(*bounds_cmd);
  bounds_cmd->add_option("--sweep", sweep, "parameter to sweep: n | d | nu | wmax | rhomax")
      ->check(CLI::IsMember({"n", "d", "nu", "wmax", "rhomax"}));
  bounds_cmd->add_option("--from", sweep_from, "first sweep value");
  bounds_cmd->add_option("--to", sweep_to, "last sweep value");
  bounds_cmd->add_option("--step", sweep_step, "sweep increment")->check(CLI::PositiveNumber);

  // bench
  PlanArgs bench_args;
  unsigned bench_reps = 5;
  auto* bench_cmd = app.add_subcommand("bench", "time build, verify and decode for a plan");
  bench_args.add_to(*bench_cmd);
  bench_cmd->add_option("--reps", bench_reps, "repetitions per timing")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidParameters;
  }

  try {
    if (plan_cmd->parsed()) {
      if (!plan_args.given()) throw Error(Errc::InvalidArgument, "one of --wmax, --rhomax, --list-l is required");
      const CodePlan p = plan_args.plan();
      const BoundResult b = plan_args.bound(p);
      print_plan(out, p);
      out << "lower_bound=" << full(b.value) << '\n'
          << "lower_bound_tests=" << b.tests() << '\n'
          << "bound_rule=" << to_string(b.rule) << '\n'
          << "gap=" << gap_of(p, b) << '\n';
      return kExitOk;
    }

    if (build_cmd->parsed()) {
      CodePlan p;
      CodeMatrix m;
      if (build_kind.empty()) {
        p = build_plan.plan();
        m = build(p);
      } else {
        switch (parse_plan_kind(build_kind)) {
          case PlanKind::KautzSingleton:
            p = make_ks_plan(b_q, b_kq, b_tq, build_plan.n);
            p.d = build_plan.d;
            p.nu = build_plan.nu;
            m = build(p);
            break;
          case PlanKind::IdentityStack:
            p = make_identity_plan(build_plan.n, build_plan.nu);
            p.d = build_plan.d;
            m = build(p);
            break;
          case PlanKind::RandomConstantWeight:
            if (b_alpha > 0.0) {
              p = make_random_plan(build_plan.n, build_plan.d, build_plan.nu, b_alpha, b_c, b_seed);
            } else {
              p.kind = PlanKind::RandomConstantWeight;
              p.n = build_plan.n;
              p.d = build_plan.d;
              p.nu = build_plan.nu;
              p.t = b_t;
              p.w = b_w;
              p.seed = b_seed;
              p.rho_bound = build_plan.n;
            }
            if (b_retries > 0) {
              RandomSearchOptions opts;
              opts.max_attempts = b_retries;
              opts.workers = workers;
              auto found = search_random_disjunct(p, opts);
              p = found.plan;
              m = std::move(found.matrix);
            } else {
              m = build(p);
            }
            break;
        }
      }
      write_gtm_file(build_out, m, plan_metadata(p));
      out << "wrote " << build_out << " (" << m.tests() << " x " << m.items() << ")\n";
      print_plan(out, p);
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const GtmFile file = read_gtm_file(verify_in);
      const VerifyReport report = verify_exact
                                      ? disjunct_exact(file.matrix, verify_d, verify_nu, {verify_budget, workers})
                                      : disjunct_sufficient(file.matrix, verify_d, verify_nu);
      out << format_report(report);
      return report.is_disjunct ? kExitOk : kExitPropertyFailed;
    }

    if (decode_cmd->parsed()) {
      const GtmFile file = read_gtm_file(decode_in);
      const Outcome y = read_outcome_file(decode_y);
      DecodeResult result;
      if (decode_list) {
        const auto plan = plan_from_metadata(file.metadata);
        if (!plan) throw Error(Errc::PlanMismatch, "file carries no plan metadata");
        result = ks_list_decode(*plan, y, decode_nu);
      } else {
        result = cover_decode(file.matrix, y, decode_nu);
      }
      out << join(result.items) << '\n';
      return kExitOk;
    }

    if (sim_cmd->parsed()) {
      const GtmFile file = read_gtm_file(sim_in);
      const auto plan = plan_from_metadata(file.metadata);
      sim.d = sim_d ? *sim_d : (plan && plan->d > 0 ? plan->d : sim.d_active);
      sim.decoder = sim_decoder == "list" ? DecodeMethod::ListRecovery : DecodeMethod::Cover;
      sim.error_mode = sim_exhaustive ? ErrorMode::Exhaustive : ErrorMode::Random;
      sim.workers = workers;
      const SimReport report = run_sim(file.matrix, plan, sim);
      out << (sim_format == "kv" ? format_kv(report) : format_text(report));
      return report.failure_count == 0 ? kExitOk : kExitPropertyFailed;
    }

    if (bounds_cmd->parsed()) {
      if (!bounds_args.w_max && !bounds_args.rho_max)
        throw Error(Errc::InvalidArgument, "bounds needs --wmax or --rhomax");
      out << "parameter,value,n,d,nu,constraint,constraint_value,lower_bound,lower_bound_tests,rule,"
             "achievable_t,plan_kind,gap\n";
      auto row = [&](const std::string& param, std::uint64_t value, PlanArgs a) {
        const CodePlan p = a.plan();
        const BoundResult b = a.bound(p);
        out << param << ',' << value << ',' << a.n << ',' << a.d << ',' << a.nu << ','
            << (a.w_max ? "wmax" : "rhomax") << ',' << (a.w_max ? *a.w_max : *a.rho_max) << ',' << full(b.value)
            << ',' << b.tests() << ',' << to_string(b.rule) << ',' << p.t << ',' << to_string(p.kind) << ','
            << gap_of(p, b) << '\n';
      };
      if (sweep.empty()) {
        row("none", 0, bounds_args);
        return kExitOk;
      }
      if (sweep_to < sweep_from) throw Error(Errc::InvalidArgument, "--to must be >= --from");
      for (std::uint64_t v = sweep_from; v <= sweep_to; v += sweep_step) {
        PlanArgs a = bounds_args;
        if (sweep == "n") a.n = v;
        if (sweep == "d") a.d = v;
        if (sweep == "nu") a.nu = v;
        if (sweep == "wmax") {
          if (!a.w_max) throw Error(Errc::InvalidArgument, "sweeping wmax needs --wmax");
          a.w_max = v;
        }
        if (sweep == "rhomax") {
          if (!a.rho_max) throw Error(Errc::InvalidArgument, "sweeping rhomax needs --rhomax");
          a.rho_max = v;
        }
        row(sweep, v, a);
      }
      return kExitOk;
    }

    if (bench_cmd->parsed()) {
      if (!bench_args.given()) throw Error(Errc::InvalidArgument, "one of --wmax, --rhomax, --list-l is required");
      using clock = std::chrono::steady_clock;
      const CodePlan p = bench_args.plan();
      auto time_of = [&](auto&& fn) {
        double best = INFINITY;
        for (unsigned r = 0; r < bench_reps; ++r) {
          const auto start = clock::now();
          fn();
          best = std::min(best, std::chrono::duration<double>(clock::now() - start).count());
        }
        return best;
      };
      CodeMatrix m;
      const double build_s = time_of([&] { m = build(p); });
      const double suff_s = time_of([&] { (void)disjunct_sufficient(m, p.d, p.nu); });
      std::vector<std::size_t> active;
      for (std::size_t k = 0; k < p.d && k < m.items(); ++k) active.push_back(k * (m.items() / std::max<std::size_t>(p.d, 1)));
      const Outcome y = or_columns(m, active);
      const double cover_s = time_of([&] { (void)cover_decode(m, y, p.nu); });
      print_plan(out, p);
      out << std::setprecision(6) << "build_seconds=" << build_s << '\n'
          << "verify_sufficient_seconds=" << suff_s << '\n'
          << "cover_decode_seconds=" << cover_s << '\n';
      if (p.kind == PlanKind::KautzSingleton && p.t_q >= p.k_q + p.nu) {
        const KsListDecoder decoder(p);
        const double list_s = time_of([&] { (void)decoder.decode(y, p.nu); });
        out << "list_decode_seconds=" << list_s << '\n';
      }
      return kExitOk;
    }
  } catch (const WorkBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudgetExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::WorkBudgetExceeded ? kExitBudgetExceeded : kExitInvalidParameters;
  }
  return kExitInvalidParameters;
}

}  // namespace sgt
