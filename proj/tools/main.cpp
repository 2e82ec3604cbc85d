// Command line laboratory for the periodic automaton: applies time
// evolutions and symmetries, predicts and measures dynamical periods,
// classifies state spaces by soliton content, and re-checks the built-in
// reference fixtures.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crystalca/harness.hpp"

namespace {

using namespace cca;

struct OpSpec {
  enum class Kind { T, S, Pr, PrInv, Rotate, Swap } kind = Kind::T;
  int p1 = 0, p2 = 0;
};

OpSpec parse_op(const std::string& text) {
  if (text == "pr") return {OpSpec::Kind::Pr};
  if (text == "pr^-1" || text == "pr-") return {OpSpec::Kind::PrInv};
  if (text == "rotate" || text == "pi") return {OpSpec::Kind::Rotate};
  const auto call = [&](const char* head) -> std::optional<std::string> {
    const std::string prefix = std::string(head) + "(";
    if (text.size() > prefix.size() + 0 && text.rfind(prefix, 0) == 0 && text.back() == ')')
      return text.substr(prefix.size(), text.size() - prefix.size() - 1);
    return std::nullopt;
  };
  if (auto inner = call("T")) {
    const auto parts = split_with_positions(*inner, ',');
    if (parts.size() != 2) throw ParseError("T expects T(r,l)", 0);
    return {OpSpec::Kind::T, static_cast<int>(parse_int(parts[0].first, 2)),
            static_cast<int>(parse_int(parts[1].first, 2 + parts[1].second))};
  }
  if (auto inner = call("S"))
    return {OpSpec::Kind::S, static_cast<int>(parse_int(*inner, 2))};
  if (auto inner = call("swap"))
    return {OpSpec::Kind::Swap, static_cast<int>(parse_int(*inner, 5))};
  throw ParseError("unknown operation '" + text +
                       "' (use T(r,l), S(i), pr, pr^-1, rotate, swap(j))",
                   0);
}

std::optional<State> apply_op(const State& p, const OpSpec& op) {
  switch (op.kind) {
    case OpSpec::Kind::T: {
      const EvolutionResult res = time_evolution(p, op.p1, op.p2);
      if (!res.next) return std::nullopt;
      return *res.next;
    }
    case OpSpec::Kind::S: return weyl_S(op.p1, p);
    case OpSpec::Kind::Pr: return promotion_state(p);
    case OpSpec::Kind::PrInv: return promotion_state_inverse(p);
    case OpSpec::Kind::Rotate: return rotate(p);
    case OpSpec::Kind::Swap: return factor_swap(op.p1, p);
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [piece, pos] : split_with_positions(text, ';')) {
    const auto parts = split_with_positions(piece, ',');
    if (parts.size() != 2) throw ParseError("expected 'r,l' pairs separated by ';'", pos);
    out.emplace_back(static_cast<int>(parse_int(parts[0].first, pos + parts[0].second)),
                     static_cast<int>(parse_int(parts[1].first, pos + parts[1].second)));
  }
  return out;
}

void apply_cache_dir(const std::string& dir) {
  if (!dir.empty()) RTableRegistry::global().set_cache_dir(dir);
}

struct CommonArgs {
  int rank = 0;
  std::string space;
  std::string cache_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_space = true) {
  cmd->add_option("--rank", args.rank, "rank n of the underlying algebra")->required();
  if (with_space)
    cmd->add_option("--space", args.space, "factors 'r,l;r,l;...'")->required();
  cmd->add_option("--cache-dir", args.cache_dir, "directory for persisted R tables")
      ->envname("CRYSTALCA_CACHE");
}

int print_checks(const std::vector<CheckResult>& checks) {
  int failures = 0;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.pass && !c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << '\n';
    failures += c.pass ? 0 : 1;
  }
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic box-ball automaton laboratory"};
  app.set_version_flag("--version", std::string(CRYSTALCA_VERSION));
  app.require_subcommand(1);

  int exit_code = 0;

  // evolve
  CommonArgs ev_args;
  std::string ev_state, ev_op;
  int ev_steps = 1;
  bool ev_trace = false;
  auto* evolve = app.add_subcommand("evolve", "apply an operation to a state");
  add_common(evolve, ev_args);
  evolve->add_option("--state", ev_state, "state, components joined by '.'")->required();
  evolve->add_option("--op", ev_op, "T(r,l), S(i), pr, pr^-1, rotate or swap(j)")->required();
  evolve->add_option("--steps", ev_steps, "number of applications");
  evolve->add_flag("--trace", ev_trace, "print every intermediate state");
  evolve->callback([&] {
    apply_cache_dir(ev_args.cache_dir);
    const auto space = parse_space(ev_args.rank, ev_args.space);
    State cur = parse_state(space, ev_state);
    const OpSpec op = parse_op(ev_op);
    for (int step = 0; step < ev_steps; ++step) {
      const auto next = apply_op(cur, op);
      if (!next) {
        std::cout << "0\n";
        exit_code = 1;
        return;
      }
      cur = *next;
      if (ev_trace) std::cout << cur.to_string() << '\n';
    }
    if (!ev_trace) std::cout << cur.to_string() << '\n';
  });

  // period
  CommonArgs pe_args;
  std::string pe_state, pe_evolutions, pe_format = "text";
  auto* period = app.add_subcommand("period", "predicted and measured dynamical periods");
  add_common(period, pe_args);
  period->add_option("--state", pe_state, "state, components joined by '.'")->required();
  period->add_option("--evolutions", pe_evolutions, "evolutions 'r,l;r,l;...'")->required();
  period->add_option("--format", pe_format, "text, csv or json");
  period->callback([&] {
    apply_cache_dir(pe_args.cache_dir);
    const auto space = parse_space(pe_args.rank, pe_args.space);
    const State p = parse_state(space, pe_state);
    const auto rows = verify_periods(p, parse_pairs(pe_evolutions));
    std::cout << render_period_rows(rows, pe_format);
    for (const auto& row : rows) {
      if (row.flag != PeriodRowResult::Flag::Equal &&
          row.flag != PeriodRowResult::Flag::ProperDivisor)
        exit_code = 1;
    }
  });

  // content
  CommonArgs co_args;
  std::string co_state;
  bool co_verbose = false;
  auto* content = app.add_subcommand("content", "soliton content of a state");
  add_common(content, co_args);
  content->add_option("--state", co_state, "state, components joined by '.'")->required();
  content->add_flag("--verbose", co_verbose, "also print the energy table");
  content->callback([&] {
    apply_cache_dir(co_args.cache_dir);
    const auto space = parse_space(co_args.rank, co_args.space);
    const State p = parse_state(space, co_state);
    const StateAnalysis res = analyze_state(p);
    if (!res.evolvable) {
      std::cout << "not evolvable: T(" << res.witness.first << "," << res.witness.second
                << ") vanishes\n";
      exit_code = 1;
      return;
    }
    std::cout << res.content.to_string() << '\n';
    if (co_verbose) {
      for (int a = 1; a <= space->rank(); ++a) {
        std::cout << "E^(" << a << "):";
        for (const long long e : res.energies.values[a - 1]) std::cout << ' ' << e;
        std::cout << '\n';
      }
    }
  });

  // classify
  CommonArgs cl_args;
  std::string cl_format = "text";
  int cl_jobs = 0;
  long long cl_bound = 10'000'000;
  auto* classify_cmd = app.add_subcommand("classify", "group all evolvable states by content");
  add_common(classify_cmd, cl_args);
  classify_cmd->add_option("--format", cl_format, "text, csv or json");
  classify_cmd->add_option("--jobs", cl_jobs, "worker threads (0 = hardware)");
  classify_cmd->add_option("--bound", cl_bound, "refuse state spaces larger than this");
  classify_cmd->callback([&] {
    apply_cache_dir(cl_args.cache_dir);
    const auto space = parse_space(cl_args.rank, cl_args.space);
    ClassifyOptions opts;
    opts.jobs = cl_jobs;
    opts.bound = cl_bound;
    std::cout << render_classification(classify(space, opts), *space, cl_format);
  });

  // omega
  CommonArgs om_args;
  std::string om_content;
  bool om_verbose = false;
  auto* omega_cmd = app.add_subcommand("omega", "state count for a content");
  add_common(omega_cmd, om_args);
  omega_cmd->add_option("--content", om_content, "content 'rows/rows/...'")->required();
  omega_cmd->add_flag("--verbose", om_verbose, "also print weight, orbit and vacancies");
  omega_cmd->callback([&] {
    const auto space = parse_space(om_args.rank, om_args.space);
    const Content m = parse_content(om_args.rank, om_content);
    std::cout << omega(*space, m).str() << '\n';
    if (om_verbose) {
      const VacancyData v = vacancy_numbers(*space, m);
      std::cout << "valid " << (is_valid_content(*space, m) ? "yes" : "no") << '\n';
      for (const auto& [aj, p] : v.on_support)
        std::cout << "p^(" << aj.first << ")_" << aj.second << " = " << p << '\n';
      std::cout << "det F = " << det_exact(f_matrix(*space, m)).str() << '\n';
      const DominantWeight lambda = lambda_weight(*space, m);
      std::cout << "lambda " << lambda.to_string() << ", orbit " << orbit_size(lambda)
                << '\n';
    }
  });

  // rtable
  CommonArgs rt_args;
  std::string rt_left, rt_right;
  bool rt_dump = false, rt_list = false;
  auto* rtable_cmd = app.add_subcommand("rtable", "build or inspect R tables");
  add_common(rtable_cmd, rt_args, /*with_space=*/false);
  rtable_cmd->add_option("--left", rt_left, "left crystal 'a,j'");
  rtable_cmd->add_option("--right", rt_right, "right crystal 'b,k'");
  rtable_cmd->add_flag("--dump", rt_dump, "print the table in cache format");
  rtable_cmd->add_flag("--list", rt_list, "list tables present in the cache directory");
  rtable_cmd->callback([&] {
    apply_cache_dir(rt_args.cache_dir);
    if (rt_list) {
      if (rt_args.cache_dir.empty()) throw ParseError("--list needs --cache-dir", 0);
      const CacheManifest manifest = CacheManifest::scan(rt_args.cache_dir);
      for (const auto& entry : manifest.entries)
        std::cout << "n" << entry.left.n << "  " << entry.left.to_string() << " x "
                  << entry.right.to_string() << "  " << entry.file.string() << '\n';
      return;
    }
    if (rt_left.empty() || rt_right.empty())
      throw ParseError("rtable needs --left and --right (or --list)", 0);
    const auto lp = parse_pairs(rt_left), rp = parse_pairs(rt_right);
    if (lp.size() != 1 || rp.size() != 1)
      throw ParseError("--left/--right expect a single 'a,j'", 0);
    const CrystalLabel left{rt_args.rank, lp[0].first, lp[0].second};
    const CrystalLabel right{rt_args.rank, rp[0].first, rp[0].second};
    const auto table = RTableRegistry::global().get(left, right);
    if (rt_dump) {
      write_rtable(std::cout, *table);
    } else {
      long long hmin = 0;
      for (std::int32_t x = 0; x < table->left_crystal()->size(); ++x)
        for (std::int32_t y = 0; y < table->right_crystal()->size(); ++y)
          hmin = std::min<long long>(hmin, table->at(x, y).h);
      std::cout << "pairs " << table->pair_count() << ", energies in [" << hmin << ", 0]\n";
    }
  });

  // verify
  std::string ve_suite = "all";
  std::string ve_cache;
  auto* verify_cmd = app.add_subcommand("verify", "re-check the built-in reference fixtures");
  verify_cmd->add_option("--suite", ve_suite,
                         "grid, periods, classification, listings, completeness or all");
  verify_cmd->add_option("--cache-dir", ve_cache, "directory for persisted R tables")
      ->envname("CRYSTALCA_CACHE");
  verify_cmd->callback([&] {
    apply_cache_dir(ve_cache);
    int failures = 0;
    bool matched = false;
    const auto want = [&](const char* name) {
      const bool yes = ve_suite == "all" || ve_suite == name;
      matched = matched || yes;
      return yes;
    };
    if (want("grid")) failures += print_checks(verify_grid());
    if (want("periods")) failures += print_checks(verify_period_tables());
    if (want("classification")) failures += print_checks(verify_classification_tables());
    if (want("listings")) failures += print_checks(verify_listings());
    if (want("completeness")) {
      failures += print_checks(verify_completeness_small());
      const auto space = parse_space(3, "1,2;1,1;1,2;1,1");
      std::cout << "character diagnostic, 1600-state space (informational):\n"
                << render_completeness(completeness_diagnostic(space), 12);
    }
    if (!matched) throw ParseError("unknown suite '" + ve_suite + "'", 0);
    if (failures > 0) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const cca::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
