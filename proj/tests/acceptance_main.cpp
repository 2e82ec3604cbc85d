// Acceptance suite: runs every success criterion at its stated budget and
// prints one pass/fail line per criterion.  Exit code is the number of
// failed criteria.  Everything is exact arithmetic; there are no tolerances.

#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "crystalca/harness.hpp"

using namespace cca;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (detail.empty()) detail = why;
  }
  void absorb(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
      if (!c.pass) fail(c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  }
};

std::string repeat_space(const std::string& factor, int count) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    if (i) out += ';';
    out += factor;
  }
  return out;
}

// Labels whose crystal size stays within the bound, per rank.
std::vector<CrystalLabel> labels_up_to(int n, std::size_t max_size) {
  std::vector<CrystalLabel> out;
  for (int a = 1; a <= n; ++a) {
    for (int j = 1;; ++j) {
      if (enumerate_crystal({n, a, j}).size() > max_size) break;
      out.push_back({n, a, j});
    }
  }
  return out;
}

void parallel_over(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned jobs =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  if (jobs == 1 || count < 4) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < jobs; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) fn(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

State random_state(const std::shared_ptr<const Space>& space, std::mt19937& rng) {
  std::vector<std::int32_t> comps(space->length());
  for (int i = 0; i < space->length(); ++i) {
    std::uniform_int_distribution<std::int32_t> pick(0, space->crystal(i)->size() - 1);
    comps[i] = pick(rng);
  }
  return State(space, std::move(comps));
}

// --- criterion 8 building blocks ---------------------------------------------

std::string table_invariants(const RTable& fwd, const RTable& bwd) {
  const auto& bl = *fwd.left_crystal();
  const auto& br = *fwd.right_crystal();
  const int n = fwd.left().n;
  const std::vector<std::shared_ptr<const Crystal>> src{fwd.left_crystal(),
                                                        fwd.right_crystal()};
  const std::vector<std::shared_ptr<const Crystal>> img{fwd.right_crystal(),
                                                        fwd.left_crystal()};
  for (std::int32_t x = 0; x < bl.size(); ++x) {
    for (std::int32_t y = 0; y < br.size(); ++y) {
      const RTable::Entry& en = fwd.at(x, y);
      if (en.h > 0) return "positive energy";
      const Weight wl = bl.weight_of(x), wr = br.weight_of(y);
      const Weight ol = br.weight_of(en.out_left), orr = bl.weight_of(en.out_right);
      for (std::size_t c = 0; c < wl.counts.size(); ++c)
        if (wl.counts[c] + wr.counts[c] != ol.counts[c] + orr.counts[c])
          return "weight not preserved";
      const RTable::Entry& back = bwd.at(en.out_left, en.out_right);
      if (back.out_left != x || back.out_right != y || back.h != en.h)
        return "reverse table is not inverse";
      const std::vector<std::int32_t> sc{x, y}, ic{en.out_left, en.out_right};
      for (int i = 0; i <= n; ++i) {
        const auto fs = tensor_f(i, {src, sc});
        const auto fi = tensor_f(i, {img, ic});
        if (fs.has_value() != fi.has_value()) return "f_i nullity differs";
        if (fs) {
          const RTable::Entry& mapped = fwd.at((*fs)[0], (*fs)[1]);
          if (mapped.out_left != (*fi)[0] || mapped.out_right != (*fi)[1])
            return "R does not commute with f_i";
        }
        const auto es = tensor_e(i, {src, sc});
        const auto ei = tensor_e(i, {img, ic});
        if (es.has_value() != ei.has_value()) return "e_i nullity differs";
        if (es) {
          const RTable::Entry& mapped = fwd.at((*es)[0], (*es)[1]);
          if (mapped.out_left != (*ei)[0] || mapped.out_right != (*ei)[1])
            return "R does not commute with e_i";
        }
      }
    }
  }
  return "";
}

Outcome property_suite() {
  Outcome out;
  auto& reg = RTableRegistry::global();

  // R-table invariants and the Yang-Baxter relation over every label pair
  // and triple with crystals of at most 35 elements, ranks 1..3.
  for (int n = 1; n <= 3 && out.pass; ++n) {
    const auto labels = labels_up_to(n, 35);

    std::vector<std::pair<CrystalLabel, CrystalLabel>> pairs;
    for (const auto& l : labels)
      for (const auto& r : labels) pairs.emplace_back(l, r);
    parallel_over(pairs.size(), [&](std::size_t k) { reg.get(pairs[k].first, pairs[k].second); });
    std::vector<std::string> pair_faults(pairs.size());
    parallel_over(pairs.size(), [&](std::size_t k) {
      const auto fwd = reg.get(pairs[k].first, pairs[k].second);
      const auto bwd = reg.get(pairs[k].second, pairs[k].first);
      pair_faults[k] = table_invariants(*fwd, *bwd);
    });
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (!pair_faults[k].empty())
        out.fail("rank " + std::to_string(n) + " pair " + pairs[k].first.to_string() +
                 " x " + pairs[k].second.to_string() + ": " + pair_faults[k]);
    }
    if (!out.pass) break;

    std::vector<std::array<CrystalLabel, 3>> triples;
    for (const auto& a : labels)
      for (const auto& b : labels)
        for (const auto& c : labels) triples.push_back({a, b, c});
    std::vector<char> yb(triples.size(), 1);
    parallel_over(triples.size(), [&](std::size_t k) {
      yb[k] = check_yang_baxter(triples[k][0], triples[k][1], triples[k][2]) ? 1 : 0;
    });
    for (std::size_t k = 0; k < triples.size(); ++k) {
      if (!yb[k])
        out.fail("rank " + std::to_string(n) + " Yang-Baxter fails on " +
                 triples[k][0].to_string() + " / " + triples[k][1].to_string() + " / " +
                 triples[k][2].to_string());
    }

    // Promotion has order n+1 on every one of these crystals.
    for (const auto& lab : labels) {
      const auto crystal = Crystal::get(lab);
      for (std::int32_t x = 0; x < crystal->size(); ++x) {
        std::int32_t cur = x;
        for (int k = 0; k <= n; ++k) cur = crystal->promote(cur);
        if (cur != x) out.fail("promotion order breaks on " + lab.to_string());
      }
    }
  }
  if (!out.pass) return out;

  // Commutativity and conservation on 200 random states per space.
  const std::vector<std::pair<int, std::string>> spaces = {
      {1, repeat_space("1,1", 13)},
      {1, "1,3;1,3;1,2;1,4;1,1;1,5;1,4;1,3"},
      {3, "1,3;1,2;1,1;1,3;1,2;1,1;1,2"},
      {3, "1,3;3,2;2,2;1,1"},
      {3, "1,2;1,1;1,2;1,1"},
      {3, "2,1;2,1;2,2"}};
  std::mt19937 rng(20240817);
  for (const auto& [n, text] : spaces) {
    const auto space = parse_space(n, text);
    std::map<std::pair<int, int>, TimeEvolution> ops;
    auto op = [&](int a, int j) -> const TimeEvolution& {
      auto it = ops.find({a, j});
      if (it == ops.end()) it = ops.emplace(std::make_pair(a, j), TimeEvolution(space, a, j)).first;
      return it->second;
    };
    std::uniform_int_distribution<int> pick_a(1, n), pick_j(1, space->j_max());
    for (int trial = 0; trial < 200; ++trial) {
      const State p = random_state(space, rng);
      const int a = pick_a(rng), j = pick_j(rng);
      const int b = pick_a(rng), k = pick_j(rng);
      const auto ta = op(a, j).apply(p);
      const auto tb = op(b, k).apply(p);
      const auto lhs = ta.next ? op(b, k).apply(*ta.next) : EvolutionResult{};
      const auto rhs = tb.next ? op(a, j).apply(*tb.next) : EvolutionResult{};
      if (lhs.next.has_value() != rhs.next.has_value()) {
        out.fail("commutativity nullity differs on " + p.to_string());
        break;
      }
      if (lhs.next && !(*lhs.next == *rhs.next)) {
        out.fail("evolutions do not commute on " + p.to_string());
        break;
      }
      // Conservation across the other evolution.
      if (tb.next && ta.next) {
        const auto after = op(a, j).apply(*tb.next);
        if (after.next && after.energy != ta.energy) {
          out.fail("energy not conserved on " + p.to_string());
          break;
        }
      }
    }
  }
  if (!out.pass) return out;

  // Extended Weyl equivariance on the reference grid space.
  {
    const auto space = parse_space(3, "1,1;1,1;1,3;1,1;1,1;1,1;1,2");
    const State grid0 = parse_state(space, "2.1.233.4.1.2.12");
    std::vector<State> samples{grid0};
    for (int trial = 0; trial < 100; ++trial) samples.push_back(random_state(space, rng));
    const std::vector<std::pair<int, int>> grid_ops{{1, 2}, {2, 1}, {3, 2}};
    for (const State& p : samples) {
      for (const auto& [r, l] : grid_ops) {
        const auto res = time_evolution(p, r, l);
        if (!res.next) continue;
        for (int i = 0; i <= 3; ++i) {
          const State wp = weyl_S(i, p);
          const auto wres = time_evolution(wp, r, l);
          if (!wres.next || !(*wres.next == weyl_S(i, *res.next)) ||
              wres.energy != res.energy) {
            out.fail("Weyl operator S_" + std::to_string(i) +
                     " does not intertwine T(" + std::to_string(r) + "," +
                     std::to_string(l) + ")");
            break;
          }
        }
        const State pp = promotion_state(p);
        const auto pres = time_evolution(pp, r, l);
        if (!pres.next || !(*pres.next == promotion_state(*res.next)) ||
            pres.energy != res.energy)
          out.fail("promotion does not intertwine the evolution");
        if (!out.pass) break;
      }
      if (!out.pass) break;
    }
  }
  if (!out.pass) return out;

  // Closed rank-one period formula equals the general one on every valid
  // content up to 13 boxes.
  for (int L = 1; L <= 13 && out.pass; ++L) {
    const auto space = parse_space(1, repeat_space("1,1", L));
    std::map<int, int> cur;
    std::function<void(int, int)> rec = [&](int max_part, int left) {
      if (!out.pass) return;
      if (max_part == 0) {
        Content m(1);
        for (const auto& [j, c] : cur) m.set(1, j, c);
        if (!is_valid_content(*space, m)) return;
        for (int l = 1; l <= L; ++l) {
          if (period_formula(*space, m, 1, l).period !=
              period_formula_sl2(*space, m, l).period)
            out.fail("closed formula mismatch at L=" + std::to_string(L) + " m=" +
                     m.to_string() + " l=" + std::to_string(l));
        }
        return;
      }
      for (int c = 0; c * max_part <= left; ++c) {
        if (c > 0) cur[max_part] = c;
        rec(max_part - 1, left - c * max_part);
      }
      cur.erase(max_part);
    };
    rec(L / 2, L / 2);
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
  };

  const std::vector<Criterion> criteria = {
      {"evolution grid and Weyl images", 1.0,
       [] {
         Outcome out;
         out.absorb(verify_grid());
         return out;
       }},
      {"period table: homogeneous rank one", 5.0,
       [] {
         Outcome out;
         out.absorb(verify_period_tables("homogeneous"));
         return out;
       }},
      {"period table: inhomogeneous rank one", 10.0,
       [] {
         Outcome out;
         out.absorb(verify_period_tables("inhomogeneous"));
         return out;
       }},
      {"period tables: rank three", 120.0,
       [] {
         Outcome out;
         out.absorb(verify_period_tables("rank3"));
         return out;
       }},
      {"classification: 1600-state space", 60.0,
       [] {
         Outcome out;
         out.absorb(verify_classification_tables("1600"));
         return out;
       }},
      {"classification: 720-state space", 60.0,
       [] {
         Outcome out;
         out.absorb(verify_classification_tables("720"));
         return out;
       }},
      {"fixed-weight population listings", 1.0,
       [] {
         Outcome out;
         out.absorb(verify_listings());
         return out;
       }},
      {"structural property suites", 180.0, property_suite},
      {"character diagnostic", 10.0,
       [] {
         Outcome out;
         out.absorb(verify_completeness_small());
         // Larger spaces produce a (non-gating) discrepancy report.
         const auto space = parse_space(3, "1,2;1,1;1,2;1,1");
         const CompletenessReport report = completeness_diagnostic(space);
         out.detail = "1600-state space: " + std::to_string(report.mismatches) +
                      " of " + std::to_string(report.rows.size()) +
                      " weights differ under truncation";
         return out;
       }},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[k].run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < criteria[k].budget_seconds;
    const bool pass = out.pass && in_budget;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  [" << k + 1 << "] " << criteria[k].name << "  ("
         << std::fixed << std::setprecision(2) << seconds << "s, budget "
         << criteria[k].budget_seconds << "s)";
    if (!out.detail.empty()) line << "  " << out.detail;
    if (!out.pass) line << "  <- check failed";
    else if (!in_budget) line << "  <- over budget";
    std::cout << line.str() << std::endl;
    failures += pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT") << std::endl;
  return failures;
}
