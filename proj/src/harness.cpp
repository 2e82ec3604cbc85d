#include "crystalca/harness.hpp"

#include <algorithm>
#include <exception>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace cca {

namespace {

std::vector<long long> strides_of(const Space& space) {
  const int L = space.length();
  std::vector<long long> stride(L, 1);
  for (int i = L - 2; i >= 0; --i)
    stride[i] = stride[i + 1] * space.crystal(i + 1)->size();
  return stride;
}

long long to_ll(const BigInt& v, const char* what) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error(std::string(what) + " exceeds 64-bit range");
  return v.convert_to<long long>();
}

void run_chunks(long long count, int jobs,
                const std::function<void(long long, long long, int)>& fn) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, 32);
  if (count <= 0) return;
  if (jobs == 1 || count < 2048) {
    fn(0, count, 0);
    return;
  }
  const long long chunk = (count + jobs - 1) / jobs;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(jobs);
  for (int w = 0; w < jobs; ++w) {
    const long long lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&fn, &errors, lo, hi, w] {
      try {
        fn(lo, hi, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace

BigInt state_count(const Space& space) {
  BigInt count = 1;
  for (int i = 0; i < space.length(); ++i) count *= space.crystal(i)->size();
  return count;
}

State state_from_ordinal(const std::shared_ptr<const Space>& space, long long ordinal) {
  const auto stride = strides_of(*space);
  std::vector<std::int32_t> comps(space->length());
  for (int i = 0; i < space->length(); ++i) {
    comps[i] = static_cast<std::int32_t>(ordinal / stride[i]);
    ordinal %= stride[i];
  }
  return State(space, std::move(comps));
}

long long state_ordinal(const State& p) {
  const auto stride = strides_of(*p.space());
  long long ordinal = 0;
  for (int i = 0; i < p.space()->length(); ++i)
    ordinal += stride[i] * p.comps()[i];
  return ordinal;
}

void for_each_state(const std::shared_ptr<const Space>& space,
                    const std::function<void(const State&)>& fn, const BigInt& bound) {
  const BigInt count = state_count(*space);
  if (count > bound)
    throw std::invalid_argument("state space holds " + count.str() +
                                " states, above the bound " + bound.str());
  const long long n = to_ll(count, "state count");
  const auto stride = strides_of(*space);
  std::vector<std::int32_t> comps(space->length(), 0);
  for (long long ord = 0; ord < n; ++ord) {
    fn(State(space, comps));
    for (int i = space->length() - 1; i >= 0; --i) {
      if (++comps[i] < space->crystal(i)->size()) break;
      comps[i] = 0;
    }
  }
}

// --- classification ------------------------------------------------------------

Classification classify(const std::shared_ptr<const Space>& space,
                        const ClassifyOptions& options) {
  const BigInt count = state_count(*space);
  if (count > options.bound)
    throw std::invalid_argument("state space holds " + count.str() +
                                " states, above the bound " + options.bound.str());
  const long long total = to_ll(count, "state count");
  const auto stride = strides_of(*space);
  const int L = space->length();

  // Resolve all carrier crystals and R tables up front; the parallel scan
  // below only reads them.
  std::vector<TimeEvolution> ops;
  ops.reserve(static_cast<std::size_t>(space->rank()) * space->j_max());
  for (int a = 1; a <= space->rank(); ++a)
    for (int j = 1; j <= space->j_max(); ++j) ops.emplace_back(space, a, j);

  const int jobs = options.jobs;
  struct WorkerOut {
    std::map<Content, std::vector<long long>> pops;
    std::map<std::pair<int, int>, long long> witness;
  };
  std::vector<WorkerOut> outs(32);

  auto decode = [&](long long ord, std::vector<std::int32_t>& comps) {
    for (int i = 0; i < L; ++i) {
      comps[i] = static_cast<std::int32_t>(ord / stride[i]);
      ord %= stride[i];
    }
  };

  run_chunks(total, jobs, [&](long long lo, long long hi, int w) {
    std::vector<std::int32_t> comps(L);
    for (long long ord = lo; ord < hi; ++ord) {
      decode(ord, comps);
      const StateAnalysis res = analyze_with_ops(*space, ops, comps);
      if (res.evolvable)
        outs[w].pops[res.content].push_back(ord);
      else
        ++outs[w].witness[res.witness];
    }
  });

  Classification out;
  out.total_states = count;
  std::map<Content, std::vector<long long>> pops;
  for (const auto& part : outs) {
    for (const auto& [m, list] : part.pops) {
      auto& dst = pops[m];
      dst.insert(dst.end(), list.begin(), list.end());
    }
    for (const auto& [wit, cnt] : part.witness) out.witness_histogram[wit] += cnt;
  }

  // Dense content ids for the closure pass.
  std::vector<std::int32_t> content_id(total, -1);
  {
    std::int32_t id = 0;
    for (const auto& [m, list] : pops) {
      for (long long ord : list) content_id[ord] = id;
      ++id;
    }
  }

  const std::size_t nrows = pops.size();
  std::vector<char> open(nrows, 0);  // 1 = some image escapes P(m)
  {
    std::vector<long long> evolvable_ordinals;
    for (const auto& [m, list] : pops)
      evolvable_ordinals.insert(evolvable_ordinals.end(), list.begin(), list.end());
    std::sort(evolvable_ordinals.begin(), evolvable_ordinals.end());

    std::vector<std::vector<char>> open_w(32, std::vector<char>(nrows, 0));
    run_chunks(static_cast<long long>(evolvable_ordinals.size()), jobs,
               [&](long long lo, long long hi, int w) {
                 std::vector<std::int32_t> comps(L);
                 for (long long k = lo; k < hi; ++k) {
                   const long long ord = evolvable_ordinals[k];
                   decode(ord, comps);
                   const std::int32_t my = content_id[ord];
                   for (const TimeEvolution& op : ops) {
                     const auto step = op.apply_indices(comps);
                     if (!step)
                       throw InvariantViolation(
                           "evolvable state lost an evolution during the closure scan");
                     long long img = 0;
                     for (int i = 0; i < L; ++i) img += stride[i] * step->comps[i];
                     if (content_id[img] != my) open_w[w][my] = 1;
                   }
                 }
               });
    for (const auto& part : open_w)
      for (std::size_t k = 0; k < nrows; ++k) open[k] = open[k] || part[k];
  }

  std::int32_t id = 0;
  for (auto& [m, list] : pops) {
    if (!is_valid_content(*space, m))
      throw InvariantViolation(
          "evolvable state carries a content with a negative vacancy number: " +
          m.to_string());
    ClassificationRow row;
    row.m = m;
    row.lambda = lambda_weight(*space, m);
    row.orbit = orbit_size(row.lambda);
    row.population = static_cast<long long>(list.size());
    row.omega_count = omega(*space, m);
    row.closed = !open[id];
    row.ratio_ok = row.population % row.orbit == 0 &&
                   BigInt(row.population / row.orbit) == row.omega_count;
    out.evolvable += row.population;
    out.rows.push_back(std::move(row));
    if (options.keep_populations) out.populations.push_back(std::move(list));
    ++id;
  }
  return out;
}

bool closure_check(const std::shared_ptr<const Space>& space,
                   std::span<const long long> population_ordinals) {
  std::vector<long long> sorted(population_ordinals.begin(), population_ordinals.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<TimeEvolution> ops;
  for (int a = 1; a <= space->rank(); ++a)
    for (int j = 1; j <= space->j_max(); ++j) ops.emplace_back(space, a, j);
  const auto stride = strides_of(*space);
  const int L = space->length();

  for (const long long ord : sorted) {
    const State p = state_from_ordinal(space, ord);
    for (const TimeEvolution& op : ops) {
      const auto step = op.apply_indices(p.comps());
      if (!step) return false;
      long long img = 0;
      for (int i = 0; i < L; ++i) img += stride[i] * step->comps[i];
      if (!std::binary_search(sorted.begin(), sorted.end(), img)) return false;
    }
  }
  return true;
}

// --- period verification ---------------------------------------------------------

std::vector<PeriodRowResult> verify_periods(
    const State& p, std::span<const std::pair<int, int>> evolutions) {
  const Content m = soliton_content(p);
  std::vector<PeriodRowResult> rows;
  rows.reserve(evolutions.size());
  for (const auto& [r, l] : evolutions) {
    PeriodRowResult row;
    row.rl = {r, l};
    PeriodPrediction pred = period_formula(*p.space(), m, r, l);
    row.ratios = std::move(pred.ratios);
    row.predicted = pred.period;
    const long long cap = to_ll(row.predicted, "predicted period");
    const OrbitResult orbit = orbit_period(p, r, l, cap);
    row.status = orbit.status;
    switch (orbit.status) {
      case OrbitStatus::Returned:
        row.measured = orbit.steps;
        if (row.measured == cap)
          row.flag = PeriodRowResult::Flag::Equal;
        else if (cap % row.measured == 0)
          row.flag = PeriodRowResult::Flag::ProperDivisor;
        else
          row.flag = PeriodRowResult::Flag::Mismatch;
        break;
      case OrbitStatus::Died:
        row.measured = orbit.steps;
        row.flag = PeriodRowResult::Flag::Died;
        break;
      case OrbitStatus::NotReturned:
        row.measured = 0;
        row.flag = PeriodRowResult::Flag::Mismatch;
        break;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- character diagnostic --------------------------------------------------------

namespace {

// Every multiplicity map {length -> count} with weighted size <= budget.
std::vector<std::map<int, int>> partitions_up_to(int budget) {
  std::vector<std::map<int, int>> out;
  std::map<int, int> cur;
  auto rec = [&](auto&& self, int max_part, int left) -> void {
    if (max_part == 0) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c * max_part <= left; ++c) {
      if (c > 0) cur[max_part] = c;
      self(self, max_part - 1, left - c * max_part);
    }
    cur.erase(max_part);
  };
  rec(rec, budget, budget);
  return out;
}

}  // namespace

CompletenessReport completeness_diagnostic(const std::shared_ptr<const Space>& space,
                                           long long per_color_bound) {
  const int n = space->rank();
  const int bound = per_color_bound < 0 ? space->total_boxes()
                                        : static_cast<int>(per_color_bound);

  // Signed sum over all string contents within the truncation.
  std::map<std::vector<long long>, BigInt> bethe;
  const auto options = partitions_up_to(bound);
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    Content m(n);
    for (int a = 1; a <= n; ++a)
      for (const auto& [j, c] : options[pick[a - 1]]) m.set(a, j, c);
    bethe[weight_tuple(*space, m)] += omega(*space, m);

    int pos = n - 1;
    while (pos >= 0 && ++pick[pos] == options.size()) pick[pos--] = 0;
    if (pos < 0) break;
  }

  // Exact per-weight counts of B by convolving factor characters.
  std::map<std::vector<long long>, BigInt> exact;
  exact[std::vector<long long>(n + 1, 0)] = 1;
  for (int i = 0; i < space->length(); ++i) {
    std::map<std::vector<long long>, BigInt> next;
    const auto& crystal = *space->crystal(i);
    for (const auto& [w, c] : exact) {
      for (std::int32_t x = 0; x < crystal.size(); ++x) {
        std::vector<long long> nw = w;
        const Weight& ew = crystal.weight_of(x);
        for (int t = 0; t <= n; ++t) nw[t] += ew.counts[t];
        next[std::move(nw)] += c;
      }
    }
    exact = std::move(next);
  }

  CompletenessReport report;
  std::map<std::vector<long long>, std::pair<BigInt, BigInt>> merged;
  for (const auto& [w, v] : bethe)
    if (v != 0) merged[w].first = v;
  for (const auto& [w, v] : exact) merged[w].second = v;
  for (const auto& [w, pair] : merged) {
    report.rows.push_back({w, pair.first, pair.second});
    if (pair.first != pair.second) ++report.mismatches;
  }
  report.all_match = report.mismatches == 0;
  return report;
}

// --- reference fixtures ----------------------------------------------------------

namespace {

std::string repeat_space(const std::string& factor, int count) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    if (i) out += ';';
    out += factor;
  }
  return out;
}

constexpr const char* kGridSpace = "1,1;1,1;1,3;1,1;1,1;1,1;1,2";

// Rows top to bottom: p, T^{(1)}_2 p, T^{(2)}_1 T^{(1)}_2 p, T^{(3)}_2 ... p;
// columns left to right: identity, S_0, S_1 composed on the left column.
constexpr const char* kGrid[4][3] = {
    {"2.1.233.4.1.2.12", "2.4.233.4.1.2.24", "1.4.133.4.1.2.14"},
    {"1.2.123.3.4.1.22", "4.2.234.3.4.1.22", "4.1.134.3.4.1.12"},
    {"1.2.112.3.2.3.24", "1.2.244.3.2.3.24", "1.2.144.3.1.3.14"},
    {"2.3.112.4.2.3.12", "2.3.244.4.2.3.12", "2.3.144.4.1.3.11"},
};
constexpr std::pair<int, int> kGridOps[3] = {{1, 2}, {2, 1}, {3, 2}};

struct PeriodRowFixture {
  int r, l;
  std::vector<const char*> ratios;
  long long period;
};

struct PeriodTableFixture {
  const char* name;
  int rank;
  std::string space;
  const char* state;
  const char* content;
  std::vector<PeriodRowFixture> rows;
};

std::vector<PeriodTableFixture> period_fixtures() {
  std::vector<PeriodTableFixture> tables;
  tables.push_back({"rank1 homogeneous L=13",
                    1,
                    repeat_space("1,1", 13),
                    "1.2.2.1.1.2.1.1.2.2.2.2.1",
                    "3,2,1",
                    {{1, 1, {"1", "13", "13", "13"}, 13},
                     {1, 2, {"1", "91/3", "91/16", "91/16"}, 91},
                     {1, 3, {"1", "91", "273/16", "273/107"}, 273}}});
  tables.push_back({"rank1 inhomogeneous",
                    1,
                    "1,3;1,3;1,2;1,4;1,1;1,5;1,4;1,3",
                    "122.112.12.1222.2.11111.1122.111",
                    "4,3,2,1",
                    {{1, 1, {"1", "2"}, 2},
                     {1, 2, {"1", "7", "7/2", "21", "42"}, 42},
                     {1, 3, {"1", "14", "7", "21/4", "21/2"}, 42},
                     {1, 4, {"1", "21", "21/2", "63/8", "126/29"}, 126}}});
  tables.push_back(
      {"rank3 row factors",
       3,
       "1,3;1,2;1,1;1,3;1,2;1,1;1,2",
       "134.34.1.134.23.1.13",
       "4,3,2/3,1/1",
       {{1, 1, {"1", "380/39", "95/6", "95/6", "380/31", "380/27", "380/29"}, 380},
        {1, 2, {"1", "190/39", "95/12", "95/12", "190/31", "190/27", "190/29"}, 190},
        {2, 1, {"1", "190/13", "95/4", "95/4", "190/137", "190/9", "190/73"}, 190},
        {2, 2, {"1", "76/5", "38/3", "38/3", "76/41", "76/21", "76/31"}, 76},
        {2, 3, {"1", "95/6", "95/11", "95/11", "95/34", "95/48", "95/41"}, 95},
        {3, 1, {"1", "380/13", "95/2", "95/2", "380/137", "380/9", "380/263"}, 380}}});
  tables.push_back({"rank3 mixed shapes",
                    3,
                    "1,3;3,2;2,2;1,1",
                    "233.12/23/34.11/34.1",
                    "3/3/2",
                    {{1, 1, {"1", "11/2", "11", "22"}, 22},
                     {1, 2, {"1", "11/4", "11/2", "11"}, 11},
                     {1, 3, {"1", "11/6", "11/3", "22/3"}, 22},
                     {2, 1, {"1", "11", "33/7", "66/7"}, 66},
                     {2, 2, {"1", "11/2", "33/14", "33/7"}, 33},
                     {2, 3, {"1", "11/3", "11/7", "22/7"}, 22},
                     {3, 2, {"1", "11", "33/7", "33/20"}, 33}}});
  return tables;
}

struct ClassRowFixture {
  const char* m;
  const char* lambda;
  long long orbit;
  long long population;
  long long omega;
  bool starred;
};

struct ClassTableFixture {
  const char* name;
  int rank;
  const char* space;
  long long total;
  long long evolvable;
  std::vector<ClassRowFixture> rows;
};

std::vector<ClassTableFixture> classification_fixtures() {
  std::vector<ClassTableFixture> tables;
  tables.push_back({"row factor space, 1600 states",
                    3,
                    "1,2;1,1;1,2;1,1",
                    1600,
                    824,
                    {{"-/-/-", "(6,0,0,0)", 4, 4, 1, false},
                     {"1/-/-", "(5,1,0,0)", 12, 48, 4, false},
                     {"1,1/-/-", "(4,2,0,0)", 12, 24, 2, false},
                     {"2/-/-", "(4,2,0,0)", 12, 72, 6, false},
                     {"2,1/-/-", "(3,3,0,0)", 6, 24, 4, false},
                     {"3/-/-", "(3,3,0,0)", 6, 36, 6, false},
                     {"1,1/1/-", "(4,1,1,0)", 12, 96, 8, false},
                     {"2,2/2/-", "(2,2,2,0)", 4, 24, 12, true},
                     {"2,1/1/-", "(3,2,1,0)", 24, 432, 18, false},
                     {"1,1,1/1,1/1", "(3,1,1,1)", 4, 16, 4, false},
                     {"2,1,1/1,1/1", "(2,2,1,1)", 6, 48, 8, false}}});
  tables.push_back({"column factor space, 720 states",
                    3,
                    "2,1;2,1;2,2",
                    720,
                    518,
                    {{"-/-/-", "(4,4,0,0)", 6, 6, 1, false},
                     {"-/1/-", "(4,3,1,0)", 24, 72, 3, false},
                     {"-/1,1/1", "(4,2,1,1)", 12, 36, 3, false},
                     {"-/2/-", "(4,2,2,0)", 12, 48, 4, false},
                     {"1/1,1/-", "(3,3,2,0)", 12, 36, 3, false},
                     {"1/1,1/1", "(3,3,1,1)", 6, 72, 12, false},
                     {"1/2,1/1", "(3,2,2,1)", 12, 240, 20, false},
                     {"2/2,2/2", "(2,2,2,2)", 1, 8, 32, true}}});
  return tables;
}

struct ListingFixture {
  const char* content;
  std::vector<const char*> states;
};

std::vector<ListingFixture> listing_fixtures() {
  return {{"1,1,1/1,1/1", {"11.2.13.4", "12.3.14.1", "13.4.11.2", "14.1.12.3"}},
          {"2,1,1/1,1/1",
           {"11.2.23.4", "12.2.13.4", "12.3.24.1", "13.4.12.2", "14.1.22.3",
            "22.3.14.1", "23.4.11.2", "24.1.12.3"}}};
}

void check(std::vector<CheckResult>& out, const std::string& name, bool pass,
           const std::string& detail = "") {
  out.push_back({name, pass, detail});
}

}  // namespace

std::vector<CheckResult> verify_grid() {
  std::vector<CheckResult> out;
  const auto space = parse_space(3, kGridSpace);
  State cur = parse_state(space, kGrid[0][0]);

  for (int row = 0; row < 4; ++row) {
    if (row > 0) {
      const auto [r, l] = kGridOps[row - 1];
      const EvolutionResult res = time_evolution(cur, r, l);
      if (!res.next) {
        check(out, "grid row " + std::to_string(row), false, "evolution vanished");
        return out;
      }
      cur = *res.next;
    }
    check(out, "grid column row " + std::to_string(row), cur.to_string() == kGrid[row][0],
          cur.to_string() + " vs " + kGrid[row][0]);
    const State s0 = weyl_S(0, cur);
    check(out, "grid S0 row " + std::to_string(row), s0.to_string() == kGrid[row][1],
          s0.to_string() + " vs " + kGrid[row][1]);
    const State s1 = weyl_S(1, s0);
    check(out, "grid S1 row " + std::to_string(row), s1.to_string() == kGrid[row][2],
          s1.to_string() + " vs " + kGrid[row][2]);
  }
  return out;
}

std::vector<CheckResult> verify_period_tables(std::string_view filter) {
  std::vector<CheckResult> out;
  for (const auto& table : period_fixtures()) {
    if (std::string(table.name).find(filter) == std::string::npos) continue;
    const auto space = parse_space(table.rank, table.space);
    const State p = parse_state(space, table.state);
    const Content expect_m = parse_content(table.rank, table.content);
    const Content m = soliton_content(p);
    check(out, std::string(table.name) + ": content", m == expect_m,
          m.to_string() + " vs " + table.content);

    std::vector<std::pair<int, int>> rls;
    for (const auto& row : table.rows) rls.emplace_back(row.r, row.l);
    const auto rows = verify_periods(p, rls);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& got = rows[k];
      const auto& want = table.rows[k];
      std::string got_ratios, want_ratios;
      for (std::size_t i = 0; i < got.ratios.size(); ++i)
        got_ratios += (i ? "," : "") + to_string(got.ratios[i]);
      for (std::size_t i = 0; i < want.ratios.size(); ++i)
        want_ratios += (i ? std::string(",") : std::string()) + want.ratios[i];
      const std::string label = std::string(table.name) + " T(" +
                                std::to_string(want.r) + "," + std::to_string(want.l) + ")";
      const bool ok = got_ratios == want_ratios && got.predicted == want.period &&
                      got.status == OrbitStatus::Returned && got.measured == want.period;
      check(out, label, ok,
            "ratios " + got_ratios + " predicted " + got.predicted.str() + " measured " +
                std::to_string(got.measured) + "; expected " + want_ratios + " -> " +
                std::to_string(want.period));
    }
  }
  return out;
}

std::vector<CheckResult> verify_classification_tables(std::string_view filter) {
  std::vector<CheckResult> out;
  for (const auto& table : classification_fixtures()) {
    if (std::string(table.name).find(filter) == std::string::npos) continue;
    const auto space = parse_space(table.rank, table.space);
    const Classification c = classify(space);
    check(out, std::string(table.name) + ": totals",
          c.total_states == table.total && c.evolvable == table.evolvable,
          c.total_states.str() + "/" + std::to_string(c.evolvable) + " vs " +
              std::to_string(table.total) + "/" + std::to_string(table.evolvable));
    check(out, std::string(table.name) + ": row count",
          c.rows.size() == table.rows.size(),
          std::to_string(c.rows.size()) + " vs " + std::to_string(table.rows.size()));

    for (const auto& want : table.rows) {
      const auto it = std::find_if(c.rows.begin(), c.rows.end(), [&](const auto& row) {
        return row.m.to_string() == want.m;
      });
      const std::string label = std::string(table.name) + ": row " + want.m;
      if (it == c.rows.end()) {
        check(out, label, false, "content missing from classification");
        continue;
      }
      const bool fields_ok = it->lambda.to_string() == want.lambda &&
                             it->orbit == want.orbit && it->population == want.population &&
                             it->omega_count == want.omega;
      const bool closure_ok = it->closed == !want.starred;
      const bool ratio_ok = want.starred
                                ? (it->population % it->orbit == 0 &&
                                   !it->ratio_ok &&
                                   it->omega_count % BigInt(it->population / it->orbit) == 0)
                                : it->ratio_ok;
      check(out, label, fields_ok && closure_ok && ratio_ok,
            it->lambda.to_string() + " orbit " + std::to_string(it->orbit) + " pop " +
                std::to_string(it->population) + " omega " + it->omega_count.str() +
                (it->closed ? " closed" : " open"));
    }
  }
  return out;
}

std::vector<CheckResult> verify_listings() {
  std::vector<CheckResult> out;
  const auto space = parse_space(3, "1,2;1,1;1,2;1,1");
  ClassifyOptions opts;
  opts.keep_populations = true;
  const Classification c = classify(space, opts);

  for (const auto& fixture : listing_fixtures()) {
    const Content m = parse_content(3, fixture.content);
    const std::string label = std::string("fixed-weight population of ") + fixture.content;
    std::size_t row = 0;
    while (row < c.rows.size() && !(c.rows[row].m == m)) ++row;
    if (row == c.rows.size()) {
      check(out, label, false, "content missing");
      continue;
    }
    const DominantWeight& lambda = c.rows[row].lambda;
    std::vector<std::string> got;
    for (const long long ord : c.populations[row]) {
      const State p = state_from_ordinal(space, ord);
      const Weight w = p.weight();
      bool dominant = true;
      for (std::size_t t = 0; t < w.counts.size(); ++t)
        dominant = dominant && w.counts[t] == lambda.parts[t];
      if (dominant) got.push_back(p.to_string());
    }
    std::vector<std::string> want(fixture.states.begin(), fixture.states.end());
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    std::string detail;
    for (const auto& s : got) detail += s + " ";
    check(out, label, got == want, detail);
  }
  return out;
}

std::vector<CheckResult> verify_completeness_small() {
  std::vector<CheckResult> out;
  const auto space = parse_space(1, "1,1;1,1");
  const CompletenessReport report = completeness_diagnostic(space);
  check(out, "character diagnostic rank1 L=2: all weights match", report.all_match,
        std::to_string(report.mismatches) + " mismatches");
  const std::map<std::vector<long long>, long long> expect = {
      {{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}};
  bool rows_ok = report.rows.size() == expect.size();
  for (const auto& row : report.rows) {
    const auto it = expect.find(row.weight);
    rows_ok = rows_ok && it != expect.end() && BigInt(it->second) == row.bethe_sum &&
              BigInt(it->second) == row.exact_count;
  }
  check(out, "character diagnostic rank1 L=2: matches the square expansion", rows_ok);
  return out;
}

// --- rendering ---------------------------------------------------------------------

namespace {

std::string flag_name(PeriodRowResult::Flag flag) {
  switch (flag) {
    case PeriodRowResult::Flag::Equal: return "equal";
    case PeriodRowResult::Flag::ProperDivisor: return "divisor";
    case PeriodRowResult::Flag::Mismatch: return "mismatch";
    case PeriodRowResult::Flag::Died: return "died";
  }
  return "?";
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string render_classification(const Classification& c, const Space& space,
                                  const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    out << "m,lambda,orbit,population,omega,closed,ratio_ok\n";
    for (const auto& row : c.rows) {
      out << csv_quote(row.m.to_string()) << ',' << csv_quote(row.lambda.to_string())
          << ',' << row.orbit << ',' << row.population << ',' << row.omega_count.str()
          << ',' << (row.closed ? "true" : "false") << ','
          << (row.ratio_ok ? "true" : "false") << '\n';
    }
    out << "# states," << c.total_states.str() << '\n';
    out << "# evolvable," << c.evolvable << '\n';
    return out.str();
  }
  if (format == "json") {
    nlohmann::json doc;
    doc["rank"] = space.rank();
    doc["space"] = space.to_string();
    doc["states"] = c.total_states.str();
    doc["evolvable"] = c.evolvable;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : c.rows) {
      nlohmann::json jrow;
      jrow["m"] = row.m.to_string();
      jrow["lambda"] = row.lambda.parts;
      jrow["orbit"] = row.orbit;
      jrow["population"] = row.population;
      jrow["omega"] = row.omega_count.convert_to<long long>();
      jrow["closed"] = row.closed;
      jrow["ratio_ok"] = row.ratio_ok;
      doc["rows"].push_back(std::move(jrow));
    }
    return doc.dump(2) + "\n";
  }

  std::size_t mw = 7, lw = 6;
  for (const auto& row : c.rows) {
    mw = std::max(mw, row.m.to_string().size());
    lw = std::max(lw, row.lambda.to_string().size());
  }
  out << std::left << std::setw(static_cast<int>(mw) + 2) << "content"
      << std::setw(static_cast<int>(lw) + 2) << "lambda" << std::setw(8) << "orbit"
      << std::setw(8) << "|P(m)|" << std::setw(8) << "omega" << std::setw(8) << "closed"
      << "ratio\n";
  for (const auto& row : c.rows) {
    out << std::left << std::setw(static_cast<int>(mw) + 2) << row.m.to_string()
        << std::setw(static_cast<int>(lw) + 2) << row.lambda.to_string() << std::setw(8)
        << row.orbit << std::setw(8) << row.population << std::setw(8)
        << row.omega_count.str() << std::setw(8) << (row.closed ? "yes" : "no*")
        << (row.ratio_ok ? "ok" : "divisor") << '\n';
  }
  out << "states " << c.total_states.str() << ", evolvable " << c.evolvable << '\n';
  return out.str();
}

std::string render_period_rows(std::span<const PeriodRowResult> rows,
                               const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    out << "r,l,ratios,predicted,measured,status\n";
    for (const auto& row : rows) {
      std::string ratios;
      for (std::size_t i = 0; i < row.ratios.size(); ++i)
        ratios += (i ? " " : "") + to_string(row.ratios[i]);
      out << row.rl.first << ',' << row.rl.second << ',' << csv_quote(ratios) << ','
          << row.predicted.str() << ',' << row.measured << ',' << flag_name(row.flag)
          << '\n';
    }
    return out.str();
  }
  if (format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json jrow;
      jrow["r"] = row.rl.first;
      jrow["l"] = row.rl.second;
      jrow["ratios"] = nlohmann::json::array();
      for (const auto& q : row.ratios) jrow["ratios"].push_back(to_string(q));
      jrow["predicted"] = row.predicted.convert_to<long long>();
      jrow["measured"] = row.measured;
      jrow["status"] = flag_name(row.flag);
      doc.push_back(std::move(jrow));
    }
    return doc.dump(2) + "\n";
  }

  for (const auto& row : rows) {
    out << "T(" << row.rl.first << ',' << row.rl.second << ")  LCM of ";
    for (std::size_t i = 0; i < row.ratios.size(); ++i)
      out << (i ? ", " : "") << to_string(row.ratios[i]);
    out << "  predicted " << row.predicted.str() << "  measured " << row.measured << "  "
        << flag_name(row.flag) << '\n';
  }
  return out.str();
}

std::string render_completeness(const CompletenessReport& report, long long max_rows) {
  std::ostringstream out;
  out << (report.all_match ? "all weights match" : "discrepancies present") << " ("
      << report.mismatches << " mismatching weights of " << report.rows.size() << ")\n";
  long long shown = 0;
  for (const auto& row : report.rows) {
    if (shown >= max_rows) {
      out << "...\n";
      break;
    }
    out << "  (";
    for (std::size_t i = 0; i < row.weight.size(); ++i)
      out << (i ? "," : "") << row.weight[i];
    out << ")  signed sum " << row.bethe_sum.str() << "  exact " << row.exact_count.str()
        << (row.bethe_sum == row.exact_count ? "" : "  <-- differs") << '\n';
    ++shown;
  }
  return out.str();
}

}  // namespace cca
