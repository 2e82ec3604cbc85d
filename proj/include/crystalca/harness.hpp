#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crystalca/bethe.hpp"

namespace cca {

// --- exhaustive enumeration ----------------------------------------------------

BigInt state_count(const Space& space);

// Visits every state exactly once in canonical order (first factor most
// significant, components in canonical crystal order).  Refuses with the
// computed size when it exceeds the bound.
void for_each_state(const std::shared_ptr<const Space>& space,
                    const std::function<void(const State&)>& fn,
                    const BigInt& bound = BigInt(10'000'000));

State state_from_ordinal(const std::shared_ptr<const Space>& space, long long ordinal);
long long state_ordinal(const State& p);

// --- classification ------------------------------------------------------------

struct ClassificationRow {
  Content m;
  DominantWeight lambda;
  long long orbit = 0;       // |W lambda(m)|
  long long population = 0;  // |P(m)|
  BigInt omega_count;        // Omega(m)
  bool closed = false;       // one-step images of P(m) stay in P(m)
  bool ratio_ok = false;     // Omega(m) == |P(m)| / |W lambda(m)|
};

struct Classification {
  BigInt total_states;
  long long evolvable = 0;
  std::vector<ClassificationRow> rows;  // sorted by content
  // Failing (a, j) histogram over non-evolvable states, for auditing.
  std::map<std::pair<int, int>, long long> witness_histogram;
  // State ordinals per content, parallel to rows (kept on request).
  std::vector<std::vector<long long>> populations;
};

struct ClassifyOptions {
  int jobs = 0;  // 0 = hardware concurrency
  BigInt bound = BigInt(10'000'000);
  bool keep_populations = false;
};

Classification classify(const std::shared_ptr<const Space>& space,
                        const ClassifyOptions& options = {});

// True iff every one-step image T^{(a)}_j (a = 1..n, j <= cutoff) of every
// state in the population stays inside it.  The population must be the full
// P(m) for the verdict to mean closure.
bool closure_check(const std::shared_ptr<const Space>& space,
                   std::span<const long long> population_ordinals);

// --- period verification ---------------------------------------------------------

struct PeriodRowResult {
  std::pair<int, int> rl;
  std::vector<BigRat> ratios;
  BigInt predicted;
  OrbitStatus status = OrbitStatus::NotReturned;
  long long measured = 0;  // meaningful when status == Returned
  enum class Flag { Equal, ProperDivisor, Mismatch, Died } flag = Flag::Mismatch;
};

std::vector<PeriodRowResult> verify_periods(
    const State& p, std::span<const std::pair<int, int>> evolutions);

// --- character diagnostic --------------------------------------------------------

// Truncated evaluation of the signed character sum against exact per-weight
// state counts.  Diagnostic output: mismatches are reported, not fatal.
struct CompletenessReport {
  struct Row {
    std::vector<long long> weight;
    BigInt bethe_sum;
    BigInt exact_count;
  };
  std::vector<Row> rows;  // sorted by weight, every weight seen on either side
  long long mismatches = 0;
  bool all_match = false;
};

CompletenessReport completeness_diagnostic(const std::shared_ptr<const Space>& space,
                                           long long per_color_bound = -1);

// --- reference fixtures ----------------------------------------------------------
// Known-good data: the rank-3 evolution/Weyl grid, four dynamical period
// tables, two full classifications, and two fixed-weight population
// listings, all re-derived by the engine and compared entry by entry.

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> verify_grid();
// The filter keeps only fixtures whose name contains it ("" keeps all).
std::vector<CheckResult> verify_period_tables(std::string_view filter = "");
std::vector<CheckResult> verify_classification_tables(std::string_view filter = "");
std::vector<CheckResult> verify_listings();
std::vector<CheckResult> verify_completeness_small();

// --- rendering ---------------------------------------------------------------------

std::string render_classification(const Classification& c, const Space& space,
                                  const std::string& format);  // text, csv, json
std::string render_period_rows(std::span<const PeriodRowResult> rows,
                               const std::string& format);
std::string render_completeness(const CompletenessReport& report, long long max_rows = 40);

}  // namespace cca
