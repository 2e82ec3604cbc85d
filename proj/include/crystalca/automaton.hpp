#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crystalca/rtable.hpp"

namespace cca {

// The tensor product B = B^{r_1,l_1} (x) ... (x) B^{r_L,l_L} at rank n.
class Space {
public:
  static std::shared_ptr<const Space> make(int n, std::vector<std::pair<int, int>> factors);

  int rank() const { return n_; }
  int length() const { return static_cast<int>(factors_.size()); }
  std::pair<int, int> factor(int i) const { return factors_[i]; }
  const std::vector<std::pair<int, int>>& factors() const { return factors_; }
  const std::shared_ptr<const Crystal>& crystal(int i) const { return crystals_[i]; }
  const std::vector<std::shared_ptr<const Crystal>>& crystals() const { return crystals_; }

  int sum_l() const { return sum_l_; }
  // Evolvability cutoff: energies must have stabilized by this column.
  int j_max() const { return sum_l_ + 1; }
  int total_boxes() const { return boxes_; }

  std::string to_string() const;  // "r,l;r,l;..."
  bool operator==(const Space& o) const { return n_ == o.n_ && factors_ == o.factors_; }

private:
  Space(int n, std::vector<std::pair<int, int>> factors);

  int n_ = 1;
  std::vector<std::pair<int, int>> factors_;
  std::vector<std::shared_ptr<const Crystal>> crystals_;
  int sum_l_ = 0;
  int boxes_ = 0;
};

std::shared_ptr<const Space> parse_space(int n, std::string_view text,
                                         std::size_t pos_base = 0);

// A state of the automaton, held as canonical element indices per factor.
class State {
public:
  State(std::shared_ptr<const Space> space, std::vector<std::int32_t> comps);
  State(std::shared_ptr<const Space> space, const std::vector<Tableau>& factors);

  const std::shared_ptr<const Space>& space() const { return space_; }
  const std::vector<std::int32_t>& comps() const { return comps_; }
  const Tableau& component(int i) const { return space_->crystal(i)->element(comps_[i]); }

  std::string to_string() const;  // components joined by '.'
  Weight weight() const;

  friend bool operator==(const State& a, const State& b) {
    return *a.space_ == *b.space_ && a.comps_ == b.comps_;
  }

private:
  std::shared_ptr<const Space> space_;
  std::vector<std::int32_t> comps_;
};

State parse_state(std::shared_ptr<const Space> space, std::string_view text,
                  std::size_t pos_base = 0);

// --- soliton content ---------------------------------------------------------

// The n-tuple of partitions m = (m^{(1)}, ..., m^{(n)}) recording how many
// strings of each color and length a state carries.
class Content {
public:
  Content() = default;
  explicit Content(int n) : n_(n), rows_(n) {}

  int rank() const { return n_; }
  int multiplicity(int a, int j) const;
  void set(int a, int j, int mult);
  std::vector<std::pair<int, int>> support() const;  // lex by (color, length)
  bool empty() const;
  long long weighted_size(int a) const;  // sum of j * m^{(a)}_j

  // Colors joined by '/', row lengths descending, '-' for an empty color:
  // "3,1,1,1/2,1/1", "2,2/2/-".
  std::string to_string() const;

  friend bool operator==(const Content&, const Content&) = default;
  // Orders by total box count, then lexicographically; used for stable
  // classification rows.
  friend bool operator<(const Content& a, const Content& b);

private:
  int n_ = 0;
  std::vector<std::map<int, int>> rows_;
};

Content parse_content(int n, std::string_view text, std::size_t pos_base = 0);

// --- time evolution ----------------------------------------------------------

struct EvolutionResult {
  std::optional<State> next;  // empty when the state is not (r,l)-evolvable
  long long energy = 0;       // meaningful iff next, always >= 0
  int carriers = 0;           // fixed-point carriers found
};

// T^{(r)}_l with its carrier crystal and R tables resolved once.  The carrier
// search is exhaustive over B^{r,l}; a fixed-point iteration is available as
// a probe and is cross-checked against the exhaustive search in the tests.
class TimeEvolution {
public:
  TimeEvolution(std::shared_ptr<const Space> space, int r, int l,
                RTableRegistry& registry = RTableRegistry::global());

  int r() const { return r_; }
  int l() const { return l_; }
  const std::shared_ptr<const Space>& space() const { return space_; }

  struct Step {
    std::vector<std::int32_t> comps;
    long long energy;
    int carriers;
  };
  std::optional<Step> apply_indices(std::span<const std::int32_t> comps) const;
  EvolutionResult apply(const State& p) const;

  // Feeds the exit carrier back in as the next trial; returns the first
  // fixed carrier it reaches, if any.
  std::optional<std::int32_t> fixed_point_carrier(std::span<const std::int32_t> comps) const;

private:
  std::shared_ptr<const Space> space_;
  int r_, l_;
  std::shared_ptr<const Crystal> carrier_;
  std::vector<std::shared_ptr<const RTable>> tables_;
};

EvolutionResult time_evolution(const State& p, int r, int l);
std::optional<long long> energy_E(const State& p, int a, int j);

struct EvolvabilityResult {
  bool evolvable = false;
  std::pair<int, int> witness{0, 0};  // failing (a, j) when not evolvable
};
EvolvabilityResult is_evolvable(const State& p);

struct EnergySpectrum {
  // values[a-1][j-1] = E^{(a)}_j for j = 1..j_max.
  std::vector<std::vector<long long>> values;
};

struct StateAnalysis {
  bool evolvable = false;
  std::pair<int, int> witness{0, 0};
  EnergySpectrum energies;  // filled iff evolvable
  Content content;          // filled iff evolvable
};

// Runs every T^{(a)}_j up to the cutoff; when all are defined, extracts the
// content from second differences of the energies and asserts the
// stabilization plateau and concavity.
StateAnalysis analyze_state(const State& p);
StateAnalysis analyze_with_ops(const Space& space, std::span<const TimeEvolution> ops,
                               std::span<const std::int32_t> comps);
Content content_from_energies(const Space& space, const EnergySpectrum& energies);

Content soliton_content(const State& p);  // throws when not evolvable

// --- extended symmetries -----------------------------------------------------

std::optional<State> state_f(int i, const State& p);
std::optional<State> state_e(int i, const State& p);
Weight state_weight(const State& p);

// Kashiwara-Weyl reflection: with k = <h_i, wt p>, applies f_i^k (k >= 0)
// or e_i^{-k}; S_0 is realized as pr^{-1} S_1 pr.
State weyl_S(int i, const State& p);
State promotion_state(const State& p);
State promotion_state_inverse(const State& p);
// Applies the classical part of R to adjacent factors (1-based position),
// exchanging their labels; rotate moves the last factor to the front.
State factor_swap(int pos, const State& p);
State rotate(const State& p);

// --- orbits ------------------------------------------------------------------

enum class OrbitStatus { Returned, NotReturned, Died };

struct OrbitResult {
  OrbitStatus status = OrbitStatus::NotReturned;
  // Returned: the period.  Died: the step at which evolution failed.
  long long steps = 0;
};

OrbitResult orbit_period(const State& p, int r, int l, long long cap);

}  // namespace cca
