#include "crystalca/automaton.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cca {

Space::Space(int n, std::vector<std::pair<int, int>> factors)
    : n_(n), factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("space needs at least one factor");
  crystals_.reserve(factors_.size());
  for (const auto& [r, l] : factors_) {
    CrystalLabel lab{n_, r, l};
    lab.validate();
    crystals_.push_back(Crystal::get(lab));
    sum_l_ += l;
    boxes_ += r * l;
  }
}

std::shared_ptr<const Space> Space::make(int n, std::vector<std::pair<int, int>> factors) {
  return std::shared_ptr<const Space>(new Space(n, std::move(factors)));
}

std::string Space::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(factors_[i].first) + "," + std::to_string(factors_[i].second);
  }
  return out;
}

std::shared_ptr<const Space> parse_space(int n, std::string_view text,
                                         std::size_t pos_base) {
  if (text.empty()) throw ParseError("empty space description", pos_base);
  std::vector<std::pair<int, int>> factors;
  for (const auto& [piece, pos] : split_with_positions(text, ';')) {
    const auto parts = split_with_positions(piece, ',');
    if (parts.size() != 2)
      throw ParseError("factor must be 'rows,cols'", pos_base + pos);
    const long long r = parse_int(parts[0].first, pos_base + pos + parts[0].second);
    const long long l = parse_int(parts[1].first, pos_base + pos + parts[1].second);
    if (r < 1 || r > n)
      throw ParseError("factor rows outside 1..n", pos_base + pos + parts[0].second);
    if (l < 1)
      throw ParseError("factor columns must be >= 1", pos_base + pos + parts[1].second);
    factors.emplace_back(static_cast<int>(r), static_cast<int>(l));
  }
  return Space::make(n, std::move(factors));
}

State::State(std::shared_ptr<const Space> space, std::vector<std::int32_t> comps)
    : space_(std::move(space)), comps_(std::move(comps)) {
  if (static_cast<int>(comps_.size()) != space_->length())
    throw std::invalid_argument("component count does not match the space");
  for (int i = 0; i < space_->length(); ++i) {
    if (comps_[i] < 0 || comps_[i] >= space_->crystal(i)->size())
      throw std::invalid_argument("component index out of range");
  }
}

State::State(std::shared_ptr<const Space> space, const std::vector<Tableau>& factors)
    : space_(std::move(space)) {
  if (static_cast<int>(factors.size()) != space_->length())
    throw std::invalid_argument("component count does not match the space");
  comps_.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i)
    comps_.push_back(space_->crystal(static_cast<int>(i))->index_of(factors[i]));
}

std::string State::to_string() const {
  std::string out;
  for (int i = 0; i < space_->length(); ++i) {
    if (i) out += '.';
    out += component(i).to_string();
  }
  return out;
}

Weight State::weight() const {
  return tensor_weight({space_->crystals(), comps_});
}

State parse_state(std::shared_ptr<const Space> space, std::string_view text,
                  std::size_t pos_base) {
  const auto pieces = split_with_positions(text, '.');
  if (static_cast<int>(pieces.size()) != space->length())
    throw ParseError("state has " + std::to_string(pieces.size()) +
                         " components, space expects " + std::to_string(space->length()),
                     pos_base);
  std::vector<std::int32_t> comps;
  comps.reserve(pieces.size());
  for (int i = 0; i < space->length(); ++i) {
    const auto& [piece, pos] = pieces[i];
    const Tableau t = parse_tableau(space->rank(), piece, pos_base + pos);
    const auto [r, l] = space->factor(i);
    if (t.label().a != r || t.label().j != l)
      throw ParseError("component " + std::to_string(i + 1) + " has shape " +
                           std::to_string(t.label().a) + "x" + std::to_string(t.label().j) +
                           ", expected " + std::to_string(r) + "x" + std::to_string(l),
                       pos_base + pos);
    comps.push_back(space->crystal(i)->index_of(t));
  }
  return State(std::move(space), std::move(comps));
}

// --- content -----------------------------------------------------------------

int Content::multiplicity(int a, int j) const {
  if (a < 1 || a > n_) return 0;
  const auto& row = rows_[a - 1];
  auto it = row.find(j);
  return it == row.end() ? 0 : it->second;
}

void Content::set(int a, int j, int mult) {
  if (a < 1 || a > n_) throw std::invalid_argument("content color outside 1..n");
  if (j < 1) throw std::invalid_argument("content row length must be >= 1");
  if (mult < 0) throw std::invalid_argument("content multiplicity must be >= 0");
  if (mult == 0)
    rows_[a - 1].erase(j);
  else
    rows_[a - 1][j] = mult;
}

std::vector<std::pair<int, int>> Content::support() const {
  std::vector<std::pair<int, int>> h;
  for (int a = 1; a <= n_; ++a)
    for (const auto& [j, m] : rows_[a - 1]) h.emplace_back(a, j);
  return h;
}

bool Content::empty() const {
  for (const auto& row : rows_)
    if (!row.empty()) return false;
  return true;
}

long long Content::weighted_size(int a) const {
  long long total = 0;
  if (a >= 1 && a <= n_)
    for (const auto& [j, m] : rows_[a - 1]) total += static_cast<long long>(j) * m;
  return total;
}

bool operator<(const Content& a, const Content& b) {
  long long ta = 0, tb = 0;
  for (int c = 1; c <= a.n_; ++c) ta += a.weighted_size(c);
  for (int c = 1; c <= b.n_; ++c) tb += b.weighted_size(c);
  if (ta != tb) return ta < tb;
  return a.rows_ < b.rows_;
}

std::string Content::to_string() const {
  std::string out;
  for (int a = 1; a <= n_; ++a) {
    if (a > 1) out += '/';
    const auto& row = rows_[a - 1];
    if (row.empty()) {
      out += '-';
      continue;
    }
    bool first = true;
    for (auto it = row.rbegin(); it != row.rend(); ++it) {
      for (int c = 0; c < it->second; ++c) {
        if (!first) out += ',';
        out += std::to_string(it->first);
        first = false;
      }
    }
  }
  return out;
}

Content parse_content(int n, std::string_view text, std::size_t pos_base) {
  const auto parts = split_with_positions(text, '/');
  if (static_cast<int>(parts.size()) != n)
    throw ParseError("content must have " + std::to_string(n) +
                         " '/'-separated color sections",
                     pos_base);
  Content m(n);
  for (int a = 1; a <= n; ++a) {
    const auto& [piece, pos] = parts[a - 1];
    if (piece == "-" || piece.empty()) continue;
    for (const auto& [len_text, lpos] : split_with_positions(piece, ',')) {
      const long long j = parse_int(len_text, pos_base + pos + lpos);
      if (j < 1)
        throw ParseError("content row length must be >= 1", pos_base + pos + lpos);
      m.set(a, static_cast<int>(j), m.multiplicity(a, static_cast<int>(j)) + 1);
    }
  }
  return m;
}

// --- time evolution ----------------------------------------------------------

TimeEvolution::TimeEvolution(std::shared_ptr<const Space> space, int r, int l,
                             RTableRegistry& registry)
    : space_(std::move(space)), r_(r), l_(l) {
  CrystalLabel carrier_label{space_->rank(), r, l};
  carrier_label.validate();
  carrier_ = Crystal::get(carrier_label);
  tables_.reserve(space_->length());
  for (int i = 0; i < space_->length(); ++i) {
    const auto [rr, ll] = space_->factor(i);
    tables_.push_back(registry.get(carrier_label, CrystalLabel{space_->rank(), rr, ll}));
  }
}

std::optional<TimeEvolution::Step> TimeEvolution::apply_indices(
    std::span<const std::int32_t> comps) const {
  const int L = space_->length();
  std::vector<std::int32_t> out(L);
  std::optional<Step> result;

  for (std::int32_t v = 0; v < carrier_->size(); ++v) {
    std::int32_t cur = v;
    long long energy = 0;
    for (int i = 0; i < L; ++i) {
      const RTable::Entry& en = tables_[i]->at(cur, comps[i]);
      out[i] = en.out_left;
      cur = en.out_right;
      energy -= en.h;
    }
    if (cur != v) continue;

    if (!result) {
      if (energy < 0)
        throw InvariantViolation("negative evolution energy: normalization broken");
      result = Step{out, energy, 1};
    } else {
      if (out != result->comps) return std::nullopt;  // ambiguous image: T(p) = 0
      if (energy != result->energy)
        throw InvariantViolation(
            "fixed carriers produce the same image but different energies");
      ++result->carriers;
    }
  }
  return result;
}

std::optional<std::int32_t> TimeEvolution::fixed_point_carrier(
    std::span<const std::int32_t> comps) const {
  const int L = space_->length();
  std::int32_t trial = carrier_->highest_index();
  for (std::int32_t round = 0; round <= carrier_->size(); ++round) {
    std::int32_t cur = trial;
    for (int i = 0; i < L; ++i) cur = tables_[i]->at(cur, comps[i]).out_right;
    if (cur == trial) return trial;
    trial = cur;
  }
  return std::nullopt;
}

EvolutionResult TimeEvolution::apply(const State& p) const {
  if (!(*p.space() == *space_))
    throw std::invalid_argument("state does not belong to this evolution's space");
  EvolutionResult res;
  if (auto step = apply_indices(p.comps())) {
    res.next = State(space_, std::move(step->comps));
    res.energy = step->energy;
    res.carriers = step->carriers;
  }
  return res;
}

EvolutionResult time_evolution(const State& p, int r, int l) {
  return TimeEvolution(p.space(), r, l).apply(p);
}

std::optional<long long> energy_E(const State& p, int a, int j) {
  const EvolutionResult res = time_evolution(p, a, j);
  if (!res.next) return std::nullopt;
  return res.energy;
}

Content content_from_energies(const Space& space, const EnergySpectrum& energies) {
  const int n = space.rank(), jmax = space.j_max();
  Content m(n);
  for (int a = 1; a <= n; ++a) {
    const auto& e = energies.values[a - 1];
    auto at = [&](int j) -> long long { return j == 0 ? 0 : e[j - 1]; };
    if (jmax >= 2 && at(jmax) != at(jmax - 1))
      throw InvariantViolation("energy E^{(" + std::to_string(a) +
                               ")} did not stabilize below the cutoff");
    for (int j = 1; j <= jmax - 1; ++j) {
      const long long second = 2 * at(j) - at(j - 1) - at(j + 1);
      if (second < 0)
        throw InvariantViolation("negative second difference in the energy spectrum");
      if (second > 0) m.set(a, j, static_cast<int>(second));
    }
  }
  return m;
}

StateAnalysis analyze_with_ops(const Space& space, std::span<const TimeEvolution> ops,
                               std::span<const std::int32_t> comps) {
  const int n = space.rank(), jmax = space.j_max();
  StateAnalysis res;
  res.energies.values.assign(n, std::vector<long long>(jmax, 0));
  for (int a = 1; a <= n; ++a) {
    for (int j = 1; j <= jmax; ++j) {
      const auto step = ops[static_cast<std::size_t>(a - 1) * jmax + (j - 1)].apply_indices(comps);
      if (!step) {
        res.evolvable = false;
        res.witness = {a, j};
        return res;
      }
      res.energies.values[a - 1][j - 1] = step->energy;
    }
  }
  res.evolvable = true;
  res.content = content_from_energies(space, res.energies);
  return res;
}

namespace {

std::vector<TimeEvolution> all_evolutions(const std::shared_ptr<const Space>& space) {
  std::vector<TimeEvolution> ops;
  ops.reserve(static_cast<std::size_t>(space->rank()) * space->j_max());
  for (int a = 1; a <= space->rank(); ++a)
    for (int j = 1; j <= space->j_max(); ++j) ops.emplace_back(space, a, j);
  return ops;
}

}  // namespace

StateAnalysis analyze_state(const State& p) {
  const auto ops = all_evolutions(p.space());
  return analyze_with_ops(*p.space(), ops, p.comps());
}

EvolvabilityResult is_evolvable(const State& p) {
  const StateAnalysis a = analyze_state(p);
  return {a.evolvable, a.witness};
}

Content soliton_content(const State& p) {
  const StateAnalysis a = analyze_state(p);
  if (!a.evolvable)
    throw std::invalid_argument("state is not evolvable: T^{(" +
                                std::to_string(a.witness.first) + ")}_" +
                                std::to_string(a.witness.second) + " vanishes");
  return a.content;
}

// --- extended symmetries -----------------------------------------------------

std::optional<State> state_f(int i, const State& p) {
  if (auto out = tensor_f(i, {p.space()->crystals(), p.comps()}))
    return State(p.space(), std::move(*out));
  return std::nullopt;
}

std::optional<State> state_e(int i, const State& p) {
  if (auto out = tensor_e(i, {p.space()->crystals(), p.comps()}))
    return State(p.space(), std::move(*out));
  return std::nullopt;
}

Weight state_weight(const State& p) { return p.weight(); }

State promotion_state(const State& p) {
  std::vector<std::int32_t> comps = p.comps();
  for (int i = 0; i < p.space()->length(); ++i)
    comps[i] = p.space()->crystal(i)->promote(comps[i]);
  return State(p.space(), std::move(comps));
}

State promotion_state_inverse(const State& p) {
  std::vector<std::int32_t> comps = p.comps();
  for (int i = 0; i < p.space()->length(); ++i)
    comps[i] = p.space()->crystal(i)->demote(comps[i]);
  return State(p.space(), std::move(comps));
}

State weyl_S(int i, const State& p) {
  const int n = p.space()->rank();
  if (i < 0 || i > n) throw std::invalid_argument("Weyl operator index outside 0..n");
  if (i == 0) return promotion_state_inverse(weyl_S(1, promotion_state(p)));

  const int k = weight_pairing(i, p.weight());
  State cur = p;
  for (int step = 0; step < std::abs(k); ++step) {
    auto next = k >= 0 ? state_f(i, cur) : state_e(i, cur);
    if (!next)
      throw InvariantViolation("Weyl reflection ran off the end of the i-string");
    cur = std::move(*next);
  }
  return cur;
}

State factor_swap(int pos, const State& p) {
  const int L = p.space()->length();
  if (pos < 1 || pos >= L)
    throw std::invalid_argument("swap position outside 1..L-1");
  const int i = pos - 1;
  const auto left_label = p.space()->crystal(i)->label();
  const auto right_label = p.space()->crystal(i + 1)->label();
  const auto table = RTableRegistry::global().get(left_label, right_label);
  const RTable::Entry& en = table->at(p.comps()[i], p.comps()[i + 1]);

  auto factors = p.space()->factors();
  std::swap(factors[i], factors[i + 1]);
  auto swapped = Space::make(p.space()->rank(), std::move(factors));

  std::vector<std::int32_t> comps = p.comps();
  comps[i] = en.out_left;
  comps[i + 1] = en.out_right;
  return State(std::move(swapped), std::move(comps));
}

State rotate(const State& p) {
  auto factors = p.space()->factors();
  std::rotate(factors.rbegin(), factors.rbegin() + 1, factors.rend());
  auto rotated = Space::make(p.space()->rank(), std::move(factors));
  std::vector<std::int32_t> comps = p.comps();
  std::rotate(comps.rbegin(), comps.rbegin() + 1, comps.rend());
  return State(std::move(rotated), std::move(comps));
}

OrbitResult orbit_period(const State& p, int r, int l, long long cap) {
  const TimeEvolution op(p.space(), r, l);
  std::vector<std::int32_t> cur = p.comps();
  for (long long t = 1; t <= cap; ++t) {
    auto step = op.apply_indices(cur);
    if (!step) return {OrbitStatus::Died, t};
    cur = std::move(step->comps);
    if (cur == p.comps()) return {OrbitStatus::Returned, t};
  }
  return {OrbitStatus::NotReturned, cap};
}

}  // namespace cca
