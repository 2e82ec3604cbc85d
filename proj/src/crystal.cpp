#include "crystalca/crystal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace cca {

std::vector<Tableau> enumerate_crystal(const CrystalLabel& label) {
  label.validate();
  const int a = label.a, j = label.j, top = label.n + 1;
  std::vector<Tableau> out;
  std::vector<Letter> cells(static_cast<std::size_t>(a) * j, 0);

  // Row-major backtracking with ascending letter choice yields the
  // canonical lexicographic order of row reading words.
  auto rec = [&](auto&& self, int idx) -> void {
    if (idx == a * j) {
      out.emplace_back(label, cells);
      return;
    }
    const int r = idx / j, c = idx % j;
    int lo = 1;
    if (c > 0) lo = std::max(lo, static_cast<int>(cells[idx - 1]));
    if (r > 0) lo = std::max(lo, static_cast<int>(cells[idx - j]) + 1);
    for (int v = lo; v <= top; ++v) {
      cells[idx] = static_cast<Letter>(v);
      self(self, idx + 1);
    }
    cells[idx] = 0;
  };
  rec(rec, 0);
  return out;
}

namespace {

std::string cell_key(const Tableau& t) {
  return std::string(reinterpret_cast<const char*>(t.cells().data()), t.cells().size());
}

}  // namespace

Crystal::Crystal(const CrystalLabel& label) : label_(label) {
  elements_ = enumerate_crystal(label);
  const std::int32_t sz = static_cast<std::int32_t>(elements_.size());
  const int n = label.n;

  keys_.reserve(sz);
  std::unordered_map<std::string, std::int32_t> index;
  index.reserve(elements_.size() * 2);
  for (std::int32_t x = 0; x < sz; ++x) {
    keys_.push_back(cell_key(elements_[x]));
    index.emplace(keys_.back(), x);
  }
  auto find = [&](const Tableau& t) -> std::int32_t {
    auto it = index.find(cell_key(t));
    if (it == index.end())
      throw InvariantViolation("crystal operator left B^{a,j}: enumeration incomplete");
    return it->second;
  };

  highest_ = find(highest_element(label));

  weights_.reserve(sz);
  for (std::int32_t x = 0; x < sz; ++x) weights_.push_back(elements_[x].weight());

  pr_.resize(sz);
  pr_inv_.assign(sz, -1);
  for (std::int32_t x = 0; x < sz; ++x) pr_[x] = find(promotion(elements_[x]));
  for (std::int32_t x = 0; x < sz; ++x) {
    if (pr_inv_[pr_[x]] != -1)
      throw InvariantViolation("promotion is not a bijection on B^{a,j}");
    pr_inv_[pr_[x]] = x;
  }

  const std::size_t slots = static_cast<std::size_t>(n + 1) * sz;
  f_.assign(slots, -1);
  e_.assign(slots, -1);
  phi_.assign(slots, 0);
  eps_.assign(slots, 0);
  for (int i = 1; i <= n; ++i) {
    for (std::int32_t x = 0; x < sz; ++x) {
      const std::size_t slot = table_slot(i, x);
      if (auto fx = tableau_f(i, elements_[x])) f_[slot] = find(*fx);
      if (auto ex = tableau_e(i, elements_[x])) e_[slot] = find(*ex);
      const auto [ph, ep] = tableau_phi_eps(i, elements_[x]);
      phi_[slot] = ph;
      eps_[slot] = ep;
    }
  }
  // Affine direction by promotion conjugation: f_0 = pr^{-1} f_1 pr.
  for (std::int32_t x = 0; x < sz; ++x) {
    const std::int32_t y = pr_[x];
    const std::int32_t fy = f_[table_slot(1, y)];
    const std::int32_t ey = e_[table_slot(1, y)];
    f_[table_slot(0, x)] = fy < 0 ? -1 : pr_inv_[fy];
    e_[table_slot(0, x)] = ey < 0 ? -1 : pr_inv_[ey];
    phi_[table_slot(0, x)] = phi_[table_slot(1, y)];
    eps_[table_slot(0, x)] = eps_[table_slot(1, y)];
  }
  // Crystal axiom e_i f_i = id wherever f_i acts; a failure here means the
  // signature rule and the operator tables disagree.
  for (int i = 0; i <= n; ++i) {
    for (std::int32_t x = 0; x < sz; ++x) {
      const std::int32_t y = f_[table_slot(i, x)];
      if (y >= 0 && e_[table_slot(i, y)] != x)
        throw InvariantViolation("e_i f_i != id in crystal operator tables");
    }
  }
}

std::int32_t Crystal::try_index_of(const Tableau& t) const {
  // Binary search over the canonical order: keys are sorted because the
  // enumeration is lexicographic in the row-major cells.
  if (!(t.label() == label_)) return -1;
  const std::string key = cell_key(t);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return -1;
  return static_cast<std::int32_t>(it - keys_.begin());
}

std::int32_t Crystal::index_of(const Tableau& t) const {
  const std::int32_t x = try_index_of(t);
  if (x < 0)
    throw std::invalid_argument("tableau " + t.to_string() +
                                " does not belong to crystal " + label_.to_string() +
                                " at rank " + std::to_string(label_.n));
  return x;
}

std::shared_ptr<const Crystal> Crystal::get(const CrystalLabel& label) {
  label.validate();
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const Crystal>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(label.n, label.a, label.j);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  auto made = std::shared_ptr<const Crystal>(new Crystal(label));
  registry.emplace(key, made);
  return made;
}

int tensor_target_f(int i, const TensorFactors& w) {
  std::vector<std::pair<int, int>> plus;  // (factor, surviving '+' count)
  const int L = static_cast<int>(w.comps.size());
  for (int t = 0; t < L; ++t) {
    int minus = w.crystals[t]->eps(i, w.comps[t]);
    while (minus > 0 && !plus.empty()) {
      const int take = std::min(minus, plus.back().second);
      plus.back().second -= take;
      minus -= take;
      if (plus.back().second == 0) plus.pop_back();
    }
    const int ph = w.crystals[t]->phi(i, w.comps[t]);
    if (ph > 0) plus.emplace_back(t, ph);
  }
  return plus.empty() ? -1 : plus.front().first;
}

int tensor_target_e(int i, const TensorFactors& w) {
  std::vector<std::pair<int, int>> plus;
  int last_unmatched = -1;
  const int L = static_cast<int>(w.comps.size());
  for (int t = 0; t < L; ++t) {
    int minus = w.crystals[t]->eps(i, w.comps[t]);
    while (minus > 0 && !plus.empty()) {
      const int take = std::min(minus, plus.back().second);
      plus.back().second -= take;
      minus -= take;
      if (plus.back().second == 0) plus.pop_back();
    }
    if (minus > 0) last_unmatched = t;
    const int ph = w.crystals[t]->phi(i, w.comps[t]);
    if (ph > 0) plus.emplace_back(t, ph);
  }
  return last_unmatched;
}

std::optional<std::vector<std::int32_t>> tensor_f(int i, const TensorFactors& w,
                                                  int* acted) {
  const int t = tensor_target_f(i, w);
  if (t < 0) return std::nullopt;
  std::vector<std::int32_t> out(w.comps.begin(), w.comps.end());
  out[t] = w.crystals[t]->f(i, out[t]);
  if (out[t] < 0) throw InvariantViolation("tensor rule chose an annihilated factor");
  if (acted) *acted = t;
  return out;
}

std::optional<std::vector<std::int32_t>> tensor_e(int i, const TensorFactors& w,
                                                  int* acted) {
  const int t = tensor_target_e(i, w);
  if (t < 0) return std::nullopt;
  std::vector<std::int32_t> out(w.comps.begin(), w.comps.end());
  out[t] = w.crystals[t]->e(i, out[t]);
  if (out[t] < 0) throw InvariantViolation("tensor rule chose an annihilated factor");
  if (acted) *acted = t;
  return out;
}

Weight tensor_weight(const TensorFactors& w) {
  if (w.comps.empty()) return Weight{{}};
  Weight total;
  total.counts.assign(w.crystals[0]->label().n + 1, 0);
  for (std::size_t t = 0; t < w.comps.size(); ++t) {
    const Weight& part = w.crystals[t]->weight_of(w.comps[t]);
    for (std::size_t c = 0; c < total.counts.size(); ++c)
      total.counts[c] += part.counts[c];
  }
  return total;
}

int weight_pairing(int i, const Weight& w) {
  const int n = static_cast<int>(w.counts.size()) - 1;
  if (i < 0 || i > n) throw std::invalid_argument("operator index outside 0..n");
  if (i == 0) return w.counts[n] - w.counts[0];
  return w.counts[i - 1] - w.counts[i];
}

}  // namespace cca
