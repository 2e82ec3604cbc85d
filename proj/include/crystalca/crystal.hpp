#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crystalca/tableau.hpp"

namespace cca {

// All semistandard tableaux of the given rectangular shape, in canonical
// order (lexicographic by row reading word).
std::vector<Tableau> enumerate_crystal(const CrystalLabel& label);

// A fully enumerated crystal B^{a,j} with precomputed operator tables:
// Kashiwara f_i / e_i and the string lengths phi_i / eps_i for i = 0..n,
// promotion and its inverse, and element weights.  After construction every
// query is an O(1) lookup; instances are immutable and shared.
class Crystal {
public:
  static std::shared_ptr<const Crystal> get(const CrystalLabel& label);

  const CrystalLabel& label() const { return label_; }
  std::int32_t size() const { return static_cast<std::int32_t>(elements_.size()); }
  const std::vector<Tableau>& elements() const { return elements_; }
  const Tableau& element(std::int32_t x) const { return elements_[x]; }
  std::int32_t index_of(const Tableau& t) const;      // throws when absent
  std::int32_t try_index_of(const Tableau& t) const;  // -1 when absent
  std::int32_t highest_index() const { return highest_; }

  // i in 0..n; -1 encodes annihilation.
  std::int32_t f(int i, std::int32_t x) const { return f_[table_slot(i, x)]; }
  std::int32_t e(int i, std::int32_t x) const { return e_[table_slot(i, x)]; }
  int phi(int i, std::int32_t x) const { return phi_[table_slot(i, x)]; }
  int eps(int i, std::int32_t x) const { return eps_[table_slot(i, x)]; }

  std::int32_t promote(std::int32_t x) const { return pr_[x]; }
  std::int32_t demote(std::int32_t x) const { return pr_inv_[x]; }

  const Weight& weight_of(std::int32_t x) const { return weights_[x]; }

private:
  explicit Crystal(const CrystalLabel& label);

  std::size_t table_slot(int i, std::int32_t x) const {
    return static_cast<std::size_t>(i) * elements_.size() + x;
  }

  CrystalLabel label_;
  std::vector<Tableau> elements_;
  std::vector<std::string> keys_;  // cell bytes, index-aligned (for lookup)
  std::int32_t highest_ = 0;
  std::vector<std::int32_t> f_, e_, pr_, pr_inv_;
  std::vector<std::int32_t> phi_, eps_;
  std::vector<Weight> weights_;
};

// --- tensor products --------------------------------------------------------
//
// A tensor word is a sequence of factors given as (crystal, element index)
// pairs.  The Kashiwara tensor rule is evaluated at factor level: factor t
// contributes eps_i '-' signs followed by phi_i '+' signs, '+-' pairs cancel,
// f_i acts on the factor owning the leftmost surviving '+', e_i on the one
// owning the rightmost surviving '-'.

struct TensorFactors {
  std::span<const std::shared_ptr<const Crystal>> crystals;
  std::span<const std::int32_t> comps;
};

// Acted factor, or -1 when the operator annihilates the word.
int tensor_target_f(int i, const TensorFactors& w);
int tensor_target_e(int i, const TensorFactors& w);

std::optional<std::vector<std::int32_t>> tensor_f(int i, const TensorFactors& w,
                                                  int* acted = nullptr);
std::optional<std::vector<std::int32_t>> tensor_e(int i, const TensorFactors& w,
                                                  int* acted = nullptr);

Weight tensor_weight(const TensorFactors& w);

// <h_i, wt>: counts[i-1] - counts[i] for classical i, and the level-zero
// affine pairing counts[n] - counts[0] for i = 0.
int weight_pairing(int i, const Weight& w);

}  // namespace cca
