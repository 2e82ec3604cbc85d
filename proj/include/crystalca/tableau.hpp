#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crystalca/parse.hpp"

namespace cca {

using Letter = std::uint8_t;

// Shape descriptor of the rectangular crystal B^{a,j} at rank n:
// a rows, j columns, letters drawn from {1, ..., n+1}.
struct CrystalLabel {
  int n = 1;
  int a = 1;
  int j = 1;

  void validate() const;
  std::string to_string() const;  // "a,j"
  friend auto operator<=>(const CrystalLabel&, const CrystalLabel&) = default;
};

// Letter multiplicities: counts[c-1] = number of cells carrying letter c.
struct Weight {
  std::vector<int> counts;

  int sum() const;
  std::string to_string() const;  // "(c1,c2,...)"
  friend bool operator==(const Weight&, const Weight&) = default;
};

// Rectangular semistandard tableau: rows weakly increase left to right,
// columns strictly increase top to bottom, entries in 1..n+1.
// Immutable after construction; the constructor validates.
class Tableau {
public:
  Tableau(CrystalLabel label, std::vector<Letter> cells);

  const CrystalLabel& label() const { return label_; }
  const std::vector<Letter>& cells() const { return cells_; }
  Letter at(int r, int c) const {
    return cells_[static_cast<std::size_t>(r) * label_.j + c];
  }

  // Column reading: columns right to left, each column top to bottom.
  std::vector<Letter> reading_word() const;
  Weight weight() const;
  std::string to_string() const;

  friend bool operator==(const Tableau&, const Tableau&) = default;

private:
  CrystalLabel label_;
  std::vector<Letter> cells_;
};

bool is_semistandard(const CrystalLabel& label, std::span<const Letter> cells);

// u^{a,j}: row r filled entirely with letter r.
Tableau highest_element(const CrystalLabel& label);

// Schutzenberger promotion on the alphabet {1..n+1}: delete every n+1,
// slide the holes to the upper left, add one to the survivors, fill the
// vacated cells with 1.  promotion_inverse is pr applied n more times
// (pr has order n+1 on rectangles).
Tableau promotion(const Tableau& t);
Tableau promotion_inverse(const Tableau& t);

// Text form: rows joined by '/'; a row is a digit string when n+1 <= 9,
// otherwise comma-separated numbers.  Examples: "223/334", "1344", "2".
Tableau parse_tableau(int n, std::string_view text, std::size_t pos_base = 0);

// Cell visit order of the column reading word for shape a x j.
std::vector<std::int32_t> column_reading_order(int a, int j);

// Classical Kashiwara operators through the reading word of a single
// tableau; i in 1..n.  The affine direction i = 0 lives at the crystal
// level, where it is realized by promotion conjugation.
std::optional<Tableau> tableau_f(int i, const Tableau& t);
std::optional<Tableau> tableau_e(int i, const Tableau& t);
// (phi, eps): surviving '+' and '-' counts of the i-signature.
std::pair<int, int> tableau_phi_eps(int i, const Tableau& t);

}  // namespace cca
