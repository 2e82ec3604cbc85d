#include "crystalca/tableau.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cca {

void CrystalLabel::validate() const {
  if (n < 1) throw std::invalid_argument("crystal rank must be >= 1");
  if (a < 1 || a > n)
    throw std::invalid_argument("crystal row count must lie in 1..n");
  if (j < 1) throw std::invalid_argument("crystal column count must be >= 1");
}

std::string CrystalLabel::to_string() const {
  return std::to_string(a) + "," + std::to_string(j);
}

int Weight::sum() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

std::string Weight::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts[i]);
  }
  out += ')';
  return out;
}

bool is_semistandard(const CrystalLabel& label, std::span<const Letter> cells) {
  if (cells.size() != static_cast<std::size_t>(label.a) * label.j) return false;
  const int a = label.a, j = label.j, top = label.n + 1;
  for (int r = 0; r < a; ++r) {
    for (int c = 0; c < j; ++c) {
      const Letter v = cells[static_cast<std::size_t>(r) * j + c];
      if (v < 1 || v > top) return false;
      if (c > 0 && cells[static_cast<std::size_t>(r) * j + c - 1] > v) return false;
      if (r > 0 && cells[static_cast<std::size_t>(r - 1) * j + c] >= v) return false;
    }
  }
  return true;
}

Tableau::Tableau(CrystalLabel label, std::vector<Letter> cells)
    : label_(label), cells_(std::move(cells)) {
  label_.validate();
  if (!is_semistandard(label_, cells_))
    throw std::invalid_argument("cells do not form a semistandard tableau of shape " +
                                std::to_string(label_.a) + "x" + std::to_string(label_.j));
}

std::vector<std::int32_t> column_reading_order(int a, int j) {
  // Columns right to left, each column top to bottom.  Paired with the
  // tensor rule below, this makes every full column an i-singlet and kills
  // highest elements under every e_i, which the reversed direction fails.
  std::vector<std::int32_t> order;
  order.reserve(static_cast<std::size_t>(a) * j);
  for (int c = j - 1; c >= 0; --c)
    for (int r = 0; r < a; ++r) order.push_back(r * j + c);
  return order;
}

std::vector<Letter> Tableau::reading_word() const {
  std::vector<Letter> word;
  word.reserve(cells_.size());
  for (std::int32_t idx : column_reading_order(label_.a, label_.j))
    word.push_back(cells_[idx]);
  return word;
}

Weight Tableau::weight() const {
  Weight w;
  w.counts.assign(label_.n + 1, 0);
  for (Letter c : cells_) ++w.counts[c - 1];
  return w;
}

std::string Tableau::to_string() const {
  const bool digits = label_.n + 1 <= 9;
  std::string out;
  for (int r = 0; r < label_.a; ++r) {
    if (r) out += '/';
    for (int c = 0; c < label_.j; ++c) {
      if (!digits && c) out += ',';
      out += digits ? std::string(1, static_cast<char>('0' + at(r, c)))
                    : std::to_string(at(r, c));
    }
  }
  return out;
}

Tableau highest_element(const CrystalLabel& label) {
  label.validate();
  std::vector<Letter> cells(static_cast<std::size_t>(label.a) * label.j);
  for (int r = 0; r < label.a; ++r)
    for (int c = 0; c < label.j; ++c)
      cells[static_cast<std::size_t>(r) * label.j + c] = static_cast<Letter>(r + 1);
  return Tableau(label, std::move(cells));
}

Tableau promotion(const Tableau& t) {
  const CrystalLabel lab = t.label();
  const int a = lab.a, j = lab.j, top = lab.n + 1;
  // -1 marks a hole.
  std::vector<int> g(t.cells().begin(), t.cells().end());

  // Delete one top letter at a time, rightmost first, and slide its hole
  // to rest in the upper-left region before deleting the next.
  for (;;) {
    int hole = -1;
    for (int idx = a * j - 1; idx >= 0; --idx) {
      if (g[idx] == top) {
        hole = idx;
        break;
      }
    }
    if (hole < 0) break;
    g[hole] = -1;
    for (;;) {
      const int r = hole / j, c = hole % j;
      const int up = (r > 0 && g[hole - j] >= 0) ? g[hole - j] : -1;
      const int left = (c > 0 && g[hole - 1] >= 0) ? g[hole - 1] : -1;
      if (up < 0 && left < 0) break;
      // The larger neighbor slides in; on a tie the upper one does.
      const bool take_up = (left < 0) || (up >= 0 && up >= left);
      const int from = take_up ? hole - j : hole - 1;
      g[hole] = g[from];
      g[from] = -1;
      hole = from;
    }
  }

  std::vector<Letter> out(static_cast<std::size_t>(a) * j);
  for (int idx = 0; idx < a * j; ++idx)
    out[idx] = g[idx] < 0 ? Letter{1} : static_cast<Letter>(g[idx] + 1);
  return Tableau(lab, std::move(out));
}

Tableau promotion_inverse(const Tableau& t) {
  Tableau cur = t;
  for (int k = 0; k < t.label().n; ++k) cur = promotion(cur);
  return cur;
}

Tableau parse_tableau(int n, std::string_view text, std::size_t pos_base) {
  if (n < 1) throw std::invalid_argument("rank must be >= 1");
  if (text.empty()) throw ParseError("empty tableau", pos_base);
  const bool digits = n + 1 <= 9;

  std::vector<std::vector<Letter>> rows;
  for (const auto& [row, rpos] : split_with_positions(text, '/')) {
    if (row.empty()) throw ParseError("empty tableau row", pos_base + rpos);
    std::vector<Letter> letters;
    if (digits) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        const char ch = row[k];
        if (ch < '1' || ch > '9')
          throw ParseError(std::string("invalid tableau letter '") + ch + "'",
                           pos_base + rpos + k);
        const int v = ch - '0';
        if (v > n + 1)
          throw ParseError("letter " + std::to_string(v) + " exceeds n+1 = " +
                               std::to_string(n + 1),
                           pos_base + rpos + k);
        letters.push_back(static_cast<Letter>(v));
      }
    } else {
      for (const auto& [piece, ppos] : split_with_positions(row, ',')) {
        const long long v = parse_int(piece, pos_base + rpos + ppos);
        if (v < 1 || v > n + 1)
          throw ParseError("letter " + std::to_string(v) + " outside 1.." +
                               std::to_string(n + 1),
                           pos_base + rpos + ppos);
        letters.push_back(static_cast<Letter>(v));
      }
    }
    rows.push_back(std::move(letters));
  }

  const int a = static_cast<int>(rows.size());
  const int j = static_cast<int>(rows[0].size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != j)
      throw ParseError("ragged tableau: rows of unequal length", pos_base);
  }
  if (a > n)
    throw ParseError("tableau has " + std::to_string(a) +
                         " rows but rank " + std::to_string(n) + " allows at most " +
                         std::to_string(n),
                     pos_base);

  std::vector<Letter> cells;
  cells.reserve(static_cast<std::size_t>(a) * j);
  for (const auto& row : rows) cells.insert(cells.end(), row.begin(), row.end());

  CrystalLabel label{n, a, j};
  if (!is_semistandard(label, cells))
    throw ParseError("not a semistandard tableau", pos_base);
  return Tableau(label, std::move(cells));
}

namespace {

// Matched-bracket scan of the i-signature over a reading word:
// letter i contributes '+', letter i+1 contributes '-', and each '-'
// cancels the nearest unmatched '+' on its left.
struct SignatureScan {
  std::vector<std::int32_t> plus_stack;  // surviving '+' cells, left to right
  std::int32_t last_minus = -1;          // rightmost surviving '-' cell
  int minus_count = 0;

  void feed(Letter c, Letter plus, Letter minus, std::int32_t cell) {
    if (c == plus) {
      plus_stack.push_back(cell);
    } else if (c == minus) {
      if (!plus_stack.empty())
        plus_stack.pop_back();
      else {
        last_minus = cell;
        ++minus_count;
      }
    }
  }
};

SignatureScan scan_tableau(int i, const Tableau& t) {
  SignatureScan sig;
  const auto plus = static_cast<Letter>(i);
  const auto minus = static_cast<Letter>(i + 1);
  for (std::int32_t cell : column_reading_order(t.label().a, t.label().j))
    sig.feed(t.cells()[cell], plus, minus, cell);
  return sig;
}

}  // namespace

std::optional<Tableau> tableau_f(int i, const Tableau& t) {
  if (i < 1 || i > t.label().n) throw std::invalid_argument("operator index outside 1..n");
  const SignatureScan sig = scan_tableau(i, t);
  if (sig.plus_stack.empty()) return std::nullopt;
  std::vector<Letter> cells = t.cells();
  cells[sig.plus_stack.front()] = static_cast<Letter>(i + 1);
  return Tableau(t.label(), std::move(cells));
}

std::optional<Tableau> tableau_e(int i, const Tableau& t) {
  if (i < 1 || i > t.label().n) throw std::invalid_argument("operator index outside 1..n");
  const SignatureScan sig = scan_tableau(i, t);
  if (sig.last_minus < 0) return std::nullopt;
  std::vector<Letter> cells = t.cells();
  cells[sig.last_minus] = static_cast<Letter>(i);
  return Tableau(t.label(), std::move(cells));
}

std::pair<int, int> tableau_phi_eps(int i, const Tableau& t) {
  if (i < 1 || i > t.label().n) throw std::invalid_argument("operator index outside 1..n");
  const SignatureScan sig = scan_tableau(i, t);
  return {static_cast<int>(sig.plus_stack.size()), sig.minus_count};
}

}  // namespace cca
