#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "crystalca/crystal.hpp"

namespace cca {

// Element of the affinization Aff(B^{a,j}) = { z^d b }.
struct AffineElement {
  long long d = 0;
  Tableau b;
};

// The combinatorial R on B^{left} x B^{right} together with the energy
// function H, tabulated for every ordered pair of elements.  H is
// normalized to attain its maximum 0 at the pair of highest elements.
// A finished table is immutable and safe to share across threads.
class RTable {
public:
  struct Entry {
    std::int32_t out_left;   // index into the right-label crystal
    std::int32_t out_right;  // index into the left-label crystal
    std::int32_t h;          // energy, <= 0
  };

  const CrystalLabel& left() const { return left_; }
  const CrystalLabel& right() const { return right_; }
  const std::shared_ptr<const Crystal>& left_crystal() const { return bl_; }
  const std::shared_ptr<const Crystal>& right_crystal() const { return br_; }
  std::int64_t pair_count() const { return static_cast<std::int64_t>(entries_.size()); }

  const Entry& at(std::int32_t left_idx, std::int32_t right_idx) const {
    return entries_[static_cast<std::size_t>(left_idx) * br_->size() + right_idx];
  }
  const Entry& at(const Tableau& x, const Tableau& y) const {
    return at(bl_->index_of(x), br_->index_of(y));
  }

  friend RTable build_r_table(const CrystalLabel& left, const CrystalLabel& right);
  friend RTable read_rtable(std::istream& in);
  friend bool operator==(const RTable& a, const RTable& b);

private:
  RTable() = default;
  void validate() const;  // totality, bijectivity, normalization

  CrystalLabel left_, right_;
  std::shared_ptr<const Crystal> bl_, br_;
  std::vector<Entry> entries_;
};

// Constructs the table by breadth-first propagation over the connected
// affine crystal graph, starting from the highest pair with H = 0 and
// transporting images along every f_i / e_i.  Fails loudly if the graph
// does not reach every pair.
RTable build_r_table(const CrystalLabel& left, const CrystalLabel& right);

// R(z^d b (x) z^e c) = z^{e+H} c~ (x) z^{d-H} b~.
std::pair<AffineElement, AffineElement> apply_r(const RTable& table,
                                                const AffineElement& x,
                                                const AffineElement& y);

// Checks (R x 1)(1 x R)(R x 1) = (1 x R)(R x 1)(1 x R) on every degree-zero
// triple, affine degrees included.  On failure *counterexample names the
// offending triple.
bool check_yang_baxter(const CrystalLabel& l1, const CrystalLabel& l2,
                       const CrystalLabel& l3, std::string* counterexample = nullptr);

// --- persistence -------------------------------------------------------------
// Line-oriented text format, bit-exact:
//   R n a j b k version=1
//   iL iR -> oL oR h
// with 0-based canonical enumeration indices, single spaces, LF endings.

void write_rtable(std::ostream& out, const RTable& table);
RTable read_rtable(std::istream& in);
std::string rtable_filename(const CrystalLabel& left, const CrystalLabel& right);

struct CacheManifest {
  struct Entry {
    CrystalLabel left, right;
    std::filesystem::path file;
  };
  std::vector<Entry> entries;

  static CacheManifest scan(const std::filesystem::path& dir);
};

// Process-wide memoization of built tables with optional disk persistence.
// Construction is single-writer (serialized internally); completed tables
// are handed out as shared immutable objects.
class RTableRegistry {
public:
  static RTableRegistry& global();

  void set_cache_dir(std::filesystem::path dir);  // empty path disables
  const std::filesystem::path& cache_dir() const { return dir_; }

  std::shared_ptr<const RTable> get(const CrystalLabel& left, const CrystalLabel& right);
  void clear();  // drops memoized tables, leaves files alone

private:
  mutable std::mutex mu_;
  std::filesystem::path dir_;
  std::map<std::tuple<int, int, int, int, int>, std::shared_ptr<const RTable>> tables_;
};

}  // namespace cca
