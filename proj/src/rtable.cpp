#include "crystalca/rtable.hpp"

#include <array>
#include <deque>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cca {

namespace {

struct PairStep {
  std::int32_t x, y;
  bool acted_left;
};

// f_i / e_i on the two-factor tensor x (x) y via the factor-level rule:
// f acts on the left iff phi_i(x) > eps_i(y); e acts left iff phi >= eps.
std::optional<PairStep> pair_apply(int i, bool is_f, const Crystal& l,
                                   const Crystal& r, std::int32_t x, std::int32_t y) {
  if (is_f) {
    if (l.phi(i, x) > r.eps(i, y)) return PairStep{l.f(i, x), y, true};
    const std::int32_t ny = r.f(i, y);
    if (ny < 0) return std::nullopt;
    return PairStep{x, ny, false};
  }
  if (l.phi(i, x) >= r.eps(i, y)) {
    const std::int32_t nx = l.e(i, x);
    if (nx < 0) return std::nullopt;
    return PairStep{nx, y, true};
  }
  return PairStep{x, r.e(i, y), false};
}

}  // namespace

void RTable::validate() const {
  const std::int32_t nl = bl_->size(), nr = br_->size();
  std::vector<char> hit(entries_.size(), 0);
  for (const Entry& en : entries_) {
    if (en.out_left < 0 || en.out_left >= nr || en.out_right < 0 || en.out_right >= nl)
      throw InvariantViolation("R table entry out of range");
    if (en.h > 0) throw InvariantViolation("energy exceeds the normalized maximum 0");
    auto& slot = hit[static_cast<std::size_t>(en.out_left) * nl + en.out_right];
    if (slot) throw InvariantViolation("R table is not a bijection");
    slot = 1;
  }
  const Entry& seed = at(bl_->highest_index(), br_->highest_index());
  if (seed.h != 0 || seed.out_left != br_->highest_index() ||
      seed.out_right != bl_->highest_index())
    throw InvariantViolation("R table highest pair is not normalized");
}

RTable build_r_table(const CrystalLabel& left, const CrystalLabel& right) {
  left.validate();
  right.validate();
  if (left.n != right.n)
    throw std::invalid_argument("R table requires crystals of equal rank");
  const int n = left.n;

  RTable t;
  t.left_ = left;
  t.right_ = right;
  t.bl_ = Crystal::get(left);
  t.br_ = Crystal::get(right);
  const Crystal &bl = *t.bl_, &br = *t.br_;
  const std::int32_t nl = bl.size(), nr = br.size();
  const std::size_t total = static_cast<std::size_t>(nl) * nr;

  t.entries_.assign(total, RTable::Entry{-1, -1, 0});
  std::vector<char> seen(total, 0);
  auto key = [nr](std::int32_t x, std::int32_t y) {
    return static_cast<std::size_t>(x) * nr + y;
  };

  const std::size_t seed = key(bl.highest_index(), br.highest_index());
  t.entries_[seed] = {br.highest_index(), bl.highest_index(), 0};
  seen[seed] = 1;
  std::deque<std::size_t> frontier{seed};
  std::size_t filled = 1;

  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    const std::int32_t x = static_cast<std::int32_t>(cur / nr);
    const std::int32_t y = static_cast<std::int32_t>(cur % nr);
    const RTable::Entry at_cur = t.entries_[cur];

    for (int i = 0; i <= n; ++i) {
      for (const bool is_f : {true, false}) {
        const auto src = pair_apply(i, is_f, bl, br, x, y);
        const auto img = pair_apply(i, is_f, br, bl, at_cur.out_left, at_cur.out_right);
        if (src.has_value() != img.has_value())
          throw InvariantViolation(
              "affine crystal isomorphism broken: operator defined on one side only");
        if (!src) continue;

        // H moves only in the affine direction, and only when the operator
        // hits the same side of the isomorphism on source and image:
        // f_0 on both lefts lowers H, on both rights raises it; e_0 mirrors.
        std::int32_t h = at_cur.h;
        if (i == 0 && src->acted_left == img->acted_left) {
          const int ll = src->acted_left ? -1 : +1;
          h += is_f ? ll : -ll;
        }

        const std::size_t nxt = key(src->x, src->y);
        const RTable::Entry derived{img->x, img->y, h};
        if (!seen[nxt]) {
          seen[nxt] = 1;
          t.entries_[nxt] = derived;
          frontier.push_back(nxt);
          ++filled;
        } else {
          const RTable::Entry& have = t.entries_[nxt];
          if (have.out_left != derived.out_left || have.out_right != derived.out_right ||
              have.h != derived.h)
            throw InvariantViolation("R table propagation is inconsistent");
        }
      }
    }
  }

  if (filled != total) {
    std::ostringstream msg;
    msg << "affine crystal graph on B^{" << left.a << "," << left.j << "} x B^{"
        << right.a << "," << right.j << "} (n=" << n << ") is not connected: reached "
        << filled << " of " << total << " pairs";
    throw InvariantViolation(msg.str());
  }
  t.validate();
  return t;
}

std::pair<AffineElement, AffineElement> apply_r(const RTable& table,
                                                const AffineElement& x,
                                                const AffineElement& y) {
  const RTable::Entry& en = table.at(x.b, y.b);
  return {AffineElement{y.d + en.h, table.right_crystal()->element(en.out_left)},
          AffineElement{x.d - en.h, table.left_crystal()->element(en.out_right)}};
}

bool operator==(const RTable& a, const RTable& b) {
  if (!(a.left_ == b.left_) || !(a.right_ == b.right_)) return false;
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k) {
    if (a.entries_[k].out_left != b.entries_[k].out_left ||
        a.entries_[k].out_right != b.entries_[k].out_right ||
        a.entries_[k].h != b.entries_[k].h)
      return false;
  }
  return true;
}

bool check_yang_baxter(const CrystalLabel& l1, const CrystalLabel& l2,
                       const CrystalLabel& l3, std::string* counterexample) {
  auto& reg = RTableRegistry::global();
  std::array<std::shared_ptr<const Crystal>, 3> crys = {
      Crystal::get(l1), Crystal::get(l2), Crystal::get(l3)};
  // Both composition routes only ever apply R on the label pairs
  // (l1,l2), (l1,l3) and (l2,l3); resolve those once.
  const auto t12 = reg.get(l1, l2);
  const auto t13 = reg.get(l1, l3);
  const auto t23 = reg.get(l2, l3);

  struct Triple {
    std::array<std::int32_t, 3> idx;
    std::array<long long, 3> deg;
  };
  auto step = [](const RTable& table, Triple& tr, int p) {
    const RTable::Entry& en = table.at(tr.idx[p], tr.idx[p + 1]);
    const long long dl = tr.deg[p], dr = tr.deg[p + 1];
    tr.idx[p] = en.out_left;
    tr.idx[p + 1] = en.out_right;
    tr.deg[p] = dr + en.h;
    tr.deg[p + 1] = dl - en.h;
  };

  for (std::int32_t x = 0; x < crys[0]->size(); ++x) {
    for (std::int32_t y = 0; y < crys[1]->size(); ++y) {
      for (std::int32_t z = 0; z < crys[2]->size(); ++z) {
        Triple a{{x, y, z}, {0, 0, 0}};
        Triple b = a;
        step(*t12, a, 0);
        step(*t13, a, 1);
        step(*t23, a, 0);
        step(*t23, b, 1);
        step(*t13, b, 0);
        step(*t12, b, 1);
        if (a.idx != b.idx || a.deg != b.deg) {
          if (counterexample) {
            std::ostringstream msg;
            msg << crys[0]->element(x).to_string() << " (x) "
                << crys[1]->element(y).to_string() << " (x) "
                << crys[2]->element(z).to_string();
            *counterexample = msg.str();
          }
          return false;
        }
      }
    }
  }
  return true;
}

// --- persistence -------------------------------------------------------------

void write_rtable(std::ostream& out, const RTable& table) {
  out << "R " << table.left().n << ' ' << table.left().a << ' ' << table.left().j << ' '
      << table.right().a << ' ' << table.right().j << " version=1\n";
  const std::int32_t nr = table.right_crystal()->size();
  const std::int32_t nl = table.left_crystal()->size();
  for (std::int32_t x = 0; x < nl; ++x) {
    for (std::int32_t y = 0; y < nr; ++y) {
      const RTable::Entry& en = table.at(x, y);
      out << x << ' ' << y << " -> " << en.out_left << ' ' << en.out_right << ' '
          << en.h << '\n';
    }
  }
}

RTable read_rtable(std::istream& in) {
  std::string tag, version;
  int n, a, j, b, k;
  if (!(in >> tag >> n >> a >> j >> b >> k >> version) || tag != "R" ||
      version != "version=1")
    throw std::invalid_argument("R table cache: bad header");

  RTable t;
  t.left_ = CrystalLabel{n, a, j};
  t.right_ = CrystalLabel{n, b, k};
  t.left_.validate();
  t.right_.validate();
  t.bl_ = Crystal::get(t.left_);
  t.br_ = Crystal::get(t.right_);
  const std::int32_t nl = t.bl_->size(), nr = t.br_->size();
  const std::size_t total = static_cast<std::size_t>(nl) * nr;
  t.entries_.assign(total, RTable::Entry{-1, -1, 0});
  std::vector<char> seen(total, 0);

  std::int32_t il, ir, ol, orr, h;
  std::string arrow;
  for (std::size_t row = 0; row < total; ++row) {
    if (!(in >> il >> ir >> arrow >> ol >> orr >> h) || arrow != "->")
      throw std::invalid_argument("R table cache: truncated or malformed body");
    if (il < 0 || il >= nl || ir < 0 || ir >= nr)
      throw std::invalid_argument("R table cache: pair index out of range");
    const std::size_t slot = static_cast<std::size_t>(il) * nr + ir;
    if (seen[slot]) throw std::invalid_argument("R table cache: duplicate pair");
    seen[slot] = 1;
    t.entries_[slot] = RTable::Entry{ol, orr, h};
  }
  t.validate();
  return t;
}

std::string rtable_filename(const CrystalLabel& left, const CrystalLabel& right) {
  std::ostringstream name;
  name << "rtable-n" << left.n << "-a" << left.a << "j" << left.j << "-b" << right.a
       << "k" << right.j << ".v1.txt";
  return name.str();
}

CacheManifest CacheManifest::scan(const std::filesystem::path& dir) {
  CacheManifest m;
  if (!std::filesystem::is_directory(dir)) return m;
  for (const auto& de : std::filesystem::directory_iterator(dir)) {
    if (!de.is_regular_file()) continue;
    std::ifstream in(de.path());
    std::string tag, version;
    int n, a, j, b, k;
    if ((in >> tag >> n >> a >> j >> b >> k >> version) && tag == "R" &&
        version == "version=1") {
      m.entries.push_back({CrystalLabel{n, a, j}, CrystalLabel{n, b, k}, de.path()});
    }
  }
  std::sort(m.entries.begin(), m.entries.end(), [](const auto& x, const auto& y) {
    return std::tie(x.left, x.right) < std::tie(y.left, y.right);
  });
  return m;
}

RTableRegistry& RTableRegistry::global() {
  static RTableRegistry reg;
  return reg;
}

void RTableRegistry::set_cache_dir(std::filesystem::path dir) {
  std::lock_guard<std::mutex> lock(mu_);
  dir_ = std::move(dir);
}

void RTableRegistry::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  tables_.clear();
}

std::shared_ptr<const RTable> RTableRegistry::get(const CrystalLabel& left,
                                                  const CrystalLabel& right) {
  if (left.n != right.n)
    throw std::invalid_argument("R table requires crystals of equal rank");
  std::lock_guard<std::mutex> lock(mu_);
  const auto mkey = std::make_tuple(left.n, left.a, left.j, right.a, right.j);
  if (auto it = tables_.find(mkey); it != tables_.end()) return it->second;

  std::shared_ptr<const RTable> table;
  std::filesystem::path file;
  if (!dir_.empty()) file = dir_ / rtable_filename(left, right);

  if (!file.empty() && std::filesystem::exists(file)) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open R table cache file " + file.string());
    RTable loaded = read_rtable(in);
    if (!(loaded.left() == left) || !(loaded.right() == right))
      throw std::runtime_error("R table cache file " + file.string() +
                               " holds a different table");
    table = std::make_shared<const RTable>(std::move(loaded));
  } else {
    table = std::make_shared<const RTable>(build_r_table(left, right));
    if (!file.empty()) {
      std::filesystem::create_directories(dir_);
      std::ofstream out(file, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write R table cache file " + file.string());
      write_rtable(out, *table);
    }
  }
  tables_.emplace(mkey, table);
  return table;
}

}  // namespace cca
