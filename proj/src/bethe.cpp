#include "crystalca/bethe.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace cca {

namespace {

int cartan_a(int a, int b) {
  if (a == b) return 2;
  return std::abs(a - b) == 1 ? -1 : 0;
}

}  // namespace

std::string to_string(const BigRat& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

long long vacancy_number(const Space& space, const Content& m, int a, int j) {
  long long p = 0;
  for (const auto& [r, l] : space.factors())
    if (r == a) p += std::min(j, l);
  for (const auto& [b, k] : m.support()) {
    const int c = cartan_a(a, b);
    if (c == 0) continue;
    p -= static_cast<long long>(c) * std::min(j, k) * m.multiplicity(b, k);
  }
  return p;
}

VacancyData vacancy_numbers(const Space& space, const Content& m) {
  VacancyData out;
  int jstar = 1;
  for (const auto& [r, l] : space.factors()) jstar = std::max(jstar, l);
  for (const auto& [a, j] : m.support()) {
    jstar = std::max(jstar, j);
    out.on_support.emplace_back(std::make_pair(a, j), vacancy_number(space, m, a, j));
  }
  out.at_infinity.reserve(space.rank());
  for (int a = 1; a <= space.rank(); ++a)
    out.at_infinity.push_back(vacancy_number(space, m, a, jstar));
  return out;
}

bool is_valid_content(const Space& space, const Content& m) {
  for (const auto& [a, j] : m.support())
    if (vacancy_number(space, m, a, j) < 0) return false;
  return true;
}

BetheMatrix f_matrix(const Space& space, const Content& m) {
  BetheMatrix out;
  out.support = m.support();
  const std::size_t s = out.support.size();
  out.mat.assign(s, std::vector<BigInt>(s, 0));
  for (std::size_t row = 0; row < s; ++row) {
    const auto [a, j] = out.support[row];
    for (std::size_t col = 0; col < s; ++col) {
      const auto [b, k] = out.support[col];
      BigInt v = static_cast<long long>(cartan_a(a, b)) * std::min(j, k) *
                 m.multiplicity(b, k);
      if (row == col) v += vacancy_number(space, m, a, j);
      out.mat[row][col] = v;
    }
  }
  return out;
}

BetheMatrix f_replaced(const Space& space, const Content& m, int b, int k, int r, int l) {
  BetheMatrix out = f_matrix(space, m);
  const auto it = std::find(out.support.begin(), out.support.end(), std::make_pair(b, k));
  if (it == out.support.end())
    throw std::invalid_argument("column (" + std::to_string(b) + "," + std::to_string(k) +
                                ") is not in the content support");
  const std::size_t col = static_cast<std::size_t>(it - out.support.begin());
  for (std::size_t row = 0; row < out.support.size(); ++row) {
    const auto [a, j] = out.support[row];
    out.mat[row][col] = (a == r) ? BigInt(std::min(j, l)) : BigInt(0);
  }
  return out;
}

BigInt det_exact(const std::vector<std::vector<BigInt>>& mat) {
  const std::size_t n = mat.size();
  if (n == 0) return 1;
  for (const auto& row : mat)
    if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");

  std::vector<std::vector<BigInt>> m = mat;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k] == 0) ++pivot;
      if (pivot == n) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Bareiss update: exact division by the previous pivot.
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

BigInt det_exact(const BetheMatrix& m) { return det_exact(m.mat); }

BigRat lcm_rationals(std::span<const BigRat> values) {
  if (values.empty()) return 1;
  BigInt num_lcm = 1, den_gcd = 0;
  for (const BigRat& q : values) {
    if (q <= 0) throw std::invalid_argument("LCM is defined here for positive rationals");
    num_lcm = boost::multiprecision::lcm(num_lcm, boost::multiprecision::numerator(q));
    den_gcd = boost::multiprecision::gcd(den_gcd, boost::multiprecision::denominator(q));
  }
  return BigRat(num_lcm, den_gcd);
}

PeriodPrediction period_formula(const Space& space, const Content& m, int r, int l) {
  if (r < 1 || r > space.rank() || l < 1)
    throw std::invalid_argument("evolution label outside 1 <= r <= n, l >= 1");
  const BetheMatrix f = f_matrix(space, m);
  const BigInt det_f = det_exact(f);
  if (det_f == 0)
    throw std::invalid_argument("det F vanishes: not a valid content");

  PeriodPrediction out;
  out.ratios.push_back(1);
  for (const auto& [b, k] : f.support) {
    const BigInt det_col = det_exact(f_replaced(space, m, b, k, r, l));
    if (det_col == 0) continue;  // skipped by the primed union
    BigRat q(det_f, det_col);
    if (q <= 0)
      throw InvariantViolation("nonpositive period ratio det F / det F[b,k]");
    out.ratios.push_back(std::move(q));
  }
  const BigRat lcm = lcm_rationals(out.ratios);
  if (boost::multiprecision::denominator(lcm) != 1)
    throw InvariantViolation("rational LCM failed to be integral");
  out.period = boost::multiprecision::numerator(lcm);
  return out;
}

PeriodPrediction period_formula_sl2(const Space& space, const Content& m, int l) {
  if (space.rank() != 1)
    throw std::invalid_argument("closed period formula requires rank 1");
  for (const auto& [r, ll] : space.factors())
    if (r != 1 || ll != 1)
      throw std::invalid_argument("closed period formula requires every factor B^{1,1}");
  if (l < 1) throw std::invalid_argument("evolution column count must be >= 1");

  const long long L = space.length();
  auto p = [&](int j) -> long long {
    return j == 0 ? L : vacancy_number(space, m, 1, j);
  };

  std::vector<int> parts;  // H = { J_1 < ... < J_s }
  for (const auto& [a, j] : m.support()) parts.push_back(j);
  const int s = static_cast<int>(parts.size());

  PeriodPrediction out;
  out.ratios.push_back(1);
  if (s > 0) {
    std::vector<int> i(s + 1, 0);
    for (int k = 1; k <= s; ++k) i[k] = std::min(parts[k - 1], l);
    int t = 0;
    for (int k = 0; k < s; ++k)
      if (i[k + 1] > i[k]) t = k;

    for (int k = 0; k <= t; ++k) {
      if (k == t) {
        // p_{i_{t+1}} = p_{i_s} cancels: the last term is p_{i_t}/(i_{t+1}-i_t).
        out.ratios.emplace_back(BigInt(p(i[t])), BigInt(i[t + 1] - i[t]));
      } else {
        const long long ps = p(i[s]);
        if (ps == 0) continue;  // infinite ratio, excluded by the primed union
        const BigInt num = BigInt(p(i[k + 1])) * p(i[k]);
        const BigInt den = BigInt(i[k + 1] - i[k]) * ps;
        if (num == 0) continue;
        out.ratios.emplace_back(num, den);
      }
    }
  }
  const BigRat lcm = lcm_rationals(out.ratios);
  if (boost::multiprecision::denominator(lcm) != 1)
    throw InvariantViolation("rational LCM failed to be integral");
  out.period = boost::multiprecision::numerator(lcm);
  return out;
}

BigInt falling_binomial(const BigInt& s, int t) {
  if (t < 0) throw std::invalid_argument("binomial lower index must be >= 0");
  BigInt num = 1;
  for (int u = 0; u < t; ++u) num *= s - u;
  BigInt fact = 1;
  for (int u = 2; u <= t; ++u) fact *= u;
  // A product of t consecutive integers is divisible by t!.
  return num / fact;
}

BigInt omega(const Space& space, const Content& m) {
  const BetheMatrix f = f_matrix(space, m);
  BigRat value = BigRat(det_exact(f));
  for (const auto& [a, j] : m.support()) {
    const int mult = m.multiplicity(a, j);
    const long long p = vacancy_number(space, m, a, j);
    value *= BigRat(falling_binomial(BigInt(p) + mult - 1, mult - 1), BigInt(mult));
  }
  if (boost::multiprecision::denominator(value) != 1)
    throw InvariantViolation("Omega(m) is not an integer");
  BigInt result = boost::multiprecision::numerator(value);
  if (is_valid_content(space, m) && result < 1)
    throw InvariantViolation("Omega(m) < 1 for a valid content");
  return result;
}

std::vector<long long> weight_tuple(const Space& space, const Content& m) {
  const int n = space.rank();
  const VacancyData v = vacancy_numbers(space, m);
  long long weighted = 0;
  for (int a = 1; a <= n; ++a) weighted += static_cast<long long>(a) * v.at_infinity[a - 1];
  const long long total = space.total_boxes();
  if ((total - weighted) % (n + 1) != 0)
    throw InvariantViolation("weight tuple normalization is not integral");
  const long long last = (total - weighted) / (n + 1);

  std::vector<long long> parts(n + 1, last);
  for (int k = n; k >= 1; --k) parts[k - 1] = parts[k] + v.at_infinity[k - 1];
  return parts;
}

DominantWeight lambda_weight(const Space& space, const Content& m) {
  const VacancyData v = vacancy_numbers(space, m);
  for (int a = 1; a <= space.rank(); ++a) {
    if (v.at_infinity[a - 1] < 0)
      throw std::invalid_argument("lambda(m) is not dominant: p^{(" + std::to_string(a) +
                                  ")}_infinity < 0");
  }
  DominantWeight w{weight_tuple(space, m)};
  if (!w.parts.empty() && w.parts.back() < 0)
    throw std::invalid_argument("lambda(m) has a negative part");
  return w;
}

std::string DominantWeight::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts[i]);
  }
  out += ')';
  return out;
}

long long orbit_size(const DominantWeight& w) {
  long long fact = 1;
  for (std::size_t i = 2; i <= w.parts.size(); ++i) fact *= static_cast<long long>(i);
  long long denom = 1;
  std::size_t i = 0;
  while (i < w.parts.size()) {
    std::size_t run = 1;
    while (i + run < w.parts.size() && w.parts[i + run] == w.parts[i]) ++run;
    for (std::size_t u = 2; u <= run; ++u) denom *= static_cast<long long>(u);
    i += run;
  }
  return fact / denom;
}

}  // namespace cca
