#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crystalca/automaton.hpp"

namespace cca {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

std::string to_string(const BigRat& q);  // "num/den", or "num" when integral

// p^{(a)}_j = sum_i min(j, l_i) [a == r_i] - sum_{(b,k) in H} C_ab min(j,k) m^{(b)}_k
// with C the Cartan matrix of A_n.
long long vacancy_number(const Space& space, const Content& m, int a, int j);

struct VacancyData {
  // Vacancy numbers on the support, lex ordered by (color, length).
  std::vector<std::pair<std::pair<int, int>, long long>> on_support;
  std::vector<long long> at_infinity;  // p^{(a)}_infinity for a = 1..n
};
VacancyData vacancy_numbers(const Space& space, const Content& m);

// A content is realizable iff every vacancy number on its support is >= 0.
bool is_valid_content(const Space& space, const Content& m);

struct BetheMatrix {
  std::vector<std::pair<int, int>> support;  // ordered H
  std::vector<std::vector<BigInt>> mat;      // square, |H| x |H|
};

// F_{aj,bk} = delta delta p^{(a)}_j + C_ab min(j,k) m^{(b)}_k over ordered H.
BetheMatrix f_matrix(const Space& space, const Content& m);
// F with the (b,k) column replaced by delta_{a,r} min(j,l).
BetheMatrix f_replaced(const Space& space, const Content& m, int b, int k, int r, int l);

// Exact determinant by fraction-free (Bareiss) elimination; empty matrix
// yields 1.
BigInt det_exact(const std::vector<std::vector<BigInt>>& mat);
BigInt det_exact(const BetheMatrix& m);

// LCM of positive reduced rationals: LCM of numerators over GCD of
// denominators.  The list is expected to start with 1, which forces an
// integer result.
BigRat lcm_rationals(std::span<const BigRat> values);

struct PeriodPrediction {
  std::vector<BigRat> ratios;  // the "LCM of" entries, leading 1 included
  BigInt period;
};

// Dynamical period prediction: LCM(1, det F / det F[b,k]) over the support,
// skipping replaced columns with vanishing determinant.
PeriodPrediction period_formula(const Space& space, const Content& m, int r, int l);

// Closed evaluation for rank 1 with every factor B^{1,1}, using the
// boundary convention p_0 = L; terms with vanishing denominator are skipped
// and the final term is cancelled symbolically.
PeriodPrediction period_formula_sl2(const Space& space, const Content& m, int l);

// Omega(m) = det F * prod (1/m^{(a)}_j) binom(p^{(a)}_j + m^{(a)}_j - 1,
// m^{(a)}_j - 1), with the generalized binomial; exact, asserted integral,
// and asserted >= 1 for valid contents.
BigInt omega(const Space& space, const Content& m);

// binom(s, t) = s(s-1)...(s-t+1)/t! for integer s of any sign, t >= 0.
BigInt falling_binomial(const BigInt& s, int t);

struct DominantWeight {
  std::vector<long long> parts;  // weakly decreasing, nonnegative

  std::string to_string() const;  // "(p1,p2,...)"
  friend bool operator==(const DominantWeight&, const DominantWeight&) = default;
  friend auto operator<=>(const DominantWeight&, const DominantWeight&) = default;
};

// lambda(m): the dominant gl-weight with consecutive differences
// p^{(a)}_infinity and total equal to the box count of B.  Errors out when
// the content is not dominant-compatible.
DominantWeight lambda_weight(const Space& space, const Content& m);

// Same tuple without the dominance requirement (used by the character
// diagnostic, where arbitrary m appear).
std::vector<long long> weight_tuple(const Space& space, const Content& m);

// |W lambda|: (n+1)! over the factorials of the part multiplicities.
long long orbit_size(const DominantWeight& w);

}  // namespace cca
