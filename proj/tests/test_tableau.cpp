#include "doctest.h"

#include "crystalca/crystal.hpp"
#include "crystalca/tableau.hpp"

using namespace cca;

TEST_CASE("highest elements") {
  CHECK(highest_element({3, 1, 4}).to_string() == "1111");
  CHECK(highest_element({3, 2, 2}).to_string() == "11/22");
  CHECK(highest_element({2, 2, 1}).to_string() == "1/2");
}

TEST_CASE("weights count letters") {
  const Tableau t = parse_tableau(3, "1344");
  CHECK(t.weight().counts == std::vector<int>{1, 0, 1, 2});
  CHECK(highest_element({3, 2, 2}).weight().counts == std::vector<int>{2, 2, 0, 0});
  CHECK(Weight{{0, 0, 0}}.sum() == 0);
}

TEST_CASE("tableau text round trip and validation") {
  CHECK(parse_tableau(3, "223/334").to_string() == "223/334");
  CHECK(parse_tableau(3, "2").to_string() == "2");
  CHECK_THROWS_AS(parse_tableau(3, "231"), ParseError);         // row decreases
  CHECK_THROWS_AS(parse_tableau(3, "11/11"), ParseError);       // column not strict
  CHECK_THROWS_AS(parse_tableau(2, "14"), ParseError);          // letter too big
  CHECK_THROWS_AS(parse_tableau(3, "12/3"), ParseError);        // ragged
  CHECK_THROWS_AS(parse_tableau(1, "1/2"), ParseError);         // too many rows
  CHECK_THROWS_AS(parse_tableau(3, ""), ParseError);
  // Positions point at the offending character.
  try {
    parse_tableau(2, "14");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
  }
}

TEST_CASE("promotion reproduces the reference examples") {
  CHECK(promotion(parse_tableau(3, "223/334")).to_string() == "133/444");
  CHECK(promotion(parse_tableau(3, "1344")).to_string() == "1124");
  CHECK(promotion(parse_tableau(1, "1")).to_string() == "2");
  CHECK(promotion(parse_tableau(1, "2")).to_string() == "1");
  CHECK(promotion_inverse(parse_tableau(3, "133/444")).to_string() == "223/334");
  CHECK(promotion_inverse(parse_tableau(1, "2")).to_string() == "1");
}

TEST_CASE("promotion has order n+1 and is a bijection") {
  for (int n = 1; n <= 3; ++n) {
    for (int a = 1; a <= n; ++a) {
      for (int j = 1; a * j <= 8; ++j) {
        const auto elements = enumerate_crystal({n, a, j});
        std::vector<std::string> images;
        for (const Tableau& t : elements) {
          Tableau cur = t;
          for (int k = 0; k <= n; ++k) cur = promotion(cur);
          CHECK(cur == t);
          images.push_back(promotion(t).to_string());
        }
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        CHECK(images.size() == elements.size());
      }
    }
  }
}

TEST_CASE("single-tableau operators follow the signature rule") {
  // Rank-one strings on one box.
  const Tableau one = parse_tableau(1, "1");
  const Tableau two = parse_tableau(1, "2");
  CHECK(tableau_f(1, one) == two);
  CHECK(!tableau_f(1, two).has_value());
  CHECK(tableau_e(1, two) == one);
  CHECK(!tableau_e(1, one).has_value());

  // e_i inverts f_i across a whole crystal.
  for (const Tableau& t : enumerate_crystal({2, 1, 2})) {
    for (int i = 1; i <= 2; ++i) {
      if (auto ft = tableau_f(i, t)) {
        CHECK(tableau_e(i, *ft) == t);
        // One letter i moved to i+1.
        auto before = t.weight().counts, after = ft->weight().counts;
        CHECK(before[i - 1] - 1 == after[i - 1]);
        CHECK(before[i] + 1 == after[i]);
      }
    }
  }
}

TEST_CASE("highest elements are killed by every raising operator") {
  for (int n = 1; n <= 3; ++n)
    for (int a = 1; a <= n; ++a)
      for (int j = 1; j <= 3; ++j)
        for (int i = 1; i <= n; ++i)
          CHECK(!tableau_e(i, highest_element({n, a, j})).has_value());
}
