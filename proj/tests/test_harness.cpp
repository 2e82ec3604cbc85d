#include "doctest.h"

#include <algorithm>

#include "crystalca/harness.hpp"

using namespace cca;

namespace {

std::string repeat_space(const std::string& factor, int count) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    if (i) out += ';';
    out += factor;
  }
  return out;
}

}  // namespace

TEST_CASE("state counts") {
  CHECK(state_count(*parse_space(3, "1,2;1,1;1,2;1,1")) == 1600);
  CHECK(state_count(*parse_space(3, "2,1;2,1;2,2")) == 720);
  CHECK(state_count(*parse_space(1, "1,1;1,1")) == 4);
}

TEST_CASE("enumeration is canonical and bounded") {
  const auto space = parse_space(1, "1,1;1,1");
  std::vector<std::string> seen;
  for_each_state(space, [&](const State& s) { seen.push_back(s.to_string()); });
  CHECK(seen == std::vector<std::string>{"1.1", "1.2", "2.1", "2.2"});

  // Ordinals round-trip.
  for (long long ord = 0; ord < 4; ++ord)
    CHECK(state_ordinal(state_from_ordinal(space, ord)) == ord);

  // Refusal names the computed size.
  const auto big = parse_space(3, repeat_space("2,2", 8));
  try {
    for_each_state(big, [](const State&) {}, BigInt(1000));
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("25600000000") != std::string::npos);
  }
}

TEST_CASE("classification of a single box factor") {
  const auto space = parse_space(1, "1,1");
  const Classification c = classify(space);
  CHECK(c.total_states == 2);
  CHECK(c.evolvable == 2);
  REQUIRE(c.rows.size() == 1);
  CHECK(c.rows[0].m.empty());
  CHECK(c.rows[0].lambda.to_string() == "(1,0)");
  CHECK(c.rows[0].orbit == 2);
  CHECK(c.rows[0].population == 2);
  CHECK(c.rows[0].omega_count == 1);
  CHECK(c.rows[0].closed);
  CHECK(c.rows[0].ratio_ok);
}

TEST_CASE("classification of two box factors at rank one") {
  const auto space = parse_space(1, "1,1;1,1");
  const Classification c = classify(space);
  CHECK(c.total_states == 4);
  CHECK(c.evolvable == 4);
  REQUIRE(c.rows.size() == 2);
  // Vacuum row.
  CHECK(c.rows[0].m.empty());
  CHECK(c.rows[0].population == 2);
  CHECK(c.rows[0].omega_count == 1);
  CHECK(c.rows[0].ratio_ok);
  // One short soliton.
  CHECK(c.rows[1].m.to_string() == "1");
  CHECK(c.rows[1].population == 2);
  CHECK(c.rows[1].lambda.to_string() == "(1,1)");
  CHECK(c.rows[1].orbit == 1);
  CHECK(c.rows[1].omega_count == 2);
  CHECK(c.rows[1].ratio_ok);
}

TEST_CASE("closure fails where an image leaves its population") {
  const auto space = parse_space(2, repeat_space("1,1", 6));
  ClassifyOptions opts;
  opts.keep_populations = true;
  const Classification c = classify(space, opts);
  CHECK(c.total_states == 729);

  bool found = false;
  for (std::size_t k = 0; k < c.rows.size(); ++k) {
    if (c.rows[k].m.to_string() == "2,2/2") {
      found = true;
      CHECK(!c.rows[k].closed);
      // The standalone check agrees.
      CHECK(!closure_check(space, c.populations[k]));
    }
    // Standalone closure agrees with the classify verdict everywhere.
    CHECK(closure_check(space, c.populations[k]) == c.rows[k].closed);
  }
  CHECK(found);

  // Population totals account for every state.
  long long pop = 0;
  for (const auto& row : c.rows) pop += row.population;
  CHECK(pop == c.evolvable);
  long long missing = 0;
  for (const auto& [wit, count] : c.witness_histogram) missing += count;
  CHECK(BigInt(pop + missing) == c.total_states);
}

TEST_CASE("period verification flags") {
  const auto space = parse_space(1, repeat_space("1,1", 13));
  const State p = parse_state(space, "1.2.2.1.1.2.1.1.2.2.2.2.1");
  const std::vector<std::pair<int, int>> rls{{1, 1}, {1, 2}, {1, 3}};
  const auto rows = verify_periods(p, rls);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) CHECK(row.flag == PeriodRowResult::Flag::Equal);
  CHECK(rows[0].measured == 13);
  CHECK(rows[1].measured == 91);
  CHECK(rows[2].measured == 273);
}

TEST_CASE("reference grid fixture") {
  for (const auto& check : verify_grid()) {
    INFO(check.name << ": " << check.detail);
    CHECK(check.pass);
  }
}

TEST_CASE("character diagnostic on the smallest space") {
  for (const auto& check : verify_completeness_small()) {
    INFO(check.name << ": " << check.detail);
    CHECK(check.pass);
  }
  // Direct shape of the report.
  const auto space = parse_space(1, "1,1;1,1");
  const CompletenessReport report = completeness_diagnostic(space);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.all_match);
}

TEST_CASE("evolutions are injective and weight preserving where nonzero") {
  const auto space = parse_space(2, repeat_space("1,1", 4));
  for (const auto& [a, j] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 3}}) {
    const TimeEvolution op(space, a, j);
    std::map<std::vector<std::int32_t>, std::vector<std::int32_t>> images;
    for_each_state(space, [&](const State& s) {
      const auto step = op.apply_indices(s.comps());
      if (!step) return;
      const State next(space, step->comps);
      CHECK(next.weight() == s.weight());
      const auto [it, fresh] = images.emplace(step->comps, s.comps());
      CHECK(fresh);  // no two states share an image
    });
  }
}

TEST_CASE("content is constant along full orbits") {
  const auto space = parse_space(1, repeat_space("1,1", 13));
  State cur = parse_state(space, "1.2.2.1.1.2.1.1.2.2.2.2.1");
  const Content m = soliton_content(cur);
  for (int t = 0; t < 91; ++t) {
    const auto res = time_evolution(cur, 1, 2);
    REQUIRE(res.next.has_value());
    cur = *res.next;
    CHECK(soliton_content(cur) == m);
  }
  CHECK(cur == parse_state(space, "1.2.2.1.1.2.1.1.2.2.2.2.1"));
}

TEST_CASE("population weights fill the Weyl orbit evenly") {
  const auto space = parse_space(3, "2,1;2,1;2,2");
  ClassifyOptions opts;
  opts.keep_populations = true;
  const Classification c = classify(space, opts);
  for (std::size_t k = 0; k < c.rows.size(); ++k) {
    std::map<std::vector<int>, long long> weights;
    for (const long long ord : c.populations[k])
      ++weights[state_from_ordinal(space, ord).weight().counts];
    // Exactly the orbit of lambda(m), each weight equally populated.
    CHECK(static_cast<long long>(weights.size()) == c.rows[k].orbit);
    const long long share = c.rows[k].population / c.rows[k].orbit;
    std::vector<int> dominant(c.rows[k].lambda.parts.begin(),
                              c.rows[k].lambda.parts.end());
    CHECK(weights.count(dominant) == 1);
    for (const auto& [w, count] : weights) {
      CHECK(count == share);
      std::vector<int> sorted = w;
      std::sort(sorted.rbegin(), sorted.rend());
      CHECK(sorted == dominant);
    }
  }
}

TEST_CASE("classification rendering formats") {
  const auto space = parse_space(1, "1,1;1,1");
  const Classification c = classify(space);
  const std::string csv = render_classification(c, *space, "csv");
  CHECK(csv.find("m,lambda,orbit,population,omega,closed,ratio_ok\n") == 0);
  CHECK(csv.find("# states,4") != std::string::npos);
  CHECK(csv.find("# evolvable,4") != std::string::npos);
  // Header + 2 rows + 2 totals.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  const std::string json = render_classification(c, *space, "json");
  CHECK(json.find("\"rows\"") != std::string::npos);
  const std::string text = render_classification(c, *space, "text");
  CHECK(text.find("states 4, evolvable 4") != std::string::npos);
}
