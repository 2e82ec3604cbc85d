// Python bindings for the main operations.  The surface is string-based:
// tableaux, states and contents travel in the same text formats the CLI
// uses, which keeps the module easy to drive from notebooks and tests.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <optional>

#include "crystalca/harness.hpp"

namespace py = pybind11;
using namespace cca;

namespace {

std::shared_ptr<const Space> space_of(int n, const std::string& space) {
  return parse_space(n, space);
}

long long small(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("value exceeds 64-bit range");
  return v.convert_to<long long>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "periodic soliton cellular automata on rectangular crystals";

  m.def(
      "enumerate_crystal",
      [](int n, int a, int j) {
        std::vector<std::string> out;
        for (const Tableau& t : enumerate_crystal(CrystalLabel{n, a, j}))
          out.push_back(t.to_string());
        return out;
      },
      py::arg("n"), py::arg("a"), py::arg("j"),
      "All tableaux of shape a x j over n+1 letters, in canonical order.");

  m.def(
      "highest_element",
      [](int n, int a, int j) { return highest_element(CrystalLabel{n, a, j}).to_string(); },
      py::arg("n"), py::arg("a"), py::arg("j"));

  m.def(
      "promotion",
      [](int n, const std::string& t) { return promotion(parse_tableau(n, t)).to_string(); },
      py::arg("n"), py::arg("tableau"));

  m.def(
      "promotion_inverse",
      [](int n, const std::string& t) {
        return promotion_inverse(parse_tableau(n, t)).to_string();
      },
      py::arg("n"), py::arg("tableau"));

  m.def(
      "weight",
      [](int n, const std::string& space, const std::string& state) {
        const auto sp = space_of(n, space);
        return parse_state(sp, state).weight().counts;
      },
      py::arg("n"), py::arg("space"), py::arg("state"),
      "Letter multiplicities of a state.");

  m.def(
      "apply_f",
      [](int i, int n, const std::string& space, const std::string& state)
          -> std::optional<std::string> {
        const auto sp = space_of(n, space);
        if (auto next = state_f(i, parse_state(sp, state))) return next->to_string();
        return std::nullopt;
      },
      py::arg("i"), py::arg("n"), py::arg("space"), py::arg("state"));

  m.def(
      "apply_e",
      [](int i, int n, const std::string& space, const std::string& state)
          -> std::optional<std::string> {
        const auto sp = space_of(n, space);
        if (auto next = state_e(i, parse_state(sp, state))) return next->to_string();
        return std::nullopt;
      },
      py::arg("i"), py::arg("n"), py::arg("space"), py::arg("state"));

  m.def(
      "weyl",
      [](int i, int n, const std::string& space, const std::string& state) {
        const auto sp = space_of(n, space);
        return weyl_S(i, parse_state(sp, state)).to_string();
      },
      py::arg("i"), py::arg("n"), py::arg("space"), py::arg("state"));

  m.def(
      "promote_state",
      [](int n, const std::string& space, const std::string& state) {
        const auto sp = space_of(n, space);
        return promotion_state(parse_state(sp, state)).to_string();
      },
      py::arg("n"), py::arg("space"), py::arg("state"));

  m.def(
      "evolve",
      [](int n, const std::string& space, const std::string& state, int r, int l,
         int steps) -> std::optional<std::string> {
        const auto sp = space_of(n, space);
        State cur = parse_state(sp, state);
        const TimeEvolution op(sp, r, l);
        for (int s = 0; s < steps; ++s) {
          const EvolutionResult res = op.apply(cur);
          if (!res.next) return std::nullopt;
          cur = *res.next;
        }
        return cur.to_string();
      },
      py::arg("n"), py::arg("space"), py::arg("state"), py::arg("r"), py::arg("l"),
      py::arg("steps") = 1,
      "T^{(r)}_l applied steps times; None when the evolution vanishes.");

  m.def(
      "energy",
      [](int n, const std::string& space, const std::string& state, int a, int j) {
        const auto sp = space_of(n, space);
        return energy_E(parse_state(sp, state), a, j);
      },
      py::arg("n"), py::arg("space"), py::arg("state"), py::arg("a"), py::arg("j"));

  m.def(
      "is_evolvable",
      [](int n, const std::string& space, const std::string& state) {
        const auto sp = space_of(n, space);
        return is_evolvable(parse_state(sp, state)).evolvable;
      },
      py::arg("n"), py::arg("space"), py::arg("state"));

  m.def(
      "content",
      [](int n, const std::string& space, const std::string& state)
          -> std::optional<std::string> {
        const auto sp = space_of(n, space);
        const StateAnalysis res = analyze_state(parse_state(sp, state));
        if (!res.evolvable) return std::nullopt;
        return res.content.to_string();
      },
      py::arg("n"), py::arg("space"), py::arg("state"),
      "Soliton content, or None for a non-evolvable state.");

  m.def(
      "vacancy_numbers",
      [](int n, const std::string& space, const std::string& content) {
        const auto sp = space_of(n, space);
        const VacancyData v = vacancy_numbers(*sp, parse_content(n, content));
        py::dict out;
        for (const auto& [aj, p] : v.on_support)
          out[py::make_tuple(aj.first, aj.second)] = p;
        return out;
      },
      py::arg("n"), py::arg("space"), py::arg("content"));

  m.def(
      "omega",
      [](int n, const std::string& space, const std::string& content) {
        const auto sp = space_of(n, space);
        return small(omega(*sp, parse_content(n, content)));
      },
      py::arg("n"), py::arg("space"), py::arg("content"));

  m.def(
      "lambda_weight",
      [](int n, const std::string& space, const std::string& content) {
        const auto sp = space_of(n, space);
        return lambda_weight(*sp, parse_content(n, content)).parts;
      },
      py::arg("n"), py::arg("space"), py::arg("content"));

  m.def(
      "orbit_size",
      [](const std::vector<long long>& parts) { return orbit_size(DominantWeight{parts}); },
      py::arg("parts"));

  m.def(
      "period_predicted",
      [](int n, const std::string& space, const std::string& content, int r, int l) {
        const auto sp = space_of(n, space);
        const PeriodPrediction pred = period_formula(*sp, parse_content(n, content), r, l);
        py::dict out;
        out["period"] = small(pred.period);
        py::list ratios;
        for (const auto& q : pred.ratios) ratios.append(to_string(q));
        out["ratios"] = std::move(ratios);
        return out;
      },
      py::arg("n"), py::arg("space"), py::arg("content"), py::arg("r"), py::arg("l"));

  m.def(
      "period_measured",
      [](int n, const std::string& space, const std::string& state, int r, int l,
         long long cap) -> std::optional<long long> {
        const auto sp = space_of(n, space);
        const OrbitResult res = orbit_period(parse_state(sp, state), r, l, cap);
        if (res.status != OrbitStatus::Returned) return std::nullopt;
        return res.steps;
      },
      py::arg("n"), py::arg("space"), py::arg("state"), py::arg("r"), py::arg("l"),
      py::arg("cap"));

  m.def(
      "classify",
      [](int n, const std::string& space) {
        const auto sp = space_of(n, space);
        const Classification c = classify(sp);
        py::dict out;
        out["states"] = small(c.total_states);
        out["evolvable"] = c.evolvable;
        py::list rows;
        for (const auto& row : c.rows) {
          py::dict jrow;
          jrow["m"] = row.m.to_string();
          jrow["lambda"] = row.lambda.parts;
          jrow["orbit"] = row.orbit;
          jrow["population"] = row.population;
          jrow["omega"] = small(row.omega_count);
          jrow["closed"] = row.closed;
          jrow["ratio_ok"] = row.ratio_ok;
          rows.append(std::move(jrow));
        }
        out["rows"] = std::move(rows);
        return out;
      },
      py::arg("n"), py::arg("space"),
      "Full classification of the state space by soliton content.");

#ifdef CRYSTALCA_VERSION
  m.attr("__version__") = CRYSTALCA_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
