// Copyright 2026 The qemck Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qem/oracle.hpp"
#include "reference_sim.hpp"

using namespace qem;
using namespace qem::oracle;

namespace {

const double kPi = std::acos(-1.0);

logic::FormulaPtr random_formula(std::mt19937_64& rng,
                                 const std::vector<std::string>& vars,
                                 int depth) {
    using logic::Formula;
    if (depth == 0 || rng() % 4 == 0) {
        return Formula::var(vars[rng() % vars.size()]);
    }
    switch (rng() % 5) {
        case 0: return Formula::negation(random_formula(rng, vars, depth - 1));
        case 1:
            return Formula::conjunction(random_formula(rng, vars, depth - 1),
                                        random_formula(rng, vars, depth - 1));
        case 2:
            return Formula::disjunction(random_formula(rng, vars, depth - 1),
                                        random_formula(rng, vars, depth - 1));
        case 3:
            return Formula::implication(random_formula(rng, vars, depth - 1),
                                        random_formula(rng, vars, depth - 1));
        default:
            return Formula::equivalence(random_formula(rng, vars, depth - 1),
                                        random_formula(rng, vars, depth - 1));
    }
}

/// Draws formulas until one fits the compiler's qubit budget (deeply
/// nested equivalences desugar into wide trees).
CompiledOracle random_compiled(std::mt19937_64& rng,
                               const std::vector<std::string>& vars,
                               int depth, logic::FormulaPtr* formula_out) {
    while (true) {
        const auto f = random_formula(rng, vars, depth);
        try {
            CompiledOracle oracle =
                compile_formula(f, logic::free_variables(f));
            if (formula_out != nullptr) *formula_out = f;
            return oracle;
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
}

/// Runs the compiled circuit on basis input |x, y, 0> and returns the
/// basis index holding all the probability mass.
std::uint64_t apply_to_basis(const CompiledOracle& oracle, std::uint64_t x,
                             bool y) {
    StateVector s(oracle.total_qubits());
    for (int k = 0; k < oracle.num_inputs; ++k) {
        if ((x >> k) & 1) s.apply(Gate::x(k));
    }
    if (y) s.apply(Gate::x(oracle.y_qubit()));
    s.apply(oracle.circuit);
    const auto probs = s.probabilities();
    std::uint64_t best = 0;
    for (std::uint64_t i = 1; i < probs.size(); ++i) {
        if (probs[i] > probs[best]) best = i;
    }
    CHECK(probs[best] == doctest::Approx(1.0));
    return best;
}

}  // namespace

TEST_CASE("answer sets round-trip through bitstrings and scenario ids") {
    const AnswerSet a = AnswerSet::from_strings(2, {"10", "11"});
    CHECK(a.size() == 2);
    CHECK(a.contains(0b10));
    CHECK(a.contains(0b11));
    CHECK_FALSE(a.contains(0b01));
    CHECK(a.scenario_id() == (1u << 2 | 1u << 3));
    CHECK(AnswerSet::from_scenario_id(2, a.scenario_id()).answers ==
          a.answers);
    CHECK(a.to_strings() == std::vector<std::string>{"10", "11"});

    CHECK_THROWS_AS(AnswerSet::from_strings(2, {"101"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(AnswerSet::from_strings(2, {"1x"}),
                    std::invalid_argument);
}

TEST_CASE("phase oracle phases exactly the marked (x, y=1) states") {
    const int n = 3;
    const AnswerSet answers = AnswerSet::from_strings(n, {"010", "111"});
    const PhaseOracle oracle{n, kPi / 2, answers};

    StateVector s(n + 1);
    for (int q = 0; q <= n; ++q) s.apply(Gate::h(q));
    refsim::State r = refsim::ground(n + 1);
    for (int q = 0; q <= n; ++q) refsim::h_on(r, q);

    // library layout: y on qubit 0, x_k on qubit k+1
    apply_phase_oracle(s, oracle, {1, 2, 3}, 0);
    refsim::phase_where(
        r,
        [&](std::uint64_t i) {
            const std::uint64_t x = (i >> 1) & 7;
            return (i & 1) && answers.contains(x);
        },
        kPi / 2);
    CHECK(refsim::fidelity_distance(
              {s.amplitudes().begin(), s.amplitudes().end()}, r) < 1e-12);
}

TEST_CASE("empty phase oracle is the identity") {
    const PhaseOracle oracle{2, kPi, AnswerSet{2, {}}};
    StateVector s(3);
    for (int q = 0; q < 3; ++q) s.apply(Gate::h(q));
    const auto before = s.amplitudes();
    apply_phase_oracle(s, oracle, {1, 2}, 0);
    CHECK(s.amplitudes() == before);
}

TEST_CASE("compiled oracle computes f into y on every basis state") {
    const auto f = logic::parse("(a -> b) & !(c <-> a)");
    const auto vars = logic::free_variables(f);
    const CompiledOracle oracle = compile_formula(f, vars);
    REQUIRE(oracle.num_inputs == 3);
    const auto table = logic::truth_table(f, vars);
    CHECK(oracle.table == table);
    for (std::uint64_t x = 0; x < 8; ++x) {
        for (bool y : {false, true}) {
            const std::uint64_t out = apply_to_basis(oracle, x, y);
            // inputs preserved, y xored with f(x), work qubits zero
            const bool y_out = y != static_cast<bool>(table[x]);
            const std::uint64_t expected =
                x | (std::uint64_t{y_out} << oracle.y_qubit());
            CHECK(out == expected);
        }
    }
}

TEST_CASE("compiled oracle is an involution and leaves work clean") {
    std::mt19937_64 rng(31);
    const std::vector<std::string> vars{"a", "b", "c"};
    for (int trial = 0; trial < 25; ++trial) {
        const CompiledOracle oracle = random_compiled(rng, vars, 4, nullptr);
        StateVector s(oracle.total_qubits());
        for (int k = 0; k <= oracle.num_inputs; ++k) s.apply(Gate::h(k));
        const auto before = s.amplitudes();

        s.apply(oracle.circuit);
        // work qubits uncomputed after a single application
        const std::uint64_t live =
            (std::uint64_t{1} << (oracle.num_inputs + 1)) - 1;
        for (std::uint64_t i = 0; i < s.dimension(); ++i) {
            if ((i & ~live) != 0) CHECK(std::abs(s.amplitudes()[i]) < 1e-12);
        }

        s.apply(oracle.circuit);
        for (std::uint64_t i = 0; i < s.dimension(); ++i) {
            CHECK(std::abs(s.amplitudes()[i] - before[i]) < 1e-10);
        }
    }
}

TEST_CASE("compiled tables match evaluation over random formulas") {
    std::mt19937_64 rng(77);
    const std::vector<std::string> vars{"p", "q", "r", "s"};
    for (int trial = 0; trial < 200; ++trial) {
        logic::FormulaPtr f;
        const CompiledOracle oracle = random_compiled(rng, vars, 4, &f);
        const auto used = logic::free_variables(f);
        CHECK(oracle.table == logic::truth_table(f, used));
        CHECK(oracle.answer_set().n == static_cast<int>(used.size()));
    }
}

TEST_CASE("De Morgan pairs compile to identical tables") {
    const auto vars = std::vector<std::string>{"a", "b"};
    const auto lhs = compile_formula(logic::parse("a | b"), vars);
    const auto rhs = compile_formula(logic::parse("!(!a & !b)"), vars);
    CHECK(lhs.table == rhs.table);
}

TEST_CASE("violation oracle realizes alpha AND NOT beta") {
    logic::KnowledgeBase kb{logic::parse_sentences("A -> B; B -> C")};
    const auto beta = logic::parse("A -> !C");
    const CompiledOracle oracle = violation_oracle(kb, beta);
    CHECK(oracle.variables == std::vector<std::string>{"A", "B", "C"});
    // only A=B=C=true satisfies the chain while falsifying the query
    CHECK(oracle.answer_set().to_strings() ==
          std::vector<std::string>{"111"});

    // an entailed query has an empty violation set
    const CompiledOracle clean = violation_oracle(kb, logic::parse("A -> C"));
    CHECK(clean.answer_set().empty());
}

TEST_CASE("probe circuit reads the verdict off the y bit") {
    logic::KnowledgeBase kb{logic::parse_sentences("A -> B; B -> C")};

    const ProbeCircuit entailed =
        entailment_probe_circuit(kb, logic::parse("A -> C"));
    StateVector s(entailed.total_qubits());
    s.apply(entailed.circuit);
    const auto probs = s.probabilities();
    double y_zero = 0.0;
    for (std::uint64_t i = 0; i < probs.size(); ++i) {
        if (((i >> entailed.y_qubit()) & 1) == 0) y_zero += probs[i];
    }
    CHECK(y_zero == doctest::Approx(0.0));

    const ProbeCircuit refuted =
        entailment_probe_circuit(kb, logic::parse("A -> !C"));
    StateVector t(refuted.total_qubits());
    t.apply(refuted.circuit);
    const auto tp = t.probabilities();
    double ty_zero = 0.0;
    for (std::uint64_t i = 0; i < tp.size(); ++i) {
        if (((i >> refuted.y_qubit()) & 1) == 0) ty_zero += tp[i];
    }
    CHECK(ty_zero == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("dump lists roles and one gate per line") {
    const CompiledOracle oracle =
        compile_formula(logic::parse("a & b"), {"a", "b"});
    const std::string text = dump(oracle);
    CHECK(text.find("inputs") != std::string::npos);
    CHECK(text.find("CCX") != std::string::npos);
}

TEST_CASE("oversized formulas are rejected by the qubit budget") {
    // a formula with enough internal nodes to blow past the budget
    std::string text = "v0";
    for (int k = 1; k < 30; ++k) {
        text = "(" + text + " <-> v" + std::to_string(k) + ")";
    }
    CHECK_THROWS(compile_formula(logic::parse(text),
                                 logic::free_variables(logic::parse(text))));
}
