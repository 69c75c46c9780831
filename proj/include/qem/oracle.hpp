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

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qem/logic.hpp"
#include "qem/statevector.hpp"

namespace qem::oracle {

/// Set of n-bit input bitstrings the oracle marks. May be empty (the
/// no-answer scenario) or cover the whole input space.
struct AnswerSet {
    int n = 0;
    std::set<std::uint64_t> answers;

    static AnswerSet from_strings(int n,
                                  const std::vector<std::string>& bitstrings);
    /// Characteristic bitmask: bit b set iff input b is an answer.
    std::uint64_t scenario_id() const;
    static AnswerSet from_scenario_id(int n, std::uint64_t scenario_id);

    bool operator==(const AnswerSet&) const = default;

    bool contains(std::uint64_t x) const { return answers.count(x) != 0; }
    std::size_t size() const { return answers.size(); }
    bool empty() const { return answers.empty(); }
    std::vector<std::string> to_strings() const;
};

/// Diagonal operator over (x, y): multiplies the amplitude of every basis
/// state with x in `answers` and y = 1 by e^{i theta}. Empty answer set
/// is the identity.
struct PhaseOracle {
    int n = 0;
    double theta = 0.0;
    AnswerSet answers;
};

/// Applies the phase oracle in place; `x_qubits[k]` is the register index
/// carrying input bit k, `y_qubit` the ancilla.
void apply_phase_oracle(StateVector& state, const PhaseOracle& oracle,
                        const std::vector<int>& x_qubits, int y_qubit);

/// Reversible circuit computing f into the ancilla. Register layout:
/// inputs 0..n-1 (input bit k on qubit k), y on qubit n, work qubits
/// above. On every basis input |x, y, 0> the circuit yields
/// |x, y xor f(x), 0>; it is its own inverse.
struct CompiledOracle {
    Circuit circuit;
    int num_inputs = 0;
    int work_count = 0;
    /// Truth table the circuit realizes, indexed like logic::truth_table.
    std::vector<bool> table;
    std::vector<std::string> variables;

    int y_qubit() const { return num_inputs; }
    int total_qubits() const { return num_inputs + 1 + work_count; }
    /// Answer set of the realized function (true rows).
    AnswerSet answer_set() const;
};

/// Toffoli/De-Morgan synthesis: one work qubit per internal node of the
/// desugared AST (-> and <-> rewritten to !/&/| first), mirrored for
/// uncomputation. `variables` must cover the formula's free variables.
CompiledOracle compile_formula(const logic::FormulaPtr& formula,
                               const std::vector<std::string>& variables);

/// Oracle for the violation function f(x) = alpha(x) AND NOT beta(x) over
/// the union variable ordering (KB first, then query).
CompiledOracle violation_oracle(const logic::KnowledgeBase& kb,
                                const logic::FormulaPtr& query);

/// H on every input followed by an oracle for g(x) = NOT alpha(x) OR
/// beta(x); sampling it reads the entailment verdict off the y bit.
struct ProbeCircuit {
    Circuit circuit;
    int num_inputs = 0;
    int work_count = 0;
    std::vector<std::string> variables;

    int y_qubit() const { return num_inputs; }
    int total_qubits() const { return num_inputs + 1 + work_count; }
};

ProbeCircuit entailment_probe_circuit(const logic::KnowledgeBase& kb,
                                      const logic::FormulaPtr& query);

/// Text dump: a header naming the qubit roles, then one gate per line,
/// `KIND controls -> targets [theta]`.
std::string dump(const CompiledOracle& oracle);

/// Budget for inputs + ancilla + work qubits in compiled circuits.
inline constexpr int kQubitBudget = kMaxQubits;

}  // namespace qem::oracle
