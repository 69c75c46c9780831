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

#include "qem/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qem::oracle {

using logic::Formula;
using logic::FormulaPtr;
using logic::NodeKind;

AnswerSet AnswerSet::from_strings(int n,
                                  const std::vector<std::string>& bitstrings) {
    AnswerSet set;
    set.n = n;
    for (const std::string& s : bitstrings) {
        if (s.size() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument("answer bitstring '" + s +
                                        "' does not have " +
                                        std::to_string(n) + " bits");
        }
        std::uint64_t value = 0;
        for (char c : s) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("answer bitstring '" + s +
                                            "' is not binary");
            }
            value = (value << 1) | static_cast<std::uint64_t>(c - '0');
        }
        set.answers.insert(value);
    }
    return set;
}

std::uint64_t AnswerSet::scenario_id() const {
    std::uint64_t id = 0;
    for (std::uint64_t a : answers) id |= (std::uint64_t{1} << a);
    return id;
}

AnswerSet AnswerSet::from_scenario_id(int n, std::uint64_t scenario_id) {
    AnswerSet set;
    set.n = n;
    const std::uint64_t space = std::uint64_t{1} << n;
    for (std::uint64_t b = 0; b < space; ++b) {
        if ((scenario_id >> b) & 1) set.answers.insert(b);
    }
    if (scenario_id >> space) {
        throw std::invalid_argument("scenario id out of range for n=" +
                                    std::to_string(n));
    }
    return set;
}

std::vector<std::string> AnswerSet::to_strings() const {
    std::vector<std::string> out;
    for (std::uint64_t a : answers) {
        std::string s(static_cast<std::size_t>(n), '0');
        for (int b = 0; b < n; ++b) {
            if ((a >> b) & 1) s[n - 1 - b] = '1';
        }
        out.push_back(std::move(s));
    }
    return out;
}

void apply_phase_oracle(StateVector& state, const PhaseOracle& oracle,
                        const std::vector<int>& x_qubits, int y_qubit) {
    if (static_cast<int>(x_qubits.size()) != oracle.n) {
        throw std::invalid_argument("x qubit list does not match oracle n");
    }
    if (oracle.answers.empty()) return;
    const Complex phase{std::cos(oracle.theta), std::sin(oracle.theta)};
    std::vector<Complex> amplitudes = state.amplitudes();
    const std::uint64_t y_mask = std::uint64_t{1} << y_qubit;
    for (std::uint64_t i = 0; i < amplitudes.size(); ++i) {
        if ((i & y_mask) == 0) continue;
        std::uint64_t x = 0;
        for (int k = 0; k < oracle.n; ++k) {
            if ((i >> x_qubits[k]) & 1) x |= (std::uint64_t{1} << k);
        }
        if (oracle.answers.contains(x)) amplitudes[i] *= phase;
    }
    state.set_amplitudes(std::move(amplitudes));
}

namespace {

FormulaPtr desugar(const FormulaPtr& f) {
    switch (f->kind()) {
        case NodeKind::Var:
            return f;
        case NodeKind::Not:
            return Formula::negation(desugar(f->lhs()));
        case NodeKind::And:
            return Formula::conjunction(desugar(f->lhs()), desugar(f->rhs()));
        case NodeKind::Or:
            return Formula::disjunction(desugar(f->lhs()), desugar(f->rhs()));
        case NodeKind::Implies:
            return Formula::disjunction(
                Formula::negation(desugar(f->lhs())), desugar(f->rhs()));
        case NodeKind::Iff: {
            const FormulaPtr l = desugar(f->lhs());
            const FormulaPtr r = desugar(f->rhs());
            return Formula::conjunction(
                Formula::disjunction(Formula::negation(l), r),
                Formula::disjunction(Formula::negation(r), l));
        }
    }
    throw std::logic_error("unreachable formula kind");
}

int count_internal_nodes(const FormulaPtr& f) {
    if (f->kind() == NodeKind::Var) return 0;
    int count = 1;
    if (f->lhs()) count += count_internal_nodes(f->lhs());
    if (f->rhs()) count += count_internal_nodes(f->rhs());
    return count;
}

class Synthesizer {
  public:
    Synthesizer(const std::vector<std::string>& variables, int work_base)
        : variables_(variables), next_work_(work_base) {}

    /// Emits gates computing the node's value and returns the wire
    /// carrying it (an input qubit for Var nodes, a work qubit else).
    int emit(const FormulaPtr& f, Circuit& circuit) {
        if (f->kind() == NodeKind::Var) {
            for (std::size_t k = 0; k < variables_.size(); ++k) {
                if (variables_[k] == f->name()) return static_cast<int>(k);
            }
            throw std::invalid_argument("variable list misses '" + f->name() +
                                        "'");
        }
        const int out = next_work_++;
        switch (f->kind()) {
            case NodeKind::Not: {
                const int child = emit(f->lhs(), circuit);
                circuit.push(Gate::cx(child, out));
                circuit.push(Gate::x(out));
                break;
            }
            case NodeKind::And: {
                const int l = emit(f->lhs(), circuit);
                const int r = emit(f->rhs(), circuit);
                circuit.push(Gate::ccx(l, r, out));
                break;
            }
            case NodeKind::Or: {
                const int l = emit(f->lhs(), circuit);
                const int r = emit(f->rhs(), circuit);
                circuit.push(Gate::x(l));
                circuit.push(Gate::x(r));
                circuit.push(Gate::ccx(l, r, out));
                circuit.push(Gate::x(l));
                circuit.push(Gate::x(r));
                circuit.push(Gate::x(out));
                break;
            }
            default:
                throw std::logic_error("non-desugared node in synthesis");
        }
        return out;
    }

  private:
    const std::vector<std::string>& variables_;
    int next_work_;
};

}  // namespace

AnswerSet CompiledOracle::answer_set() const {
    AnswerSet set;
    set.n = num_inputs;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i]) set.answers.insert(i);
    }
    return set;
}

CompiledOracle compile_formula(const logic::FormulaPtr& formula,
                               const std::vector<std::string>& variables) {
    for (const std::string& v : logic::free_variables(formula)) {
        bool found = false;
        for (const std::string& u : variables) found = found || u == v;
        if (!found) {
            throw std::invalid_argument("variable list misses '" + v + "'");
        }
    }
    const FormulaPtr core = desugar(formula);
    const int n = static_cast<int>(variables.size());
    const int work = count_internal_nodes(core);
    if (n + 1 + work > kQubitBudget) {
        throw std::invalid_argument(
            "qubit budget exceeded: need " + std::to_string(n + 1 + work) +
            " qubits (" + std::to_string(work) + " work)");
    }

    CompiledOracle out;
    out.num_inputs = n;
    out.work_count = work;
    out.variables = variables;
    out.table = logic::truth_table(formula, variables);

    Circuit forward;
    Synthesizer synth(variables, n + 1);
    const int root_wire = synth.emit(core, forward);

    out.circuit = forward;
    out.circuit.push(Gate::cx(root_wire, n));
    // Mirror pass; every gate used is self-inverse.
    for (auto it = forward.gates.rbegin(); it != forward.gates.rend(); ++it) {
        out.circuit.push(*it);
    }
    return out;
}

CompiledOracle violation_oracle(const logic::KnowledgeBase& kb,
                                const logic::FormulaPtr& query) {
    std::vector<FormulaPtr> all = kb.sentences;
    all.push_back(query);
    const std::vector<std::string> variables = logic::free_variables(all);
    const FormulaPtr f = Formula::conjunction(kb.conjunction(),
                                              Formula::negation(query));
    return compile_formula(f, variables);
}

ProbeCircuit entailment_probe_circuit(const logic::KnowledgeBase& kb,
                                      const logic::FormulaPtr& query) {
    std::vector<FormulaPtr> all = kb.sentences;
    all.push_back(query);
    const std::vector<std::string> variables = logic::free_variables(all);
    const FormulaPtr g = Formula::disjunction(
        Formula::negation(kb.conjunction()), query);
    CompiledOracle oracle = compile_formula(g, variables);

    ProbeCircuit probe;
    probe.num_inputs = oracle.num_inputs;
    probe.work_count = oracle.work_count;
    probe.variables = variables;
    for (int q = 0; q < oracle.num_inputs; ++q) {
        probe.circuit.push(Gate::h(q));
    }
    for (const Gate& g2 : oracle.circuit.gates) probe.circuit.push(g2);
    return probe;
}

std::string dump(const CompiledOracle& oracle) {
    std::ostringstream os;
    os << "# inputs:";
    for (int q = 0; q < oracle.num_inputs; ++q) {
        os << ' ' << oracle.variables[q] << "=q" << q;
    }
    os << "  y=q" << oracle.y_qubit();
    if (oracle.work_count > 0) {
        os << "  work=q" << (oracle.y_qubit() + 1) << "..q"
           << (oracle.total_qubits() - 1);
    }
    os << '\n';
    for (const Gate& gate : oracle.circuit.gates) {
        os << to_string(gate.kind);
        for (int c : gate.controls) os << ' ' << c;
        os << " ->";
        for (int t : gate.targets) os << ' ' << t;
        if (gate.kind == GateKind::Rz || gate.kind == GateKind::CRz ||
            gate.kind == GateKind::MCRz) {
            os << ' ' << gate.theta;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace qem::oracle
