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

#include "qem/schemes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qem::schemes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kArgminTie = 1e-12;

struct SelectionContext {
    Layout layout;
    int total_qubits;       // layout qubits plus any compiled-oracle extras
    int flag_qubit = -1;    // compiled form: scratch holding f(x)
    int work_base = -1;     // compiled form: first uncomputed work qubit
};

const oracle::PhaseOracle* as_phase(const OracleInput& input) {
    return std::get_if<oracle::PhaseOracle>(&input);
}
const oracle::CompiledOracle* as_compiled(const OracleInput& input) {
    return std::get_if<oracle::CompiledOracle>(&input);
}

oracle::AnswerSet answers_of(const OracleInput& input, int n) {
    if (const auto* phase = as_phase(input)) {
        if (phase->n != n) {
            throw std::invalid_argument("oracle input width mismatch");
        }
        return phase->answers;
    }
    const auto* compiled = as_compiled(input);
    if (compiled->num_inputs != n) {
        throw std::invalid_argument("oracle input width mismatch");
    }
    return compiled->answer_set();
}

SelectionContext make_context(SchemeId scheme, int n,
                              const OracleInput& input) {
    SelectionContext ctx;
    ctx.layout = layout_for(scheme, n);
    ctx.total_qubits = ctx.layout.total_qubits;
    if (const auto* compiled = as_compiled(input)) {
        ctx.flag_qubit = ctx.total_qubits;
        ctx.work_base = ctx.total_qubits + 1;
        ctx.total_qubits += 1 + compiled->work_count;
    }
    return ctx;
}

/// Remaps a compiled oracle's gates onto the scheme register: inputs to
/// the layout's x qubits, the oracle's y to the flag qubit, work above.
Circuit remap_compiled(const oracle::CompiledOracle& compiled,
                       const SelectionContext& ctx) {
    const auto remap = [&](int q) {
        if (q < compiled.num_inputs) return ctx.layout.x[q];
        if (q == compiled.y_qubit()) return ctx.flag_qubit;
        return ctx.work_base + (q - compiled.y_qubit() - 1);
    };
    Circuit out;
    for (Gate gate : compiled.circuit.gates) {
        for (int& t : gate.targets) t = remap(t);
        for (int& c : gate.controls) c = remap(c);
        out.push(std::move(gate));
    }
    return out;
}

/// U_f with the given angle: e^{i theta} on (x in answers, y = 1).
void apply_selection(StateVector& state, const OracleInput& input,
                     const SelectionContext& ctx, double theta) {
    if (const auto* phase = as_phase(input)) {
        if (std::abs(phase->theta - theta) > 1e-12) {
            throw std::invalid_argument(
                "phase oracle angle does not match the scheme's selection "
                "step");
        }
        apply_phase_oracle(state, *phase, ctx.layout.x, ctx.layout.y);
        return;
    }
    const auto* compiled = as_compiled(input);
    const Circuit mapped = remap_compiled(*compiled, ctx);
    state.apply(mapped);
    state.apply(Gate::crz(ctx.flag_qubit, ctx.layout.y, theta));
    state.apply(mapped);  // compiled circuits are involutions
}

SchemeRun finish(SchemeId scheme, int n, int iterations,
                 const OracleInput& input, const SelectionContext& ctx,
                 StateVector state) {
    SchemeRun run{scheme, n, iterations, answers_of(input, n),
                  state.extract_low_qubits(ctx.layout.total_qubits)};
    return run;
}

}  // namespace

const char* to_string(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::Grover: return "grover";
        case SchemeId::Conventional: return "conventional";
        case SchemeId::Subtle: return "subtle";
        case SchemeId::Simpler: return "simpler";
    }
    return "?";
}

SchemeId scheme_from_string(const std::string& name) {
    for (SchemeId s : all_schemes()) {
        if (name == to_string(s)) return s;
    }
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::vector<SchemeId> all_schemes() {
    return {SchemeId::Grover, SchemeId::Conventional, SchemeId::Subtle,
            SchemeId::Simpler};
}

std::vector<int> Layout::all_qubits() const {
    std::vector<int> qubits;
    for (int q = 0; q < total_qubits; ++q) qubits.push_back(q);
    return qubits;
}

Layout layout_for(SchemeId scheme, int n) {
    if (n < 1) throw std::invalid_argument("input qubit count must be >= 1");
    Layout layout;
    layout.scheme = scheme;
    layout.n = n;
    switch (scheme) {
        case SchemeId::Grover:
            // label x_{n-1}..x_0 y
            layout.total_qubits = n + 1;
            layout.y = 0;
            for (int k = 0; k < n; ++k) layout.x.push_back(k + 1);
            break;
        case SchemeId::Conventional:
            // label t1 t0 x_{n-1}..x_0 y
            layout.total_qubits = n + 3;
            layout.y = 0;
            for (int k = 0; k < n; ++k) layout.x.push_back(k + 1);
            layout.tags = {n + 1, n + 2};  // {t0, t1}
            break;
        case SchemeId::Subtle:
        case SchemeId::Simpler:
            // label t y x_{n-1}..x_0
            layout.total_qubits = n + 2;
            for (int k = 0; k < n; ++k) layout.x.push_back(k);
            layout.y = n;
            layout.tags = {n + 1};
            break;
    }
    return layout;
}

int grover_iterations_approx(std::uint64_t search_space,
                             std::uint64_t answer_count) {
    const double ratio = static_cast<double>(search_space) /
                         static_cast<double>(answer_count);
    const double estimate = kPi / 4.0 * std::sqrt(ratio) - 0.5;
    return std::max(0, static_cast<int>(std::lround(estimate)));
}

int grover_iterations(std::uint64_t search_space,
                      std::uint64_t answer_count) {
    if (search_space < 2) {
        throw std::invalid_argument("search space must hold at least 2 states");
    }
    if (answer_count < 1 || answer_count > search_space) {
        throw std::invalid_argument("answer count must be in [1, N]");
    }
    if (answer_count == search_space) return 0;  // already certain
    const double theta = std::asin(std::sqrt(
        static_cast<double>(answer_count) /
        static_cast<double>(search_space)));
    const double ratio = static_cast<double>(search_space) /
                         static_cast<double>(answer_count);
    const int cap =
        static_cast<int>(std::ceil(kPi / 4.0 * std::sqrt(ratio))) + 1;

    double best = 2.0;
    std::vector<int> minimizers;
    for (int j = 0; j <= cap; ++j) {
        const double c = std::cos((2.0 * j + 1.0) * theta);
        const double value = c * c;
        if (value < best - kArgminTie) {
            best = value;
            minimizers.assign(1, j);
        } else if (value <= best + kArgminTie) {
            minimizers.push_back(j);
        }
    }
    // The failure probability can be flat (e.g. N = 2); break ties toward
    // the closed-form estimate.
    const int approx = grover_iterations_approx(search_space, answer_count);
    int chosen = minimizers.front();
    for (int j : minimizers) {
        if (std::abs(j - approx) < std::abs(chosen - approx)) chosen = j;
    }
    return chosen;
}

SchemeRun run_grover(int n, const OracleInput& input, int iterations) {
    if (iterations < 0) throw std::invalid_argument("negative iteration count");
    if (const auto* phase = as_phase(input)) {
        if (std::abs(phase->theta - kPi) > 1e-12) {
            throw std::invalid_argument("Grover requires a theta = pi oracle");
        }
    }
    const SelectionContext ctx = make_context(SchemeId::Grover, n, input);
    StateVector state(ctx.total_qubits);
    state.apply(Gate::x(ctx.layout.y));
    for (int q : ctx.layout.x) state.apply(Gate::h(q));
    for (int j = 0; j < iterations; ++j) {
        apply_selection(state, input, ctx, kPi);
        state.apply(Gate::diffusion(ctx.layout.x));
    }
    return finish(SchemeId::Grover, n, iterations, input, ctx,
                  std::move(state));
}

SchemeRun run_conventional(int n, const OracleInput& input) {
    const SelectionContext ctx = make_context(SchemeId::Conventional, n, input);
    const Layout& layout = ctx.layout;
    StateVector state(ctx.total_qubits);
    for (int q : layout.x) state.apply(Gate::h(q));
    state.apply(Gate::h(layout.y));
    apply_selection(state, input, ctx, kPi / 2.0);
    state.apply(Gate::h(layout.tags[0]));
    state.apply(Gate::h(layout.tags[1]));
    state.apply(Gate::crz(layout.y, layout.tags[0], kPi / 2.0));
    state.apply(Gate::crz(layout.y, layout.tags[1], -kPi / 2.0));
    state.apply(Gate::diffusion(layout.all_qubits()));
    return finish(SchemeId::Conventional, n, 0, input, ctx, std::move(state));
}

SchemeRun run_subtle(int n, const OracleInput& input) {
    const SelectionContext ctx = make_context(SchemeId::Subtle, n, input);
    const Layout& layout = ctx.layout;
    StateVector state(ctx.total_qubits);
    for (int q : layout.all_qubits()) state.apply(Gate::h(q));
    apply_selection(state, input, ctx, kPi);
    std::vector<int> controls = layout.x;
    controls.push_back(layout.tags[0]);
    state.apply(Gate::mcrz(std::move(controls), layout.y, kPi));
    state.apply(Gate::diffusion(layout.all_qubits()));
    return finish(SchemeId::Subtle, n, 0, input, ctx, std::move(state));
}

SchemeRun run_simpler(int n, const OracleInput& input) {
    const SelectionContext ctx = make_context(SchemeId::Simpler, n, input);
    const Layout& layout = ctx.layout;
    StateVector state(ctx.total_qubits);
    for (int q : layout.all_qubits()) state.apply(Gate::h(q));
    apply_selection(state, input, ctx, kPi);
    state.apply(Gate::ccz(layout.tags[0], layout.x_msq(), layout.y));
    state.apply(Gate::diffusion(layout.all_qubits()));
    return finish(SchemeId::Simpler, n, 0, input, ctx, std::move(state));
}

SchemeRun run_scheme(SchemeId scheme, int n, const OracleInput& input,
                     std::optional<int> iterations) {
    switch (scheme) {
        case SchemeId::Grover: {
            int j;
            if (iterations) {
                j = *iterations;
            } else {
                const auto answers = answers_of(input, n);
                const std::uint64_t space = std::uint64_t{1} << n;
                j = answers.empty()
                        ? 1
                        : grover_iterations(space, answers.size());
            }
            return run_grover(n, input, j);
        }
        case SchemeId::Conventional:
            return run_conventional(n, input);
        case SchemeId::Subtle:
            return run_subtle(n, input);
        case SchemeId::Simpler:
            return run_simpler(n, input);
    }
    throw std::logic_error("unreachable scheme");
}

ShotHistogram measure_run(const SchemeRun& run, std::uint64_t shots,
                          std::uint64_t seed) {
    return run.final_state.sample_shots(shots, seed);
}

}  // namespace qem::schemes
