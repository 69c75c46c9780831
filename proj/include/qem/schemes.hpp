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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qem/oracle.hpp"
#include "qem/statevector.hpp"

namespace qem::schemes {

enum class SchemeId { Grover, Conventional, Subtle, Simpler };

const char* to_string(SchemeId scheme);
SchemeId scheme_from_string(const std::string& name);
std::vector<SchemeId> all_schemes();

/// Register layout per scheme, chosen so the big-endian binary label of a
/// basis index reads exactly in the scheme's published label order:
///   Grover        "x_{n-1}..x_0 y"        (n+1 qubits)
///   Conventional  "t1 t0 x_{n-1}..x_0 y"  (n+3 qubits)
///   Subtle        "t y x_{n-1}..x_0"      (n+2 qubits)
///   Simpler       "t y x_{n-1}..x_0"      (n+2 qubits)
struct Layout {
    SchemeId scheme;
    int n = 0;
    int total_qubits = 0;
    int y = -1;
    std::vector<int> x;    // x[k] = register index of input bit k
    std::vector<int> tags; // Conventional {t0, t1}; Subtle/Simpler {t}

    int x_msq() const { return x.back(); }
    std::vector<int> all_qubits() const;
};

Layout layout_for(SchemeId scheme, int n);

/// Either form of selection operator the schemes accept. A compiled
/// oracle is sandwiched between basis changes to act as a phase oracle;
/// its work qubits ride above the scheme register and are stripped from
/// the final state.
using OracleInput = std::variant<oracle::PhaseOracle, oracle::CompiledOracle>;

struct SchemeRun {
    SchemeId scheme;
    int n = 0;
    int iterations = 0;  // Grover only; marking schemes are single-pass
    oracle::AnswerSet answers;
    StateVector final_state;
};

/// Optimal Grover iteration count: argmin over j in [0, ceil(pi/4
/// sqrt(N/k)) + 1] of cos^2((2j+1) asin(sqrt(k/N))). Ties are broken
/// toward the closed-form approximation.
int grover_iterations(std::uint64_t search_space, std::uint64_t answer_count);

/// round(pi/4 sqrt(N/k) - 1/2), clamped at 0.
int grover_iterations_approx(std::uint64_t search_space,
                             std::uint64_t answer_count);

/// Standard Grover: y driven to |1>, H on inputs, then `iterations` of
/// [phase oracle (theta = pi); inversion about the mean on inputs only].
SchemeRun run_grover(int n, const OracleInput& oracle, int iterations);

/// Conventional marking: single pass, theta = pi/2 selection, tag pair
/// phased by CR(+-pi/2) against y, mean inversion over all n+3 qubits.
SchemeRun run_conventional(int n, const OracleInput& oracle);

/// Subtle marking: theta = pi selection on a superposed y, MCR(pi) on y
/// controlled by t and every input qubit, mean inversion over all n+2.
SchemeRun run_subtle(int n, const OracleInput& oracle);

/// Simpler marking: as subtle, with the marking step replaced by a single
/// CCZ on (t, x_msq, y).
SchemeRun run_simpler(int n, const OracleInput& oracle);

SchemeRun run_scheme(SchemeId scheme, int n, const OracleInput& oracle,
                     std::optional<int> iterations = std::nullopt);

/// Samples the run's final state; labels follow the scheme label order.
ShotHistogram measure_run(const SchemeRun& run, std::uint64_t shots,
                          std::uint64_t seed);

}  // namespace qem::schemes
