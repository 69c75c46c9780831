# Copyright 2026 The qemck Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Classical simulation toolkit for quantum entailment model checking.

Compiles propositional knowledge bases into oracle circuits, runs Grover
search and the conventional/subtle/simpler marking schemes on a dense
statevector simulator, and evaluates winning-margin and
distinguishability metrics.
"""

from qemck._core import (
    MAX_QUBITS,
    RNG_NAME,
    AnswerSet,
    CompiledOracle,
    Formula,
    FormulaParseError,
    RunRecord,
    Scheme,
    SchemeRun,
    StateVector,
    SweepResult,
    compile_formula,
    entails,
    formula_to_string,
    grover_iterations,
    parse_formula,
    run_scheme,
    run_scheme_compiled,
    run_seed,
    scheme_from_string,
    scheme_to_string,
    sweep,
    truth_table,
    violation_oracle,
)

__all__ = [
    "MAX_QUBITS",
    "RNG_NAME",
    "AnswerSet",
    "CompiledOracle",
    "Formula",
    "FormulaParseError",
    "RunRecord",
    "Scheme",
    "SchemeRun",
    "StateVector",
    "SweepResult",
    "compile_formula",
    "entails",
    "formula_to_string",
    "grover_iterations",
    "parse_formula",
    "run_scheme",
    "run_scheme_compiled",
    "run_seed",
    "scheme_from_string",
    "scheme_to_string",
    "sweep",
    "truth_table",
    "violation_oracle",
]

__version__ = "0.1.0"
