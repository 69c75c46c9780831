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

#include <cmath>
#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qem/harness.hpp"

namespace py = pybind11;

namespace {

qem::metrics::MarginValue margin_for(const qem::harness::RunRecord& record,
                                     qem::metrics::MarginMode mode) {
    qem::metrics::ScenarioResult result{record.scheme, record.n,
                                        record.answers, record.repeat,
                                        record.histogram};
    return qem::metrics::winning_margin(result, mode);
}

// FormulaPtr is shared_ptr-to-const, which pybind11 cannot hold directly.
struct FormulaHandle {
    qem::logic::FormulaPtr ptr;
};

py::object margin_to_py(const qem::metrics::MarginValue& m) {
    switch (m.kind) {
        case qem::metrics::MarginKind::Finite: return py::float_(m.value);
        case qem::metrics::MarginKind::Large: return py::str("Large");
        case qem::metrics::MarginKind::NotApplicable: return py::none();
    }
    return py::none();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum entailment model checking core";

    using qem::StateVector;
    using qem::harness::ExperimentConfig;
    using qem::harness::RunRecord;
    using qem::harness::SweepResult;
    using qem::logic::KnowledgeBase;
    using qem::oracle::AnswerSet;
    using qem::oracle::CompiledOracle;
    using qem::oracle::PhaseOracle;
    using qem::schemes::SchemeId;
    using qem::schemes::SchemeRun;

    m.attr("RNG_NAME") = qem::kRngName;
    m.attr("MAX_QUBITS") = qem::kMaxQubits;

    py::register_exception<qem::logic::ParseError>(m, "FormulaParseError",
                                                   PyExc_ValueError);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int>(), py::arg("num_qubits"))
        .def_property_readonly("num_qubits", &StateVector::num_qubits)
        .def_property_readonly("dimension", &StateVector::dimension)
        .def("amplitudes",
             [](const StateVector& s) { return s.amplitudes(); })
        .def("probabilities", &StateVector::probabilities)
        .def("label", &StateVector::label, py::arg("index"))
        .def("sample_shots", &StateVector::sample_shots, py::arg("shots"),
             py::arg("seed"));

    py::class_<AnswerSet>(m, "AnswerSet")
        .def(py::init([](int n, const std::vector<std::string>& bits) {
                 return AnswerSet::from_strings(n, bits);
             }),
             py::arg("n"), py::arg("bitstrings"))
        .def_static("from_scenario_id", &AnswerSet::from_scenario_id,
                    py::arg("n"), py::arg("scenario_id"))
        .def_readonly("n", &AnswerSet::n)
        .def_property_readonly("scenario_id", &AnswerSet::scenario_id)
        .def("bitstrings", &AnswerSet::to_strings)
        .def("__len__", &AnswerSet::size)
        .def("__contains__",
             [](const AnswerSet& a, std::uint64_t x) { return a.contains(x); });

    py::class_<FormulaHandle>(m, "Formula")
        .def("__str__", [](const FormulaHandle& f) {
            return qem::logic::to_string(f.ptr);
        });
    m.def(
        "parse_formula",
        [](const std::string& text) {
            return FormulaHandle{qem::logic::parse(text)};
        },
        py::arg("text"));
    m.def(
        "formula_to_string",
        [](const FormulaHandle& f) { return qem::logic::to_string(f.ptr); },
        py::arg("formula"));

    m.def(
        "truth_table",
        [](const std::string& formula) {
            const auto f = qem::logic::parse(formula);
            const auto vars = qem::logic::free_variables(f);
            return py::make_tuple(vars, qem::logic::truth_table(f, vars));
        },
        py::arg("formula"),
        "Returns (variables, table); row i binds variable k to bit k of i.");

    m.def(
        "entails",
        [](const std::string& kb_text, const std::string& query_text) {
            KnowledgeBase kb;
            kb.sentences = qem::logic::parse_sentences(kb_text);
            const auto query = qem::logic::parse(query_text);
            const auto result = qem::logic::entails(kb, query);
            py::list violations;
            for (const auto& v : result.violations) violations.append(v);
            return py::make_tuple(result.entailed, result.variables,
                                  violations);
        },
        py::arg("kb"), py::arg("query"),
        "Exhaustive check; returns (entailed, variables, violations).");

    py::class_<CompiledOracle>(m, "CompiledOracle")
        .def_readonly("num_inputs", &CompiledOracle::num_inputs)
        .def_readonly("work_count", &CompiledOracle::work_count)
        .def_readonly("table", &CompiledOracle::table)
        .def_readonly("variables", &CompiledOracle::variables)
        .def_property_readonly("gate_count",
                               [](const CompiledOracle& o) {
                                   return o.circuit.size();
                               })
        .def("answer_set", &CompiledOracle::answer_set)
        .def("dump",
             [](const CompiledOracle& o) { return qem::oracle::dump(o); });

    m.def(
        "compile_formula",
        [](const std::string& text) {
            const auto f = qem::logic::parse(text);
            return qem::oracle::compile_formula(f,
                                                qem::logic::free_variables(f));
        },
        py::arg("formula"));

    m.def(
        "violation_oracle",
        [](const std::string& kb_text, const std::string& query_text) {
            KnowledgeBase kb;
            kb.sentences = qem::logic::parse_sentences(kb_text);
            return qem::oracle::violation_oracle(kb,
                                                 qem::logic::parse(query_text));
        },
        py::arg("kb"), py::arg("query"));

    py::enum_<SchemeId>(m, "Scheme")
        .value("GROVER", SchemeId::Grover)
        .value("CONVENTIONAL", SchemeId::Conventional)
        .value("SUBTLE", SchemeId::Subtle)
        .value("SIMPLER", SchemeId::Simpler);
    m.def("scheme_from_string", &qem::schemes::scheme_from_string,
          py::arg("name"));
    m.def(
        "scheme_to_string",
        [](SchemeId s) { return std::string(qem::schemes::to_string(s)); },
        py::arg("scheme"));

    m.def("grover_iterations", &qem::schemes::grover_iterations,
          py::arg("search_space"), py::arg("answer_count"));

    py::class_<SchemeRun>(m, "SchemeRun")
        .def_readonly("scheme", &SchemeRun::scheme)
        .def_readonly("n", &SchemeRun::n)
        .def_readonly("iterations", &SchemeRun::iterations)
        .def_readonly("answers", &SchemeRun::answers)
        .def_property_readonly("final_state",
                               [](const SchemeRun& run) {
                                   return run.final_state;
                               })
        .def(
            "measure",
            [](const SchemeRun& run, std::uint64_t shots, std::uint64_t seed) {
                return qem::schemes::measure_run(run, shots, seed);
            },
            py::arg("shots"), py::arg("seed"));

    m.def(
        "run_scheme",
        [](SchemeId scheme, int n, const AnswerSet& answers,
           std::optional<int> iterations) {
            const double pi = std::acos(-1.0);
            const double theta =
                scheme == SchemeId::Conventional ? pi / 2 : pi;
            PhaseOracle oracle{n, theta, answers};
            return qem::schemes::run_scheme(scheme, n, oracle, iterations);
        },
        py::arg("scheme"), py::arg("n"), py::arg("answers"),
        py::arg("iterations") = std::nullopt,
        "Runs a scheme against an ideal phase oracle for the answer set.");

    m.def(
        "run_scheme_compiled",
        [](SchemeId scheme, int n, const CompiledOracle& oracle,
           std::optional<int> iterations) {
            return qem::schemes::run_scheme(scheme, n, oracle, iterations);
        },
        py::arg("scheme"), py::arg("n"), py::arg("oracle"),
        py::arg("iterations") = std::nullopt);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("scheme", &RunRecord::scheme)
        .def_readonly("n", &RunRecord::n)
        .def_readonly("scenario_id", &RunRecord::scenario_id)
        .def_readonly("answers", &RunRecord::answers)
        .def_readonly("repeat", &RunRecord::repeat)
        .def_readonly("seed", &RunRecord::seed)
        .def_readonly("histogram", &RunRecord::histogram)
        .def(
            "winning_margin",
            [](const RunRecord& record, const std::string& mode) {
                const auto m = margin_for(
                    record, mode == "local" ? qem::metrics::MarginMode::Local
                                            : qem::metrics::MarginMode::Global);
                return margin_to_py(m);
            },
            py::arg("mode") = "global",
            "Finite margin, 'Large', or None when undefined.");

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("records", &SweepResult::records)
        .def(
            "records_csv",
            [](const SweepResult& result) {
                std::ostringstream os;
                qem::harness::write_records_csv(os, result.records);
                return os.str();
            })
        .def("records_json",
             [](const SweepResult& result) {
                 return qem::harness::records_json(result);
             })
        .def("report_json",
             [](const SweepResult& result, SchemeId scheme) {
                 return qem::harness::report_json(result.reports.at(scheme));
             })
        .def("report_text", [](const SweepResult& result, SchemeId scheme) {
            return qem::harness::report_text(result.reports.at(scheme));
        })
        .def(
            "distinguishability",
            [](const SweepResult& result, SchemeId scheme) -> py::object {
                const auto& report = result.reports.at(scheme);
                if (!report.distinguishability) return py::none();
                return py::float_(*report.distinguishability);
            },
            py::arg("scheme"));

    m.def(
        "sweep",
        [](const std::vector<SchemeId>& schemes, int n, std::uint64_t shots,
           int repeats, std::uint64_t seed, int threads,
           std::optional<std::vector<AnswerSet>> scenarios) {
            ExperimentConfig config;
            config.schemes_to_run = schemes;
            config.n = n;
            config.shots = shots;
            config.repeats = repeats;
            config.base_seed = seed;
            config.threads = threads;
            config.scenario_filter = std::move(scenarios);
            return qem::harness::sweep(config);
        },
        py::arg("schemes"), py::arg("n") = 2, py::arg("shots") = 1024,
        py::arg("repeats") = 40, py::arg("seed") = 20260815,
        py::arg("threads") = 1, py::arg("scenarios") = std::nullopt);

    m.def("run_seed", &qem::harness::run_seed, py::arg("base_seed"),
          py::arg("scheme"), py::arg("scenario_id"), py::arg("repeat"));
}
