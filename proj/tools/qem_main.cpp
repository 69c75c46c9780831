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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qem/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

qem::logic::KnowledgeBase parse_kb(const std::string& text) {
    qem::logic::KnowledgeBase kb;
    kb.sentences = qem::logic::parse_sentences(text);
    return kb;
}

std::string assignment_to_string(const qem::logic::Assignment& assignment,
                                 const std::vector<std::string>& order) {
    std::string out;
    for (const std::string& v : order) {
        if (!out.empty()) out += ' ';
        out += v + "=" + (assignment.at(v) ? "T" : "F");
    }
    return out;
}

struct CommonOptions {
    std::string scheme = "simpler";
    int n = 2;
    std::string answers;
    std::string kb;
    std::string query;
    std::uint64_t shots = 1024;
    int repeats = 40;
    std::uint64_t seed = 20260815;
    std::string format = "text";
    std::string out;
    int threads = 1;
};

int run(int argc, char** argv) {
    CLI::App app{
        "Quantum entailment model checking on a dense statevector "
        "simulator: Grover search plus the conventional, subtle and "
        "simpler marking schemes."};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string schemes_arg = "simpler";
    std::string metrics_in;

    const auto add_common = [&](CLI::App* cmd, bool with_scheme = true) {
        cmd->add_option("--n", opt.n, "input qubit count")
            ->envname("QEM_N");
        cmd->add_option("--shots", opt.shots, "shots per run")
            ->envname("QEM_SHOTS");
        cmd->add_option("--seed", opt.seed, "base seed")
            ->envname("QEM_SEED");
        cmd->add_option("--format", opt.format, "csv, json or text")
            ->check(CLI::IsMember({"csv", "json", "text"}))
            ->envname("QEM_FORMAT");
        cmd->add_option("--out", opt.out, "output path (default stdout)")
            ->envname("QEM_OUT");
        if (with_scheme) {
            cmd->add_option("--scheme", opt.scheme,
                            "grover, conventional, subtle or simpler")
                ->envname("QEM_SCHEME");
        }
    };

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "run the full scenario sweep and report metrics");
    add_common(sweep_cmd, false);
    sweep_cmd->add_option("--scheme", schemes_arg,
                          "comma-separated scheme list")
        ->envname("QEM_SCHEME");
    sweep_cmd->add_option("--repeats", opt.repeats, "repeats per scenario")
        ->envname("QEM_REPEATS");
    sweep_cmd->add_option("--answers", opt.answers,
                          "restrict to one answer set (comma-separated "
                          "bitstrings; 'none' for the empty set)")
        ->envname("QEM_ANSWERS");
    sweep_cmd->add_option("--threads", opt.threads, "worker threads")
        ->envname("QEM_THREADS");

    CLI::App* simulate_cmd = app.add_subcommand(
        "simulate", "one scheme on one answer set");
    add_common(simulate_cmd);
    simulate_cmd->add_option("--answers", opt.answers,
                             "comma-separated answer bitstrings")
        ->envname("QEM_ANSWERS");
    simulate_cmd->add_option("--repeats", opt.repeats,
                             "repeats (text format renders max/median/min)")
        ->envname("QEM_REPEATS");

    CLI::App* entail_cmd = app.add_subcommand(
        "entail", "check whether the KB entails the query");
    add_common(entail_cmd);
    std::string method = "classical";
    entail_cmd->add_option("--kb", opt.kb, "';'-separated sentences")
        ->required()
        ->envname("QEM_KB");
    entail_cmd->add_option("--query", opt.query, "query sentence")
        ->required()
        ->envname("QEM_QUERY");
    entail_cmd->add_option("--method", method, "classical, probe or search")
        ->check(CLI::IsMember({"classical", "probe", "search"}))
        ->envname("QEM_METHOD");

    CLI::App* truthtable_cmd = app.add_subcommand(
        "truthtable", "print a formula's truth table");
    truthtable_cmd->add_option("--query", opt.query, "formula")
        ->required()
        ->envname("QEM_QUERY");
    truthtable_cmd->add_option("--kb", opt.kb,
                               "optional KB; the table is over the union "
                               "variables")
        ->envname("QEM_KB");
    truthtable_cmd->add_option("--out", opt.out, "output path")
        ->envname("QEM_OUT");

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "dump a compiled oracle circuit");
    oracle_cmd->add_option("--query", opt.query, "formula to compile")
        ->envname("QEM_QUERY");
    oracle_cmd->add_option("--kb", opt.kb,
                           "with --query: dump the violation oracle "
                           "alpha & !beta")
        ->envname("QEM_KB");
    oracle_cmd->add_option("--out", opt.out, "output path")
        ->envname("QEM_OUT");

    CLI::App* metrics_cmd = app.add_subcommand(
        "metrics", "recompute metrics from a records CSV");
    metrics_cmd->add_option("--in", metrics_in, "records CSV path")
        ->required()
        ->envname("QEM_IN");
    metrics_cmd->add_option("--format", opt.format, "csv, json or text")
        ->check(CLI::IsMember({"csv", "json", "text"}))
        ->envname("QEM_FORMAT");
    metrics_cmd->add_option("--out", opt.out, "output path")
        ->envname("QEM_OUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    std::ofstream file;

    if (sweep_cmd->parsed()) {
        qem::harness::ExperimentConfig config;
        for (const std::string& s : split_csv(schemes_arg)) {
            config.schemes_to_run.push_back(
                qem::schemes::scheme_from_string(s));
        }
        config.n = opt.n;
        config.shots = opt.shots;
        config.repeats = opt.repeats;
        config.base_seed = opt.seed;
        config.threads = opt.threads;
        if (!opt.answers.empty()) {
            std::vector<std::string> bits =
                opt.answers == "none" ? std::vector<std::string>{}
                                      : split_csv(opt.answers);
            config.scenario_filter = {{
                qem::oracle::AnswerSet::from_strings(opt.n, bits)}};
        }
        const qem::harness::SweepResult result = qem::harness::sweep(config);
        std::ostream& os = open_output(file, opt.out);
        if (opt.format == "csv") {
            qem::harness::write_records_csv(os, result.records);
        } else if (opt.format == "json") {
            os << qem::harness::records_json(result) << '\n';
        } else {
            for (const auto& [scheme, report] : result.reports) {
                os << qem::harness::report_text(report);
            }
        }
        return kExitOk;
    }

    if (simulate_cmd->parsed()) {
        qem::harness::ExperimentConfig config;
        config.schemes_to_run = {qem::schemes::scheme_from_string(opt.scheme)};
        config.n = opt.n;
        config.shots = opt.shots;
        config.repeats = opt.repeats;
        config.base_seed = opt.seed;
        std::vector<std::string> bits =
            (opt.answers.empty() || opt.answers == "none")
                ? std::vector<std::string>{}
                : split_csv(opt.answers);
        config.scenario_filter = {{
            qem::oracle::AnswerSet::from_strings(opt.n, bits)}};
        const qem::harness::SweepResult result = qem::harness::sweep(config);
        std::ostream& os = open_output(file, opt.out);
        if (opt.format == "csv") {
            qem::harness::write_records_csv(os, result.records);
        } else if (opt.format == "json") {
            os << qem::harness::records_json(result) << '\n';
        } else {
            os << qem::harness::histogram_render(result.records);
        }
        return kExitOk;
    }

    if (entail_cmd->parsed()) {
        const qem::logic::KnowledgeBase kb = parse_kb(opt.kb);
        const qem::logic::FormulaPtr query = qem::logic::parse(opt.query);
        qem::harness::EntailOutcome outcome;
        if (method == "classical") {
            outcome = qem::harness::entail_classical(kb, query);
        } else if (method == "probe") {
            outcome = qem::harness::entail_probe(kb, query, opt.shots,
                                                 opt.seed);
        } else {
            outcome = qem::harness::entail_search(
                kb, query, qem::schemes::scheme_from_string(opt.scheme),
                opt.shots, opt.seed);
        }
        std::ostream& os = open_output(file, opt.out);
        os << outcome.summary << '\n';
        if (method == "classical") {
            for (const auto& v : outcome.violations) {
                os << "violation: "
                   << assignment_to_string(v, outcome.variables) << '\n';
            }
        } else if (method == "probe") {
            os << "histogram (y x_{n-1}..x_0):\n";
            for (const auto& [label, count] : outcome.histogram) {
                os << "  " << label << ' ' << count << '\n';
            }
        } else {
            os << "candidate violations (most frequent first):";
            for (const std::string& c : outcome.candidate_violations) {
                os << ' ' << c;
            }
            os << '\n';
        }
        return kExitOk;
    }

    if (truthtable_cmd->parsed()) {
        std::vector<qem::logic::FormulaPtr> all;
        if (!opt.kb.empty()) {
            for (auto& s : qem::logic::parse_sentences(opt.kb)) {
                all.push_back(s);
            }
        }
        const qem::logic::FormulaPtr query = qem::logic::parse(opt.query);
        all.push_back(query);
        const std::vector<std::string> variables =
            qem::logic::free_variables(all);
        const std::vector<bool> table =
            qem::logic::truth_table(query, variables);
        std::ostream& os = open_output(file, opt.out);
        for (const std::string& v : variables) os << v << ' ';
        os << "| " << qem::logic::to_string(query) << '\n';
        for (std::size_t row = 0; row < table.size(); ++row) {
            for (std::size_t k = 0; k < variables.size(); ++k) {
                os << ((row >> k) & 1 ? 'T' : 'F') << ' ';
            }
            os << "| " << (table[row] ? 'T' : 'F') << '\n';
        }
        return kExitOk;
    }

    if (oracle_cmd->parsed()) {
        if (opt.query.empty()) {
            throw CLI::ValidationError("--query is required");
        }
        const qem::logic::FormulaPtr query = qem::logic::parse(opt.query);
        qem::oracle::CompiledOracle compiled;
        if (opt.kb.empty()) {
            compiled = qem::oracle::compile_formula(
                query, qem::logic::free_variables(query));
        } else {
            compiled = qem::oracle::violation_oracle(parse_kb(opt.kb), query);
        }
        std::ostream& os = open_output(file, opt.out);
        os << qem::oracle::dump(compiled);
        return kExitOk;
    }

    if (metrics_cmd->parsed()) {
        std::ifstream in(metrics_in);
        if (!in) {
            throw std::runtime_error("cannot open input file: " + metrics_in);
        }
        const std::vector<qem::harness::RunRecord> records =
            qem::harness::read_records_csv(in);
        const auto reports = qem::harness::reports_from_records(records);
        std::ostream& os = open_output(file, opt.out);
        for (const auto& [scheme, report] : reports) {
            if (opt.format == "csv") {
                qem::harness::write_report_csv(os, report);
            } else if (opt.format == "json") {
                os << qem::harness::report_json(report) << '\n';
            } else {
                os << qem::harness::report_text(report);
            }
        }
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qem::logic::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
