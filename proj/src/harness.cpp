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

#include "qem/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qem::harness {

using json = nlohmann::json;
using schemes::SchemeId;

void ExperimentConfig::validate() const {
    if (schemes_to_run.empty()) {
        throw std::invalid_argument("no schemes selected");
    }
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (!scenario_filter && n != 2) {
        throw std::invalid_argument(
            "full scenario sweeps are defined for n = 2; pass an explicit "
            "answer-set filter for other sizes");
    }
    if (scenario_filter) {
        for (const auto& s : *scenario_filter) {
            if (s.n != n) {
                throw std::invalid_argument(
                    "scenario filter entry does not match n");
            }
        }
    }
}

std::uint64_t run_seed(std::uint64_t base_seed, SchemeId scheme,
                       std::uint64_t scenario_id, int repeat) {
    const std::string key = std::string(schemes::to_string(scheme)) + "|" +
                            std::to_string(scenario_id) + "|" +
                            std::to_string(repeat);
    std::uint64_t hash = 14695981039346656037ull;  // FNV-1a 64
    for (unsigned char c : key) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return base_seed + hash;
}

namespace {

std::vector<oracle::AnswerSet> scenarios_for(const ExperimentConfig& config) {
    if (config.scenario_filter) return *config.scenario_filter;
    std::vector<oracle::AnswerSet> all;
    const std::uint64_t space = std::uint64_t{1} << config.n;
    for (std::uint64_t id = 0; id < (std::uint64_t{1} << space); ++id) {
        all.push_back(oracle::AnswerSet::from_scenario_id(config.n, id));
    }
    return all;
}

double scheme_theta(SchemeId scheme) {
    return scheme == SchemeId::Conventional ? M_PI / 2.0 : M_PI;
}

RunRecord execute_run(const ExperimentConfig& config, SchemeId scheme,
                      const oracle::AnswerSet& answers, int repeat) {
    RunRecord record;
    record.scheme = scheme;
    record.n = config.n;
    record.scenario_id = answers.scenario_id();
    record.answers = answers;
    record.repeat = repeat;
    record.seed =
        run_seed(config.base_seed, scheme, record.scenario_id, repeat);
    const oracle::PhaseOracle uf{config.n, scheme_theta(scheme), answers};
    const schemes::SchemeRun run =
        schemes::run_scheme(scheme, config.n, uf);
    record.histogram = schemes::measure_run(run, config.shots, record.seed);
    return record;
}

std::string margin_to_string(const metrics::MarginValue& value) {
    switch (value.kind) {
        case metrics::MarginKind::Finite: {
            std::ostringstream os;
            os << std::setprecision(17) << value.value;
            return os.str();
        }
        case metrics::MarginKind::Large: return "Large";
        case metrics::MarginKind::NotApplicable: return "n/a";
    }
    return "?";
}

json stats_json(const metrics::Stats& stats) {
    json j;
    j["min"] = stats.finite_count > 0 ? json(stats.min) : json("Large");
    j["mean"] = stats.finite_count > 0 ? json(stats.mean) : json("Large");
    j["max"] = stats.max_is_large() ? json("Large") : json(stats.max);
    j["std"] = stats.max_is_large() ? json("Large") : json(stats.stddev);
    j["finite_count"] = stats.finite_count;
    j["large_count"] = stats.large_count;
    j["undefined_count"] = stats.not_applicable_count;
    return j;
}

}  // namespace

SweepResult sweep(const ExperimentConfig& config) {
    config.validate();
    SweepResult result;
    result.config = config;

    struct Task {
        SchemeId scheme;
        oracle::AnswerSet answers;
        int repeat;
    };
    std::vector<Task> tasks;
    const std::vector<oracle::AnswerSet> scenarios = scenarios_for(config);
    for (SchemeId scheme : config.schemes_to_run) {
        for (const oracle::AnswerSet& answers : scenarios) {
            for (int r = 0; r < config.repeats; ++r) {
                tasks.push_back({scheme, answers, r});
            }
        }
    }

    result.records.resize(tasks.size());
    if (config.threads == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            result.records[i] = execute_run(config, tasks[i].scheme,
                                            tasks[i].answers,
                                            tasks[i].repeat);
        }
    } else {
        // Runs are pure functions of their seed; any partition gives the
        // same records, and the canonical sort below fixes the order.
        std::vector<std::future<void>> futures;
        const std::size_t chunk =
            (tasks.size() + config.threads - 1) / config.threads;
        for (int t = 0; t < config.threads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(tasks.size(), lo + chunk);
            if (lo >= hi) break;
            futures.push_back(std::async(std::launch::async, [&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) {
                    result.records[i] = execute_run(config, tasks[i].scheme,
                                                    tasks[i].answers,
                                                    tasks[i].repeat);
                }
            }));
        }
        for (auto& f : futures) f.get();
    }

    std::sort(result.records.begin(), result.records.end(),
              [](const RunRecord& a, const RunRecord& b) {
                  return std::tie(a.scheme, a.scenario_id, a.repeat) <
                         std::tie(b.scheme, b.scenario_id, b.repeat);
              });
    result.reports = reports_from_records(result.records);
    return result;
}

std::map<SchemeId, metrics::MetricsReport> reports_from_records(
    const std::vector<RunRecord>& records) {
    std::map<SchemeId, std::vector<metrics::ScenarioResult>> grouped;
    std::map<SchemeId, int> widths;
    for (const RunRecord& r : records) {
        grouped[r.scheme].push_back(
            {r.scheme, r.n, r.answers, r.repeat, r.histogram});
        widths[r.scheme] = r.n;
    }
    std::map<SchemeId, metrics::MetricsReport> reports;
    for (const auto& [scheme, results] : grouped) {
        reports[scheme] =
            metrics::build_report(scheme, widths[scheme], results);
    }
    return reports;
}

void write_records_csv(std::ostream& os,
                       const std::vector<RunRecord>& records) {
    os << "scheme,n,scenario_id,answers,repeat,seed,bitstring,count\n";
    for (const RunRecord& r : records) {
        std::string answers;
        for (const std::string& a : r.answers.to_strings()) {
            if (!answers.empty()) answers += ' ';
            answers += a;
        }
        for (const auto& [bitstring, count] : r.histogram) {
            os << schemes::to_string(r.scheme) << ',' << r.n << ','
               << r.scenario_id << ',' << answers << ',' << r.repeat << ','
               << r.seed << ',' << bitstring << ',' << count << '\n';
        }
    }
}

std::vector<RunRecord> read_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::invalid_argument("empty records CSV");
    }
    if (line != "scheme,n,scenario_id,answers,repeat,seed,bitstring,count") {
        throw std::invalid_argument("unexpected records CSV header: " + line);
    }
    std::map<std::tuple<SchemeId, std::uint64_t, int>, RunRecord> by_key;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 8) {
            throw std::invalid_argument("bad CSV row at line " +
                                        std::to_string(line_no));
        }
        const SchemeId scheme = schemes::scheme_from_string(fields[0]);
        const int n = std::stoi(fields[1]);
        const std::uint64_t scenario_id = std::stoull(fields[2]);
        const int repeat = std::stoi(fields[4]);
        const auto key = std::make_tuple(scheme, scenario_id, repeat);
        auto [it, inserted] = by_key.try_emplace(key);
        if (inserted) {
            it->second.scheme = scheme;
            it->second.n = n;
            it->second.scenario_id = scenario_id;
            it->second.answers =
                oracle::AnswerSet::from_scenario_id(n, scenario_id);
            it->second.repeat = repeat;
            it->second.seed = std::stoull(fields[5]);
        }
        it->second.histogram[fields[6]] += std::stoull(fields[7]);
    }
    std::vector<RunRecord> records;
    for (auto& [key, record] : by_key) records.push_back(std::move(record));
    return records;
}

std::string records_json(const SweepResult& result) {
    json root;
    root["rng"] = kRngName;
    root["n"] = result.config.n;
    root["shots"] = result.config.shots;
    root["repeats"] = result.config.repeats;
    root["base_seed"] = result.config.base_seed;
    json records = json::array();
    for (const RunRecord& r : result.records) {
        json jr;
        jr["scheme"] = schemes::to_string(r.scheme);
        jr["n"] = r.n;
        jr["scenario_id"] = r.scenario_id;
        jr["answers"] = r.answers.to_strings();
        jr["repeat"] = r.repeat;
        jr["seed"] = r.seed;
        jr["histogram"] = r.histogram;
        records.push_back(std::move(jr));
    }
    root["records"] = std::move(records);
    json reports = json::object();
    for (const auto& [scheme, report] : result.reports) {
        reports[schemes::to_string(scheme)] =
            json::parse(report_json(report));
    }
    root["reports"] = std::move(reports);
    return root.dump(2);
}

std::vector<RunRecord> records_from_json(const std::string& text) {
    const json root = json::parse(text);
    std::vector<RunRecord> records;
    for (const json& jr : root.at("records")) {
        RunRecord r;
        r.scheme = schemes::scheme_from_string(jr.at("scheme"));
        r.n = jr.at("n");
        r.scenario_id = jr.at("scenario_id");
        r.answers = oracle::AnswerSet::from_scenario_id(r.n, r.scenario_id);
        r.repeat = jr.at("repeat");
        r.seed = jr.at("seed");
        for (const auto& [label, count] :
             jr.at("histogram").items()) {
            r.histogram[label] = count;
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::string report_json(const metrics::MetricsReport& report) {
    json j;
    j["scheme"] = schemes::to_string(report.scheme);
    j["n"] = report.n;
    j["rng"] = kRngName;
    // Aggregation spans all defined (scenario, repeat) margins.
    j["aggregation"] = "all scenario-repeat pairs";
    j["winning_margin"]["global"] = stats_json(report.global_margin);
    j["winning_margin"]["local"] = stats_json(report.local_margin);
    if (report.distinguishability) {
        j["distinguishability"] = *report.distinguishability;
    }
    json mf = json::object();
    for (const auto& [count, values] : report.marking_factors) {
        mf[std::to_string(count)] = values;
    }
    j["marking_factors"] = std::move(mf);
    return j.dump(2);
}

std::string report_text(const metrics::MetricsReport& report) {
    const auto stats_line = [](const metrics::Stats& s) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(3);
        if (s.finite_count == 0) {
            os << "[Large, Large, Large](Large)";
        } else {
            os << '[' << s.min << ", " << s.mean << ", ";
            if (s.max_is_large()) {
                os << "Large](Large)";
            } else {
                os << s.max << "](" << s.stddev << ')';
            }
        }
        os << "  finite=" << s.finite_count << " large=" << s.large_count
           << " undefined=" << s.not_applicable_count;
        return os.str();
    };
    std::ostringstream os;
    os << "scheme: " << schemes::to_string(report.scheme) << " (n="
       << report.n << ", rng=" << kRngName
       << ", margins aggregated over all scenario-repeat pairs)\n";
    os << "  W global: " << stats_line(report.global_margin) << '\n';
    os << "  W local:  " << stats_line(report.local_margin) << '\n';
    if (report.distinguishability) {
        os << "  D: " << std::fixed << std::setprecision(3)
           << *report.distinguishability << '\n';
    }
    return os.str();
}

void write_report_csv(std::ostream& os,
                      const metrics::MetricsReport& report) {
    os << "scheme,metric,mode,scenario_id,repeat,value\n";
    const char* scheme = schemes::to_string(report.scheme);
    for (const auto& sample : report.global_samples) {
        os << scheme << ",W,global," << sample.scenario_id << ','
           << sample.repeat_index << ',' << margin_to_string(sample.value)
           << '\n';
    }
    for (const auto& sample : report.local_samples) {
        os << scheme << ",W,local," << sample.scenario_id << ','
           << sample.repeat_index << ',' << margin_to_string(sample.value)
           << '\n';
    }
    if (report.distinguishability) {
        os << scheme << ",D,,," << ','
           << std::setprecision(17) << *report.distinguishability << '\n';
    }
}

EntailOutcome entail_classical(const logic::KnowledgeBase& kb,
                               const logic::FormulaPtr& query) {
    const logic::EntailmentResult result = logic::entails(kb, query);
    EntailOutcome outcome;
    outcome.method = EntailMethod::Classical;
    outcome.entailed = result.entailed;
    outcome.variables = result.variables;
    outcome.violations = result.violations;
    std::ostringstream os;
    os << (result.entailed ? "entailed" : "not entailed") << " ("
       << result.violations.size() << " violating assignment"
       << (result.violations.size() == 1 ? "" : "s") << " over "
       << result.variables.size() << " variables)";
    outcome.summary = os.str();
    return outcome;
}

EntailOutcome entail_probe(const logic::KnowledgeBase& kb,
                           const logic::FormulaPtr& query,
                           std::uint64_t shots, std::uint64_t seed) {
    const oracle::ProbeCircuit probe =
        oracle::entailment_probe_circuit(kb, query);
    StateVector state(probe.total_qubits());
    state.apply(probe.circuit);
    const std::vector<std::uint64_t> counts = state.sample_counts(shots, seed);

    EntailOutcome outcome;
    outcome.method = EntailMethod::Probe;
    outcome.variables = probe.variables;
    const int n = probe.num_inputs;
    for (std::uint64_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        // Label order: decisive y bit first, then x_{n-1}..x_0.
        std::string label(static_cast<std::size_t>(n) + 1, '0');
        if ((i >> n) & 1) label[0] = '1';
        for (int b = 0; b < n; ++b) {
            if ((i >> b) & 1) label[n - b] = '1';
        }
        outcome.histogram[label] += counts[i];
        if (((i >> n) & 1) == 0) outcome.y_zero_shots += counts[i];
    }
    outcome.entailed = outcome.y_zero_shots == 0;
    std::ostringstream os;
    os << (outcome.entailed
               ? "no violation observed: every sampled bitstring has y = 1"
               : "violations observed: " +
                     std::to_string(outcome.y_zero_shots) +
                     " shots with y = 0");
    outcome.summary = os.str();
    return outcome;
}

EntailOutcome entail_search(const logic::KnowledgeBase& kb,
                            const logic::FormulaPtr& query,
                            schemes::SchemeId scheme, std::uint64_t shots,
                            std::uint64_t seed) {
    if (scheme == SchemeId::Grover) {
        throw std::invalid_argument(
            "search mode uses a marking scheme (conventional, subtle or "
            "simpler)");
    }
    const oracle::CompiledOracle violation = oracle::violation_oracle(kb, query);
    const int n = violation.num_inputs;
    const schemes::SchemeRun run = schemes::run_scheme(scheme, n, violation);
    const ShotHistogram histogram = schemes::measure_run(run, shots, seed);

    const schemes::Layout layout = schemes::layout_for(scheme, n);
    EntailOutcome outcome;
    outcome.method = EntailMethod::Search;
    outcome.variables = violation.variables;
    outcome.histogram = histogram;
    const std::vector<double> counts =
        metrics::counts_vector(layout, histogram);
    outcome.marking_factor = metrics::marking_factor(layout, counts);

    // Rank target-tagged states; their input bits are violation candidates.
    std::vector<std::pair<double, std::uint64_t>> tagged;
    for (std::uint64_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0 && metrics::is_target_tagged(layout, i)) {
            tagged.push_back({counts[i], i});
        }
    }
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [count, index] : tagged) {
        std::uint64_t x = 0;
        for (std::size_t k = 0; k < layout.x.size(); ++k) {
            if ((index >> layout.x[k]) & 1) x |= (std::uint64_t{1} << k);
        }
        std::string bits(static_cast<std::size_t>(n), '0');
        for (int b = 0; b < n; ++b) {
            if ((x >> b) & 1) bits[n - 1 - b] = '1';
        }
        if (std::find(outcome.candidate_violations.begin(),
                      outcome.candidate_violations.end(),
                      bits) == outcome.candidate_violations.end()) {
            outcome.candidate_violations.push_back(bits);
        }
    }
    // Representative dominance signals the no-violation case. The exact
    // no-violation M depends on the scheme (0 for conventional, strongly
    // negative for subtle/simpler), so calibrate against the empty answer
    // set at the same n and accept the verdict within its shot noise.
    const double pi = std::acos(-1.0);
    const double theta =
        scheme == SchemeId::Conventional ? pi / 2.0 : pi;
    const schemes::SchemeRun baseline = schemes::run_scheme(
        scheme, n, oracle::PhaseOracle{n, theta, oracle::AnswerSet{n, {}}});
    std::vector<double> baseline_ms;
    for (int k = 1; k <= 32; ++k) {
        const auto sampled = baseline.final_state.sample_counts(
            shots, seed + static_cast<std::uint64_t>(k));
        baseline_ms.push_back(metrics::marking_factor(
            layout, std::vector<double>(sampled.begin(), sampled.end())));
    }
    double mu = 0.0;
    for (double m : baseline_ms) mu += m;
    mu /= static_cast<double>(baseline_ms.size());
    double ss = 0.0;
    for (double m : baseline_ms) ss += (m - mu) * (m - mu);
    const double sigma =
        std::sqrt(ss / static_cast<double>(baseline_ms.size() - 1));
    const double band = std::max(6.0 * sigma, 0.05);
    outcome.entailed = outcome.marking_factor <= mu + band;
    std::ostringstream os;
    os << "marking factor M = " << std::fixed << std::setprecision(3)
       << outcome.marking_factor << " vs no-violation baseline "
       << mu << " +- " << band
       << (outcome.entailed
               ? "; no-answer representatives dominate (no violation signal)"
               : "; target-tagged states dominate (violation signal)");
    outcome.summary = os.str();
    return outcome;
}

std::string histogram_render(const std::vector<RunRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("no records to render");
    }
    for (const RunRecord& r : records) {
        if (r.scheme != records.front().scheme ||
            r.scenario_id != records.front().scenario_id) {
            throw std::invalid_argument(
                "histogram rendering needs records from one (scheme, "
                "scenario)");
        }
    }
    std::map<std::string, std::vector<std::uint64_t>> per_state;
    for (const RunRecord& r : records) {
        for (const auto& [label, count] : r.histogram) {
            per_state[label].push_back(count);
        }
    }
    std::ostringstream os;
    os << schemes::to_string(records.front().scheme) << " scenario "
       << records.front().scenario_id << ": "
       << records.front().answers.size() << " winner"
       << (records.front().answers.size() == 1 ? "" : "s") << ", "
       << records.size() << " repeat" << (records.size() == 1 ? "" : "s")
       << "\n";
    os << "state      max   median      min\n";
    for (auto& [label, counts] : per_state) {
        // Runs where the state drew zero shots contribute zeros.
        counts.resize(records.size(), 0);
        std::sort(counts.begin(), counts.end());
        const std::uint64_t lo = counts.front();
        const std::uint64_t hi = counts.back();
        const std::size_t mid = counts.size() / 2;
        const double median =
            counts.size() % 2 == 1
                ? static_cast<double>(counts[mid])
                : (static_cast<double>(counts[mid - 1]) +
                   static_cast<double>(counts[mid])) / 2.0;
        os << std::left << std::setw(8) << label << std::right
           << std::setw(7) << hi << std::setw(9) << median << std::setw(9)
           << lo << '\n';
    }
    return os.str();
}

}  // namespace qem::harness
