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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qem/metrics.hpp"
#include "qem/oracle.hpp"
#include "qem/schemes.hpp"

namespace qem::harness {

struct ExperimentConfig {
    std::vector<schemes::SchemeId> schemes_to_run;
    int n = 2;
    std::uint64_t shots = 1024;
    int repeats = 40;
    std::uint64_t base_seed = 20260815;
    /// When absent and n == 2, all 16 answer subsets are swept; for other
    /// n an explicit filter is required.
    std::optional<std::vector<oracle::AnswerSet>> scenario_filter;
    int threads = 1;

    void validate() const;
};

/// base_seed + FNV-1a 64 over "scheme|scenario_id|repeat" (wrapping);
/// partial re-runs of single scenarios reproduce full-sweep histograms.
std::uint64_t run_seed(std::uint64_t base_seed, schemes::SchemeId scheme,
                       std::uint64_t scenario_id, int repeat);

struct RunRecord {
    schemes::SchemeId scheme;
    int n = 0;
    std::uint64_t scenario_id = 0;
    oracle::AnswerSet answers;
    int repeat = 0;
    std::uint64_t seed = 0;
    ShotHistogram histogram;

    bool operator==(const RunRecord&) const = default;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<RunRecord> records;  // sorted by (scheme, scenario, repeat)
    std::map<schemes::SchemeId, metrics::MetricsReport> reports;
};

SweepResult sweep(const ExperimentConfig& config);

/// CSV columns: scheme,n,scenario_id,answers,repeat,seed,bitstring,count.
void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(std::istream& is);

std::string records_json(const SweepResult& result);
std::vector<RunRecord> records_from_json(const std::string& text);

std::string report_json(const metrics::MetricsReport& report);
std::string report_text(const metrics::MetricsReport& report);
/// Long format: scheme,metric,mode,scenario_id,repeat,value.
void write_report_csv(std::ostream& os,
                      const metrics::MetricsReport& report);

/// Rebuilds per-scheme reports from raw records (the `metrics` command).
std::map<schemes::SchemeId, metrics::MetricsReport> reports_from_records(
    const std::vector<RunRecord>& records);

enum class EntailMethod { Classical, Probe, Search };

struct EntailOutcome {
    EntailMethod method;
    /// Classical: exact verdict. Probe/search: the sampled signal.
    bool entailed = false;
    std::vector<std::string> variables;
    std::vector<logic::Assignment> violations;  // classical
    ShotHistogram histogram;                    // probe/search
    std::uint64_t y_zero_shots = 0;             // probe
    /// Search: top target-tagged input bitstrings, best first.
    std::vector<std::string> candidate_violations;
    double marking_factor = 0.0;  // search no-answer signal
    std::string summary;
};

EntailOutcome entail_classical(const logic::KnowledgeBase& kb,
                               const logic::FormulaPtr& query);
EntailOutcome entail_probe(const logic::KnowledgeBase& kb,
                           const logic::FormulaPtr& query,
                           std::uint64_t shots, std::uint64_t seed);
EntailOutcome entail_search(const logic::KnowledgeBase& kb,
                            const logic::FormulaPtr& query,
                            schemes::SchemeId scheme, std::uint64_t shots,
                            std::uint64_t seed);

/// Per-bitstring max/median/min counts across repeats of one (scheme,
/// scenario); zero-count states are omitted.
std::string histogram_render(const std::vector<RunRecord>& records);

}  // namespace qem::harness
