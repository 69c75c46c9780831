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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qem/oracle.hpp"
#include "qem/schemes.hpp"

namespace qem::metrics {

/// One measured run of a scheme on one answer-set scenario.
struct ScenarioResult {
    schemes::SchemeId scheme;
    int n = 0;
    oracle::AnswerSet answers;
    int repeat_index = 0;
    ShotHistogram histogram;
};

enum class MarginKind {
    Finite,
    Large,          // comparison maximum is zero
    NotApplicable,  // margin undefined for the scenario
};

struct MarginValue {
    MarginKind kind = MarginKind::NotApplicable;
    double value = 0.0;

    bool finite() const { return kind == MarginKind::Finite; }
    static MarginValue finite_value(double v) {
        return {MarginKind::Finite, v};
    }
    static MarginValue large() { return {MarginKind::Large, 0.0}; }
    static MarginValue not_applicable() {
        return {MarginKind::NotApplicable, 0.0};
    }
};

enum class MarginMode { Global, Local };

/// State-group predicates over a scheme's basis indices. The tagged
/// answer group carries the scheme's target tag with the oracle-marked
/// ancilla value y = 1; the representative group signals the no-answer
/// case (Conventional: tag 10; Subtle: the whole t = 1 side; Simpler:
/// t y x_msq = 111).
bool is_target_tagged(const schemes::Layout& layout, std::uint64_t index);
bool is_tagged_answer(const schemes::Layout& layout,
                      const oracle::AnswerSet& answers, std::uint64_t index);
bool is_no_answer_representative(const schemes::Layout& layout,
                                 std::uint64_t index);

/// Per-basis-index values (counts or exact probabilities) recovered from
/// a histogram; absent labels are zero.
std::vector<double> counts_vector(const schemes::Layout& layout,
                                  const ShotHistogram& histogram);

/// W = (min A - max B) / max B with A the tagged-answer group and B all
/// other states (global) or the target-tagged non-answer states (local).
/// max B = 0 gives Large; an empty group gives NotApplicable.
MarginValue winning_margin(const schemes::Layout& layout,
                           const oracle::AnswerSet& answers,
                           const std::vector<double>& values,
                           MarginMode mode);
MarginValue winning_margin(const ScenarioResult& result, MarginMode mode);

/// M = (c_t - c_n)/(c_t + c_n); c_t the maximum over target-tagged
/// states, c_n over the no-answer representatives.
double marking_factor(const schemes::Layout& layout,
                      const std::vector<double>& values);
double marking_factor(const ScenarioResult& result);

/// D = min over i>0 of min(M_i) - max(M_0), M grouped by answer count.
double distinguishability(const std::map<std::size_t, std::vector<double>>&
                              marking_factors_by_answer_count);
double distinguishability(const std::vector<ScenarioResult>& results);

struct Stats {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
    double stddev = 0.0;  // sample std dev (n-1); 0 for a single value
    int finite_count = 0;
    int large_count = 0;
    int not_applicable_count = 0;

    bool max_is_large() const { return large_count > 0; }
};

/// Min/mean/max/std over the finite values; Large entries are tallied and
/// surface as max/std = "Large" in reports. Requires at least one finite
/// or Large value.
Stats aggregate(const std::vector<MarginValue>& margins);

struct MarginSample {
    std::uint64_t scenario_id = 0;
    int repeat_index = 0;
    MarginValue value;
};

struct MetricsReport {
    schemes::SchemeId scheme;
    int n = 0;
    Stats global_margin;
    Stats local_margin;
    std::vector<MarginSample> global_samples;
    std::vector<MarginSample> local_samples;
    /// answer count -> M values over all size-matching scenarios/repeats
    std::map<std::size_t, std::vector<double>> marking_factors;
    std::optional<double> distinguishability;
};

MetricsReport build_report(schemes::SchemeId scheme, int n,
                           const std::vector<ScenarioResult>& results);

}  // namespace qem::metrics
