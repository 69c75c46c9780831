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

#include "qem/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qem::metrics {

using schemes::Layout;
using schemes::SchemeId;

namespace {

bool bit(std::uint64_t index, int q) { return ((index >> q) & 1) != 0; }

std::uint64_t input_bits(const Layout& layout, std::uint64_t index) {
    std::uint64_t x = 0;
    for (std::size_t k = 0; k < layout.x.size(); ++k) {
        if (bit(index, layout.x[k])) x |= (std::uint64_t{1} << k);
    }
    return x;
}

}  // namespace

bool is_target_tagged(const Layout& layout, std::uint64_t index) {
    switch (layout.scheme) {
        case SchemeId::Grover:
            return true;  // no tag qubits; every state is in scope
        case SchemeId::Conventional:
            // t1 t0 = 01
            return !bit(index, layout.tags[1]) && bit(index, layout.tags[0]);
        case SchemeId::Subtle:
            return !bit(index, layout.tags[0]);  // t = 0
        case SchemeId::Simpler:
            // t y = 01
            return !bit(index, layout.tags[0]) && bit(index, layout.y);
    }
    return false;
}

bool is_tagged_answer(const Layout& layout, const oracle::AnswerSet& answers,
                      std::uint64_t index) {
    if (!is_target_tagged(layout, index)) return false;
    // Only the oracle-marked half (y = 1) of the tag group carries the
    // answer label; Simpler's tag already pins y.
    if (layout.scheme != SchemeId::Simpler && !bit(index, layout.y)) {
        return false;
    }
    return answers.contains(input_bits(layout, index));
}

bool is_no_answer_representative(const Layout& layout, std::uint64_t index) {
    switch (layout.scheme) {
        case SchemeId::Grover:
            throw std::invalid_argument(
                "marking factor is undefined for plain Grover");
        case SchemeId::Conventional:
            // t1 t0 = 10
            return bit(index, layout.tags[1]) && !bit(index, layout.tags[0]);
        case SchemeId::Subtle:
            return bit(index, layout.tags[0]);  // whole t = 1 side
        case SchemeId::Simpler:
            // t y x_msq = 111
            return bit(index, layout.tags[0]) && bit(index, layout.y) &&
                   bit(index, layout.x_msq());
    }
    return false;
}

std::vector<double> counts_vector(const Layout& layout,
                                  const ShotHistogram& histogram) {
    const std::size_t dim = std::size_t{1} << layout.total_qubits;
    std::vector<double> values(dim, 0.0);
    for (const auto& [label, count] : histogram) {
        if (label.size() != static_cast<std::size_t>(layout.total_qubits)) {
            throw std::invalid_argument("histogram label '" + label +
                                        "' does not match the register");
        }
        std::uint64_t index = 0;
        for (char c : label) index = (index << 1) | std::uint64_t(c == '1');
        values[index] += static_cast<double>(count);
    }
    return values;
}

MarginValue winning_margin(const Layout& layout,
                           const oracle::AnswerSet& answers,
                           const std::vector<double>& values,
                           MarginMode mode) {
    if (answers.empty()) return MarginValue::not_applicable();
    if (mode == MarginMode::Local &&
        answers.size() == (std::size_t{1} << layout.n)) {
        // All-answers scenario: no non-answer states to compare against.
        return MarginValue::not_applicable();
    }
    double min_answer = std::numeric_limits<double>::infinity();
    double max_other = -1.0;
    bool have_answer = false;
    bool have_other = false;
    for (std::uint64_t i = 0; i < values.size(); ++i) {
        if (is_tagged_answer(layout, answers, i)) {
            min_answer = std::min(min_answer, values[i]);
            have_answer = true;
        } else {
            if (mode == MarginMode::Local && !is_target_tagged(layout, i)) {
                continue;
            }
            max_other = std::max(max_other, values[i]);
            have_other = true;
        }
    }
    if (!have_answer || !have_other) return MarginValue::not_applicable();
    // Comparison values are shot counts or exact probabilities; exact
    // zeros can surface as ~1e-34 round-off, so clip below 1e-12.
    if (max_other <= 1e-12) return MarginValue::large();
    return MarginValue::finite_value((min_answer - max_other) / max_other);
}

MarginValue winning_margin(const ScenarioResult& result, MarginMode mode) {
    const Layout layout = schemes::layout_for(result.scheme, result.n);
    return winning_margin(layout, result.answers,
                          counts_vector(layout, result.histogram), mode);
}

double marking_factor(const Layout& layout,
                      const std::vector<double>& values) {
    double c_target = 0.0;
    double c_representative = 0.0;
    for (std::uint64_t i = 0; i < values.size(); ++i) {
        if (is_target_tagged(layout, i)) {
            c_target = std::max(c_target, values[i]);
        }
        if (is_no_answer_representative(layout, i)) {
            c_representative = std::max(c_representative, values[i]);
        }
    }
    if (c_target + c_representative <= 0.0) {
        throw std::invalid_argument(
            "degenerate histogram: no counts in either tag group");
    }
    return (c_target - c_representative) / (c_target + c_representative);
}

double marking_factor(const ScenarioResult& result) {
    const Layout layout = schemes::layout_for(result.scheme, result.n);
    return marking_factor(layout, counts_vector(layout, result.histogram));
}

double distinguishability(
    const std::map<std::size_t, std::vector<double>>& by_count) {
    const auto zero = by_count.find(0);
    if (zero == by_count.end() || zero->second.empty()) {
        throw std::invalid_argument("no 0-answer scenario present");
    }
    double min_some = std::numeric_limits<double>::infinity();
    bool have_some = false;
    for (const auto& [count, ms] : by_count) {
        if (count == 0 || ms.empty()) continue;
        have_some = true;
        min_some = std::min(min_some,
                            *std::min_element(ms.begin(), ms.end()));
    }
    if (!have_some) {
        throw std::invalid_argument("no some-answer scenario present");
    }
    const double max_zero =
        *std::max_element(zero->second.begin(), zero->second.end());
    return min_some - max_zero;
}

double distinguishability(const std::vector<ScenarioResult>& results) {
    std::map<std::size_t, std::vector<double>> by_count;
    for (const ScenarioResult& r : results) {
        by_count[r.answers.size()].push_back(marking_factor(r));
    }
    return distinguishability(by_count);
}

Stats aggregate(const std::vector<MarginValue>& margins) {
    Stats stats;
    std::vector<double> finite;
    for (const MarginValue& m : margins) {
        switch (m.kind) {
            case MarginKind::Finite: finite.push_back(m.value); break;
            case MarginKind::Large: stats.large_count += 1; break;
            case MarginKind::NotApplicable:
                stats.not_applicable_count += 1;
                break;
        }
    }
    stats.finite_count = static_cast<int>(finite.size());
    if (finite.empty() && stats.large_count == 0) {
        throw std::invalid_argument("no defined margins to aggregate");
    }
    if (!finite.empty()) {
        stats.min = *std::min_element(finite.begin(), finite.end());
        stats.max = *std::max_element(finite.begin(), finite.end());
        double sum = 0.0;
        for (double v : finite) sum += v;
        stats.mean = sum / static_cast<double>(finite.size());
        if (finite.size() > 1) {
            double ss = 0.0;
            for (double v : finite) {
                ss += (v - stats.mean) * (v - stats.mean);
            }
            stats.stddev =
                std::sqrt(ss / static_cast<double>(finite.size() - 1));
        }
    }
    return stats;
}

MetricsReport build_report(SchemeId scheme, int n,
                           const std::vector<ScenarioResult>& results) {
    MetricsReport report;
    report.scheme = scheme;
    report.n = n;
    const Layout layout = schemes::layout_for(scheme, n);

    std::vector<MarginValue> global_values;
    std::vector<MarginValue> local_values;
    std::map<std::size_t, std::vector<double>> by_count;
    for (const ScenarioResult& r : results) {
        const std::vector<double> counts =
            counts_vector(layout, r.histogram);
        const MarginValue g =
            winning_margin(layout, r.answers, counts, MarginMode::Global);
        const MarginValue l =
            winning_margin(layout, r.answers, counts, MarginMode::Local);
        report.global_samples.push_back(
            {r.answers.scenario_id(), r.repeat_index, g});
        report.local_samples.push_back(
            {r.answers.scenario_id(), r.repeat_index, l});
        global_values.push_back(g);
        local_values.push_back(l);
        if (scheme != SchemeId::Grover) {
            by_count[r.answers.size()].push_back(
                marking_factor(layout, counts));
        }
    }
    report.global_margin = aggregate(global_values);
    report.local_margin = aggregate(local_values);
    report.marking_factors = by_count;
    if (scheme != SchemeId::Grover && by_count.count(0) &&
        by_count.size() > 1) {
        report.distinguishability = distinguishability(by_count);
    }
    return report;
}

}  // namespace qem::metrics
