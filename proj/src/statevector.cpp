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

#include "qem/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace qem {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::uint64_t bit_mask(const std::vector<int>& qubits) {
    std::uint64_t mask = 0;
    for (int q : qubits) mask |= (std::uint64_t{1} << q);
    return mask;
}

}  // namespace

const char* to_string(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::H: return "H";
        case GateKind::Z: return "Z";
        case GateKind::Rz: return "RZ";
        case GateKind::CZ: return "CZ";
        case GateKind::CCZ: return "CCZ";
        case GateKind::CCX: return "CCX";
        case GateKind::CRz: return "CRZ";
        case GateKind::MCRz: return "MCRZ";
        case GateKind::Diffusion: return "DIFFUSION";
    }
    return "?";
}

Gate Gate::x(int target) { return {GateKind::X, {target}, {}, 0.0}; }
Gate Gate::cx(int control, int target) {
    return {GateKind::X, {target}, {control}, 0.0};
}
Gate Gate::h(int target) { return {GateKind::H, {target}, {}, 0.0}; }
Gate Gate::z(int target) { return {GateKind::Z, {target}, {}, 0.0}; }
Gate Gate::rz(int target, double theta) {
    return {GateKind::Rz, {target}, {}, theta};
}
Gate Gate::cz(int control, int target) {
    return {GateKind::CZ, {target}, {control}, 0.0};
}
Gate Gate::ccz(int control_a, int control_b, int target) {
    return {GateKind::CCZ, {target}, {control_a, control_b}, 0.0};
}
Gate Gate::ccx(int control_a, int control_b, int target) {
    return {GateKind::CCX, {target}, {control_a, control_b}, 0.0};
}
Gate Gate::crz(int control, int target, double theta) {
    return {GateKind::CRz, {target}, {control}, theta};
}
Gate Gate::mcrz(std::vector<int> controls, int target, double theta) {
    return {GateKind::MCRz, {target}, std::move(controls), theta};
}
Gate Gate::diffusion(std::vector<int> qubits) {
    return {GateKind::Diffusion, std::move(qubits), {}, 0.0};
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(num_qubits));
    }
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = Complex{1.0, 0.0};
}

void StateVector::validate_gate(const Gate& gate) const {
    if (gate.targets.empty()) {
        throw std::invalid_argument("gate has no target qubits");
    }
    for (int q : gate.targets) {
        if (q < 0 || q >= num_qubits_) {
            throw std::out_of_range("target qubit " + std::to_string(q) +
                                    " out of range for " +
                                    std::to_string(num_qubits_) + " qubits");
        }
    }
    for (int q : gate.controls) {
        if (q < 0 || q >= num_qubits_) {
            throw std::out_of_range("control qubit " + std::to_string(q) +
                                    " out of range for " +
                                    std::to_string(num_qubits_) + " qubits");
        }
        for (int t : gate.targets) {
            if (t == q) {
                throw std::invalid_argument(
                    "control and target sets overlap on qubit " +
                    std::to_string(q));
            }
        }
    }
}

void StateVector::apply(const Gate& gate) {
    validate_gate(gate);
    const std::uint64_t dim = amplitudes_.size();
    const std::uint64_t control_mask = bit_mask(gate.controls);

    switch (gate.kind) {
        case GateKind::X:
        case GateKind::CCX: {
            const std::uint64_t t = std::uint64_t{1} << gate.targets.front();
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & t) != 0) continue;
                if ((i & control_mask) != control_mask) continue;
                std::swap(amplitudes_[i], amplitudes_[i | t]);
            }
            break;
        }
        case GateKind::H: {
            const std::uint64_t t = std::uint64_t{1} << gate.targets.front();
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & t) != 0) continue;
                if ((i & control_mask) != control_mask) continue;
                const Complex a = amplitudes_[i];
                const Complex b = amplitudes_[i | t];
                amplitudes_[i] = (a + b) * kInvSqrt2;
                amplitudes_[i | t] = (a - b) * kInvSqrt2;
            }
            break;
        }
        case GateKind::Z:
        case GateKind::CZ:
        case GateKind::CCZ:
        case GateKind::Rz:
        case GateKind::CRz:
        case GateKind::MCRz: {
            const bool is_pi = gate.kind == GateKind::Z ||
                               gate.kind == GateKind::CZ ||
                               gate.kind == GateKind::CCZ;
            const Complex phase =
                is_pi ? Complex{-1.0, 0.0}
                      : Complex{std::cos(gate.theta), std::sin(gate.theta)};
            const std::uint64_t mask =
                control_mask | bit_mask(gate.targets);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & mask) == mask) amplitudes_[i] *= phase;
            }
            break;
        }
        case GateKind::Diffusion: {
            // 2A - I within the target sub-register: every amplitude in a
            // group becomes 2*mean - a. Groups are indexed by the bits
            // outside the target set.
            const std::uint64_t group_mask = bit_mask(gate.targets);
            std::vector<std::uint64_t> offsets;
            offsets.reserve(std::size_t{1} << gate.targets.size());
            // Enumerate all sub-indices of group_mask.
            std::uint64_t sub = 0;
            while (true) {
                offsets.push_back(sub);
                if (sub == group_mask) break;
                sub = (sub - group_mask) & group_mask;
            }
            const double inv_n = 1.0 / static_cast<double>(offsets.size());
            for (std::uint64_t base = 0; base < dim; ++base) {
                if ((base & group_mask) != 0) continue;
                Complex sum{0.0, 0.0};
                for (std::uint64_t off : offsets) sum += amplitudes_[base | off];
                const Complex two_mu = 2.0 * sum * inv_n;
                for (std::uint64_t off : offsets) {
                    amplitudes_[base | off] = two_mu - amplitudes_[base | off];
                }
            }
            break;
        }
    }
    check_norm();
}

void StateVector::apply(const Circuit& circuit) {
    std::size_t position = 0;
    for (const Gate& gate : circuit.gates) {
        try {
            apply(gate);
        } catch (const std::exception& e) {
            throw std::invalid_argument("gate " + std::to_string(position) +
                                        " (" + to_string(gate.kind) +
                                        "): " + e.what());
        }
        ++position;
    }
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const Complex& a : amplitudes_) total += std::norm(a);
    return total;
}

void StateVector::check_norm() const {
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
        throw std::runtime_error("state norm drifted beyond tolerance");
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(amplitudes_.size());
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        probs[i] = std::norm(amplitudes_[i]);
    }
    return probs;
}

std::string StateVector::label(std::uint64_t index) const {
    std::string out(static_cast<std::size_t>(num_qubits_), '0');
    for (int q = 0; q < num_qubits_; ++q) {
        if ((index >> q) & 1) out[num_qubits_ - 1 - q] = '1';
    }
    return out;
}

std::vector<std::uint64_t> StateVector::sample_counts(
    std::uint64_t shots, std::uint64_t seed) const {
    if (shots < 1) {
        throw std::invalid_argument("shot count must be at least 1");
    }
    const std::vector<double> probs = probabilities();
    std::vector<double> cumulative(probs.size());
    double running = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        running += probs[i];
        cumulative[i] = running;
    }
    cumulative.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> counts(probs.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        // 53-bit uniform in [0, 1); avoids distribution classes whose
        // output is not pinned by the standard.
        const double u =
            static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto it =
            std::upper_bound(cumulative.begin(), cumulative.end(), u);
        counts[static_cast<std::size_t>(it - cumulative.begin())] += 1;
    }
    return counts;
}

ShotHistogram StateVector::sample_shots(std::uint64_t shots,
                                        std::uint64_t seed) const {
    const std::vector<std::uint64_t> counts = sample_counts(shots, seed);
    ShotHistogram histogram;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) histogram[label(i)] = counts[i];
    }
    return histogram;
}

StateVector StateVector::extract_low_qubits(int keep_qubits,
                                            double residual_tolerance) const {
    if (keep_qubits < 1 || keep_qubits > num_qubits_) {
        throw std::invalid_argument("cannot keep " +
                                    std::to_string(keep_qubits) +
                                    " of " + std::to_string(num_qubits_) +
                                    " qubits");
    }
    if (keep_qubits == num_qubits_) return *this;
    const std::uint64_t keep_dim = std::uint64_t{1} << keep_qubits;
    for (std::uint64_t i = keep_dim; i < amplitudes_.size(); ++i) {
        if (std::abs(amplitudes_[i]) > residual_tolerance) {
            throw std::runtime_error(
                "residual amplitude on dropped qubits at index " +
                std::to_string(i));
        }
    }
    StateVector out(keep_qubits);
    out.amplitudes_.assign(amplitudes_.begin(),
                           amplitudes_.begin() + keep_dim);
    out.check_norm();
    return out;
}

void StateVector::set_amplitudes(std::vector<Complex> amplitudes) {
    if (amplitudes.size() != amplitudes_.size()) {
        throw std::invalid_argument("amplitude vector has wrong length");
    }
    amplitudes_ = std::move(amplitudes);
    check_norm();
}

}  // namespace qem
