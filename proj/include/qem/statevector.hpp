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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qem {

using Complex = std::complex<double>;

/// Tolerance for the L2-norm of a state after any gate application.
inline constexpr double kNormTolerance = 1e-10;

/// Largest register this simulator will allocate (dense, 2^m amplitudes).
inline constexpr int kMaxQubits = 24;

/// Name of the PRNG used for shot sampling; echoed in run metadata so
/// results can be reproduced across builds.
inline constexpr const char* kRngName = "mt19937_64";

enum class GateKind {
    X,
    H,
    Z,
    Rz,
    CZ,
    CCZ,
    CCX,
    CRz,
    MCRz,
    Diffusion,
};

const char* to_string(GateKind kind);

/// One gate application. Controls project on |1>; `theta` is only
/// meaningful for the Rz family. Diffusion lists the qubits it averages
/// over in `targets` (inversion about the mean within that sub-register,
/// independently for every assignment of the remaining qubits).
struct Gate {
    GateKind kind;
    std::vector<int> targets;
    std::vector<int> controls;
    double theta = 0.0;

    static Gate x(int target);
    static Gate cx(int control, int target);
    static Gate h(int target);
    static Gate z(int target);
    static Gate rz(int target, double theta);
    static Gate cz(int control, int target);
    static Gate ccz(int control_a, int control_b, int target);
    static Gate ccx(int control_a, int control_b, int target);
    static Gate crz(int control, int target, double theta);
    static Gate mcrz(std::vector<int> controls, int target, double theta);
    static Gate diffusion(std::vector<int> qubits);
};

struct Circuit {
    std::vector<Gate> gates;

    void push(Gate gate) { gates.push_back(std::move(gate)); }
    bool empty() const { return gates.empty(); }
    std::size_t size() const { return gates.size(); }
};

/// Bitstring label -> observed count. Labels are the big-endian binary
/// expansion of the basis index (qubit m-1 first, qubit 0 last).
using ShotHistogram = std::map<std::string, std::uint64_t>;

/// Dense amplitude vector over the 2^m computational basis states of an
/// m-qubit register. Basis index convention: qubit q is bit q of the
/// index (qubit 0 is the least significant bit).
class StateVector {
  public:
    /// Ground state |0...0>.
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }

    void apply(const Gate& gate);
    void apply(const Circuit& circuit);

    /// |amplitude|^2 per basis index; sums to 1 within kNormTolerance.
    std::vector<double> probabilities() const;
    double norm_squared() const;

    /// Big-endian binary label of a basis index.
    std::string label(std::uint64_t index) const;

    /// Counts per basis index from `shots` independent measurements.
    /// Identical (state, shots, seed) triples give identical counts.
    std::vector<std::uint64_t> sample_counts(std::uint64_t shots,
                                             std::uint64_t seed) const;

    /// Same draws as sample_counts, keyed by label; zero-count basis
    /// states are omitted.
    ShotHistogram sample_shots(std::uint64_t shots, std::uint64_t seed) const;

    /// Keeps the lowest `keep_qubits` qubits, requiring all amplitude
    /// outside the kept block to be below `residual_tolerance` in
    /// magnitude (used to strip uncomputed work qubits).
    StateVector extract_low_qubits(int keep_qubits,
                                   double residual_tolerance = 1e-10) const;

    /// Test support: overwrite amplitudes (must have length 2^m and be
    /// normalized within kNormTolerance).
    void set_amplitudes(std::vector<Complex> amplitudes);

  private:
    void check_norm() const;
    void validate_gate(const Gate& gate) const;

    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

}  // namespace qem
