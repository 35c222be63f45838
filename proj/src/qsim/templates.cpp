// Copyright 2026 The qnnrobust Authors
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

#include "qnnrobust/qsim/templates.hpp"

#include <numbers>
#include <string>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/rng.hpp"

namespace qnnrobust::qsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_shape(std::size_t n, std::size_t depth) {
    if (n < 2) {
        throw ValidationError("entangling templates need n >= 2 qubits (got " +
                              std::to_string(n) + ")");
    }
    if (n > kMaxQubits) {
        throw ValidationError("at most " + std::to_string(kMaxQubits) +
                              " qubits are supported");
    }
    if (depth < 1) {
        throw ValidationError("circuit depth must be >= 1");
    }
}

// Every layer draws from its own stream so that appending layers never
// perturbs earlier ones.
CounterRng layer_rng(std::uint64_t seed, std::string_view family, std::size_t layer) {
    return CounterRng(derive_seed(seed, std::string(family) + "/layer/" +
                                            std::to_string(layer)));
}

CircuitSpec skeleton(Template t, std::size_t n, std::size_t depth, std::uint64_t seed) {
    CircuitSpec spec;
    spec.circuit_template = t;
    spec.n_qubits = n;
    spec.depth = depth;
    spec.seed = seed;
    return spec;
}

} // namespace

CircuitSpec build_beqc(std::size_t n, std::size_t depth, std::uint64_t seed) {
    check_shape(n, depth);
    auto spec = skeleton(Template::kBEQC, n, depth, seed);
    spec.gates.reserve(2 * n * depth);
    for (std::size_t layer = 0; layer < depth; ++layer) {
        auto rng = layer_rng(seed, "beqc", layer);
        for (std::size_t q = 0; q < n; ++q) {
            spec.gates.push_back(Gate::rx(q, rng.uniform(0.0, kTwoPi)));
        }
        for (std::size_t q = 0; q + 1 < n; ++q) {
            spec.gates.push_back(Gate::cnot(q, q + 1));
        }
        spec.gates.push_back(Gate::cnot(n - 1, 0));
    }
    return spec;
}

CircuitSpec build_seqc(std::size_t n, std::size_t depth, std::uint64_t seed,
                       SeqcOffsetRule rule) {
    check_shape(n, depth);
    auto spec = skeleton(Template::kSEQC, n, depth, seed);
    spec.gates.reserve(4 * n * depth);
    for (std::size_t layer = 0; layer < depth; ++layer) {
        auto rng = layer_rng(seed, "seqc", layer);
        for (std::size_t q = 0; q < n; ++q) {
            spec.gates.push_back(Gate::rz(q, rng.uniform(0.0, kTwoPi)));
            spec.gates.push_back(Gate::ry(q, rng.uniform(0.0, kTwoPi)));
            spec.gates.push_back(Gate::rz(q, rng.uniform(0.0, kTwoPi)));
        }
        const std::size_t i = layer + 1;
        const std::size_t offset =
            rule == SeqcOffsetRule::kCyclic ? ((i - 1) % (n - 1)) + 1 : i % n;
        if (offset == 0) {
            spec.diagnostics.push_back("layer " + std::to_string(i) +
                                       ": skipped " + std::to_string(n) +
                                       " self-targeting CNOTs");
            continue;
        }
        for (std::size_t q = 0; q < n; ++q) {
            spec.gates.push_back(Gate::cnot(q, (q + offset) % n));
        }
    }
    return spec;
}

CircuitSpec build_rqc(std::size_t n, std::size_t depth, std::uint64_t seed) {
    check_shape(n, depth);
    auto spec = skeleton(Template::kRQC, n, depth, seed);
    static constexpr GateKind kKinds[] = {GateKind::RX, GateKind::RY, GateKind::RZ};
    for (std::size_t layer = 0; layer < depth; ++layer) {
        auto rng = layer_rng(seed, "rqc", layer);
        for (std::size_t r = 0; r < kRqcRotationsPerLayer; ++r) {
            const GateKind kind = kKinds[rng.below(3)];
            const auto wire = static_cast<std::size_t>(rng.below(n));
            spec.gates.push_back(Gate::rotation(kind, wire, rng.uniform(0.0, kTwoPi)));
            if (rng.bernoulli(kRqcCnotProbability)) {
                const auto control = static_cast<std::size_t>(rng.below(n));
                auto target = static_cast<std::size_t>(rng.below(n - 1));
                if (target >= control) {
                    ++target;
                }
                spec.gates.push_back(Gate::cnot(control, target));
            }
        }
    }
    return spec;
}

CircuitSpec build_identity(std::size_t n) {
    if (n == 0 || n > kMaxQubits) {
        throw ValidationError("qubit count out of range");
    }
    return skeleton(Template::kIdentity, n, 0, 0);
}

CircuitSpec build_circuit(Template t, std::size_t n, std::size_t depth,
                          std::uint64_t seed) {
    switch (t) {
    case Template::kBEQC: return build_beqc(n, depth, seed);
    case Template::kSEQC: return build_seqc(n, depth, seed);
    case Template::kRQC: return build_rqc(n, depth, seed);
    case Template::kIdentity: return build_identity(n);
    }
    throw ValidationError("unknown template");
}

} // namespace qnnrobust::qsim
