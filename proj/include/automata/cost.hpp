// Copyright 2026 The automata Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Hilbert-Schmidt cost C = 1 - |Tr(U_target^dagger U)|^2 / d^2.
 *
 * Three evaluators share one contract: the exact trace, the exact all-zeros
 * probability of the 2n-qubit Hilbert-Schmidt test circuit, and a seeded
 * finite-shot estimate of that probability.
 *
 * The test circuit applies U on the x register and the entrywise conjugate
 * of the target on the y register. On a Bell pair (A (x) B)|Phi> equals
 * (A B^T (x) I)|Phi>, so conj(V) on y yields <Phi|U (x) conj(V)|Phi> =
 * Tr(V^dagger U)/d. Drawing V^dagger on y instead would give Tr(V^* U)/d,
 * which differs from the wanted overlap whenever V is not real.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "automata/linalg.hpp"
#include "automata/pauli.hpp"
#include "automata/trotter.hpp"

namespace automata {

struct CostMode {
    enum class Kind { ExactTrace, HSExact, HSSampled };

    Kind kind = Kind::ExactTrace;
    std::size_t shots = 0;
    std::uint64_t seed = 0;

    static CostMode exact_trace() { return {}; }
    static CostMode hs_exact() { return {Kind::HSExact, 0, 0}; }
    static CostMode hs_sampled(std::size_t shots, std::uint64_t seed) {
        if (shots < 1) {
            throw ValidationError("sampled cost needs at least one shot");
        }
        return {Kind::HSSampled, shots, seed};
    }
};

/// CLI spelling: exact | hst | hst-sampled.
inline std::string to_string(CostMode::Kind k) {
    switch (k) {
    case CostMode::Kind::ExactTrace:
        return "exact";
    case CostMode::Kind::HSExact:
        return "hst";
    case CostMode::Kind::HSSampled:
        return "hst-sampled";
    }
    return "?";
}

inline CostMode::Kind parse_cost_kind(std::string_view s) {
    if (s == "exact") {
        return CostMode::Kind::ExactTrace;
    }
    if (s == "hst") {
        return CostMode::Kind::HSExact;
    }
    if (s == "hst-sampled") {
        return CostMode::Kind::HSSampled;
    }
    throw ValidationError("unknown cost mode '" + std::string(s) + "' (expected exact, hst or hst-sampled)");
}

namespace detail {
inline void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a.rows()) + " vs " +
                              std::to_string(b.rows()) + ")");
    }
}

// Tr(A^dagger B) without forming the product.
inline Complex trace_overlap(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a.conjugate().cwiseProduct(b)).sum();
}
} // namespace detail

/// |Tr(U_target^dagger U)| / 2^n.
inline double operator_fidelity(const ComplexMatrix &u_target, const ComplexMatrix &u) {
    detail::require_same_dim(u_target, u, "operator_fidelity");
    require_square_pow2(u, "operator_fidelity");
    return std::abs(detail::trace_overlap(u_target, u)) / static_cast<double>(u.rows());
}

/// 1 - |Tr(U_target^dagger U)|^2 / d^2, i.e. 1 - F^2.
inline double trace_cost(const ComplexMatrix &u_target, const ComplexMatrix &u) {
    const double f = operator_fidelity(u_target, u);
    return std::clamp(1.0 - f * f, 0.0, 1.0);
}

/// Target given as a single dense gate on all of its qubits.
inline Circuit dense_circuit(const ComplexMatrix &u) {
    require_square_pow2(u, "dense_circuit");
    const std::size_t n = log2_dim(static_cast<std::size_t>(u.rows()));
    std::vector<std::size_t> qubits(n);
    for (std::size_t q = 0; q < n; ++q) {
        qubits[q] = q;
    }
    Circuit c(n);
    c.append(Gate::dense(u, std::move(qubits)));
    return c;
}

/**
 * 2n-qubit Hilbert-Schmidt test. Register x is qubits 0..n-1, register y is
 * n..2n-1. Layout: H(x_k) and CNOT(x_k, y_k) for every k, `u_circuit` on x,
 * conjugated `target_circuit` on y, then the mirror-image Bell unprep. The
 * all-zeros outcome has probability |Tr(V^dagger U)|^2 / 2^{2n}.
 */
inline Circuit build_hs_circuit(const Circuit &u_circuit, const Circuit &target_circuit) {
    const std::size_t n = u_circuit.n_qubits();
    if (target_circuit.n_qubits() != n) {
        throw ValidationError("build_hs_circuit: circuit acts on " + std::to_string(n) + " qubits, target on " +
                              std::to_string(target_circuit.n_qubits()));
    }
    if (2 * n > kMaxMatrixQubits) {
        throw CapacityError("build_hs_circuit: 2n = " + std::to_string(2 * n) + " exceeds " +
                            std::to_string(kMaxMatrixQubits) + " qubits");
    }
    Circuit hs(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        hs.append(Gate::hadamard(k));
    }
    for (std::size_t k = 0; k < n; ++k) {
        hs.append(Gate::cnot(k, n + k));
    }
    hs.append(u_circuit, 0);
    for (const auto &g : target_circuit.gates()) {
        hs.append(g.conjugate().shifted(n));
    }
    for (std::size_t k = n; k-- > 0;) {
        hs.append(Gate::cnot(k, n + k));
    }
    for (std::size_t k = 0; k < n; ++k) {
        hs.append(Gate::hadamard(k));
    }
    return hs;
}

/// Exact probability of measuring every qubit of `c|0...0>` as 0.
inline double all_zeros_probability(const Circuit &c) {
    const StateVector out = run_circuit(c, StateVector(c.n_qubits()));
    return std::norm(out[0]);
}

/// Fraction of `shots` computational-basis samples of `c|0...0>` that are
/// all zeros. Deterministic in `seed`.
inline double sample_all_zeros(const Circuit &c, std::size_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw ValidationError("sample_all_zeros: shots must be >= 1");
    }
    const StateVector out = run_circuit(c, StateVector(c.n_qubits()));
    const auto probs = out.probabilities();
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> outcome(probs.begin(), probs.end());
    std::size_t hits = 0;
    for (std::size_t s = 0; s < shots; ++s) {
        if (outcome(rng) == 0) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(shots);
}

/// Cost of an already built ansatz circuit.
inline double circuit_cost(const ComplexMatrix &u_target, const Circuit &u_circuit, const CostMode &mode) {
    require_square_pow2(u_target, "cost");
    if (static_cast<std::size_t>(u_target.rows()) != (std::size_t{1} << u_circuit.n_qubits())) {
        throw ValidationError("cost: target dimension " + std::to_string(u_target.rows()) + " does not match " +
                              std::to_string(u_circuit.n_qubits()) + " qubits");
    }
    switch (mode.kind) {
    case CostMode::Kind::ExactTrace:
        return trace_cost(u_target, circuit_unitary(u_circuit));
    case CostMode::Kind::HSExact:
        return std::clamp(1.0 - all_zeros_probability(build_hs_circuit(u_circuit, dense_circuit(u_target))), 0.0,
                          1.0);
    case CostMode::Kind::HSSampled:
        return 1.0 - sample_all_zeros(build_hs_circuit(u_circuit, dense_circuit(u_target)), mode.shots, mode.seed);
    }
    return 1.0;
}

inline double cost(const ComplexMatrix &u_target, const HamiltonianSpec &spec, const ParamVector &theta,
                   const TrotterConfig &cfg, const CostMode &mode = CostMode::exact_trace()) {
    return circuit_cost(u_target, trotterize(spec, theta, cfg), mode);
}

} // namespace automata
