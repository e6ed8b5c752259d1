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
 * Target gates and principal-generator diagnostics.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "automata/linalg.hpp"
#include "automata/pauli.hpp"

namespace automata {

struct TargetGate {
    std::string name;
    std::size_t n_qubits = 0;
    ComplexMatrix matrix;
    double evolution_time = 1.0;
};

inline ComplexMatrix toffoli_matrix() {
    ComplexMatrix u = ComplexMatrix::Identity(8, 8);
    u(6, 6) = u(7, 7) = 0.0;
    u(6, 7) = u(7, 6) = 1.0;
    return u;
}

inline ComplexMatrix fredkin_matrix() {
    ComplexMatrix u = ComplexMatrix::Identity(8, 8);
    u(5, 5) = u(6, 6) = 0.0;
    u(5, 6) = u(6, 5) = 1.0;
    return u;
}

inline ComplexMatrix qft_matrix(std::size_t n) {
    const auto dim = Eigen::Index{1} << n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    ComplexMatrix u(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double phase = 2.0 * kPi * static_cast<double>((j * k) % dim) / static_cast<double>(dim);
            u(j, k) = scale * std::polar(1.0, phase);
        }
    }
    return u;
}

/// Z (x) Z (x) Z (x) Y, the parity-check generator with the ancilla last.
inline ComplexMatrix parity_generator() {
    const ComplexMatrix z = pauli_matrix(PauliAxis::Z);
    return kron(kron(kron(z, z), z), pauli_matrix(PauliAxis::Y));
}

/// toffoli, fredkin, qft3 or parity4.
inline TargetGate builtin_target(std::string_view name) {
    if (name == "toffoli") {
        return {"toffoli", 3, toffoli_matrix(), 1.0};
    }
    if (name == "fredkin") {
        return {"fredkin", 3, fredkin_matrix(), 1.0};
    }
    if (name == "qft3") {
        return {"qft3", 3, qft_matrix(3), 1.0};
    }
    if (name == "parity4") {
        return {"parity4", 4, expm_hermitian(parity_generator(), kPi / 4), kPi / 4};
    }
    throw ValidationError("unknown target gate '" + std::string(name) + "' (expected toffoli, fredkin, qft3, parity4)");
}

inline const std::vector<std::string> &builtin_target_names() {
    static const std::vector<std::string> names = {"toffoli", "fredkin", "qft3", "parity4"};
    return names;
}

/// Loads a user target from the plain-text matrix format.
inline TargetGate target_from_file(const std::string &path) {
    ComplexMatrix u = read_matrix_file(path);
    if (!is_unitary(u)) {
        throw ValidationError("target matrix in '" + path + "' is not unitary (error " +
                              std::to_string(unitarity_error(u)) + ")");
    }
    const std::size_t n = log2_dim(static_cast<std::size_t>(u.rows()));
    return {path, n, std::move(u), 1.0};
}

struct ParityOutcome {
    unsigned inputs = 0;     ///< z1 z2 z3 packed with z1 most significant
    int expected_parity = 0; ///< z1 ^ z2 ^ z3
    int measured = 0;        ///< more likely ancilla outcome after the Hadamard
    double probability = 0.0;
};

/**
 * Runs |z1 z2 z3>|0> through `u`, rotates the ancilla into the x basis with
 * a Hadamard and reads its outcome distribution. For the ideal parity gate
 * the ancilla ends in |+> for even parity, so outcome 0 labels even.
 */
inline std::vector<ParityOutcome> parity_truth_table(const ComplexMatrix &u) {
    if (u.rows() != 16 || u.cols() != 16) {
        throw ValidationError("parity_truth_table: expected a 4-qubit (16x16) unitary, got " +
                              std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
    }
    ComplexMatrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    std::vector<ParityOutcome> table;
    for (unsigned z = 0; z < 8; ++z) {
        StateVector state = StateVector::basis(4, std::size_t{z} << 1);
        state = apply_gate(state, u, {0, 1, 2, 3});
        state = apply_gate(state, h, {3});
        double p1 = 0.0;
        for (std::size_t i = 1; i < 16; i += 2) {
            p1 += std::norm(state[i]);
        }
        ParityOutcome row;
        row.inputs = z;
        row.expected_parity = std::popcount(z) % 2;
        row.measured = p1 > 0.5 ? 1 : 0;
        row.probability = row.measured == 1 ? p1 : 1.0 - p1;
        table.push_back(row);
    }
    return table;
}

/// Principal generator H with expm_hermitian(H, 1) == u.
inline ComplexMatrix principal_generator(const ComplexMatrix &u) { return logm_principal(u); }

/**
 * Pauli-basis coefficients c_P = Tr(P h) / d of a Hermitian matrix, indexed by
 * base-4 strings with qubit 0 most significant (0 = I, 1 = X, 2 = Y, 3 = Z).
 */
inline std::vector<Complex> pauli_coefficients(const ComplexMatrix &h) {
    require_square_pow2(h, "pauli_coefficients");
    const std::size_t d = static_cast<std::size_t>(h.rows());
    const std::size_t n = log2_dim(d);
    const std::size_t count = std::size_t{1} << (2 * n);
    std::vector<Complex> coeffs(count);
    for (std::size_t code = 0; code < count; ++code) {
        std::size_t xmask = 0;
        std::size_t zmask = 0;
        int ny = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t letter = (code >> (2 * (n - 1 - q))) & 3U;
            const std::size_t bit = std::size_t{1} << (n - 1 - q);
            if (letter == 1 || letter == 2) {
                xmask |= bit;
            }
            if (letter == 2 || letter == 3) {
                zmask |= bit;
            }
            ny += letter == 2 ? 1 : 0;
        }
        // <b|P|b^x> = (-i)^{#Y} (-1)^{|b & zmask|}
        Complex y_phase{1.0, 0.0};
        for (int k = 0; k < ny; ++k) {
            y_phase *= -kI;
        }
        Complex tr{0.0, 0.0};
        for (std::size_t b = 0; b < d; ++b) {
            const double sign = (std::popcount(b & zmask) % 2 == 0) ? 1.0 : -1.0;
            tr += sign * h(static_cast<Eigen::Index>(b ^ xmask), static_cast<Eigen::Index>(b));
        }
        coeffs[code] = y_phase * tr / static_cast<double>(d);
    }
    return coeffs;
}

inline std::size_t pauli_weight(std::size_t code, std::size_t n) {
    std::size_t w = 0;
    for (std::size_t q = 0; q < n; ++q) {
        w += ((code >> (2 * q)) & 3U) != 0 ? 1 : 0;
    }
    return w;
}

struct ConditionsReport {
    /// No Pauli component acting on three or more qubits above tolerance.
    bool physical_ok = false;
    /// Largest |coefficient| among Pauli strings of weight >= 3.
    double nonphysical_weight = 0.0;
    /// ||[h, H_principal]||_F.
    double commutator_norm = 0.0;
    /// max over eigenvalues mu of h - H_principal of the distance to 2 pi Z.
    double eigdiff_max_deviation = 0.0;

    [[nodiscard]] bool all_hold(double tol) const {
        return physical_ok && commutator_norm < tol && eigdiff_max_deviation < tol;
    }
};

/**
 * Sufficient conditions for exp(-i h) to equal the target: h is physical,
 * commutes with the principal generator, and differs from it only by
 * eigenvalues in 2 pi Z. Diagnostic only; high-fidelity solutions need not
 * satisfy them.
 */
inline ConditionsReport check_conditions(const ComplexMatrix &h, const ComplexMatrix &u_target, double tol = 1e-8) {
    if (h.rows() != u_target.rows() || h.cols() != u_target.cols()) {
        throw ValidationError("check_conditions: dimension mismatch (" + std::to_string(h.rows()) + " vs " +
                              std::to_string(u_target.rows()) + ")");
    }
    if (!is_hermitian(h, 1e-10)) {
        throw ValidationError("check_conditions: h is not Hermitian");
    }
    const ComplexMatrix hp = principal_generator(u_target);
    ConditionsReport r;

    const std::size_t n = log2_dim(static_cast<std::size_t>(h.rows()));
    const auto coeffs = pauli_coefficients(h);
    for (std::size_t code = 0; code < coeffs.size(); ++code) {
        if (pauli_weight(code, n) >= 3) {
            r.nonphysical_weight = std::max(r.nonphysical_weight, std::abs(coeffs[code]));
        }
    }
    r.physical_ok = r.nonphysical_weight <= tol;

    r.commutator_norm = (h * hp - hp * h).norm();

    const ComplexMatrix diff = h - hp;
    const Eigen::VectorXd mu = hermitian_eigenvalues(0.5 * (diff + diff.adjoint()));
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
        const double turns = mu(k) / (2.0 * kPi);
        r.eigdiff_max_deviation = std::max(r.eigdiff_max_deviation, std::abs(mu(k) - 2.0 * kPi * std::round(turns)));
    }
    return r;
}

} // namespace automata
