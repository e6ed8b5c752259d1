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
 * Parameterized Hamiltonians built from single-qubit fields and two-body
 * Pauli couplings:
 *
 *     H(theta) = sum_j theta_j P_j,   P_j in {sigma_i^a, sigma_i^a sigma_j^b}
 *
 * A HamiltonianSpec is the ordered interaction set; its order fixes the
 * layout of the parameter vector and the term order inside each Trotter
 * slice.
 */

#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "automata/linalg.hpp"

namespace automata {

enum class PauliAxis { X, Y, Z };

inline char axis_char(PauliAxis a) {
    switch (a) {
    case PauliAxis::X:
        return 'x';
    case PauliAxis::Y:
        return 'y';
    case PauliAxis::Z:
        return 'z';
    }
    return '?';
}

inline PauliAxis parse_axis(std::string_view s) {
    if (s == "x" || s == "X") {
        return PauliAxis::X;
    }
    if (s == "y" || s == "Y") {
        return PauliAxis::Y;
    }
    if (s == "z" || s == "Z") {
        return PauliAxis::Z;
    }
    throw ValidationError("unknown Pauli axis '" + std::string(s) + "'");
}

inline ComplexMatrix pauli_matrix(PauliAxis a) {
    ComplexMatrix m(2, 2);
    switch (a) {
    case PauliAxis::X:
        m << 0, 1, 1, 0;
        break;
    case PauliAxis::Y:
        m << 0, -kI, kI, 0;
        break;
    case PauliAxis::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

/// A local field sigma_i^a or a coupling sigma_i^a sigma_j^b with i < j.
class PauliTerm {
  public:
    enum class Kind { Local, Coupling };

    static PauliTerm local(std::size_t qubit, PauliAxis axis) { return PauliTerm(Kind::Local, qubit, axis, {}, {}); }

    /// Canonicalizes (j, i, b, a) to (i, j, a, b).
    static PauliTerm coupling(std::size_t qi, std::size_t qj, PauliAxis ai, PauliAxis aj) {
        if (qi == qj) {
            throw ValidationError("coupling term needs two distinct qubits, got " + std::to_string(qi) + " twice");
        }
        if (qi > qj) {
            std::swap(qi, qj);
            std::swap(ai, aj);
        }
        return PauliTerm(Kind::Coupling, qi, ai, qj, aj);
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_coupling() const { return kind_ == Kind::Coupling; }
    [[nodiscard]] std::size_t qubit_i() const { return qubit_i_; }
    [[nodiscard]] PauliAxis axis_i() const { return axis_i_; }
    [[nodiscard]] std::optional<std::size_t> qubit_j() const { return qubit_j_; }
    [[nodiscard]] std::optional<PauliAxis> axis_j() const { return axis_j_; }

    [[nodiscard]] std::vector<std::size_t> qubits() const {
        if (is_coupling()) {
            return {qubit_i_, *qubit_j_};
        }
        return {qubit_i_};
    }

    [[nodiscard]] std::size_t max_qubit() const { return is_coupling() ? *qubit_j_ : qubit_i_; }

    /// Number of Y factors; complex conjugation flips the sign of the term
    /// matrix when this is odd.
    [[nodiscard]] int y_count() const {
        int c = axis_i_ == PauliAxis::Y ? 1 : 0;
        if (axis_j_ && *axis_j_ == PauliAxis::Y) {
            ++c;
        }
        return c;
    }

    /// Pauli factor on the term's own qubits (2x2 or 4x4).
    [[nodiscard]] ComplexMatrix local_matrix() const {
        if (is_coupling()) {
            return kron(pauli_matrix(axis_i_), pauli_matrix(*axis_j_));
        }
        return pauli_matrix(axis_i_);
    }

    /// Short label, e.g. "z0" or "zy1,3".
    [[nodiscard]] std::string label() const {
        std::string s;
        s += axis_char(axis_i_);
        if (is_coupling()) {
            s += axis_char(*axis_j_);
            s += std::to_string(qubit_i_) + "," + std::to_string(*qubit_j_);
        } else {
            s += std::to_string(qubit_i_);
        }
        return s;
    }

    friend bool operator==(const PauliTerm &, const PauliTerm &) = default;

  private:
    PauliTerm(Kind kind, std::size_t qi, PauliAxis ai, std::optional<std::size_t> qj, std::optional<PauliAxis> aj)
        : kind_(kind), qubit_i_(qi), axis_i_(ai), qubit_j_(qj), axis_j_(aj) {}

    Kind kind_;
    std::size_t qubit_i_;
    PauliAxis axis_i_;
    std::optional<std::size_t> qubit_j_;
    std::optional<PauliAxis> axis_j_;
};

/// Real coefficients aligned 1:1 with a HamiltonianSpec's terms.
struct ParamVector {
    std::vector<double> values;

    ParamVector() = default;
    explicit ParamVector(std::vector<double> v) : values(std::move(v)) {}
    ParamVector(std::initializer_list<double> v) : values(v) {}

    static ParamVector zeros(std::size_t n) { return ParamVector(std::vector<double>(n, 0.0)); }

    [[nodiscard]] std::size_t size() const { return values.size(); }
    double &operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (double v : values) {
            s += v * v;
        }
        return std::sqrt(s);
    }

    friend bool operator==(const ParamVector &, const ParamVector &) = default;
};

/// The allowed interaction set over n qubits.
class HamiltonianSpec {
  public:
    HamiltonianSpec(std::size_t n_qubits, std::vector<PauliTerm> terms, bool heisenberg_only = false)
        : n_qubits_(n_qubits), terms_(std::move(terms)), heisenberg_only_(heisenberg_only) {
        if (n_qubits_ == 0) {
            throw ValidationError("HamiltonianSpec: need at least one qubit");
        }
        for (std::size_t a = 0; a < terms_.size(); ++a) {
            const auto &t = terms_[a];
            if (t.max_qubit() >= n_qubits_) {
                throw ValidationError("HamiltonianSpec: term " + t.label() + " addresses a qubit >= " +
                                      std::to_string(n_qubits_));
            }
            if (heisenberg_only_ && t.is_coupling() && t.axis_i() != *t.axis_j()) {
                throw ValidationError("HamiltonianSpec: term " + t.label() +
                                      " mixes axes but the spec is Heisenberg-only");
            }
            for (std::size_t b = 0; b < a; ++b) {
                if (terms_[b] == t) {
                    throw ValidationError("HamiltonianSpec: duplicate term " + t.label());
                }
            }
        }
    }

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool heisenberg_only() const { return heisenberg_only_; }

    void check_params(const ParamVector &theta) const {
        if (theta.size() != terms_.size()) {
            throw ValidationError("parameter vector has " + std::to_string(theta.size()) + " entries but the spec has " +
                                  std::to_string(terms_.size()) + " terms");
        }
    }

  private:
    std::size_t n_qubits_;
    std::vector<PauliTerm> terms_;
    bool heisenberg_only_;
};

/// 2^n x 2^n matrix of a term, identity on the untouched qubits.
inline ComplexMatrix term_matrix(const PauliTerm &term, std::size_t n) {
    if (n == 0 || n > kMaxMatrixQubits) {
        throw CapacityError("term_matrix: unsupported qubit count " + std::to_string(n));
    }
    if (term.max_qubit() >= n) {
        throw ValidationError("term_matrix: term " + term.label() + " does not fit in " + std::to_string(n) +
                              " qubits");
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    for (std::size_t q = 0; q < n; ++q) {
        if (q == term.qubit_i()) {
            out = kron(out, pauli_matrix(term.axis_i()));
        } else if (term.is_coupling() && q == *term.qubit_j()) {
            out = kron(out, pauli_matrix(*term.axis_j()));
        } else {
            out = kron(out, id);
        }
    }
    return out;
}

inline ComplexMatrix hamiltonian_matrix(const HamiltonianSpec &spec, const ParamVector &theta) {
    spec.check_params(theta);
    const auto dim = Eigen::Index{1} << spec.n_qubits();
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < spec.size(); ++j) {
        h += theta[j] * term_matrix(spec.terms()[j], spec.n_qubits());
    }
    return h;
}

/// All local X/Y/Z fields plus XX, YY, ZZ on every pair.
inline HamiltonianSpec full_heisenberg_spec(std::size_t n) {
    constexpr PauliAxis axes[] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    std::vector<PauliTerm> terms;
    for (std::size_t q = 0; q < n; ++q) {
        for (auto a : axes) {
            terms.push_back(PauliTerm::local(q, a));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (auto a : axes) {
                terms.push_back(PauliTerm::coupling(i, j, a, a));
            }
        }
    }
    return HamiltonianSpec(n, std::move(terms), true);
}

/// All local fields plus all nine axis pairs on every pair.
inline HamiltonianSpec full_general_spec(std::size_t n) {
    constexpr PauliAxis axes[] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    std::vector<PauliTerm> terms;
    for (std::size_t q = 0; q < n; ++q) {
        for (auto a : axes) {
            terms.push_back(PauliTerm::local(q, a));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (auto a : axes) {
                for (auto b : axes) {
                    terms.push_back(PauliTerm::coupling(i, j, a, b));
                }
            }
        }
    }
    return HamiltonianSpec(n, std::move(terms), false);
}

/// A spec together with published coupling strengths.
struct PublishedHamiltonian {
    HamiltonianSpec spec;
    ParamVector theta;
};

/// Toffoli couplings on three qubits (labels 1..3 are indices 0..2). Qubit 2
/// carries no local field.
inline PublishedHamiltonian fig4a() {
    using A = PauliAxis;
    std::vector<PauliTerm> terms = {
        PauliTerm::local(0, A::X),           PauliTerm::local(0, A::Z),           PauliTerm::local(1, A::X),
        PauliTerm::local(1, A::Z),           PauliTerm::coupling(0, 1, A::X, A::X), PauliTerm::coupling(0, 1, A::Y, A::Y),
        PauliTerm::coupling(0, 1, A::Z, A::Z), PauliTerm::coupling(0, 2, A::X, A::X), PauliTerm::coupling(1, 2, A::Z, A::Z),
    };
    return {HamiltonianSpec(3, std::move(terms)), ParamVector{1.09, 2.35, 3.11, -0.78, 0.07, 0.07, 0.78, 1.089, 3.11}};
}

/// Parity-check couplings on four qubits, qubit 3 is the ancilla. No local
/// fields; the ancilla couples through mixed zy terms.
inline PublishedHamiltonian fig4b() {
    using A = PauliAxis;
    std::vector<PauliTerm> terms = {
        PauliTerm::coupling(0, 1, A::X, A::X), PauliTerm::coupling(0, 1, A::Y, A::Y),
        PauliTerm::coupling(0, 1, A::Z, A::Z), PauliTerm::coupling(1, 2, A::X, A::X),
        PauliTerm::coupling(1, 2, A::Y, A::Y), PauliTerm::coupling(1, 2, A::Z, A::Z),
        PauliTerm::coupling(0, 2, A::X, A::X), PauliTerm::coupling(0, 2, A::Y, A::Y),
        PauliTerm::coupling(0, 2, A::Z, A::Z), PauliTerm::coupling(1, 3, A::Z, A::Y),
        PauliTerm::coupling(0, 3, A::Z, A::Y), PauliTerm::coupling(2, 3, A::Z, A::Y),
    };
    return {HamiltonianSpec(4, std::move(terms)),
            ParamVector{1.42, 1.04, 1.30, 1.23, 0.73, 1.60, 1.03, 0.29, 2.57, 2.37, 2.29, 2.30}};
}

/// Named presets: full_heisenberg, full_general, fig4a (n = 3), fig4b (n = 4).
inline HamiltonianSpec standard_spec(std::string_view name, std::size_t n) {
    if (name == "full_heisenberg" || name == "full_general") {
        if (n < 2) {
            throw ValidationError("preset '" + std::string(name) + "' needs at least 2 qubits");
        }
        return name == "full_heisenberg" ? full_heisenberg_spec(n) : full_general_spec(n);
    }
    if (name == "fig4a") {
        if (n != 3) {
            throw ValidationError("preset 'fig4a' is defined on 3 qubits, got " + std::to_string(n));
        }
        return fig4a().spec;
    }
    if (name == "fig4b") {
        if (n != 4) {
            throw ValidationError("preset 'fig4b' is defined on 4 qubits, got " + std::to_string(n));
        }
        return fig4b().spec;
    }
    throw ValidationError("unknown Hamiltonian preset '" + std::string(name) + "'");
}

/// Published parameters for a fixed preset, if it has any.
inline std::optional<ParamVector> published_params(std::string_view name) {
    if (name == "fig4a") {
        return fig4a().theta;
    }
    if (name == "fig4b") {
        return fig4b().theta;
    }
    return std::nullopt;
}

/// Qubit count a preset is pinned to, if it is pinned.
inline std::optional<std::size_t> preset_qubits(std::string_view name) {
    if (name == "fig4a") {
        return 3;
    }
    if (name == "fig4b") {
        return 4;
    }
    return std::nullopt;
}

} // namespace automata
