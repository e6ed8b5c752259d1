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
 * Gate-level circuits and the first-order product formula
 *
 *     U_QC(theta) = ( prod_{j=1..Q} exp(-i theta_j P_j / m) )^m
 *
 * Rotation convention: R_a(phi) = exp(-i phi sigma^a / 2). A term exponential
 * exp(-i phi P) therefore decomposes into a Z-rotation of angle 2 phi between
 * two CNOTs, wrapped in single-qubit basis changes for X and Y factors.
 */

#pragma once

#include <cmath>
#include <cctype>
#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "automata/linalg.hpp"
#include "automata/pauli.hpp"

namespace automata {

class Gate {
  public:
    enum class Kind { Hadamard, PauliRotation, CNOT, TermExp, Dense };

    static Gate hadamard(std::size_t q) { return Gate(Kind::Hadamard, {q}); }

    static Gate rotation(PauliAxis axis, std::size_t q, double angle) {
        Gate g(Kind::PauliRotation, {q});
        g.axis_ = axis;
        g.angle_ = checked_angle(angle);
        return g;
    }

    static Gate cnot(std::size_t control, std::size_t target) {
        if (control == target) {
            throw ValidationError("CNOT control and target must differ");
        }
        return Gate(Kind::CNOT, {control, target});
    }

    /// exp(-i angle P) for the Pauli product P of `term`.
    static Gate term_exp(const PauliTerm &term, double angle) {
        Gate g(Kind::TermExp, term.qubits());
        g.term_ = term;
        g.angle_ = checked_angle(angle);
        return g;
    }

    /// Arbitrary unitary on the listed qubits (first = most significant).
    static Gate dense(ComplexMatrix u, std::vector<std::size_t> qubits) {
        if (u.rows() != u.cols() || u.rows() != (Eigen::Index{1} << qubits.size())) {
            throw ValidationError("dense gate: matrix does not match " + std::to_string(qubits.size()) + " operands");
        }
        Gate g(Kind::Dense, std::move(qubits));
        g.dense_ = std::make_shared<const ComplexMatrix>(std::move(u));
        return g;
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] const std::vector<std::size_t> &qubits() const { return qubits_; }
    [[nodiscard]] double angle() const { return angle_; }
    [[nodiscard]] PauliAxis axis() const { return axis_; }
    [[nodiscard]] const std::optional<PauliTerm> &term() const { return term_; }
    [[nodiscard]] bool is_two_qubit() const { return qubits_.size() == 2; }

    /// Same gate with a different angle; only for rotations and term exponentials.
    [[nodiscard]] Gate with_angle(double angle) const {
        if (kind_ != Kind::PauliRotation && kind_ != Kind::TermExp) {
            throw ValidationError("with_angle: gate has no angle");
        }
        Gate g = *this;
        g.angle_ = checked_angle(angle);
        return g;
    }

    /// Matrix on the gate's own operands.
    [[nodiscard]] ComplexMatrix matrix() const {
        switch (kind_) {
        case Kind::Hadamard: {
            ComplexMatrix h(2, 2);
            const double s = 1.0 / std::sqrt(2.0);
            h << s, s, s, -s;
            return h;
        }
        case Kind::PauliRotation:
            return std::cos(angle_ / 2) * ComplexMatrix::Identity(2, 2) -
                   kI * std::sin(angle_ / 2) * pauli_matrix(axis_);
        case Kind::CNOT: {
            ComplexMatrix c = ComplexMatrix::Zero(4, 4);
            c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
            return c;
        }
        case Kind::TermExp: {
            const ComplexMatrix p = term_->local_matrix();
            return std::cos(angle_) * ComplexMatrix::Identity(p.rows(), p.cols()) - kI * std::sin(angle_) * p;
        }
        case Kind::Dense:
            return *dense_;
        }
        return {};
    }

    /// Gate whose matrix is the entrywise complex conjugate of this one.
    [[nodiscard]] Gate conjugate() const {
        switch (kind_) {
        case Kind::Hadamard:
        case Kind::CNOT:
            return *this;
        case Kind::PauliRotation:
            // R_x and R_z pick up a sign, R_y is real.
            return axis_ == PauliAxis::Y ? *this : with_angle(-angle_);
        case Kind::TermExp:
            // conj(cos a - i sin a P) = cos a + i sin a P*, and P* = (-1)^{#Y} P.
            return with_angle(term_->y_count() % 2 == 0 ? -angle_ : angle_);
        case Kind::Dense:
            return dense(dense_->conjugate(), qubits_);
        }
        return *this;
    }

    /// Same gate with every operand shifted by `offset`.
    [[nodiscard]] Gate shifted(std::size_t offset) const {
        Gate g = *this;
        for (auto &q : g.qubits_) {
            q += offset;
        }
        if (term_) {
            const auto &t = *term_;
            g.term_ = t.is_coupling() ? PauliTerm::coupling(t.qubit_i() + offset, *t.qubit_j() + offset, t.axis_i(),
                                                            *t.axis_j())
                                      : PauliTerm::local(t.qubit_i() + offset, t.axis_i());
        }
        return g;
    }

  private:
    Gate(Kind kind, std::vector<std::size_t> qubits) : kind_(kind), qubits_(std::move(qubits)) {}

    static double checked_angle(double a) {
        if (!std::isfinite(a)) {
            throw ValidationError("gate angle must be finite");
        }
        return a;
    }

    Kind kind_;
    std::vector<std::size_t> qubits_;
    PauliAxis axis_ = PauliAxis::Z;
    double angle_ = 0.0;
    std::optional<PauliTerm> term_;
    std::shared_ptr<const ComplexMatrix> dense_;
};

class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits == 0) {
            throw ValidationError("Circuit: need at least one qubit");
        }
    }

    void append(Gate g) {
        for (auto q : g.qubits()) {
            if (q >= n_qubits_) {
                throw ValidationError("Circuit: operand " + std::to_string(q) + " out of range for " +
                                      std::to_string(n_qubits_) + " qubits");
            }
        }
        gates_.push_back(std::move(g));
    }

    /// Appends every gate of `other` with operands shifted by `offset`.
    void append(const Circuit &other, std::size_t offset = 0) {
        for (const auto &g : other.gates()) {
            append(g.shifted(offset));
        }
    }

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }
    std::vector<Gate> &gates() { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

  private:
    std::size_t n_qubits_;
    std::vector<Gate> gates_;
};

enum class TrotterMode { Primitive, Decomposed };

struct TrotterConfig {
    std::size_t steps = 1;
    TrotterMode mode = TrotterMode::Primitive;

    void validate() const {
        if (steps < 1) {
            throw ValidationError("Trotter steps must be >= 1");
        }
    }
};

inline std::string to_string(TrotterMode m) { return m == TrotterMode::Primitive ? "primitive" : "decomposed"; }

inline TrotterMode parse_trotter_mode(std::string_view s) {
    if (s == "primitive") {
        return TrotterMode::Primitive;
    }
    if (s == "decomposed") {
        return TrotterMode::Decomposed;
    }
    throw ValidationError("unknown Trotter mode '" + std::string(s) + "'");
}

namespace detail {

// exp(-i angle sigma^a) = R_a(2 angle).
inline void append_local_exp(Circuit &c, std::size_t q, PauliAxis a, double angle) {
    c.append(Gate::rotation(a, q, 2.0 * angle));
}

// Gates mapping the Z eigenbasis onto the eigenbasis of `a`; `undo` emits the
// inverse. With B = R_x(-pi/2), B Z B^dagger = Y; with B = H, B Z B = X.
inline void append_basis_change(Circuit &c, std::size_t q, PauliAxis a, bool undo) {
    switch (a) {
    case PauliAxis::X:
        c.append(Gate::hadamard(q));
        break;
    case PauliAxis::Y:
        c.append(Gate::rotation(PauliAxis::X, q, undo ? -kPi / 2 : kPi / 2));
        break;
    case PauliAxis::Z:
        break;
    }
}

inline void append_coupling_exp(Circuit &c, const PauliTerm &t, double angle) {
    const std::size_t i = t.qubit_i();
    const std::size_t j = *t.qubit_j();
    append_basis_change(c, i, t.axis_i(), false);
    append_basis_change(c, j, *t.axis_j(), false);
    c.append(Gate::cnot(i, j));
    c.append(Gate::rotation(PauliAxis::Z, j, 2.0 * angle));
    c.append(Gate::cnot(i, j));
    append_basis_change(c, i, t.axis_i(), true);
    append_basis_change(c, j, *t.axis_j(), true);
}

} // namespace detail

/// m slices of per-term exponentials exp(-i theta_j P_j / m), in spec order.
inline Circuit trotterize(const HamiltonianSpec &spec, const ParamVector &theta, const TrotterConfig &cfg) {
    spec.check_params(theta);
    cfg.validate();
    Circuit c(spec.n_qubits());
    const double scale = 1.0 / static_cast<double>(cfg.steps);
    for (std::size_t step = 0; step < cfg.steps; ++step) {
        for (std::size_t j = 0; j < spec.size(); ++j) {
            const auto &term = spec.terms()[j];
            const double angle = theta[j] * scale;
            if (cfg.mode == TrotterMode::Primitive) {
                c.append(Gate::term_exp(term, angle));
            } else if (term.is_coupling()) {
                detail::append_coupling_exp(c, term, angle);
            } else {
                detail::append_local_exp(c, term.qubit_i(), term.axis_i(), angle);
            }
        }
    }
    return c;
}

/// Applies every gate of `c` in order to the columns of `data`.
inline void apply_circuit_inplace(ComplexMatrix &data, const Circuit &c) {
    for (const auto &g : c.gates()) {
        detail::apply_gate_inplace(data, c.n_qubits(), g.matrix(), g.qubits());
    }
}

inline StateVector run_circuit(const Circuit &c, StateVector state) {
    if (state.n_qubits() != c.n_qubits()) {
        throw ValidationError("run_circuit: state has " + std::to_string(state.n_qubits()) +
                              " qubits, circuit has " + std::to_string(c.n_qubits()));
    }
    ComplexMatrix col = state.amplitudes();
    apply_circuit_inplace(col, c);
    state.amplitudes() = col.col(0);
    return state;
}

inline ComplexMatrix circuit_unitary(const Circuit &c) {
    if (c.n_qubits() > kMaxMatrixQubits) {
        throw CapacityError("circuit_unitary: " + std::to_string(c.n_qubits()) + " qubits exceeds the dense limit of " +
                            std::to_string(kMaxMatrixQubits));
    }
    const auto dim = Eigen::Index{1} << c.n_qubits();
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    apply_circuit_inplace(u, c);
    return u;
}

/// CNOTs plus two-qubit term exponentials; local gates are free.
inline std::size_t two_qubit_gate_count(const Circuit &c) {
    std::size_t n = 0;
    for (const auto &g : c.gates()) {
        if (g.kind() == Gate::Kind::CNOT || (g.kind() == Gate::Kind::TermExp && g.is_two_qubit())) {
            ++n;
        }
    }
    return n;
}

/// Line-oriented dump: `H 0`, `RZ 1 0.5`, `CNOT 0 1`, `TERMEXP zz 0 1 0.13`,
/// `DENSE 3 4 5` (matrix omitted).
inline void write_circuit(std::ostream &out, const Circuit &c) {
    const auto old_precision = out.precision(17);
    out << "QUBITS " << c.n_qubits() << '\n';
    for (const auto &g : c.gates()) {
        switch (g.kind()) {
        case Gate::Kind::Hadamard:
            out << "H " << g.qubits()[0];
            break;
        case Gate::Kind::PauliRotation:
            out << 'R' << static_cast<char>(std::toupper(axis_char(g.axis()))) << ' ' << g.qubits()[0] << ' '
                << g.angle();
            break;
        case Gate::Kind::CNOT:
            out << "CNOT " << g.qubits()[0] << ' ' << g.qubits()[1];
            break;
        case Gate::Kind::TermExp: {
            const auto &t = *g.term();
            out << "TERMEXP " << axis_char(t.axis_i());
            if (t.is_coupling()) {
                out << axis_char(*t.axis_j()) << ' ' << t.qubit_i() << ' ' << *t.qubit_j();
            } else {
                out << ' ' << t.qubit_i();
            }
            out << ' ' << g.angle();
            break;
        }
        case Gate::Kind::Dense:
            out << "DENSE";
            for (auto q : g.qubits()) {
                out << ' ' << q;
            }
            break;
        }
        out << '\n';
    }
    out.precision(old_precision);
}

/// Inverse of write_circuit for circuits without dense gates.
inline Circuit read_circuit(std::istream &in) {
    std::string word;
    std::size_t n = 0;
    if (!(in >> word >> n) || word != "QUBITS") {
        throw ValidationError("circuit dump: expected 'QUBITS <n>' header");
    }
    Circuit c(n);
    std::string line;
    std::getline(in, line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::string op;
        ls >> op;
        auto fail = [&]() { return ValidationError("circuit dump line " + std::to_string(lineno) + ": '" + line + "'"); };
        if (op == "H") {
            std::size_t q = 0;
            if (!(ls >> q)) {
                throw fail();
            }
            c.append(Gate::hadamard(q));
        } else if (op == "RX" || op == "RY" || op == "RZ") {
            std::size_t q = 0;
            double a = 0.0;
            if (!(ls >> q >> a)) {
                throw fail();
            }
            c.append(Gate::rotation(parse_axis(op.substr(1)), q, a));
        } else if (op == "CNOT") {
            std::size_t a = 0;
            std::size_t b = 0;
            if (!(ls >> a >> b)) {
                throw fail();
            }
            c.append(Gate::cnot(a, b));
        } else if (op == "TERMEXP") {
            std::string axes;
            ls >> axes;
            if (axes.size() == 1) {
                std::size_t q = 0;
                double a = 0.0;
                if (!(ls >> q >> a)) {
                    throw fail();
                }
                c.append(Gate::term_exp(PauliTerm::local(q, parse_axis(axes)), a));
            } else if (axes.size() == 2) {
                std::size_t qi = 0;
                std::size_t qj = 0;
                double a = 0.0;
                if (!(ls >> qi >> qj >> a)) {
                    throw fail();
                }
                c.append(Gate::term_exp(PauliTerm::coupling(qi, qj, parse_axis(axes.substr(0, 1)),
                                                            parse_axis(axes.substr(1, 1))),
                                        a));
            } else {
                throw fail();
            }
        } else {
            throw fail();
        }
    }
    return c;
}

} // namespace automata
