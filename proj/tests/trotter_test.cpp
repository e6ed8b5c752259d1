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

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "automata/trotter.hpp"
#include "oracles.hpp"

namespace automata {
namespace {

constexpr auto X = PauliAxis::X;
constexpr auto Y = PauliAxis::Y;
constexpr auto Z = PauliAxis::Z;

ParamVector random_theta(std::size_t q, std::mt19937_64 &rng, double range = kPi) {
    std::uniform_real_distribution<double> u(-range, range);
    ParamVector t = ParamVector::zeros(q);
    for (auto &v : t.values) {
        v = u(rng);
    }
    return t;
}

// Unitary assembled one column at a time through StateVector runs.
ComplexMatrix columns_via_states(const Circuit &c) {
    const auto dim = Eigen::Index{1} << c.n_qubits();
    ComplexMatrix u(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        StateVector s = StateVector::basis(c.n_qubits(), static_cast<std::size_t>(k));
        for (const auto &g : c.gates()) {
            s = apply_gate(s, g.matrix(), g.qubits());
        }
        u.col(k) = s.amplitudes();
    }
    return u;
}

TEST(Trotterize, PrimitiveCounts) {
    const auto spec = full_general_spec(3);
    std::mt19937_64 rng(1);
    const auto c = trotterize(spec, random_theta(spec.size(), rng), {4, TrotterMode::Primitive});
    EXPECT_EQ(c.size(), spec.size() * 4);
    for (const auto &g : c.gates()) {
        EXPECT_EQ(g.kind(), Gate::Kind::TermExp);
    }
}

TEST(Trotterize, DecomposedZZMatchesCnotPattern) {
    const HamiltonianSpec spec(2, {PauliTerm::coupling(0, 1, Z, Z)});
    const auto c = trotterize(spec, {0.5}, {1, TrotterMode::Decomposed});
    ASSERT_EQ(c.size(), 3U);
    EXPECT_EQ(c.gates()[0].kind(), Gate::Kind::CNOT);
    EXPECT_EQ(c.gates()[0].qubits(), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(c.gates()[1].kind(), Gate::Kind::PauliRotation);
    EXPECT_EQ(c.gates()[1].axis(), Z);
    EXPECT_EQ(c.gates()[1].qubits(), (std::vector<std::size_t>{1}));
    EXPECT_DOUBLE_EQ(c.gates()[1].angle(), 1.0);
    EXPECT_EQ(c.gates()[2].kind(), Gate::Kind::CNOT);
    EXPECT_EQ(two_qubit_gate_count(c), 2U);
}

TEST(Trotterize, LengthMismatchAndBadSteps) {
    const auto spec = full_general_spec(2);
    EXPECT_THROW((void)trotterize(spec, {1.0}, {1, TrotterMode::Primitive}), ValidationError);
    EXPECT_THROW((void)trotterize(spec, ParamVector::zeros(spec.size()), {0, TrotterMode::Primitive}),
                 ValidationError);
}

TEST(TermExp, InvolutionIdentity) {
    const auto spec = full_general_spec(3);
    for (const auto &t : spec.terms()) {
        const double phi = 0.37;
        const ComplexMatrix p = term_matrix(t, 3);
        const ComplexMatrix expected = std::cos(phi) * ComplexMatrix::Identity(8, 8) - kI * std::sin(phi) * p;
        Circuit c(3);
        c.append(Gate::term_exp(t, phi));
        EXPECT_LT(oracle::max_abs_diff(circuit_unitary(c), expected), 1e-14) << t.label();
        EXPECT_LT(oracle::max_abs_diff(circuit_unitary(c), oracle::expm_taylor(p, phi, 40)), 1e-12);
    }
}

TEST(ModeEquivalence, EveryAxisPairAndSeededSpecs) {
    std::mt19937_64 rng(21);
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto spec = full_general_spec(n);
        for (int trial = 0; trial < 3; ++trial) {
            const auto theta = random_theta(spec.size(), rng);
            for (std::size_t m : {1U, 3U}) {
                const auto up = circuit_unitary(trotterize(spec, theta, {m, TrotterMode::Primitive}));
                const auto ud = circuit_unitary(trotterize(spec, theta, {m, TrotterMode::Decomposed}));
                EXPECT_LT(oracle::phase_invariant_diff(up, ud), 1e-9) << "n=" << n << " m=" << m;
            }
        }
    }
}

TEST(ModeEquivalence, PublishedSpecs) {
    for (const auto &p : {fig4a(), fig4b()}) {
        const auto up = circuit_unitary(trotterize(p.spec, p.theta, {5, TrotterMode::Primitive}));
        const auto ud = circuit_unitary(trotterize(p.spec, p.theta, {5, TrotterMode::Decomposed}));
        EXPECT_LT(oracle::phase_invariant_diff(up, ud), 1e-9);
        EXPECT_TRUE(is_unitary(ud));
    }
}

TEST(CircuitUnitary, BasicCases) {
    EXPECT_LT(oracle::max_abs_diff(circuit_unitary(Circuit(3)), ComplexMatrix::Identity(8, 8)), 1e-15);

    Circuit bell(2);
    bell.append(Gate::hadamard(0));
    bell.append(Gate::cnot(0, 1));
    const ComplexMatrix u = circuit_unitary(bell);
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(u(0, 0).real(), s, 1e-15);
    EXPECT_NEAR(std::abs(u(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(2, 0)), 0.0, 1e-15);
    EXPECT_NEAR(u(3, 0).real(), s, 1e-15);

    EXPECT_THROW((void)circuit_unitary(Circuit(9)), CapacityError);
}

TEST(CircuitUnitary, AgreesWithStatevectorColumns) {
    std::mt19937_64 rng(33);
    const auto spec = full_general_spec(3);
    for (auto mode : {TrotterMode::Primitive, TrotterMode::Decomposed}) {
        const auto c = trotterize(spec, random_theta(spec.size(), rng), {2, mode});
        EXPECT_LT(oracle::max_abs_diff(circuit_unitary(c), columns_via_states(c)), 1e-12);
    }
}

// m=1 sits outside the asymptotic regime (error near saturation), so the
// per-doubling ratio is only checked from m=2 on.
TEST(TrotterError, DecreasesWithSteps) {
    const auto p = fig4a();
    const ComplexMatrix exact = expm_hermitian(hamiltonian_matrix(p.spec, p.theta), 1.0);
    double previous = 1e300;
    for (std::size_t m : {1U, 2U, 4U, 8U, 16U, 32U}) {
        const double err = (circuit_unitary(trotterize(p.spec, p.theta, {m, TrotterMode::Primitive})) - exact).norm();
        EXPECT_LT(err, previous) << "m=" << m;
        if (m >= 4) {
            EXPECT_GE(previous / err, 1.8) << "m=" << m;
        }
        previous = err;
    }
}

TEST(TrotterError, CommutingTermsExactAtOneStep) {
    const HamiltonianSpec spec(3, {PauliTerm::local(2, Z), PauliTerm::coupling(0, 1, Z, Z),
                                   PauliTerm::coupling(0, 1, X, X), PauliTerm::coupling(0, 1, Y, Y)});
    const ParamVector theta{0.3, -1.1, 2.2, 0.9};
    const ComplexMatrix exact = expm_hermitian(hamiltonian_matrix(spec, theta), 1.0);
    EXPECT_LT(oracle::max_abs_diff(circuit_unitary(trotterize(spec, theta, {1, TrotterMode::Primitive})), exact),
              1e-10);
}

TEST(GateCount, FullGeneralPrimitive) {
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto spec = full_general_spec(n);
        for (std::size_t m : {1U, 3U}) {
            const auto c = trotterize(spec, ParamVector::zeros(spec.size()), {m, TrotterMode::Primitive});
            EXPECT_EQ(two_qubit_gate_count(c), 9 * n * (n - 1) / 2 * m);
        }
    }
    EXPECT_EQ(two_qubit_gate_count(Circuit(2)), 0U);
}

TEST(Gate, ConjugateMatchesEntrywiseConjugate) {
    std::vector<Gate> gates = {Gate::hadamard(0), Gate::cnot(0, 1)};
    for (auto a : {X, Y, Z}) {
        gates.push_back(Gate::rotation(a, 1, 0.77));
    }
    for (const auto &t : full_general_spec(2).terms()) {
        gates.push_back(Gate::term_exp(t, -0.41));
    }
    for (const auto &g : gates) {
        EXPECT_LT(oracle::max_abs_diff(g.conjugate().matrix(), g.matrix().conjugate()), 1e-15);
    }
}

TEST(Gate, RejectsNonFiniteAngleAndBadOperands) {
    EXPECT_THROW((void)Gate::rotation(X, 0, std::nan("")), ValidationError);
    EXPECT_THROW((void)Gate::cnot(1, 1), ValidationError);
    Circuit c(2);
    EXPECT_THROW(c.append(Gate::hadamard(2)), ValidationError);
}

TEST(CircuitDump, RoundTrip) {
    std::mt19937_64 rng(4);
    const auto spec = fig4b().spec;
    for (auto mode : {TrotterMode::Primitive, TrotterMode::Decomposed}) {
        const auto c = trotterize(spec, random_theta(spec.size(), rng), {2, mode});
        std::stringstream ss;
        write_circuit(ss, c);
        const auto back = read_circuit(ss);
        ASSERT_EQ(back.size(), c.size());
        EXPECT_LT(oracle::max_abs_diff(circuit_unitary(back), circuit_unitary(c)), 1e-14);
    }
    std::istringstream bad("QUBITS 2\nFOO 1\n");
    EXPECT_THROW((void)read_circuit(bad), ValidationError);
}

} // namespace
} // namespace automata
