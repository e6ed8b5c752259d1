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

#include <gtest/gtest.h>

#include "automata/pauli.hpp"
#include "oracles.hpp"

namespace automata {
namespace {

constexpr auto X = PauliAxis::X;
constexpr auto Y = PauliAxis::Y;
constexpr auto Z = PauliAxis::Z;

TEST(TermMatrix, SmallCases) {
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z.diagonal() << 1.0, -1.0;
    EXPECT_LT(oracle::max_abs_diff(term_matrix(PauliTerm::local(0, Z), 1), z), 1e-15);

    ComplexMatrix zz = ComplexMatrix::Zero(4, 4);
    zz.diagonal() << 1.0, -1.0, -1.0, 1.0;
    EXPECT_LT(oracle::max_abs_diff(term_matrix(PauliTerm::coupling(0, 1, Z, Z), 2), zz), 1e-15);

    EXPECT_LT(oracle::max_abs_diff(term_matrix(PauliTerm::coupling(0, 2, X, X), 3), oracle::pauli_string("xix")),
              1e-15);
    EXPECT_LT(oracle::max_abs_diff(term_matrix(PauliTerm::coupling(1, 3, Z, Y), 4), oracle::pauli_string("iziy")),
              1e-15);
}

TEST(TermMatrix, InvolutoryForEveryTermOfFullGeneral) {
    const auto spec = full_general_spec(3);
    for (const auto &t : spec.terms()) {
        const ComplexMatrix m = term_matrix(t, 3);
        EXPECT_TRUE(is_hermitian(m));
        EXPECT_LT(oracle::max_abs_diff(m * m, ComplexMatrix::Identity(8, 8)), 1e-12) << t.label();
    }
}

TEST(TermMatrix, RejectsOutOfRange) {
    EXPECT_THROW((void)term_matrix(PauliTerm::local(3, X), 3), ValidationError);
}

TEST(PauliTerm, CouplingIsCanonical) {
    const auto a = PauliTerm::coupling(2, 0, Y, Z);
    EXPECT_EQ(a.qubit_i(), 0U);
    EXPECT_EQ(*a.qubit_j(), 2U);
    EXPECT_EQ(a.axis_i(), Z);
    EXPECT_EQ(*a.axis_j(), Y);
    EXPECT_EQ(a, PauliTerm::coupling(0, 2, Z, Y));
    EXPECT_THROW((void)PauliTerm::coupling(1, 1, X, X), ValidationError);
}

TEST(HamiltonianSpec, Validation) {
    EXPECT_THROW(HamiltonianSpec(2, {PauliTerm::local(0, X), PauliTerm::local(0, X)}), ValidationError);
    EXPECT_THROW(HamiltonianSpec(2, {PauliTerm::coupling(0, 1, X, Y), PauliTerm::coupling(1, 0, Y, X)}),
                 ValidationError);
    EXPECT_THROW(HamiltonianSpec(2, {PauliTerm::local(2, X)}), ValidationError);
    EXPECT_THROW(HamiltonianSpec(2, {PauliTerm::coupling(0, 1, Z, Y)}, true), ValidationError);
    EXPECT_NO_THROW(HamiltonianSpec(2, {PauliTerm::coupling(0, 1, Z, Y)}, false));
}

TEST(HamiltonianMatrix, ZeroParametersAndHandSum) {
    const auto spec = full_general_spec(2);
    EXPECT_LT(max_abs(hamiltonian_matrix(spec, ParamVector::zeros(spec.size()))), 1e-15);

    const HamiltonianSpec two(2, {PauliTerm::local(0, Z), PauliTerm::coupling(0, 1, Z, Z)});
    // Z0 + 2 Z0Z1 with qubit 0 most significant: |00>, |01>, |10>, |11>.
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected.diagonal() << 3.0, -1.0, -3.0, 1.0;
    EXPECT_LT(oracle::max_abs_diff(hamiltonian_matrix(two, {1.0, 2.0}), expected), 1e-15);
    EXPECT_THROW((void)hamiltonian_matrix(two, {1.0}), ValidationError);
}

TEST(HamiltonianMatrix, LinearInTheta) {
    const auto spec = full_general_spec(3);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2, 2);
    ParamVector a = ParamVector::zeros(spec.size());
    ParamVector b = a;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        a[j] = u(rng);
        b[j] = u(rng);
    }
    ParamVector mix = a;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        mix[j] = 0.5 * a[j] - 1.5 * b[j];
    }
    const ComplexMatrix lhs = hamiltonian_matrix(spec, mix);
    const ComplexMatrix rhs = 0.5 * hamiltonian_matrix(spec, a) - 1.5 * hamiltonian_matrix(spec, b);
    EXPECT_LT(oracle::max_abs_diff(lhs, rhs), 1e-12);
}

TEST(Presets, TermCounts) {
    for (std::size_t n = 2; n <= 4; ++n) {
        EXPECT_EQ(full_general_spec(n).size(), 3 * n + 9 * n * (n - 1) / 2);
        EXPECT_EQ(full_heisenberg_spec(n).size(), 3 * n + 3 * n * (n - 1) / 2);
        EXPECT_TRUE(full_heisenberg_spec(n).heisenberg_only());
    }
    EXPECT_EQ(full_general_spec(3).size(), 36U);
    EXPECT_THROW((void)standard_spec("fig4a", 4), ValidationError);
    EXPECT_THROW((void)standard_spec("fig4b", 3), ValidationError);
    EXPECT_THROW((void)standard_spec("nonsense", 3), ValidationError);
}

TEST(Presets, Fig4aMatchesPublishedCaption) {
    const auto p = fig4a();
    const std::vector<PauliTerm> expected = {
        PauliTerm::local(0, X),          PauliTerm::local(0, Z),          PauliTerm::local(1, X),
        PauliTerm::local(1, Z),          PauliTerm::coupling(0, 1, X, X), PauliTerm::coupling(0, 1, Y, Y),
        PauliTerm::coupling(0, 1, Z, Z), PauliTerm::coupling(0, 2, X, X), PauliTerm::coupling(1, 2, Z, Z)};
    EXPECT_EQ(p.spec.terms(), expected);
    EXPECT_EQ(p.theta, (ParamVector{1.09, 2.35, 3.11, -0.78, 0.07, 0.07, 0.78, 1.089, 3.11}));

    const ComplexMatrix h = hamiltonian_matrix(p.spec, p.theta);
    EXPECT_TRUE(is_hermitian(h));
    EXPECT_NEAR(std::abs(h.trace()), 0.0, 1e-12);
    EXPECT_GT(h.norm(), 0.0);
}

TEST(Presets, Fig4bMatchesPublishedCaption) {
    const auto p = fig4b();
    ASSERT_EQ(p.spec.size(), 12U);
    EXPECT_EQ(p.spec.n_qubits(), 4U);
    for (const auto &t : p.spec.terms()) {
        EXPECT_TRUE(t.is_coupling());
    }
    auto value_of = [&](const PauliTerm &t) {
        for (std::size_t j = 0; j < p.spec.size(); ++j) {
            if (p.spec.terms()[j] == t) {
                return p.theta[j];
            }
        }
        ADD_FAILURE() << "missing " << t.label();
        return 0.0;
    };
    EXPECT_DOUBLE_EQ(value_of(PauliTerm::coupling(1, 3, Z, Y)), 2.37);
    EXPECT_DOUBLE_EQ(value_of(PauliTerm::coupling(0, 3, Z, Y)), 2.29);
    EXPECT_DOUBLE_EQ(value_of(PauliTerm::coupling(2, 3, Z, Y)), 2.30);
    EXPECT_DOUBLE_EQ(value_of(PauliTerm::coupling(0, 1, X, X)), 1.42);
    EXPECT_DOUBLE_EQ(value_of(PauliTerm::coupling(0, 2, Z, Z)), 2.57);
    EXPECT_FALSE(p.spec.heisenberg_only());
}

} // namespace
} // namespace automata
