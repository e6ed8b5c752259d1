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
 * Dense complex linear algebra for small qubit registers.
 *
 * Qubit ordering is global: qubit 0 is the most-significant (leftmost)
 * tensor factor, so the basis state |z_1 z_2 ... z_n> lives at index
 * sum_k z_k 2^(n-k).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace automata {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

/// Largest dense matrix (in entries) any operation will build: 256 x 256.
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 16;
inline constexpr std::size_t kMaxMatrixQubits = 8;

/// Input violates an operation's precondition.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Requested object is larger than the dense kernel supports.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

inline bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline std::size_t log2_dim(std::size_t dim) {
    if (!is_power_of_two(dim)) {
        throw ValidationError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    return n;
}

/// Largest absolute entry.
inline double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double unitarity_error(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

inline double hermiticity_error(const ComplexMatrix &h) {
    if (h.rows() != h.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs(h - h.adjoint());
}

inline bool is_unitary(const ComplexMatrix &u, double tol = kUnitaryTol) {
    return unitarity_error(u) < tol;
}

inline bool is_hermitian(const ComplexMatrix &h, double tol = kHermitianTol) {
    return hermiticity_error(h) < tol;
}

inline void require_square_pow2(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || !is_power_of_two(static_cast<std::size_t>(m.rows()))) {
        throw ValidationError(std::string(what) + ": expected a square matrix of power-of-two dimension, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const auto rows = static_cast<std::size_t>(a.rows() * b.rows());
    const auto cols = static_cast<std::size_t>(a.cols() * b.cols());
    if (rows * cols > kMaxEntries) {
        throw CapacityError("kron: result of " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " exceeds the dense capacity of " + std::to_string(kMaxEntries) + " entries");
    }
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// e^{-i h t} for Hermitian h, through h = V diag(lambda) V^dagger.
inline ComplexMatrix expm_hermitian(const ComplexMatrix &h, double t = 1.0) {
    require_square_pow2(h, "expm_hermitian");
    if (!is_hermitian(h)) {
        throw ValidationError("expm_hermitian: generator is not Hermitian (error " +
                              std::to_string(hermiticity_error(h)) + ")");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    const ComplexMatrix &v = eig.eigenvectors();
    ComplexVector phases(v.cols());
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        phases(k) = std::exp(-kI * eig.eigenvalues()(k) * t);
    }
    return v * phases.asDiagonal() * v.adjoint();
}

/**
 * Principal generator of a unitary: the Hermitian H with eigenvalues in
 * (-pi, pi] satisfying expm_hermitian(H, 1) == u.
 *
 * Unitaries are normal, so the complex Schur form is diagonal and its
 * unitary factor is an orthonormal eigenbasis even for degenerate spectra.
 * An eigenvalue of -1 maps to +pi.
 */
inline ComplexMatrix logm_principal(const ComplexMatrix &u) {
    require_square_pow2(u, "logm_principal");
    if (!is_unitary(u)) {
        throw ValidationError("logm_principal: input is not unitary (error " +
                              std::to_string(unitarity_error(u)) + ")");
    }
    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    const ComplexMatrix &q = schur.matrixU();
    const ComplexMatrix &t = schur.matrixT();
    Eigen::VectorXd gen(t.rows());
    for (Eigen::Index k = 0; k < t.rows(); ++k) {
        double h = -std::arg(t(k, k));
        // arg() of a numerically perturbed -1 lands on either side of the cut.
        if (h <= -kPi + 1e-9) {
            h += 2.0 * kPi;
        }
        gen(k) = h;
    }
    ComplexMatrix out = q * gen.cast<Complex>().asDiagonal() * q.adjoint();
    // Strip the O(eps) anti-Hermitian residue left by the Schur factor.
    return 0.5 * (out + out.adjoint());
}

/// Ascending eigenvalues of a Hermitian matrix.
inline Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues();
}

/// Pure state of an n-qubit register.
class StateVector {
  public:
    explicit StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
        check_size(n_qubits);
        amplitudes_ = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
        amplitudes_(0) = 1.0;
    }

    StateVector(std::size_t n_qubits, ComplexVector amplitudes)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
        check_size(n_qubits);
        if (amplitudes_.size() != (Eigen::Index{1} << n_qubits)) {
            throw ValidationError("StateVector: expected " + std::to_string(std::size_t{1} << n_qubits) +
                                  " amplitudes, got " + std::to_string(amplitudes_.size()));
        }
        if (std::abs(amplitudes_.squaredNorm() - 1.0) > kUnitaryTol) {
            throw ValidationError("StateVector: amplitudes are not normalized");
        }
    }

    /// Computational basis state |index>.
    static StateVector basis(std::size_t n_qubits, std::size_t index) {
        StateVector s(n_qubits);
        if (index >= static_cast<std::size_t>(s.amplitudes_.size())) {
            throw ValidationError("StateVector::basis: index out of range");
        }
        s.amplitudes_(0) = 0.0;
        s.amplitudes_(static_cast<Eigen::Index>(index)) = 1.0;
        return s;
    }

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    [[nodiscard]] const ComplexVector &amplitudes() const { return amplitudes_; }
    ComplexVector &amplitudes() { return amplitudes_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

    [[nodiscard]] std::vector<double> probabilities() const {
        std::vector<double> p(dim());
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] = std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
        }
        return p;
    }

  private:
    static void check_size(std::size_t n) {
        if (n == 0) {
            throw ValidationError("StateVector: need at least one qubit");
        }
        if (n > 20) {
            throw CapacityError("StateVector: " + std::to_string(n) + " qubits exceeds the supported 20");
        }
    }

    std::size_t n_qubits_;
    ComplexVector amplitudes_;
};

namespace detail {

inline void check_operands(std::size_t n_qubits, const std::vector<std::size_t> &qubits, Eigen::Index gate_dim) {
    if (qubits.empty() || qubits.size() > n_qubits) {
        throw ValidationError("apply_gate: bad operand count " + std::to_string(qubits.size()));
    }
    if (gate_dim != (Eigen::Index{1} << qubits.size())) {
        throw ValidationError("apply_gate: gate dimension " + std::to_string(gate_dim) + " does not act on " +
                              std::to_string(qubits.size()) + " qubits");
    }
    for (std::size_t a = 0; a < qubits.size(); ++a) {
        if (qubits[a] >= n_qubits) {
            throw ValidationError("apply_gate: qubit " + std::to_string(qubits[a]) + " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
        }
        for (std::size_t b = a + 1; b < qubits.size(); ++b) {
            if (qubits[a] == qubits[b]) {
                throw ValidationError("apply_gate: duplicate qubit " + std::to_string(qubits[a]));
            }
        }
    }
}

/// Applies `gate` on `qubits` to every column of `data` (a 2^n x cols block).
inline void apply_gate_inplace(ComplexMatrix &data, std::size_t n_qubits, const ComplexMatrix &gate,
                               const std::vector<std::size_t> &qubits) {
    const std::size_t k = qubits.size();
    const std::size_t sub = std::size_t{1} << k;
    const std::size_t dim = std::size_t{1} << n_qubits;

    // offsets[s] = full-register index contribution of local basis state s,
    // local bit (k-1-a) belongs to qubits[a].
    std::vector<std::size_t> offsets(sub, 0);
    std::size_t mask = 0;
    for (std::size_t a = 0; a < k; ++a) {
        const std::size_t bit = std::size_t{1} << (n_qubits - 1 - qubits[a]);
        mask |= bit;
        for (std::size_t s = 0; s < sub; ++s) {
            if ((s >> (k - 1 - a)) & 1U) {
                offsets[s] |= bit;
            }
        }
    }

    std::vector<Complex> in(sub);
    for (Eigen::Index col = 0; col < data.cols(); ++col) {
        for (std::size_t base = 0; base < dim; ++base) {
            if (base & mask) {
                continue;
            }
            for (std::size_t s = 0; s < sub; ++s) {
                in[s] = data(static_cast<Eigen::Index>(base | offsets[s]), col);
            }
            for (std::size_t r = 0; r < sub; ++r) {
                Complex acc{0.0, 0.0};
                for (std::size_t s = 0; s < sub; ++s) {
                    acc += gate(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) * in[s];
                }
                data(static_cast<Eigen::Index>(base | offsets[r]), col) = acc;
            }
        }
    }
}

} // namespace detail

/// Embeds `gate` on the ordered `qubits` (first listed = most significant
/// local factor) and applies it to `state`.
inline StateVector apply_gate(StateVector state, const ComplexMatrix &gate, const std::vector<std::size_t> &qubits) {
    detail::check_operands(state.n_qubits(), qubits, gate.rows());
    if (gate.rows() != gate.cols()) {
        throw ValidationError("apply_gate: gate is not square");
    }
    ComplexMatrix column = state.amplitudes();
    detail::apply_gate_inplace(column, state.n_qubits(), gate, qubits);
    state.amplitudes() = column.col(0);
    return state;
}

/// Reads the plain-text matrix format: first line `dim`, then dim*dim lines
/// of `re im` in row-major order.
inline ComplexMatrix read_matrix(std::istream &in) {
    long long dim = 0;
    if (!(in >> dim) || dim <= 0) {
        throw ValidationError("matrix file: first token must be a positive dimension");
    }
    if (!is_power_of_two(static_cast<std::size_t>(dim))) {
        throw ValidationError("matrix file: dimension " + std::to_string(dim) + " is not a power of two");
    }
    if (static_cast<std::size_t>(dim * dim) > kMaxEntries) {
        throw CapacityError("matrix file: dimension " + std::to_string(dim) + " exceeds capacity");
    }
    ComplexMatrix m(dim, dim);
    for (long long idx = 0; idx < dim * dim; ++idx) {
        double re = 0.0;
        double im = 0.0;
        if (!(in >> re >> im)) {
            throw ValidationError("matrix file: expected " + std::to_string(dim * dim) + " entries, entry " +
                                  std::to_string(idx) + " is missing or malformed");
        }
        m(idx / dim, idx % dim) = Complex(re, im);
    }
    std::string extra;
    if (in >> extra) {
        throw ValidationError("matrix file: trailing data after " + std::to_string(dim * dim) + " entries");
    }
    return m;
}

inline ComplexMatrix read_matrix_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open matrix file '" + path + "'");
    }
    return read_matrix(in);
}

inline void write_matrix(std::ostream &out, const ComplexMatrix &m) {
    require_square_pow2(m, "write_matrix");
    out << m.rows() << '\n' << std::setprecision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << m(i, j).real() << ' ' << m(i, j).imag() << '\n';
        }
    }
}

} // namespace automata
