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
 * Gradients of the Hilbert-Schmidt cost and the gradient-descent loop.
 *
 * Every parameter theta_j enters the Trotter circuit m times, as
 * exp(-i (theta_j / m) P_j) with P_j^2 = I. For such a gate the cost is a
 * trigonometric polynomial of frequency 2 in the gate angle phi, hence
 *
 *     dC/dphi = C(phi + pi/4) - C(phi - pi/4)
 *
 * exactly, and dC/dtheta_j = (1/m) sum over the m occurrences.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "automata/cost.hpp"
#include "automata/linalg.hpp"
#include "automata/pauli.hpp"
#include "automata/trotter.hpp"

namespace automata {

inline constexpr double kShiftAngle = kPi / 4;

using CostFunction = std::function<double(const ParamVector &)>;

/// Central differences (C(theta + h e_j) - C(theta - h e_j)) / 2h.
inline ParamVector gradient_fd(const CostFunction &cost_fn, const ParamVector &theta, double h = 1e-5) {
    if (!(h > 0.0)) {
        throw ValidationError("gradient_fd: step must be positive");
    }
    ParamVector grad = ParamVector::zeros(theta.size());
    ParamVector probe = theta;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        probe[j] = theta[j] + h;
        const double up = cost_fn(probe);
        probe[j] = theta[j] - h;
        const double down = cost_fn(probe);
        probe[j] = theta[j];
        grad[j] = (up - down) / (2.0 * h);
    }
    return grad;
}

struct CostAndGradient {
    double cost = 0.0;
    ParamVector gradient;
};

/**
 * Parameter-shift gradient of the exact-trace cost with an explicit shift
 * angle; `shift` other than pi/4 is only useful as a broken fixture.
 *
 * Shifted costs are evaluated exactly through cached prefix products
 * P_k = G_{k-1}...G_0 and suffixes R_k = (T^dagger G_{N-1}...G_{k+1})^dagger,
 * so each shifted trace is Tr(R_k^dagger G_k(phi +- s) P_k).
 */
inline CostAndGradient cost_and_gradient_shift(const HamiltonianSpec &spec, const ParamVector &theta,
                                               const TrotterConfig &cfg, const ComplexMatrix &u_target,
                                               double shift = kShiftAngle) {
    cfg.validate();
    const std::size_t n = spec.n_qubits();
    if (static_cast<std::size_t>(u_target.rows()) != (std::size_t{1} << n) || u_target.rows() != u_target.cols()) {
        throw ValidationError("gradient_shift: target dimension does not match " + std::to_string(n) + " qubits");
    }
    const Circuit circuit = trotterize(spec, theta, TrotterConfig{cfg.steps, TrotterMode::Primitive});
    const auto &gates = circuit.gates();
    const std::size_t q_terms = spec.size();
    const auto dim = static_cast<Eigen::Index>(u_target.rows());
    const double norm = static_cast<double>(dim) * static_cast<double>(dim);

    std::vector<ComplexMatrix> prefix;
    prefix.reserve(gates.size() + 1);
    prefix.push_back(ComplexMatrix::Identity(dim, dim));
    for (const auto &g : gates) {
        ComplexMatrix next = prefix.back();
        detail::apply_gate_inplace(next, n, g.matrix(), g.qubits());
        prefix.push_back(std::move(next));
    }

    CostAndGradient out;
    out.cost = std::clamp(1.0 - std::norm(detail::trace_overlap(u_target, prefix.back())) / norm, 0.0, 1.0);
    out.gradient = ParamVector::zeros(q_terms);

    const double inv_m = 1.0 / static_cast<double>(cfg.steps);
    ComplexMatrix suffix = u_target;
    for (std::size_t k = gates.size(); k-- > 0;) {
        const Gate &g = gates[k];
        auto shifted_cost = [&](double delta) {
            ComplexMatrix m = prefix[k];
            detail::apply_gate_inplace(m, n, g.with_angle(g.angle() + delta).matrix(), g.qubits());
            return 1.0 - std::norm(detail::trace_overlap(suffix, m)) / norm;
        };
        out.gradient[k % q_terms] += inv_m * (shifted_cost(shift) - shifted_cost(-shift));
        detail::apply_gate_inplace(suffix, n, g.matrix().adjoint(), g.qubits());
    }
    return out;
}

/// Exact parameter-shift gradient of the exact-trace cost.
inline ParamVector gradient_shift(const HamiltonianSpec &spec, const ParamVector &theta, const TrotterConfig &cfg,
                                  const ComplexMatrix &u_target) {
    return cost_and_gradient_shift(spec, theta, cfg, u_target).gradient;
}

/// Parameter-shift gradient of an arbitrary cost mode, re-evaluating the full
/// circuit for every shifted occurrence (2 m Q cost evaluations).
inline ParamVector gradient_shift(const HamiltonianSpec &spec, const ParamVector &theta, const TrotterConfig &cfg,
                                  const ComplexMatrix &u_target, const CostMode &mode) {
    if (mode.kind == CostMode::Kind::ExactTrace) {
        return gradient_shift(spec, theta, cfg, u_target);
    }
    Circuit circuit = trotterize(spec, theta, TrotterConfig{cfg.steps, TrotterMode::Primitive});
    ParamVector grad = ParamVector::zeros(spec.size());
    const double inv_m = 1.0 / static_cast<double>(cfg.steps);
    for (std::size_t k = 0; k < circuit.size(); ++k) {
        const Gate original = circuit.gates()[k];
        circuit.gates()[k] = original.with_angle(original.angle() + kShiftAngle);
        const double up = circuit_cost(u_target, circuit, mode);
        circuit.gates()[k] = original.with_angle(original.angle() - kShiftAngle);
        const double down = circuit_cost(u_target, circuit, mode);
        circuit.gates()[k] = original;
        grad[k % spec.size()] += inv_m * (up - down);
    }
    return grad;
}

struct InitZeros {};
struct InitUniform {
    double lo = -kPi;
    double hi = kPi;
    std::uint64_t seed = 0;
};
struct InitExplicit {
    ParamVector theta;
};
using InitStrategy = std::variant<InitZeros, InitUniform, InitExplicit>;

struct OptimizerConfig {
    double learning_rate = 0.1;
    std::size_t max_iters = 500;
    double cost_tolerance = 1e-4;
    double grad_norm_tolerance = 1e-6;
    InitStrategy init = InitUniform{};
    /// Extra runs after the first; only uniform initialisation draws fresh
    /// starting points, so restarts are ignored for zeros and explicit.
    std::size_t restarts = 0;
    /// Consecutive cost increases that abort a run.
    std::size_t divergence_window = 50;

    void validate() const {
        if (!(learning_rate > 0.0)) {
            throw ValidationError("learning_rate must be positive");
        }
        if (max_iters < 1) {
            throw ValidationError("max_iters must be >= 1");
        }
        if (!(cost_tolerance > 0.0) || !(grad_norm_tolerance > 0.0)) {
            throw ValidationError("tolerances must be positive");
        }
        if (const auto *u = std::get_if<InitUniform>(&init); u && !(u->lo < u->hi)) {
            throw ValidationError("uniform init needs lo < hi");
        }
    }
};

enum class Termination { CostTolerance, GradTolerance, MaxIters };

inline std::string to_string(Termination t) {
    switch (t) {
    case Termination::CostTolerance:
        return "cost_tol";
    case Termination::GradTolerance:
        return "grad_tol";
    case Termination::MaxIters:
        return "max_iters";
    }
    return "?";
}

struct IterationRecord {
    std::size_t iter = 0;
    double cost = 0.0;
    ParamVector theta;
    double grad_norm = 0.0;
};

struct OptimizationTrace {
    std::vector<IterationRecord> iterations;
    ParamVector final_theta;
    double final_cost = 1.0;
    Termination termination = Termination::MaxIters;
    /// Set when the run was cut short by the divergence guard.
    bool diverged = false;
    /// Which run of a restarted optimisation produced this trace.
    std::size_t restart_index = 0;
    /// Final cost of every run that was executed, in run order.
    std::vector<double> run_costs;
};

namespace detail {

inline ParamVector initial_params(const InitStrategy &init, std::size_t n_params, std::size_t run) {
    if (std::holds_alternative<InitZeros>(init)) {
        return ParamVector::zeros(n_params);
    }
    if (const auto *e = std::get_if<InitExplicit>(&init)) {
        if (e->theta.size() != n_params) {
            throw ValidationError("explicit init has " + std::to_string(e->theta.size()) + " values, spec has " +
                                  std::to_string(n_params) + " terms");
        }
        return e->theta;
    }
    const auto &u = std::get<InitUniform>(init);
    std::seed_seq seq{static_cast<std::uint32_t>(u.seed), static_cast<std::uint32_t>(u.seed >> 32),
                      static_cast<std::uint32_t>(run)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(u.lo, u.hi);
    ParamVector theta = ParamVector::zeros(n_params);
    for (auto &v : theta.values) {
        v = dist(rng);
    }
    return theta;
}

// Sampled costs get a fresh, reproducible seed per iteration.
inline CostMode iteration_mode(const CostMode &mode, std::size_t iter) {
    CostMode m = mode;
    m.seed = mode.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(iter + 1);
    return m;
}

inline OptimizationTrace descend(const HamiltonianSpec &spec, const ComplexMatrix &u_target,
                                 const TrotterConfig &trotter_cfg, const OptimizerConfig &opt, const CostMode &mode,
                                 ParamVector theta) {
    OptimizationTrace trace;
    double previous = std::numeric_limits<double>::infinity();
    std::size_t rising = 0;
    for (std::size_t it = 0;; ++it) {
        double c = 0.0;
        ParamVector grad;
        if (mode.kind == CostMode::Kind::ExactTrace && trotter_cfg.mode == TrotterMode::Primitive) {
            auto cg = cost_and_gradient_shift(spec, theta, trotter_cfg, u_target);
            c = cg.cost;
            grad = std::move(cg.gradient);
        } else {
            const CostMode m = iteration_mode(mode, it);
            c = cost(u_target, spec, theta, trotter_cfg, m);
            grad = gradient_shift(spec, theta, trotter_cfg, u_target, m);
        }
        const double gnorm = grad.norm();
        trace.iterations.push_back({it, c, theta, gnorm});
        trace.final_theta = theta;
        trace.final_cost = c;

        if (c < opt.cost_tolerance) {
            trace.termination = Termination::CostTolerance;
            break;
        }
        if (gnorm < opt.grad_norm_tolerance) {
            trace.termination = Termination::GradTolerance;
            break;
        }
        if (it >= opt.max_iters) {
            trace.termination = Termination::MaxIters;
            break;
        }
        rising = c > previous ? rising + 1 : 0;
        if (rising >= opt.divergence_window) {
            trace.termination = Termination::MaxIters;
            trace.diverged = true;
            break;
        }
        previous = c;
        for (std::size_t j = 0; j < theta.size(); ++j) {
            theta[j] -= opt.learning_rate * grad[j];
        }
    }
    return trace;
}

} // namespace detail

/**
 * Plain gradient descent theta <- theta - lr grad C, with optional seeded
 * restarts. Returns the trace of the run with the lowest final cost; stops
 * restarting as soon as one run meets the cost tolerance.
 */
inline OptimizationTrace minimize(const HamiltonianSpec &spec, const ComplexMatrix &u_target,
                                  const TrotterConfig &trotter_cfg, const OptimizerConfig &opt,
                                  const CostMode &mode = CostMode::exact_trace()) {
    opt.validate();
    trotter_cfg.validate();
    const std::size_t runs = std::holds_alternative<InitUniform>(opt.init) ? opt.restarts + 1 : 1;
    OptimizationTrace best;
    std::vector<double> run_costs;
    for (std::size_t r = 0; r < runs; ++r) {
        auto trace = detail::descend(spec, u_target, trotter_cfg, opt, mode,
                                     detail::initial_params(opt.init, spec.size(), r));
        trace.restart_index = r;
        run_costs.push_back(trace.final_cost);
        const bool done = trace.final_cost < opt.cost_tolerance;
        if (r == 0 || trace.final_cost < best.final_cost) {
            best = std::move(trace);
        }
        if (done) {
            break;
        }
    }
    best.run_costs = std::move(run_costs);
    return best;
}

/// CSV: `iter,cost,grad_norm,theta_0,...,theta_{Q-1}`.
inline void write_trace_csv(std::ostream &out, const OptimizationTrace &trace) {
    const std::size_t q = trace.iterations.empty() ? 0 : trace.iterations.front().theta.size();
    out << "iter,cost,grad_norm";
    for (std::size_t j = 0; j < q; ++j) {
        out << ",theta_" << j;
    }
    out << '\n';
    const auto old_precision = out.precision(17);
    for (const auto &rec : trace.iterations) {
        out << rec.iter << ',' << rec.cost << ',' << rec.grad_norm;
        for (double v : rec.theta.values) {
            out << ',' << v;
        }
        out << '\n';
    }
    out.precision(old_precision);
}

inline std::vector<IterationRecord> read_trace_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("iter,cost,grad_norm", 0) != 0) {
        throw ValidationError("trace CSV: missing 'iter,cost,grad_norm' header");
    }
    std::size_t q = 0;
    for (char ch : line) {
        q += ch == ',' ? 1 : 0;
    }
    q -= 2;
    std::vector<IterationRecord> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != q + 3) {
            throw ValidationError("trace CSV line " + std::to_string(lineno) + ": expected " + std::to_string(q + 3) +
                                  " columns, got " + std::to_string(cells.size()));
        }
        try {
            IterationRecord rec;
            rec.iter = std::stoull(cells[0]);
            rec.cost = std::stod(cells[1]);
            rec.grad_norm = std::stod(cells[2]);
            rec.theta = ParamVector::zeros(q);
            for (std::size_t j = 0; j < q; ++j) {
                rec.theta[j] = std::stod(cells[3 + j]);
            }
            rows.push_back(std::move(rec));
        } catch (const std::logic_error &) {
            throw ValidationError("trace CSV line " + std::to_string(lineno) + ": malformed number");
        }
    }
    return rows;
}

} // namespace automata
