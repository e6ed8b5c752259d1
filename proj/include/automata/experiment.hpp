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
 * Experiment configs, result records and the commands behind the CLI.
 *
 * Configs and results are JSON, iteration traces are CSV. The schema is
 * documented in README.md; `config_to_json(parse_config(j))` is the
 * normalised echo stored in every result record.
 */

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "automata/cost.hpp"
#include "automata/linalg.hpp"
#include "automata/optimize.hpp"
#include "automata/pauli.hpp"
#include "automata/targets.hpp"
#include "automata/trotter.hpp"

namespace automata {

using nlohmann::json;

/// Config rejected; the message names the offending field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct TargetSource {
    std::string name;        ///< builtin name, empty when loaded from file
    std::string matrix_file; ///< path, empty for builtins
};

struct SpecSource {
    std::string preset;            ///< preset name, empty for explicit terms
    std::vector<PauliTerm> terms;  ///< explicit term list
    std::optional<std::size_t> n_qubits;
    bool heisenberg_only = false;
};

struct ExperimentConfig {
    TargetSource target_source;
    SpecSource spec_source;
    TrotterConfig trotter{6, TrotterMode::Primitive};
    CostMode cost_mode = CostMode::exact_trace();
    OptimizerConfig optimizer;
    std::optional<ParamVector> theta;
    std::string output_dir;

    // Resolved at parse time.
    TargetGate target;
    std::optional<HamiltonianSpec> spec;

    [[nodiscard]] const HamiltonianSpec &hamiltonian() const { return *spec; }
};

// ---------------------------------------------------------------------------
// JSON term syntax: {"local": [q, "z"]} and {"coupling": [i, j, "x", "y"]}.

inline json term_to_json(const PauliTerm &t) {
    if (t.is_coupling()) {
        return {{"coupling",
                 {t.qubit_i(), *t.qubit_j(), std::string(1, axis_char(t.axis_i())),
                  std::string(1, axis_char(*t.axis_j()))}}};
    }
    return {{"local", {t.qubit_i(), std::string(1, axis_char(t.axis_i()))}}};
}

inline PauliTerm term_from_json(const json &j, const std::string &where) {
    auto fail = [&](const std::string &why) { return ConfigError(where + ": " + why + " (got " + j.dump() + ")"); };
    if (!j.is_object() || j.size() != 1) {
        throw fail("term must be {\"local\": [q, axis]} or {\"coupling\": [i, j, axis_i, axis_j]}");
    }
    try {
        if (j.contains("local")) {
            const auto &a = j.at("local");
            if (!a.is_array() || a.size() != 2 || !a[0].is_number_unsigned() || !a[1].is_string()) {
                throw fail("local term needs [qubit, axis]");
            }
            return PauliTerm::local(a[0].get<std::size_t>(), parse_axis(a[1].get<std::string>()));
        }
        if (j.contains("coupling")) {
            const auto &a = j.at("coupling");
            if (!a.is_array() || a.size() != 4 || !a[0].is_number_unsigned() || !a[1].is_number_unsigned() ||
                !a[2].is_string() || !a[3].is_string()) {
                throw fail("coupling term needs [i, j, axis_i, axis_j]");
            }
            return PauliTerm::coupling(a[0].get<std::size_t>(), a[1].get<std::size_t>(),
                                       parse_axis(a[2].get<std::string>()), parse_axis(a[3].get<std::string>()));
        }
    } catch (const ValidationError &e) {
        throw fail(e.what());
    }
    throw fail("unknown term kind");
}

// ---------------------------------------------------------------------------

namespace detail {

template <typename T>
T get_field(const json &obj, const std::string &key, const std::string &path, T fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError(path + "." + key + ": wrong type (got " + obj.at(key).dump() + ")");
    }
}

inline std::vector<double> get_doubles(const json &j, const std::string &path) {
    if (!j.is_array()) {
        throw ConfigError(path + ": expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_number()) {
            throw ConfigError(path + "[" + std::to_string(k) + "]: expected a number, got " + j[k].dump());
        }
        out.push_back(j[k].get<double>());
    }
    return out;
}

} // namespace detail

inline json init_to_json(const InitStrategy &init) {
    if (std::holds_alternative<InitZeros>(init)) {
        return {{"kind", "zeros"}};
    }
    if (const auto *u = std::get_if<InitUniform>(&init)) {
        return {{"kind", "uniform"}, {"lo", u->lo}, {"hi", u->hi}, {"seed", u->seed}};
    }
    return {{"kind", "explicit"}, {"theta", std::get<InitExplicit>(init).theta.values}};
}

inline json config_to_json(const ExperimentConfig &cfg) {
    json j;
    if (cfg.target_source.matrix_file.empty()) {
        j["target"] = cfg.target_source.name;
    } else {
        j["target"] = {{"matrix_file", cfg.target_source.matrix_file}};
    }
    if (!cfg.spec_source.preset.empty()) {
        j["spec"] = {{"preset", cfg.spec_source.preset}, {"n_qubits", cfg.hamiltonian().n_qubits()}};
    } else {
        json terms = json::array();
        for (const auto &t : cfg.spec_source.terms) {
            terms.push_back(term_to_json(t));
        }
        j["spec"] = {{"n_qubits", cfg.hamiltonian().n_qubits()},
                     {"terms", terms},
                     {"heisenberg_only", cfg.spec_source.heisenberg_only}};
    }
    j["trotter"] = {{"steps", cfg.trotter.steps}, {"mode", to_string(cfg.trotter.mode)}};
    j["cost_mode"] = {{"kind", to_string(cfg.cost_mode.kind)}};
    if (cfg.cost_mode.kind == CostMode::Kind::HSSampled) {
        j["cost_mode"]["shots"] = cfg.cost_mode.shots;
        j["cost_mode"]["seed"] = cfg.cost_mode.seed;
    }
    const auto &o = cfg.optimizer;
    j["optimizer"] = {{"learning_rate", o.learning_rate},
                      {"max_iters", o.max_iters},
                      {"cost_tolerance", o.cost_tolerance},
                      {"grad_norm_tolerance", o.grad_norm_tolerance},
                      {"restarts", o.restarts},
                      {"init", init_to_json(o.init)}};
    if (cfg.theta) {
        j["theta"] = cfg.theta->values;
    }
    if (!cfg.output_dir.empty()) {
        j["output_dir"] = cfg.output_dir;
    }
    return j;
}

/// Parses and validates a config object; every error names its field.
inline ExperimentConfig parse_config(const json &j) {
    if (!j.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
    static const std::vector<std::string> known = {"target", "spec",  "trotter",   "cost_mode",
                                                   "optimizer", "theta", "output_dir"};
    for (const auto &[key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("config: unknown field '" + key + "'");
        }
    }
    ExperimentConfig cfg;

    // target
    if (!j.contains("target")) {
        throw ConfigError("target: missing");
    }
    const json &jt = j.at("target");
    try {
        if (jt.is_string()) {
            cfg.target_source.name = jt.get<std::string>();
            cfg.target = builtin_target(cfg.target_source.name);
        } else if (jt.is_object() && jt.contains("matrix_file") && jt.at("matrix_file").is_string()) {
            cfg.target_source.matrix_file = jt.at("matrix_file").get<std::string>();
            if (!std::filesystem::exists(cfg.target_source.matrix_file)) {
                throw ConfigError("target.matrix_file: file '" + cfg.target_source.matrix_file + "' does not exist");
            }
            cfg.target = target_from_file(cfg.target_source.matrix_file);
        } else if (jt.is_object() && jt.contains("name") && jt.at("name").is_string()) {
            cfg.target_source.name = jt.at("name").get<std::string>();
            cfg.target = builtin_target(cfg.target_source.name);
        } else {
            throw ConfigError("target: expected a builtin name or {\"matrix_file\": path}");
        }
    } catch (const ValidationError &e) {
        throw ConfigError(std::string("target: ") + e.what());
    } catch (const CapacityError &e) {
        throw ConfigError(std::string("target: ") + e.what());
    }
    const std::size_t n_target = cfg.target.n_qubits;

    // spec
    if (!j.contains("spec")) {
        throw ConfigError("spec: missing");
    }
    const json &js = j.at("spec");
    try {
        if (js.is_string() || (js.is_object() && js.contains("preset"))) {
            const std::string name = js.is_string() ? js.get<std::string>()
                                                    : detail::get_field<std::string>(js, "preset", "spec", "");
            std::size_t n = preset_qubits(name).value_or(n_target);
            if (js.is_object() && js.contains("n_qubits")) {
                n = detail::get_field<std::size_t>(js, "n_qubits", "spec", n);
            }
            cfg.spec_source.preset = name;
            cfg.spec = standard_spec(name, n);
        } else if (js.is_object() && js.contains("terms")) {
            const std::size_t n = detail::get_field<std::size_t>(js, "n_qubits", "spec", n_target);
            cfg.spec_source.heisenberg_only = detail::get_field<bool>(js, "heisenberg_only", "spec", false);
            const json &terms = js.at("terms");
            if (!terms.is_array()) {
                throw ConfigError("spec.terms: expected an array");
            }
            for (std::size_t k = 0; k < terms.size(); ++k) {
                cfg.spec_source.terms.push_back(term_from_json(terms[k], "spec.terms[" + std::to_string(k) + "]"));
            }
            cfg.spec = HamiltonianSpec(n, cfg.spec_source.terms, cfg.spec_source.heisenberg_only);
        } else {
            throw ConfigError("spec: expected a preset name, {\"preset\": ...} or {\"n_qubits\": n, \"terms\": [...]}");
        }
    } catch (const ValidationError &e) {
        throw ConfigError(std::string("spec: ") + e.what());
    }
    if (cfg.spec->n_qubits() != n_target) {
        throw ConfigError("spec: Hamiltonian acts on " + std::to_string(cfg.spec->n_qubits()) +
                          " qubits but target '" + cfg.target.name + "' acts on " + std::to_string(n_target));
    }
    if (n_target > 4) {
        throw ConfigError("target: at most 4 qubits are supported (the Hilbert-Schmidt test needs 2n <= 8)");
    }

    // trotter
    if (j.contains("trotter")) {
        const json &jr = j.at("trotter");
        if (!jr.is_object()) {
            throw ConfigError("trotter: expected an object");
        }
        const auto steps = detail::get_field<long long>(jr, "steps", "trotter", 6);
        if (steps < 1) {
            throw ConfigError("trotter.steps: must be >= 1, got " + std::to_string(steps));
        }
        cfg.trotter.steps = static_cast<std::size_t>(steps);
        try {
            cfg.trotter.mode = parse_trotter_mode(detail::get_field<std::string>(jr, "mode", "trotter", "primitive"));
        } catch (const ValidationError &e) {
            throw ConfigError(std::string("trotter.mode: ") + e.what());
        }
    }

    // cost_mode
    if (j.contains("cost_mode")) {
        const json &jc = j.at("cost_mode");
        try {
            if (jc.is_string()) {
                cfg.cost_mode.kind = parse_cost_kind(jc.get<std::string>());
            } else if (jc.is_object()) {
                cfg.cost_mode.kind = parse_cost_kind(detail::get_field<std::string>(jc, "kind", "cost_mode", "exact"));
                cfg.cost_mode.shots = detail::get_field<std::size_t>(jc, "shots", "cost_mode", 100000);
                cfg.cost_mode.seed = detail::get_field<std::uint64_t>(jc, "seed", "cost_mode", 0);
            } else {
                throw ConfigError("cost_mode: expected a mode name or an object");
            }
        } catch (const ValidationError &e) {
            throw ConfigError(std::string("cost_mode: ") + e.what());
        }
        if (cfg.cost_mode.kind == CostMode::Kind::HSSampled && cfg.cost_mode.shots < 1) {
            throw ConfigError("cost_mode.shots: must be >= 1");
        }
    }

    // theta
    if (j.contains("theta")) {
        cfg.theta = ParamVector(detail::get_doubles(j.at("theta"), "theta"));
        if (cfg.theta->size() != cfg.spec->size()) {
            throw ConfigError("theta: has " + std::to_string(cfg.theta->size()) + " values but the spec has " +
                              std::to_string(cfg.spec->size()) + " terms");
        }
    }

    // optimizer
    if (j.contains("optimizer")) {
        const json &jo = j.at("optimizer");
        if (!jo.is_object()) {
            throw ConfigError("optimizer: expected an object");
        }
        auto &o = cfg.optimizer;
        o.learning_rate = detail::get_field<double>(jo, "learning_rate", "optimizer", o.learning_rate);
        o.max_iters = detail::get_field<std::size_t>(jo, "max_iters", "optimizer", o.max_iters);
        o.cost_tolerance = detail::get_field<double>(jo, "cost_tolerance", "optimizer", o.cost_tolerance);
        o.grad_norm_tolerance =
            detail::get_field<double>(jo, "grad_norm_tolerance", "optimizer", o.grad_norm_tolerance);
        o.restarts = detail::get_field<std::size_t>(jo, "restarts", "optimizer", o.restarts);
        if (jo.contains("init")) {
            const json &ji = jo.at("init");
            const std::string kind = ji.is_string() ? ji.get<std::string>()
                                                    : detail::get_field<std::string>(ji, "kind", "optimizer.init", "");
            if (kind == "zeros") {
                o.init = InitZeros{};
            } else if (kind == "uniform") {
                InitUniform u;
                if (ji.is_object()) {
                    u.lo = detail::get_field<double>(ji, "lo", "optimizer.init", u.lo);
                    u.hi = detail::get_field<double>(ji, "hi", "optimizer.init", u.hi);
                    u.seed = detail::get_field<std::uint64_t>(ji, "seed", "optimizer.init", u.seed);
                }
                o.init = u;
            } else if (kind == "explicit") {
                if (!ji.is_object() || !ji.contains("theta")) {
                    throw ConfigError("optimizer.init.theta: missing for explicit init");
                }
                o.init = InitExplicit{ParamVector(detail::get_doubles(ji.at("theta"), "optimizer.init.theta"))};
            } else if (kind == "published") {
                auto p = published_params(cfg.spec_source.preset);
                if (!p) {
                    throw ConfigError("optimizer.init: 'published' needs the fig4a or fig4b preset");
                }
                o.init = InitExplicit{*p};
            } else {
                throw ConfigError("optimizer.init.kind: expected zeros, uniform, explicit or published, got '" + kind +
                                  "'");
            }
            if (const auto *e = std::get_if<InitExplicit>(&o.init); e && e->theta.size() != cfg.spec->size()) {
                throw ConfigError("optimizer.init.theta: has " + std::to_string(e->theta.size()) +
                                  " values but the spec has " + std::to_string(cfg.spec->size()) + " terms");
            }
        }
        try {
            o.validate();
        } catch (const ValidationError &e) {
            throw ConfigError(std::string("optimizer: ") + e.what());
        }
    }

    cfg.output_dir = detail::get_field<std::string>(j, "output_dir", "config", "");
    return cfg;
}

inline ExperimentConfig parse_config_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

inline ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

// ---------------------------------------------------------------------------

struct ResultRecord {
    json config;
    std::string command;
    std::vector<std::string> term_labels;
    ParamVector final_theta;
    double final_cost = 1.0;
    double trotterized_fidelity = 0.0;
    double exact_fidelity = 0.0;
    std::size_t two_qubit_gate_count = 0;
    ConditionsReport conditions;
    std::string termination;
    std::size_t iterations = 0;
    std::size_t restart_index = 0;
    std::vector<double> run_costs;
    bool diverged = false;
    std::string trace_file;
    double wall_time_seconds = 0.0;
};

inline json record_to_json(const ResultRecord &r) {
    return {{"command", r.command},
            {"config", r.config},
            {"terms", r.term_labels},
            {"final_theta", r.final_theta.values},
            {"final_cost", r.final_cost},
            {"trotterized_fidelity", r.trotterized_fidelity},
            {"exact_fidelity", r.exact_fidelity},
            {"two_qubit_gate_count", r.two_qubit_gate_count},
            {"conditions",
             {{"physical_ok", r.conditions.physical_ok},
              {"nonphysical_weight", r.conditions.nonphysical_weight},
              {"commutator_norm", r.conditions.commutator_norm},
              {"eigdiff_max_deviation", r.conditions.eigdiff_max_deviation}}},
            {"termination", r.termination},
            {"iterations", r.iterations},
            {"restart_index", r.restart_index},
            {"run_costs", r.run_costs},
            {"diverged", r.diverged},
            {"trace_file", r.trace_file},
            {"wall_time_seconds", r.wall_time_seconds}};
}

inline ResultRecord record_from_json(const json &j) {
    try {
        ResultRecord r;
        r.command = j.at("command").get<std::string>();
        r.config = j.at("config");
        r.term_labels = j.at("terms").get<std::vector<std::string>>();
        r.final_theta = ParamVector(j.at("final_theta").get<std::vector<double>>());
        r.final_cost = j.at("final_cost").get<double>();
        r.trotterized_fidelity = j.at("trotterized_fidelity").get<double>();
        r.exact_fidelity = j.at("exact_fidelity").get<double>();
        r.two_qubit_gate_count = j.at("two_qubit_gate_count").get<std::size_t>();
        const auto &c = j.at("conditions");
        r.conditions.physical_ok = c.at("physical_ok").get<bool>();
        r.conditions.nonphysical_weight = c.at("nonphysical_weight").get<double>();
        r.conditions.commutator_norm = c.at("commutator_norm").get<double>();
        r.conditions.eigdiff_max_deviation = c.at("eigdiff_max_deviation").get<double>();
        r.termination = j.at("termination").get<std::string>();
        r.iterations = j.at("iterations").get<std::size_t>();
        r.restart_index = j.at("restart_index").get<std::size_t>();
        r.run_costs = j.at("run_costs").get<std::vector<double>>();
        r.diverged = j.at("diverged").get<bool>();
        r.trace_file = j.at("trace_file").get<std::string>();
        r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
        return r;
    } catch (const json::exception &e) {
        throw ConfigError(std::string("result record: ") + e.what());
    }
}

/// Fills the fidelity, gate-count and condition fields for `theta`.
inline void evaluate_into(ResultRecord &rec, const TargetGate &target, const HamiltonianSpec &spec,
                          const ParamVector &theta, const TrotterConfig &trotter) {
    const Circuit circuit = trotterize(spec, theta, trotter);
    const ComplexMatrix h = hamiltonian_matrix(spec, theta);
    rec.final_theta = theta;
    rec.term_labels.clear();
    for (const auto &t : spec.terms()) {
        rec.term_labels.push_back(t.label());
    }
    rec.trotterized_fidelity = std::min(1.0, operator_fidelity(target.matrix, circuit_unitary(circuit)));
    rec.exact_fidelity = std::min(1.0, operator_fidelity(target.matrix, expm_hermitian(h, 1.0)));
    rec.two_qubit_gate_count = two_qubit_gate_count(circuit);
    rec.conditions = check_conditions(h, target.matrix);
}

inline void write_text_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << text;
}

/// Optimises, evaluates both fidelities and, when output_dir is set, writes
/// `result.json` and `trace.csv` there.
inline ResultRecord cmd_synthesize(const ExperimentConfig &cfg, const std::string &stem = "") {
    const auto start = std::chrono::steady_clock::now();
    const auto trace = minimize(cfg.hamiltonian(), cfg.target.matrix, cfg.trotter, cfg.optimizer, cfg.cost_mode);

    ResultRecord rec;
    rec.command = "synthesize";
    rec.config = config_to_json(cfg);
    evaluate_into(rec, cfg.target, cfg.hamiltonian(), trace.final_theta, cfg.trotter);
    rec.final_cost = trace.final_cost;
    rec.termination = to_string(trace.termination);
    rec.iterations = trace.iterations.size();
    rec.restart_index = trace.restart_index;
    rec.run_costs = trace.run_costs;
    rec.diverged = trace.diverged;

    if (!cfg.output_dir.empty()) {
        const std::filesystem::path dir(cfg.output_dir);
        const std::string base = stem.empty() ? "" : stem + "_";
        rec.trace_file = base + "trace.csv";
        std::ostringstream csv;
        write_trace_csv(csv, trace);
        write_text_file(dir / rec.trace_file, csv.str());
    }
    rec.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!cfg.output_dir.empty()) {
        const std::string base = stem.empty() ? "" : stem + "_";
        write_text_file(std::filesystem::path(cfg.output_dir) / (base + "result.json"),
                        record_to_json(rec).dump(2) + "\n");
    }
    return rec;
}

/// Evaluates given parameters without optimising.
inline ResultRecord cmd_evaluate(const TargetGate &target, const HamiltonianSpec &spec, const ParamVector &theta,
                                 std::size_t steps, TrotterMode mode = TrotterMode::Primitive) {
    const auto start = std::chrono::steady_clock::now();
    spec.check_params(theta);
    if (spec.n_qubits() != target.n_qubits) {
        throw ValidationError("evaluate: spec acts on " + std::to_string(spec.n_qubits()) + " qubits, target on " +
                              std::to_string(target.n_qubits));
    }
    ResultRecord rec;
    rec.command = "evaluate";
    const TrotterConfig trotter{steps, mode};
    evaluate_into(rec, target, spec, theta, trotter);
    rec.final_cost = trace_cost(target.matrix, circuit_unitary(trotterize(spec, theta, trotter)));
    rec.termination = "none";
    rec.run_costs = {rec.final_cost};
    rec.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

/// Config-driven evaluate; theta comes from the config or the preset's
/// published values.
inline ResultRecord cmd_evaluate(const ExperimentConfig &cfg) {
    std::optional<ParamVector> theta = cfg.theta;
    if (!theta) {
        theta = published_params(cfg.spec_source.preset);
    }
    if (!theta) {
        throw ConfigError("theta: evaluate needs explicit parameters (or the fig4a / fig4b preset)");
    }
    auto rec = cmd_evaluate(cfg.target, cfg.hamiltonian(), *theta, cfg.trotter.steps, cfg.trotter.mode);
    ExperimentConfig echo = cfg;
    echo.theta = theta;
    rec.config = config_to_json(echo);
    if (!cfg.output_dir.empty()) {
        write_text_file(std::filesystem::path(cfg.output_dir) / "result.json", record_to_json(rec).dump(2) + "\n");
    }
    return rec;
}

struct SweepResult {
    std::vector<std::size_t> steps;
    std::vector<ResultRecord> records;
};

inline void write_sweep_csv(std::ostream &out, const SweepResult &s) {
    out << "m,exact_fidelity,trotterized_fidelity,final_cost\n";
    const auto old_precision = out.precision(17);
    for (std::size_t k = 0; k < s.records.size(); ++k) {
        out << s.steps[k] << ',' << s.records[k].exact_fidelity << ',' << s.records[k].trotterized_fidelity << ','
            << s.records[k].final_cost << '\n';
    }
    out.precision(old_precision);
}

/// Re-optimises (or re-evaluates the config's parameters) for each step count.
inline SweepResult cmd_sweep_trotter(const ExperimentConfig &cfg, const std::vector<std::size_t> &m_values,
                                     bool reoptimize = true) {
    if (m_values.empty()) {
        throw ValidationError("sweep-trotter: need at least one step count");
    }
    SweepResult out;
    for (auto m : m_values) {
        ExperimentConfig c = cfg;
        c.trotter.steps = m;
        if (reoptimize) {
            out.records.push_back(cmd_synthesize(c, "m" + std::to_string(m)));
        } else {
            ExperimentConfig e = c;
            e.output_dir.clear();
            out.records.push_back(cmd_evaluate(e));
        }
        out.steps.push_back(m);
    }
    if (!cfg.output_dir.empty()) {
        std::ostringstream csv;
        write_sweep_csv(csv, out);
        write_text_file(std::filesystem::path(cfg.output_dir) / "sweep.csv", csv.str());
        json arr = json::array();
        for (const auto &r : out.records) {
            arr.push_back(record_to_json(r));
        }
        write_text_file(std::filesystem::path(cfg.output_dir) / "sweep.json", arr.dump(2) + "\n");
    }
    return out;
}

// ---------------------------------------------------------------------------

using GradientFunction =
    std::function<ParamVector(const HamiltonianSpec &, const ParamVector &, const TrotterConfig &, const ComplexMatrix &)>;

struct GradcheckMismatch {
    std::size_t point = 0;
    std::size_t component = 0;
    double shift = 0.0;
    double finite_difference = 0.0;
    double relative_error = 0.0;
};

struct GradcheckReport {
    std::size_t points = 0;
    double max_relative_error = 0.0;
    std::vector<GradcheckMismatch> mismatches;
    [[nodiscard]] bool passed() const { return mismatches.empty(); }
    /// Process exit status for the gradcheck command.
    [[nodiscard]] int exit_status() const { return passed() ? 0 : 1; }
};

inline constexpr double kGradcheckRelTol = 1e-4;
inline constexpr double kGradcheckAbsGuard = 1e-7;

/// Componentwise relative error. Components whose magnitude is below the
/// absolute guard are judged by absolute difference instead.
inline double gradient_relative_error(double a, double b) {
    const double diff = std::abs(a - b);
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale < kGradcheckAbsGuard) {
        return diff < kGradcheckAbsGuard ? 0.0 : 1.0;
    }
    return diff / scale;
}

/// Compares `gradient` against central differences of the exact-trace cost
/// at `points` seeded parameter vectors drawn from U(-pi, pi).
inline GradcheckReport cmd_gradcheck(const HamiltonianSpec &spec, const ComplexMatrix &u_target, std::size_t steps,
                                     std::uint64_t seed, const GradientFunction &gradient = {},
                                     std::size_t points = 5, double fd_step = 1e-5) {
    const GradientFunction grad_fn = gradient ? gradient : GradientFunction([](const auto &s, const auto &t,
                                                                               const auto &c, const auto &u) {
        return gradient_shift(s, t, c, u);
    });
    const TrotterConfig cfg{steps, TrotterMode::Primitive};
    GradcheckReport report;
    report.points = points;
    const CostFunction cost_fn = [&](const ParamVector &theta) {
        return trace_cost(u_target, circuit_unitary(trotterize(spec, theta, cfg)));
    };
    for (std::size_t p = 0; p < points; ++p) {
        const ParamVector theta = detail::initial_params(InitUniform{-kPi, kPi, seed}, spec.size(), p);
        const ParamVector shift = grad_fn(spec, theta, cfg, u_target);
        const ParamVector fd = gradient_fd(cost_fn, theta, fd_step);
        for (std::size_t j = 0; j < spec.size(); ++j) {
            const double rel = gradient_relative_error(shift[j], fd[j]);
            report.max_relative_error = std::max(report.max_relative_error, rel);
            if (!(rel < kGradcheckRelTol)) {
                report.mismatches.push_back({p, j, shift[j], fd[j], rel});
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

/// Pinned configs for `reproduce toffoli` and `reproduce parity`.
inline json reproduce_config_json(std::string_view which) {
    if (which == "toffoli") {
        return json::parse(R"({
            "target": "toffoli",
            "spec": {"preset": "full_general", "n_qubits": 3},
            "trotter": {"steps": 6, "mode": "primitive"},
            "cost_mode": "exact",
            "optimizer": {
                "learning_rate": 0.3,
                "max_iters": 500,
                "cost_tolerance": 1e-4,
                "grad_norm_tolerance": 1e-6,
                "restarts": 9,
                "init": {"kind": "uniform", "lo": -1.0, "hi": 1.0, "seed": 2024}
            },
            "output_dir": "reproduce_toffoli"
        })");
    }
    if (which == "parity") {
        return json::parse(R"({
            "target": "parity4",
            "spec": {"preset": "fig4b"},
            "trotter": {"steps": 5, "mode": "primitive"},
            "cost_mode": "exact",
            "optimizer": {
                "learning_rate": 0.1,
                "max_iters": 500,
                "cost_tolerance": 1e-4,
                "grad_norm_tolerance": 1e-6,
                "restarts": 19,
                "init": {"kind": "uniform", "lo": -3.141592653589793, "hi": 3.141592653589793, "seed": 2024}
            },
            "output_dir": "reproduce_parity"
        })");
    }
    throw ConfigError("reproduce: unknown recipe '" + std::string(which) + "' (expected toffoli or parity)");
}

} // namespace automata
