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

// automata: synthesize, evaluate, sweep-trotter, gradcheck, reproduce.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "automata/experiment.hpp"

namespace {

using automata::json;

struct Overrides {
    std::string config_path;
    std::string target;
    std::string preset;
    std::optional<std::size_t> steps;
    std::string trotter_mode;
    std::string cost_mode;
    std::optional<std::size_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> restarts;
    std::optional<std::size_t> max_iters;
    std::optional<double> learning_rate;
    std::vector<double> theta;
    std::string out;

    void attach(CLI::App *app, bool with_config = true) {
        if (with_config) {
            app->add_option("--config", config_path, "JSON experiment config");
        }
        app->add_option("--target", target, "builtin target (toffoli, fredkin, qft3, parity4)");
        app->add_option("--preset", preset, "spec preset (full_heisenberg, full_general, fig4a, fig4b)");
        app->add_option("--steps,-m", steps, "Trotter steps");
        app->add_option("--trotter-mode", trotter_mode, "primitive or decomposed");
        app->add_option("--cost-mode", cost_mode, "exact, hst or hst-sampled");
        app->add_option("--shots", shots, "shots for hst-sampled");
        app->add_option("--seed", seed, "seed for init and sampling");
        app->add_option("--restarts", restarts, "extra uniform-init runs");
        app->add_option("--max-iters", max_iters, "iterations per run");
        app->add_option("--lr", learning_rate, "learning rate");
        app->add_option("--theta", theta, "explicit parameters");
        app->add_option("--out", out, "output directory");
    }

    [[nodiscard]] json apply(json j) const {
        if (!target.empty()) {
            j["target"] = target;
        }
        if (!preset.empty()) {
            j["spec"] = preset;
        }
        if (steps) {
            j["trotter"]["steps"] = *steps;
        }
        if (!trotter_mode.empty()) {
            j["trotter"]["mode"] = trotter_mode;
        }
        if (!cost_mode.empty() || shots || seed) {
            json cm = j.contains("cost_mode") && j["cost_mode"].is_object() ? j["cost_mode"] : json::object();
            if (j.contains("cost_mode") && j["cost_mode"].is_string()) {
                cm["kind"] = j["cost_mode"];
            }
            if (!cost_mode.empty()) {
                cm["kind"] = cost_mode;
            }
            if (shots) {
                cm["shots"] = *shots;
            }
            if (seed) {
                cm["seed"] = *seed;
            }
            j["cost_mode"] = cm;
        }
        if (seed) {
            json &init = j["optimizer"]["init"];
            if (init.is_null()) {
                init = {{"kind", "uniform"}};
            }
            if (init.is_object() && init.value("kind", "") == "uniform") {
                init["seed"] = *seed;
            }
        }
        if (restarts) {
            j["optimizer"]["restarts"] = *restarts;
        }
        if (max_iters) {
            j["optimizer"]["max_iters"] = *max_iters;
        }
        if (learning_rate) {
            j["optimizer"]["learning_rate"] = *learning_rate;
        }
        if (!theta.empty()) {
            j["theta"] = theta;
        }
        if (!out.empty()) {
            j["output_dir"] = out;
        }
        return j;
    }

    [[nodiscard]] automata::ExperimentConfig load() const {
        json j = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                throw automata::ConfigError("cannot open config file '" + config_path + "'");
            }
            try {
                j = json::parse(in);
            } catch (const json::parse_error &e) {
                throw automata::ConfigError("config '" + config_path + "' is not valid JSON: " + e.what());
            }
        }
        return automata::parse_config(apply(j));
    }
};

void print_summary(const automata::ResultRecord &r) {
    std::cout << "trotterized_fidelity " << r.trotterized_fidelity << "\n"
              << "exact_fidelity       " << r.exact_fidelity << "\n"
              << "final_cost           " << r.final_cost << "\n"
              << "two_qubit_gates      " << r.two_qubit_gate_count << "\n"
              << "termination          " << r.termination << " after " << r.iterations << " iterations (run "
              << r.restart_index << ")\n"
              << "conditions           physical=" << (r.conditions.physical_ok ? "yes" : "no")
              << " commutator=" << r.conditions.commutator_norm
              << " eigdiff=" << r.conditions.eigdiff_max_deviation << "\n";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Gate synthesis with Trotterized time-independent Hamiltonians"};
    app.require_subcommand(1);

    Overrides syn;
    auto *synth = app.add_subcommand("synthesize", "optimise Hamiltonian parameters for a target gate");
    syn.attach(synth);

    Overrides ev;
    auto *evaluate = app.add_subcommand("evaluate", "evaluate fidelities of given parameters");
    ev.attach(evaluate);

    Overrides sw;
    std::vector<std::size_t> sweep_steps{1, 2, 3, 4, 5, 6, 8, 10};
    bool no_reoptimize = false;
    auto *sweep = app.add_subcommand("sweep-trotter", "fidelity against the number of Trotter steps");
    sw.attach(sweep);
    sweep->add_option("--m-values", sweep_steps, "step counts to sweep");
    sweep->add_flag("--no-reoptimize", no_reoptimize, "evaluate the config's theta instead of re-optimising");

    Overrides gc;
    std::size_t gc_points = 5;
    auto *gradcheck = app.add_subcommand("gradcheck", "compare parameter-shift and finite-difference gradients");
    gc.attach(gradcheck);
    gradcheck->add_option("--points", gc_points, "number of seeded parameter points");

    std::string recipe;
    std::string reproduce_out;
    std::optional<std::size_t> reproduce_restarts;
    auto *reproduce = app.add_subcommand("reproduce", "run a pinned synthesis recipe");
    reproduce->add_option("recipe", recipe, "toffoli or parity")->required()->check(CLI::IsMember({"toffoli", "parity"}));
    reproduce->add_option("--out", reproduce_out, "output directory");
    reproduce->add_option("--restarts", reproduce_restarts, "override the pinned restart budget");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) {
            const auto cfg = syn.load();
            const auto rec = automata::cmd_synthesize(cfg);
            print_summary(rec);
            if (!cfg.output_dir.empty()) {
                std::cout << "wrote " << cfg.output_dir << "/result.json\n";
            }
            return 0;
        }
        if (*evaluate) {
            const auto cfg = ev.load();
            const auto rec = automata::cmd_evaluate(cfg);
            print_summary(rec);
            std::cout << record_to_json(rec).dump(2) << "\n";
            return 0;
        }
        if (*sweep) {
            const auto cfg = sw.load();
            const auto result = automata::cmd_sweep_trotter(cfg, sweep_steps, !no_reoptimize);
            automata::write_sweep_csv(std::cout, result);
            return 0;
        }
        if (*gradcheck) {
            const auto cfg = gc.load();
            const std::uint64_t seed = gc.seed.value_or(0);
            const auto report = automata::cmd_gradcheck(cfg.hamiltonian(), cfg.target.matrix, cfg.trotter.steps, seed,
                                                        {}, gc_points);
            for (const auto &mm : report.mismatches) {
                std::cout << "point " << mm.point << " component " << mm.component << ": shift " << mm.shift
                          << " fd " << mm.finite_difference << " rel " << mm.relative_error << "\n";
            }
            std::cout << "gradcheck " << (report.passed() ? "PASS" : "FAIL") << " points=" << report.points
                      << " max_relative_error=" << report.max_relative_error << "\n";
            return report.exit_status();
        }
        if (*reproduce) {
            json j = automata::reproduce_config_json(recipe);
            if (!reproduce_out.empty()) {
                j["output_dir"] = reproduce_out;
            }
            if (reproduce_restarts) {
                j["optimizer"]["restarts"] = *reproduce_restarts;
            }
            const auto cfg = automata::parse_config(j);
            const auto rec = automata::cmd_synthesize(cfg);
            print_summary(rec);
            std::cout << "wrote " << cfg.output_dir << "/result.json\n";
            if (recipe == "parity") {
                const auto table =
                    automata::parity_truth_table(automata::circuit_unitary(automata::trotterize(
                        cfg.hamiltonian(), rec.final_theta, cfg.trotter)));
                for (const auto &row : table) {
                    std::cout << "inputs " << ((row.inputs >> 2) & 1U) << ((row.inputs >> 1) & 1U)
                              << (row.inputs & 1U) << " parity " << row.expected_parity << " measured "
                              << row.measured << " p=" << row.probability << "\n";
                }
            }
            return 0;
        }
    } catch (const automata::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
