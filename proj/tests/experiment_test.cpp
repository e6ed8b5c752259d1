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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "automata/experiment.hpp"

namespace automata {
namespace {

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "automata_experiment_test" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string config_error(const std::string &text) {
    try {
        (void)parse_config_text(text);
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

TEST(ParseConfig, FullSchema) {
    const auto cfg = parse_config_text(R"({
        "target": "toffoli",
        "spec": {"n_qubits": 3, "terms": [{"local": [0, "z"]}, {"coupling": [2, 0, "y", "x"]}]},
        "trotter": {"steps": 4, "mode": "decomposed"},
        "cost_mode": {"kind": "hst-sampled", "shots": 500, "seed": 3},
        "optimizer": {"learning_rate": 0.2, "max_iters": 7, "cost_tolerance": 1e-3,
                      "grad_norm_tolerance": 1e-5, "restarts": 2,
                      "init": {"kind": "uniform", "lo": -1, "hi": 2, "seed": 9}},
        "theta": [0.1, 0.2],
        "output_dir": "out"
    })");
    EXPECT_EQ(cfg.target.name, "toffoli");
    ASSERT_EQ(cfg.hamiltonian().size(), 2U);
    EXPECT_EQ(cfg.hamiltonian().terms()[1], PauliTerm::coupling(0, 2, PauliAxis::X, PauliAxis::Y));
    EXPECT_EQ(cfg.trotter.steps, 4U);
    EXPECT_EQ(cfg.trotter.mode, TrotterMode::Decomposed);
    EXPECT_EQ(cfg.cost_mode.kind, CostMode::Kind::HSSampled);
    EXPECT_EQ(cfg.cost_mode.shots, 500U);
    EXPECT_DOUBLE_EQ(cfg.optimizer.learning_rate, 0.2);
    EXPECT_EQ(cfg.optimizer.restarts, 2U);
    const auto &u = std::get<InitUniform>(cfg.optimizer.init);
    EXPECT_EQ(u.seed, 9U);
    EXPECT_EQ(*cfg.theta, (ParamVector{0.1, 0.2}));

    // The echo parses back to the same config.
    const auto again = parse_config(config_to_json(cfg));
    EXPECT_EQ(config_to_json(again), config_to_json(cfg));
}

TEST(ParseConfig, PresetsAndPublishedInit) {
    const auto cfg = parse_config_text(
        R"({"target": "parity4", "spec": "fig4b", "optimizer": {"init": "published"}})");
    EXPECT_EQ(cfg.hamiltonian().n_qubits(), 4U);
    EXPECT_EQ(std::get<InitExplicit>(cfg.optimizer.init).theta, fig4b().theta);

    const auto gen = parse_config_text(R"({"target": "qft3", "spec": "full_general"})");
    EXPECT_EQ(gen.hamiltonian().size(), 36U);
}

TEST(ParseConfig, DiagnosticsNameTheField) {
    EXPECT_NE(config_error(R"({"target": "toffoli", "spec": "fig4b"})").find("spec"), std::string::npos);
    EXPECT_NE(config_error(R"({"target": "toffoli", "spec": {"preset": "full_general", "n_qubits": 2}})")
                  .find("qubits"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"target": "nope", "spec": "fig4a"})").find("target"), std::string::npos);
    EXPECT_NE(config_error(R"({"target": "toffoli", "spec": "fig4a", "trotter": {"steps": 0}})")
                  .find("trotter.steps"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"target": "toffoli", "spec": "fig4a", "optimizer": {"learning_rate": "fast"}})")
                  .find("optimizer.learning_rate"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"target": "toffoli", "spec": "fig4a", "theta": [1, 2]})").find("theta"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"target": "toffoli", "spec": "fig4a", "colour": 1})").find("colour"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"target": {"matrix_file": "/no/such/file"}, "spec": "fig4a"})")
                  .find("does not exist"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"target": "toffoli", "spec": {"n_qubits": 3, "terms": [{"local": [5, "z"]}]}})")
                  .find("spec"),
              std::string::npos);
    EXPECT_NE(config_error("{\"target\": \"toffoli\",\n \"spec\": }").find("line 2"), std::string::npos);
}

TEST(Evaluate, ZeroParametersAgainstToffoli) {
    const auto spec = full_general_spec(3);
    const auto rec = cmd_evaluate(builtin_target("toffoli"), spec, ParamVector::zeros(spec.size()), 6);
    EXPECT_NEAR(rec.exact_fidelity, 0.75, 1e-14);
    EXPECT_NEAR(rec.trotterized_fidelity, 0.75, 1e-14);
    EXPECT_EQ(rec.two_qubit_gate_count, 27U * 6U);
    EXPECT_THROW((void)cmd_evaluate(builtin_target("toffoli"), spec, {1.0}, 6), ValidationError);
}

TEST(Evaluate, PublishedParityParametersEmitRecord) {
    const auto p = fig4b();
    const auto rec = cmd_evaluate(builtin_target("parity4"), p.spec, p.theta, 5);
    EXPECT_GE(rec.exact_fidelity, 0.0);
    EXPECT_LE(rec.exact_fidelity, 1.0);
    EXPECT_GE(rec.trotterized_fidelity, 0.0);
    EXPECT_LE(rec.trotterized_fidelity, 1.0);
    EXPECT_TRUE(rec.conditions.physical_ok);
}

TEST(Synthesize, WritesOutputsAndIsDeterministic) {
    const auto dir = scratch("synth");
    json j = json::parse(R"({
        "target": "toffoli", "spec": "full_heisenberg", "trotter": {"steps": 2},
        "optimizer": {"max_iters": 20, "restarts": 1, "init": {"kind": "uniform", "seed": 4}}
    })");
    j["output_dir"] = dir.string();
    const auto cfg = parse_config(j);
    const auto a = cmd_synthesize(cfg);
    ASSERT_TRUE(std::filesystem::exists(dir / "result.json"));
    ASSERT_TRUE(std::filesystem::exists(dir / "trace.csv"));

    std::ifstream in(dir / "result.json");
    const auto loaded = record_from_json(json::parse(in));
    EXPECT_EQ(loaded.final_theta, a.final_theta);
    EXPECT_EQ(loaded.trotterized_fidelity, a.trotterized_fidelity);
    EXPECT_EQ(loaded.config, a.config);

    std::ifstream csv(dir / "trace.csv");
    const auto rows = read_trace_csv(csv);
    EXPECT_FALSE(rows.empty());
    EXPECT_EQ(rows.back().theta, a.final_theta);

    // Regenerated from its own echo.
    auto b = cmd_synthesize(parse_config(loaded.config));
    b.wall_time_seconds = a.wall_time_seconds;
    EXPECT_EQ(record_to_json(b), record_to_json(a));
}

TEST(ResultRecord, JsonRoundTrip) {
    const auto p = fig4a();
    auto rec = cmd_evaluate(builtin_target("toffoli"), p.spec, p.theta, 6);
    rec.config = {{"note", "x"}};
    const auto back = record_from_json(json::parse(record_to_json(rec).dump()));
    EXPECT_EQ(record_to_json(back), record_to_json(rec));
    EXPECT_THROW((void)record_from_json(json::object()), ConfigError);
}

TEST(Sweep, RowCountAndCommutingCase) {
    const auto dir = scratch("sweep");
    json j = json::parse(R"({
        "target": {"matrix_file": ""},
        "spec": {"n_qubits": 2, "terms": [{"coupling": [0, 1, "z", "z"]}]},
        "theta": [0.4]
    })");
    // Target exp(-i 0.9 ZZ) written to disk.
    const HamiltonianSpec zz(2, {PauliTerm::coupling(0, 1, PauliAxis::Z, PauliAxis::Z)});
    {
        std::ofstream out(dir / "target.txt");
        write_matrix(out, expm_hermitian(hamiltonian_matrix(zz, {0.9}), 1.0));
    }
    j["target"]["matrix_file"] = (dir / "target.txt").string();
    j["output_dir"] = dir.string();
    const auto cfg = parse_config(j);
    const auto sweep = cmd_sweep_trotter(cfg, {1, 2, 3, 5}, false);
    ASSERT_EQ(sweep.records.size(), 4U);
    for (const auto &r : sweep.records) {
        EXPECT_NEAR(r.exact_fidelity, sweep.records.front().exact_fidelity, 1e-10);
        EXPECT_NEAR(r.trotterized_fidelity, r.exact_fidelity, 1e-10);
    }
    std::ifstream csv(dir / "sweep.csv");
    std::string line;
    std::size_t rows = 0;
    std::getline(csv, line);
    EXPECT_EQ(line, "m,exact_fidelity,trotterized_fidelity,final_cost");
    while (std::getline(csv, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 4U);
    EXPECT_THROW((void)cmd_sweep_trotter(cfg, {}, false), ValidationError);
}

TEST(Gradcheck, PassesOnPresets) {
    EXPECT_EQ(cmd_gradcheck(fig4a().spec, toffoli_matrix(), 6, 1).exit_status(), 0);
    const HamiltonianSpec single(1, {PauliTerm::local(0, PauliAxis::Z)});
    const auto report =
        cmd_gradcheck(single, expm_hermitian(0.7 * pauli_matrix(PauliAxis::Z), 1.0), 1, 2);
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.points, 5U);
}

TEST(Gradcheck, CorruptedShiftRuleFails) {
    const GradientFunction corrupted = [](const HamiltonianSpec &s, const ParamVector &t, const TrotterConfig &c,
                                          const ComplexMatrix &u) {
        return cost_and_gradient_shift(s, t, c, u, kPi / 3).gradient;
    };
    const auto report = cmd_gradcheck(fig4a().spec, toffoli_matrix(), 6, 1, corrupted);
    EXPECT_FALSE(report.passed());
    EXPECT_EQ(report.exit_status(), 1);
    EXPECT_FALSE(report.mismatches.empty());
    EXPECT_GT(report.max_relative_error, 1e-4);
}

TEST(Gradcheck, RelativeErrorGuard) {
    EXPECT_EQ(gradient_relative_error(1e-9, -2e-9), 0.0);
    EXPECT_EQ(gradient_relative_error(0.0, 5e-7), 1.0);
    EXPECT_NEAR(gradient_relative_error(1.0, 1.001), 0.001 / 1.001, 1e-12);
}

TEST(Reproduce, PinnedConfigsParse) {
    const auto tof = parse_config(reproduce_config_json("toffoli"));
    EXPECT_EQ(tof.trotter.steps, 6U);
    EXPECT_EQ(tof.cost_mode.kind, CostMode::Kind::ExactTrace);
    EXPECT_LE(tof.optimizer.restarts, 10U);
    EXPECT_LE(tof.optimizer.max_iters, 500U);
    const auto par = parse_config(reproduce_config_json("parity"));
    EXPECT_EQ(par.trotter.steps, 5U);
    EXPECT_LE(par.optimizer.restarts, 20U);
    EXPECT_THROW((void)reproduce_config_json("fredkin"), ConfigError);
}

} // namespace
} // namespace automata
