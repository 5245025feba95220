// Copyright 2026 The lossybs Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "lossybs/circuit/circuit_json.h"
#include "lossybs/cli/commands.h"
#include "lossybs/cli/config.h"
#include "lossybs/cli/sample_io.h"
#include "lossybs/cli/validation.h"
#include "lossybs/errors.h"
#include "lossybs/thermal/thermal_sampler.h"

using namespace lossybs;
using namespace lossybs::cli;
namespace fs = std::filesystem;

namespace {

const double kPi = std::acos(-1.0);

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("lossybs-cli-") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    fs::path write(const std::string &name, const std::string &text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }
    std::string read(const fs::path &p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    }
    fs::path hom_circuit() {
        const LayeredCircuit c{2, {Layer{{}, {CouplerGate{0, kPi / 4, 0.0, 1.0}}, 1.0}}};
        save_circuit(c, dir_ / "hom.json");
        return dir_ / "hom.json";
    }
    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ConfigParsesAndResolvesPaths) {
    const fs::path p = write("run.json", R"({"command": "sample", "circuit": "c.json", "params": {"photons": 2,
        "epsilon": 0.05}, "samples": 10, "seed": 7, "out": "s.jsonl", "mode": "oracle", "format": "csv"})");
    const RunConfig cfg = load_config(p);
    EXPECT_EQ(cfg.command, Command::Sample);
    EXPECT_EQ(cfg.circuit_path, dir_ / "c.json");
    EXPECT_EQ(cfg.output_path, dir_ / "s.jsonl");
    EXPECT_EQ(cfg.params.photons, 2);
    EXPECT_EQ(cfg.seed, 7u);
    EXPECT_EQ(cfg.mode, SampleMode::Oracle);
    EXPECT_EQ(cfg.format, SampleFormat::Csv);
}

TEST_F(CliTest, ConfigErrorsNameFieldOrLine) {
    try {
        config_from_json(nlohmann::json::parse(R"({"params": {"epsilon": "small"}})"));
        FAIL();
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find("params.epsilon"), std::string::npos) << e.what();
    }
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"sampels": 3})")), InputError);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"mode": "fast"})")), InputError);
    const fs::path bad = write("bad.json", "{\n  \"seed\": 1,\n  \"samples\": ,\n}");
    try {
        load_config(bad);
        FAIL();
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST_F(CliTest, EnvOverrides) {
    RunConfig cfg;
    setenv("LOSSYBS_SEED", "123", 1);
    setenv("LOSSYBS_MODE", "thermal", 1);
    setenv("LOSSYBS_WORKERS", "3", 1);
    apply_env_overrides(cfg);
    unsetenv("LOSSYBS_SEED");
    unsetenv("LOSSYBS_MODE");
    unsetenv("LOSSYBS_WORKERS");
    EXPECT_EQ(cfg.seed, 123u);
    EXPECT_EQ(cfg.mode, SampleMode::Thermal);
    EXPECT_EQ(cfg.workers, 3);
    setenv("LOSSYBS_SAMPLES", "many", 1);
    EXPECT_THROW(apply_env_overrides(cfg), InputError);
    unsetenv("LOSSYBS_SAMPLES");
}

TEST_F(CliTest, PlanReportsThermalizationThreshold) {
    RunConfig cfg = config_from_json(nlohmann::json::parse(
        R"({"params": {"photons": 100, "modes": 10000, "epsilon": 1e-6, "x": 1e-3, "tau": 0.999, "depth": 10}})"));
    const nlohmann::json r = run_plan(cfg);
    EXPECT_NEAR(r["thermalization_depth"].get<double>(), 9205.7, 0.1);
    EXPECT_EQ(r["regime"], "tensor_network");
    EXPECT_FALSE(r.contains("algebraic"));
}

TEST_F(CliTest, PlanUnreachableAndThermal) {
    RunConfig cfg;
    cfg.params.photons = 10;
    cfg.params.modes = 100;
    cfg.params.tau = 1.0;
    cfg.params.depth = 50;
    nlohmann::json r = run_plan(cfg);
    EXPECT_EQ(r["note"], "thermal regime unreachable");
    EXPECT_TRUE(r["d_star"].is_null());
    cfg.params.tau = 0.9;
    cfg.algebraic = AlgebraicLossParams{1.0, 2.0};
    r = run_plan(cfg);
    EXPECT_EQ(r["regime"], "thermal");
    EXPECT_TRUE(r["algebraic"]["gamma_over_beta_below_two"].get<bool>());
}

TEST_F(CliTest, OracleHomHasNoCoincidences) {
    RunConfig cfg;
    cfg.command = Command::Sample;
    cfg.circuit_path = hom_circuit();
    cfg.params.photons = 2;
    cfg.photons_given = true;
    cfg.mode = SampleMode::Oracle;
    cfg.samples = 1000;
    cfg.seed = 3;
    cfg.output_path = dir_ / "hom.jsonl";
    const SampleRunResult r = run_sample(cfg, std::cout);
    EXPECT_EQ(r.written, 1000u);
    const SampleFile f = read_samples(cfg.output_path, SampleFormat::Jsonl);
    ASSERT_EQ(f.samples.size(), 1000u);
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        EXPECT_NE(f.samples[i].counts, (std::vector<int>{1, 1}));
        EXPECT_EQ(f.regimes[i], "oracle");
    }
    const nlohmann::json meta = nlohmann::json::parse(read(dir_ / "hom.jsonl.meta.json"));
    EXPECT_EQ(meta["seed"], 3);
    EXPECT_EQ(meta["regime"], "oracle");
    EXPECT_TRUE(meta.contains("config_hash"));
    EXPECT_TRUE(meta["thresholds"].contains("d_star"));
}

TEST_F(CliTest, ThermalZeroLambdaIsVacuum) {
    RandomStream rng(1);
    save_circuit(random_brickwork(3, 2, 0.8, rng), dir_ / "c.json");
    RunConfig cfg;
    cfg.circuit_path = dir_ / "c.json";
    cfg.params.photons = 2;
    cfg.params.epsilon = 0.05;
    cfg.mode = SampleMode::Thermal;
    cfg.lambda = 0.0;
    cfg.samples = 50;
    cfg.format = SampleFormat::Csv;
    std::ostringstream out;
    run_sample(cfg, out);
    std::istringstream in(out.str());
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(line, "0,0,0");
        ++lines;
    }
    EXPECT_EQ(lines, 50);
}

TEST_F(CliTest, SameSeedByteIdentical) {
    RandomStream rng(2);
    save_circuit(random_brickwork(4, 3, 0.9, rng), dir_ / "c.json");
    for (SampleMode mode : {SampleMode::Auto, SampleMode::Thermal, SampleMode::Mps, SampleMode::Oracle,
                            SampleMode::Scattershot}) {
        std::string bytes[2];
        for (int run = 0; run < 2; ++run) {
            RunConfig cfg;
            cfg.circuit_path = dir_ / "c.json";
            cfg.params.photons = 2;
            cfg.params.epsilon = 0.05;
            cfg.mode = mode;
            cfg.scattershot_inner = SampleMode::Oracle;
            cfg.herald_lambda = 0.2;
            cfg.samples = 300;
            cfg.seed = 77;
            cfg.output_path = dir_ / ("out" + std::to_string(run) + ".jsonl");
            run_sample(cfg, std::cout);
            bytes[run] = read(cfg.output_path);
        }
        EXPECT_EQ(bytes[0], bytes[1]) << mode_name(mode);
        EXPECT_FALSE(bytes[0].empty());
    }
}

TEST_F(CliTest, WorkerCountChangesStreamButStaysReproducible) {
    RandomStream rng(3);
    save_circuit(random_brickwork(4, 2, 0.9, rng), dir_ / "c.json");
    RunConfig cfg;
    cfg.circuit_path = dir_ / "c.json";
    cfg.params.photons = 2;
    cfg.mode = SampleMode::Mps;
    cfg.samples = 400;
    cfg.workers = 3;
    std::ostringstream a, b;
    run_sample(cfg, a);
    run_sample(cfg, b);
    EXPECT_EQ(a.str(), b.str());
}

TEST_F(CliTest, NonUniformLossRejectedByMps) {
    RandomStream rng(4);
    LayeredCircuit c = random_brickwork(4, 2, 0.9, rng);
    c.layers[0].couplers[0].tau = 0.5;
    save_circuit(c, dir_ / "c.json");
    RunConfig cfg;
    cfg.circuit_path = dir_ / "c.json";
    cfg.params.photons = 2;
    cfg.mode = SampleMode::Mps;
    cfg.samples = 5;
    std::ostringstream out;
    try {
        run_sample(cfg, out);
        FAIL();
    } catch (const ModelError &e) {
        EXPECT_EQ(exit_code_for(e), kExitModel);
    }
    cfg.mode = SampleMode::Thermal;
    run_sample(cfg, out);
}

TEST_F(CliTest, MpsCapacitySurfacesCeiling) {
    RandomStream rng(5);
    save_circuit(random_brickwork(6, 4, 1.0, rng), dir_ / "c.json");
    RunConfig cfg;
    cfg.circuit_path = dir_ / "c.json";
    cfg.params.photons = 3;
    cfg.mode = SampleMode::Mps;
    cfg.max_bond = 2;
    cfg.samples = 5;
    std::ostringstream out;
    try {
        run_sample(cfg, out);
        FAIL();
    } catch (const CapacityError &e) {
        EXPECT_EQ(exit_code_for(e), kExitCapacity);
        EXPECT_NE(std::string(e.what()).find("ceiling 2"), std::string::npos);
    }
}

TEST_F(CliTest, StatsZeroMeansAndSelfReference) {
    const fs::path p = write("zeros.jsonl", "{\"n\":[0,0,0],\"regime\":\"thermal\"}\n{\"n\":[0,0,0],\"regime\":\"thermal\"}\n");
    RunConfig cfg;
    cfg.input_path = p;
    cfg.reference_path = p;
    const nlohmann::json r = run_stats(cfg);
    EXPECT_EQ(r["samples"], 2);
    for (double m : r["mean_photons"].get<std::vector<double>>()) EXPECT_EQ(m, 0.0);
    EXPECT_EQ(r["tvd"].get<double>(), 0.0);
    EXPECT_EQ(r["total_histogram"]["0"], 2);
}

TEST_F(CliTest, StatsThermalSingleModeMean) {
    const double lambda = 0.2;
    const ThermalSampler s(ComplexMatrix::Identity(1, 1), ThermalParams(lambda), 1, 0.01);
    const auto samples = s.sample_batch_serial(40000, RandomStream(6));
    {
        std::ofstream out(dir_ / "t.csv");
        for (const auto &x : samples) write_sample(out, x, SampleFormat::Csv, "thermal");
    }
    RunConfig cfg;
    cfg.input_path = dir_ / "t.csv";
    const nlohmann::json r = run_stats(cfg);
    const double var = lambda / ((1 - lambda) * (1 - lambda));
    EXPECT_NEAR(r["mean_photons"][0].get<double>(), 0.25, 3.0 * std::sqrt(var / samples.size()));
}

TEST_F(CliTest, StatsAgainstDistributionFile) {
    Distribution d;
    d.add(FockSample{{1, 0}}, 0.5);
    d.add(FockSample{{0, 1}}, 0.5);
    std::ofstream(dir_ / "ref.json") << distribution_to_json(d).dump();
    const fs::path p = write("s.jsonl", "{\"n\":[1,0]}\n{\"n\":[1,0]}\n");
    RunConfig cfg;
    cfg.input_path = p;
    cfg.reference_path = dir_ / "ref.json";
    EXPECT_NEAR(run_stats(cfg)["tvd"].get<double>(), 0.5, 1e-15);
}

TEST_F(CliTest, StatsParseErrorsCarryLineNumbers) {
    const fs::path p = write("bad.jsonl", "{\"n\":[0,1]}\n\n{\"n\":[0,\"x\"]}\n");
    RunConfig cfg;
    cfg.input_path = p;
    try {
        run_stats(cfg);
        FAIL();
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
    }
    const fs::path q = write("bad.csv", "0,1\n0,1,2\n");
    cfg.input_path = q;
    try {
        run_stats(cfg);
        FAIL();
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
    }
}

TEST_F(CliTest, ValidateDefaultSuitePasses) {
    RunConfig cfg;
    cfg.seed = 9;
    const nlohmann::json r = run_validate(cfg);
    EXPECT_EQ(r["failed"], 0) << r.dump(2);
    EXPECT_EQ(r["skipped"], 0);
    EXPECT_EQ(r["passed"], 13);
}

TEST_F(CliTest, ValidateWrongKappaFailsBudget) {
    ValidationOptions opts;
    opts.two_kappa_squared = 0.01;
    const CheckResult r = check_chi2_budget(opts);
    EXPECT_EQ(r.status, CheckStatus::Fail);
}

TEST_F(CliTest, ValidateBeyondOracleCapIsSkipped) {
    RunConfig cfg;
    cfg.validate_photons = 9;
    cfg.validate_samples = 1000;
    const nlohmann::json r = run_validate(cfg);
    int skipped = 0;
    for (const auto &c : r["checks"]) {
        if (c["status"] == "skipped") {
            ++skipped;
            EXPECT_TRUE(c["name"] == "thermal_sampler_end_to_end" || c["name"] == "lossy_input_equivalence");
        }
    }
    EXPECT_EQ(skipped, 2);
    EXPECT_EQ(r["failed"], 0);
}

TEST_F(CliTest, BinaryExitCodes) {
    const std::string bin = LOSSYBS_BINARY;
    auto run = [&](const std::string &args) {
        const int status = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    EXPECT_EQ(run("--command plan"), kExitOk);
    EXPECT_EQ(run("--command bogus"), kExitUsage);
    EXPECT_EQ(run("--no-such-flag"), kExitUsage);
    const fs::path bad = write("bad.json", "{\"seed\": }");
    EXPECT_EQ(run("--config " + bad.string()), kExitUsage);

    RandomStream rng(7);
    LayeredCircuit c = random_brickwork(4, 2, 0.9, rng);
    c.layers[0].couplers[0].tau = 0.5;
    save_circuit(c, dir_ / "uneven.json");
    const fs::path model = write("model.json", R"({"command": "sample", "circuit": "uneven.json", "mode": "mps",
        "params": {"photons": 2}, "samples": 3})");
    EXPECT_EQ(run("--config " + model.string()), kExitModel);

    save_circuit(random_brickwork(6, 4, 1.0, rng), dir_ / "deep.json");
    const fs::path cap = write("cap.json", R"({"command": "sample", "circuit": "deep.json", "mode": "mps",
        "params": {"photons": 3}, "samples": 3, "max_bond": 2})");
    EXPECT_EQ(run("--config " + cap.string()), kExitCapacity);

    const fs::path ok = write("ok.json", R"({"command": "sample", "circuit": "deep.json", "mode": "mps",
        "params": {"photons": 2}, "samples": 20, "out": "ok.jsonl"})");
    EXPECT_EQ(run("--config " + ok.string() + " --seed 4 --format csv"), kExitOk);
    EXPECT_TRUE(fs::exists(dir_ / "ok.jsonl.meta.json"));
}
