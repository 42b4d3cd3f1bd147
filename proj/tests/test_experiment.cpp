#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "afdmsense/experiment.hpp"

using namespace afdmsense;

namespace {

ExperimentConfig sample_config() {
    ExperimentConfig cfg;
    cfg.waveform = Waveform::AFDM;
    cfg.n = 64;
    cfg.two_n_c1 = 4;
    cfg.c2 = 0.013;
    cfg.n_cp = 8;
    cfg.constellation = "qam16";
    cfg.pulse.enabled = true;
    cfg.pulse.m = 3;
    cfg.pulse.l = 2;
    cfg.pulse.rolloff = 0.35;
    cfg.grid = {-8, 8, 1, -4.0, 4.0, 0.5};
    cfg.trials = 100;
    cfg.seed = 9;
    return cfg;
}

}  // namespace

TEST_CASE("config JSON round-trip is idempotent") {
    const ExperimentConfig cfg = sample_config();
    const std::string once = cfg.to_json();
    const std::string twice = ExperimentConfig::from_json(once).to_json();
    CHECK(once == twice);

    // with a scenario block
    ExperimentConfig with_scenario = cfg;
    ScenarioRun run;
    Target strong, weak;
    strong.range_m = 156.25;
    strong.velocity_mps = 100;
    strong.mean_amp = 11.22;
    weak.range_m = 937.5;
    weak.velocity_mps = 100;
    weak.mean_amp = 1.0;
    run.config.targets = {strong, weak};
    run.snr_db = {-5.0, 0.0, 5.0};
    with_scenario.scenario = run;
    const std::string s1 = with_scenario.to_json();
    const std::string s2 = ExperimentConfig::from_json(s1).to_json();
    CHECK(s1 == s2);
}

TEST_CASE("config hash is stable and content-sensitive") {
    const ExperimentConfig cfg = sample_config();
    const std::string h1 = config_hash(cfg.to_json());
    const std::string h2 = config_hash(cfg.to_json());
    CHECK(h1 == h2);
    CHECK(h1.size() == 16);
    ExperimentConfig other = cfg;
    other.seed = 10;
    CHECK(config_hash(other.to_json()) != h1);
}

TEST_CASE("invalid config text is a ConfigError") {
    CHECK_THROWS_AS(ExperimentConfig::from_json("{not json"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"waveform":"fdm"})"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"pulse":{"type":"rc"}})"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_file("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("waveform resolution forces the chirp parameters") {
    ExperimentConfig cfg = sample_config();
    cfg.waveform = Waveform::OFDM;
    const AfdmConfig ofdm = cfg.make_afdm_config();
    CHECK(ofdm.two_n_c1 == 0);
    CHECK(ofdm.c2 == 0.0);
    cfg.waveform = Waveform::OCDM;
    const AfdmConfig ocdm = cfg.make_afdm_config();
    CHECK(ocdm.two_n_c1 == 1);
    CHECK(ocdm.c2 == doctest::Approx(1.0 / 128.0).epsilon(1e-15));
    cfg.waveform = Waveform::AFDM;
    CHECK(cfg.make_afdm_config().two_n_c1 == 4);
}

TEST_CASE("atomic CSV writing and metadata round-trip") {
    const auto dir = std::filesystem::temp_directory_path() / "afdmsense_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.csv";
    const ExperimentConfig cfg = sample_config();
    const std::string content = csv_header(cfg, {"note: test"}) + "tau,nu,value\n1,2,3\n";
    write_file_atomic(path, content);

    CHECK(std::filesystem::exists(path));
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));  // no partial files

    const CsvMetadata meta = read_csv_metadata(path);
    CHECK(meta.config_json == cfg.to_json());
    CHECK(meta.hash == config_hash(meta.config_json));  // re-hash matches embedded hash

    std::filesystem::remove_all(dir);
}

TEST_CASE("grid config validation") {
    GridConfig g{0, 4, 1, 0.0, 2.0, 0.5};
    const GridSpec spec = g.make();
    CHECK(spec.delays.size() == 5);
    CHECK(spec.dopplers.size() == 5);
    CHECK(spec.dopplers[1] == doctest::Approx(0.5).epsilon(1e-15));
    GridConfig bad{4, 0, 1, 0.0, 2.0, 0.5};
    CHECK_THROWS_AS(bad.make(), ConfigError);
    GridConfig bad2{0, 4, 0, 0.0, 2.0, 0.5};
    CHECK_THROWS_AS(bad2.make(), ConfigError);
}
