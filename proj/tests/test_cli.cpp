// CLI behavior tests: exit codes, CSV structure, config round-trip through files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "afdmsense/experiment.hpp"

namespace fs = std::filesystem;
using namespace afdmsense;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(AFDMSENSE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("afdmsense_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> data_lines(const fs::path& csv) {
    std::ifstream in(csv);
    REQUIRE(in);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("usage and config errors exit with code 2") {
    CHECK(run_cli("") == 2);                         // missing subcommand
    CHECK(run_cli("dpaf --mode bogus") == 2);        // invalid mode
    CHECK(run_cli("dpaf --mode sim --trials 0") == 2);
    CHECK(run_cli("dpaf --mod qam8 --mode theory") == 2);
    CHECK(run_cli("scenario") == 2);                 // missing scenario block
    CHECK(run_cli("cuts --config /does/not/exist.json") == 2);
    CHECK(run_cli("cuts --n 16 --nu-min 4 --nu-max 0") == 2);  // empty Doppler grid
}

TEST_CASE("dpaf theory export") {
    TempDir tmp;
    const auto out = tmp.path / "dpaf.csv";
    const int rc = run_cli(
        "dpaf --mode theory --waveform afdm --n 16 --two-n-c1 2 --mod qam16 "
        "--tau-min -8 --tau-max 7 --nu-min -8 --nu-max 7 --nu-step 1 --out " +
        out.string());
    CHECK(rc == 0);
    REQUIRE(fs::exists(out));
    CHECK_FALSE(fs::exists(out.string() + ".tmp"));

    const auto lines = data_lines(out);
    REQUIRE(lines.size() == 16 * 16 + 1);
    CHECK(lines[0] == "tau,nu,value");

    // embedded hash must re-hash correctly
    const CsvMetadata meta = read_csv_metadata(out);
    CHECK(meta.hash == config_hash(meta.config_json));

    // negative delay coordinates wrap onto the same surface: row (-8, 0) equals (8, 0) by periodicity
    double v_neg = -1, v_pos = -1;
    for (const auto& l : lines) {
        std::istringstream ss(l);
        std::string tau, nu, val;
        std::getline(ss, tau, ',');
        std::getline(ss, nu, ',');
        std::getline(ss, val, ',');
        if (tau == "-8" && nu == "0") v_neg = std::stod(val);
        if (tau == "-8" && nu == "1") v_pos = std::stod(val);
    }
    CHECK(v_neg >= 0.0);
    CHECK(v_pos >= 0.0);
}

TEST_CASE("dpaf both-mode export carries theory, sim, and stderr columns") {
    TempDir tmp;
    const auto out = tmp.path / "both.csv";
    const int rc = run_cli(
        "dpaf --mode both --waveform ofdm --n 8 --mod psk4 --trials 200 --seed 3 "
        "--tau-min 0 --tau-max 7 --nu-min 0 --nu-max 7 --nu-step 1 --out " +
        out.string());
    CHECK(rc == 0);
    const auto lines = data_lines(out);
    REQUIRE(!lines.empty());
    CHECK(lines[0] == "tau,nu,value_theory,value_sim,stderr");
    CHECK(lines.size() == 65);
}

TEST_CASE("cuts export has the overlay columns") {
    TempDir tmp;
    const auto out = tmp.path / "cuts.csv";
    const int rc = run_cli(
        "cuts --waveform afdm --n 16 --two-n-c1 2 --mod qam16 --pulse rrc --pulse-m 2 --l 2 "
        "--rolloff 0.35 --trials 50 --seed 1 --tau-min -16 --tau-max 15 "
        "--nu-min -16 --nu-max 15 --nu-step 0.5 --out " +
        out.string());
    CHECK(rc == 0);
    const auto lines = data_lines(out);
    CHECK(lines[0] == "axis,coordinate,theory,sim,pacf_sq,sse_sq");
    size_t delay_rows = 0, doppler_rows = 0;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].rfind("delay,", 0) == 0) ++delay_rows;
        if (lines[i].rfind("doppler,", 0) == 0) ++doppler_rows;
    }
    CHECK(delay_rows == 32);
    CHECK(doppler_rows == 63);  // -16 to 15 inclusive in steps of 0.5
}

TEST_CASE("dB export puts the mainlobe at 0 dB") {
    TempDir tmp;
    const auto out = tmp.path / "db.csv";
    const int rc = run_cli(
        "dpaf --mode theory --waveform afdm --n 16 --two-n-c1 2 --mod qam16 "
        "--tau-min 0 --tau-max 3 --nu-min 0 --nu-max 3 --nu-step 1 --db --out " +
        out.string());
    CHECK(rc == 0);
    for (const auto& line : data_lines(out)) {
        if (line.rfind("tau,", 0) == 0) continue;  // header row
        std::istringstream ss(line);
        std::string tau, nu, val;
        std::getline(ss, tau, ',');
        std::getline(ss, nu, ',');
        std::getline(ss, val, ',');
        if (tau == "0" && nu == "0") CHECK(std::abs(std::stod(val)) <= 1e-9);
        if (tau == "1" && nu == "1") CHECK(std::stod(val) < -10.0);  // sidelobes well below
    }
}

TEST_CASE("config file driving with flag overrides") {
    TempDir tmp;
    ExperimentConfig cfg;
    cfg.waveform = Waveform::AFDM;
    cfg.n = 8;
    cfg.two_n_c1 = 2;
    cfg.constellation = "qam16";
    cfg.grid = {0, 7, 1, 0.0, 7.0, 1.0};
    cfg.trials = 10;
    cfg.seed = 4;
    const auto cfg_path = tmp.path / "cfg.json";
    {
        std::ofstream out(cfg_path);
        out << cfg.to_json();
    }
    const auto out = tmp.path / "from_config.csv";
    const int rc = run_cli("dpaf --mode theory --config " + cfg_path.string() + " --seed 9 --out " +
                           out.string());
    CHECK(rc == 0);
    const CsvMetadata meta = read_csv_metadata(out);
    const ExperimentConfig resolved = ExperimentConfig::from_json(meta.config_json);
    CHECK(resolved.seed == 9);        // flag wins
    CHECK(resolved.n == 8);           // file value preserved
    CHECK(resolved.two_n_c1 == 2);
}

TEST_CASE("design command reports and validates") {
    TempDir tmp;
    ExperimentConfig cfg;
    cfg.n = 128;
    cfg.radio.fc_hz = 24e9;
    cfg.radio.delta_f_hz = 15e3;
    ScenarioRun run;
    Target strong, weak;
    strong.range_m = 156.25;
    strong.velocity_mps = 100;
    strong.mean_amp = 11.22;
    weak.range_m = 937.5;
    weak.velocity_mps = 100;
    weak.mean_amp = 1.0;
    run.config.targets = {strong, weak};
    cfg.scenario = run;
    const auto cfg_path = tmp.path / "scenario.json";
    {
        std::ofstream out(cfg_path);
        out << cfg.to_json();
    }
    const auto out = tmp.path / "design.csv";
    CHECK(run_cli("design --config " + cfg_path.string() + " --out " + out.string()) == 0);
    const auto lines = data_lines(out);
    CHECK(lines[0] == "two_n_c1,c1,analytic_forbidden,depression_collision,accepted,chosen");
    // candidate 1 row: accepted and chosen
    CHECK(lines[1].rfind("1,", 0) == 0);
    CHECK(lines[1].find(",0,0,1,1") != std::string::npos);

    // degenerate geometry: equal ranges -> runtime error exit 3
    ExperimentConfig bad = cfg;
    bad.scenario->config.targets[1].range_m = strong.range_m;
    {
        std::ofstream out2(cfg_path);
        out2 << bad.to_json();
    }
    CHECK(run_cli("design --config " + cfg_path.string()) == 3);
}

TEST_CASE("scenario command produces the RMSE table") {
    TempDir tmp;
    ExperimentConfig cfg;
    cfg.n = 32;
    cfg.two_n_c1 = 2;
    cfg.n_cp = 8;
    cfg.constellation = "qam16";
    cfg.pulse.enabled = false;
    cfg.seed = 11;
    cfg.radio.fc_hz = 24e9;
    cfg.radio.delta_f_hz = 15e3;
    ScenarioRun run;
    const double fs = 15e3 * 32;
    Target strong, weak;
    strong.range_m = 2 * kSpeedOfLight / (2.0 * fs);
    strong.velocity_mps = 40.0;
    strong.mean_amp = 8.0;
    weak.range_m = 6 * kSpeedOfLight / (2.0 * fs);
    weak.velocity_mps = 40.0;
    weak.mean_amp = 1.0;
    run.config.targets = {strong, weak};
    run.config.n_sym = 4;
    run.config.trials = 6;
    run.waveforms = {"afdm", "ofdm"};
    run.snr_db = {0.0};
    cfg.scenario = run;
    const auto cfg_path = tmp.path / "sc.json";
    {
        std::ofstream out(cfg_path);
        out << cfg.to_json();
    }
    const auto out = tmp.path / "scenario.csv";
    CHECK(run_cli("scenario --config " + cfg_path.string() + " --out " + out.string()) == 0);
    const auto lines = data_lines(out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "waveform,snr_db,rmse_mps,trials,seed");
    CHECK(lines[1].rfind("afdm,", 0) == 0);
    CHECK(lines[2].rfind("ofdm,", 0) == 0);
}

TEST_CASE("AFDMSENSE_OUT_DIR provides the default output directory") {
    TempDir tmp;
    const std::string cmd = std::string("AFDMSENSE_OUT_DIR=") + tmp.path.string() + " " +
                            AFDMSENSE_CLI_PATH +
                            " dpaf --mode theory --n 8 --two-n-c1 1 --mod qam16 --tau-min 0 "
                            "--tau-max 3 --nu-min 0 --nu-max 3 --nu-step 1 >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(fs::exists(tmp.path / "dpaf.csv"));
}
