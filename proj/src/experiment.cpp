#include "afdmsense/experiment.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace afdmsense {

using nlohmann::json;

std::string waveform_name(Waveform w) {
    switch (w) {
        case Waveform::AFDM: return "afdm";
        case Waveform::OFDM: return "ofdm";
        case Waveform::OCDM: return "ocdm";
    }
    return "afdm";
}

Waveform parse_waveform(const std::string& name) {
    if (name == "afdm") return Waveform::AFDM;
    if (name == "ofdm") return Waveform::OFDM;
    if (name == "ocdm") return Waveform::OCDM;
    throw ConfigError("unknown waveform '" + name + "' (expected afdm|ofdm|ocdm)");
}

AfdmConfig ExperimentConfig::make_afdm_config() const {
    AfdmConfig base;
    base.n = n;
    base.two_n_c1 = two_n_c1;
    base.c2 = c2;
    base.n_cp = n_cp;
    base.n_sym = n_sym;
    base.constellation = ConstellationSpec::parse(constellation);
    if (pulse.enabled) {
        base.m_guard = pulse.m;
        base.oversampling = pulse.l;
    } else {
        base.m_guard = 0;
        base.oversampling = 1;
    }
    AfdmConfig cfg = AfdmConfig::for_waveform(waveform, base);
    cfg.validate();
    return cfg;
}

namespace {

json scenario_to_json(const ScenarioRun& run) {
    const ScenarioConfig& s = run.config;
    json targets = json::array();
    for (const auto& t : s.targets)
        targets.push_back({{"range_m", t.range_m},
                           {"velocity_mps", t.velocity_mps},
                           {"mean_amp", t.mean_amp},
                           {"fluctuation",
                            t.fluctuation == Fluctuation::Swerling2 ? "swerling2" : "swerling0"}});
    return {{"targets", targets},
            {"weak_index", s.weak_index},
            {"n_sym", s.n_sym},
            {"doppler_window", s.doppler_window},
            {"doppler_step", s.doppler_step},
            {"interpolate", s.interpolate},
            {"trials", s.trials},
            {"waveforms", run.waveforms},
            {"snr_db", run.snr_db}};
}

ScenarioRun scenario_from_json(const json& j) {
    ScenarioRun run;
    ScenarioConfig& s = run.config;
    for (const auto& tj : j.at("targets")) {
        Target t;
        t.range_m = tj.at("range_m").get<double>();
        t.velocity_mps = tj.at("velocity_mps").get<double>();
        t.mean_amp = tj.at("mean_amp").get<double>();
        const std::string f = tj.value("fluctuation", "swerling2");
        if (f == "swerling2") t.fluctuation = Fluctuation::Swerling2;
        else if (f == "swerling0") t.fluctuation = Fluctuation::Swerling0;
        else throw ConfigError("unknown fluctuation model '" + f + "'");
        s.targets.push_back(t);
    }
    s.weak_index = j.value("weak_index", size_t{1});
    s.n_sym = j.value("n_sym", 50u);
    s.doppler_window = j.value("doppler_window", 2.0);
    s.doppler_step = j.value("doppler_step", 0.0625);
    s.interpolate = j.value("interpolate", true);
    s.trials = j.value("trials", size_t{500});
    if (j.contains("waveforms")) run.waveforms = j["waveforms"].get<std::vector<std::string>>();
    if (j.contains("snr_db")) run.snr_db = j["snr_db"].get<std::vector<double>>();
    return run;
}

}  // namespace

std::string ExperimentConfig::to_json() const {
    json j{{"waveform", waveform_name(waveform)},
           {"n", n},
           {"two_n_c1", two_n_c1},
           {"c2", c2},
           {"n_cp", n_cp},
           {"n_sym", n_sym},
           {"constellation", constellation},
           {"trials", trials},
           {"seed", seed},
           {"grid",
            {{"tau_min", grid.tau_min},
             {"tau_max", grid.tau_max},
             {"tau_step", grid.tau_step},
             {"nu_min", grid.nu_min},
             {"nu_max", grid.nu_max},
             {"nu_step", grid.nu_step}}},
           {"radio",
            {{"fc_hz", radio.fc_hz}, {"delta_f_hz", radio.delta_f_hz}, {"snr_db", radio.snr_db}}}};
    if (pulse.enabled)
        j["pulse"] = {{"type", "rrc"}, {"m", pulse.m}, {"l", pulse.l}, {"rolloff", pulse.rolloff}};
    else
        j["pulse"] = {{"type", "none"}};
    if (scenario) j["scenario"] = scenario_to_json(*scenario);
    return j.dump();  // nlohmann orders keys: canonical
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.waveform = parse_waveform(j.value("waveform", "afdm"));
        cfg.n = j.value("n", 128u);
        cfg.two_n_c1 = j.value("two_n_c1", 8L);
        cfg.c2 = j.value("c2", 0.0);
        cfg.n_cp = j.value("n_cp", 16u);
        cfg.n_sym = j.value("n_sym", 1u);
        cfg.constellation = j.value("constellation", "qam16");
        cfg.trials = j.value("trials", size_t{10000});
        cfg.seed = j.value("seed", uint64_t{1});
        if (j.contains("pulse")) {
            const auto& p = j["pulse"];
            const std::string type = p.value("type", "none");
            if (type == "rrc") {
                cfg.pulse.enabled = true;
                cfg.pulse.m = p.value("m", 5u);
                cfg.pulse.l = p.value("l", 4u);
                cfg.pulse.rolloff = p.value("rolloff", 0.35);
            } else if (type == "none") {
                cfg.pulse.enabled = false;
            } else {
                throw ConfigError("unknown pulse type '" + type + "' (expected rrc|none)");
            }
        }
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            cfg.grid.tau_min = g.value("tau_min", 0L);
            cfg.grid.tau_max = g.value("tau_max", 0L);
            cfg.grid.tau_step = g.value("tau_step", 1L);
            cfg.grid.nu_min = g.value("nu_min", 0.0);
            cfg.grid.nu_max = g.value("nu_max", 0.0);
            cfg.grid.nu_step = g.value("nu_step", 1.0);
        }
        if (j.contains("radio")) {
            const auto& r = j["radio"];
            cfg.radio.fc_hz = r.value("fc_hz", 24e9);
            cfg.radio.delta_f_hz = r.value("delta_f_hz", 15e3);
            cfg.radio.snr_db = r.value("snr_db", 0.0);
        }
        if (j.contains("scenario")) cfg.scenario = scenario_from_json(j["scenario"]);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string config_hash(const std::string& canonical_json) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_json) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ScenarioError("cannot write output file: " + tmp.string());
        out << content;
        if (!out.good()) {
            std::filesystem::remove(tmp);
            throw ScenarioError("failed writing output file: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string csv_header(const ExperimentConfig& cfg, const std::vector<std::string>& extra) {
    const std::string canon = cfg.to_json();
    std::ostringstream out;
    out << "# config: " << canon << "\n";
    out << "# config_hash: " << config_hash(canon) << "\n";
    out << "# mu4: " << kurtosis(ConstellationSpec::parse(cfg.constellation)) << "\n";
    if (cfg.pulse.enabled)
        out << "# pulse: rrc m=" << cfg.pulse.m << " l=" << cfg.pulse.l
            << " rolloff=" << cfg.pulse.rolloff << "\n";
    else
        out << "# pulse: none\n";
    for (const auto& line : extra) out << "# " << line << "\n";
    return out.str();
}

CsvMetadata read_csv_metadata(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open CSV file: " + path.string());
    CsvMetadata meta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# config: ", 0) == 0) meta.config_json = line.substr(10);
        else if (line.rfind("# config_hash: ", 0) == 0) meta.hash = line.substr(15);
        else if (!line.empty() && line[0] != '#') break;
    }
    if (meta.config_json.empty() || meta.hash.empty())
        throw ConfigError("CSV is missing config metadata: " + path.string());
    return meta;
}

}  // namespace afdmsense
