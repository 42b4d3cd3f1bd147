// experiment.hpp - experiment configuration (JSON round-trip, config hash)
// and CSV export with embedded metadata
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "afdmsense/ambiguity.hpp"
#include "afdmsense/receiver.hpp"
#include "afdmsense/types.hpp"

namespace afdmsense {

struct PulseConfig {
    bool enabled = false;  // "none" pulse: rect, L = 1
    unsigned m = 5;
    unsigned l = 4;
    double rolloff = 0.35;

    PulseShape make() const { return enabled ? rrc_taps(m, l, rolloff) : rect_pulse(1); }
};

struct GridConfig {
    long tau_min = 0, tau_max = 0, tau_step = 1;
    double nu_min = 0.0, nu_max = 0.0, nu_step = 1.0;

    GridSpec make() const {
        return GridSpec::regular(tau_min, tau_max, tau_step, nu_min, nu_max, nu_step);
    }
};

/// A scenario experiment: the target layout plus the waveforms and SNR points
/// to sweep ("afdm" uses the surrounding config's 2Nc1).
struct ScenarioRun {
    ScenarioConfig config;
    std::vector<std::string> waveforms{"afdm", "ofdm"};
    std::vector<double> snr_db{0.0};
};

/// Full resolved experiment description. Serializes to/from JSON; every CSV
/// output embeds the canonical serialization plus its hash.
struct ExperimentConfig {
    Waveform waveform = Waveform::AFDM;
    unsigned n = 128;
    long two_n_c1 = 8;
    double c2 = 0.0;
    unsigned n_cp = 16;
    unsigned n_sym = 1;
    std::string constellation = "qam16";
    PulseConfig pulse{};
    GridConfig grid{};
    size_t trials = 10000;
    uint64_t seed = 1;
    RadioConfig radio{};
    std::optional<ScenarioRun> scenario;

    AfdmConfig make_afdm_config() const;
    std::string to_json() const;                       // canonical, sorted keys
    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig from_file(const std::filesystem::path& path);
};

std::string waveform_name(Waveform w);
Waveform parse_waveform(const std::string& name);

/// FNV-1a 64-bit, printed as 16 hex digits; applied to the canonical config JSON.
std::string config_hash(const std::string& canonical_json);

/// Atomically write `content` to `path` (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Standard '#'-prefixed metadata block: config line, hash line, extras.
std::string csv_header(const ExperimentConfig& cfg, const std::vector<std::string>& extra);

/// Parse the "# config:" and "# config_hash:" lines back out of a CSV.
struct CsvMetadata {
    std::string config_json;
    std::string hash;
};
CsvMetadata read_csv_metadata(const std::filesystem::path& path);

}  // namespace afdmsense
