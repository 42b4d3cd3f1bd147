// afdmsense CLI - configure and run DPAF theory/simulation surfaces, cuts,
// strong-weak sensing scenarios, and the 2Nc1 design rule; all outputs are
// CSV with '#'-prefixed metadata (full config + hash).
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "afdmsense/design_guideline.hpp"
#include "afdmsense/experiment.hpp"

namespace {

using namespace afdmsense;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

std::filesystem::path resolve_out(const std::string& out, const std::string& fallback) {
    std::filesystem::path p = out.empty() ? fallback : out;
    if (p.is_relative()) {
        if (const char* dir = std::getenv("AFDMSENSE_OUT_DIR")) p = std::filesystem::path(dir) / p;
    }
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    return p;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// Shared waveform/pulse/grid flags mirroring the config file keys.
void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg, std::string& waveform,
                      std::string& pulse_type, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file (flags override its values)");
    cmd->add_option("--waveform", waveform, "afdm|ofdm|ocdm");
    cmd->add_option("--n", cfg.n, "subcarrier count N");
    cmd->add_option("--two-n-c1", cfg.two_n_c1, "integer 2*N*c1 (AFDM chirp parameter)");
    cmd->add_option("--c2", cfg.c2, "c2 chirp parameter");
    cmd->add_option("--n-cp", cfg.n_cp, "chirp-periodic prefix length");
    cmd->add_option("--mod", cfg.constellation, "constellation, e.g. qam16 or psk4");
    cmd->add_option("--pulse", pulse_type, "rrc|none");
    cmd->add_option("--pulse-m", cfg.pulse.m, "pulse half-width M (symbol periods)");
    cmd->add_option("--l", cfg.pulse.l, "oversampling ratio L");
    cmd->add_option("--rolloff", cfg.pulse.rolloff, "RRC roll-off factor");
    cmd->add_option("--tau-min", cfg.grid.tau_min, "delay grid start");
    cmd->add_option("--tau-max", cfg.grid.tau_max, "delay grid end (inclusive)");
    cmd->add_option("--tau-step", cfg.grid.tau_step, "delay grid step");
    cmd->add_option("--nu-min", cfg.grid.nu_min, "Doppler grid start");
    cmd->add_option("--nu-max", cfg.grid.nu_max, "Doppler grid end (inclusive)");
    cmd->add_option("--nu-step", cfg.grid.nu_step, "Doppler grid step");
    cmd->add_option("--trials", cfg.trials, "Monte Carlo trial count");
    cmd->add_option("--seed", cfg.seed, "base RNG seed");
}

ExperimentConfig load_config(const std::string& config_path, const ExperimentConfig& overrides,
                             CLI::App* cmd, const std::string& waveform,
                             const std::string& pulse_type) {
    ExperimentConfig cfg = overrides;
    if (!config_path.empty()) {
        cfg = ExperimentConfig::from_file(config_path);
        // re-apply any explicitly passed flags on top of the file
        ExperimentConfig flags = overrides;
        auto seen = [&](const std::string& name) { return cmd->count(name) > 0; };
        if (seen("--n")) cfg.n = flags.n;
        if (seen("--two-n-c1")) cfg.two_n_c1 = flags.two_n_c1;
        if (seen("--c2")) cfg.c2 = flags.c2;
        if (seen("--n-cp")) cfg.n_cp = flags.n_cp;
        if (seen("--mod")) cfg.constellation = flags.constellation;
        if (seen("--pulse-m")) cfg.pulse.m = flags.pulse.m;
        if (seen("--l")) cfg.pulse.l = flags.pulse.l;
        if (seen("--rolloff")) cfg.pulse.rolloff = flags.pulse.rolloff;
        if (seen("--tau-min")) cfg.grid.tau_min = flags.grid.tau_min;
        if (seen("--tau-max")) cfg.grid.tau_max = flags.grid.tau_max;
        if (seen("--tau-step")) cfg.grid.tau_step = flags.grid.tau_step;
        if (seen("--nu-min")) cfg.grid.nu_min = flags.grid.nu_min;
        if (seen("--nu-max")) cfg.grid.nu_max = flags.grid.nu_max;
        if (seen("--nu-step")) cfg.grid.nu_step = flags.grid.nu_step;
        if (seen("--trials")) cfg.trials = flags.trials;
        if (seen("--seed")) cfg.seed = flags.seed;
    }
    if (cmd->count("--waveform")) cfg.waveform = parse_waveform(waveform);
    if (cmd->count("--pulse")) {
        if (pulse_type == "rrc") cfg.pulse.enabled = true;
        else if (pulse_type == "none") cfg.pulse.enabled = false;
        else throw ConfigError("unknown pulse type '" + pulse_type + "'");
    }
    return cfg;
}

// Wrap user delay coordinates into [0, NL) for evaluation, keep them for output.
GridSpec wrapped_grid(const GridSpec& grid, long nl) {
    const long span = grid.delays.empty() ? 0 : grid.delays.back() - grid.delays.front();
    if (span >= nl)
        throw ConfigError("delay grid spans more than one period (NL = " + std::to_string(nl) + ")");
    GridSpec wrapped = grid;
    for (auto& t : wrapped.delays) t = ((t % nl) + nl) % nl;
    return wrapped;
}

int cmd_dpaf(const ExperimentConfig& cfg, const std::string& mode, const std::string& out,
             bool db_scale) {
    if (mode != "theory" && mode != "sim" && mode != "both")
        throw ConfigError("--mode must be theory|sim|both");
    const bool want_sim = mode != "theory";
    const bool want_theory = mode != "sim";
    if (want_sim && cfg.trials < 1) throw ConfigError("simulation requires --trials >= 1");

    const AfdmConfig acfg = cfg.make_afdm_config();
    const PulseShape ps = cfg.pulse.make();
    const EffectiveResponse g = effective_response(ps, acfg.n);
    const GridSpec grid = cfg.grid.make();
    const GridSpec wrapped = wrapped_grid(grid, g.nl());

    DpafGrid theory, sim;
    if (want_theory)
        theory = cfg.pulse.enabled ? dpaf_theory_ps_grid(acfg, g, wrapped)
                                   : dpaf_theory_nops_grid(acfg, wrapped);
    if (want_sim) sim = dpaf_monte_carlo(acfg, ps, wrapped, cfg.trials, cfg.seed);

    const double mainlobe = cfg.pulse.enabled ? dpaf_theory_ps(acfg, g, 0, 0.0) : mainlobe_nops(acfg);
    auto scale = [&](double v) {
        return db_scale ? 10.0 * std::log10(std::max(v, 1e-300) / mainlobe) : v;
    };

    std::vector<std::string> extra;
    extra.push_back("mainlobe_theory: " + fmt(mainlobe));
    if (db_scale) extra.push_back("scale: dB relative to theoretical mainlobe");
    if (want_theory && cfg.pulse.enabled && theory.fractional_doppler_approximate)
        extra.push_back("fractional_doppler: approximate (closed form is exact on the integer grid)");

    std::ostringstream body;
    if (mode == "theory") body << "tau,nu,value\n";
    else if (mode == "sim") body << "tau,nu,value,stderr\n";
    else body << "tau,nu,value_theory,value_sim,stderr\n";
    for (size_t i = 0; i < grid.delays.size(); ++i) {
        for (size_t j = 0; j < grid.dopplers.size(); ++j) {
            body << grid.delays[i] << "," << fmt(grid.dopplers[j]);
            if (want_theory) body << "," << fmt(scale(theory.at(i, j)));
            if (want_sim) body << "," << fmt(scale(sim.at(i, j)));
            if (want_sim) body << "," << fmt(db_scale ? sim.stderr_at(i, j) / mainlobe
                                                      : sim.stderr_at(i, j));
            body << "\n";
        }
    }
    const auto path = resolve_out(out, "dpaf.csv");
    write_file_atomic(path, csv_header(cfg, extra) + body.str());
    std::cout << "wrote " << path.string() << "\n";
    return kExitOk;
}

int cmd_cuts(const ExperimentConfig& cfg, const std::string& out, bool db_scale) {
    const AfdmConfig acfg = cfg.make_afdm_config();
    const PulseShape ps = cfg.pulse.make();
    const EffectiveResponse g = effective_response(ps, acfg.n);
    const long nl = g.nl();
    const GridSpec grid = cfg.grid.make();
    if (grid.dopplers.empty() || grid.delays.empty()) throw ConfigError("cuts: empty grid");

    GridSpec delay_axis, doppler_axis;
    delay_axis.delays = grid.delays;
    delay_axis.dopplers = {0.0};
    doppler_axis.delays = {0};
    doppler_axis.dopplers = grid.dopplers;
    const GridSpec delay_wrapped = wrapped_grid(delay_axis, nl);

    // theory through the specialized cut forms
    RVec th_delay = delay_cut_ps(acfg, g, delay_wrapped.delays);
    RVec th_doppler = doppler_cut_ps(acfg, g, grid.dopplers);

    DpafGrid sim_delay, sim_doppler;
    const bool want_sim = cfg.trials > 0;
    if (want_sim) {
        sim_delay = dpaf_monte_carlo(acfg, ps, delay_wrapped, cfg.trials, cfg.seed);
        sim_doppler = dpaf_monte_carlo(acfg, ps, doppler_axis, cfg.trials, cfg.seed);
    }

    const double n2 = static_cast<double>(acfg.n) * acfg.n;
    const double mainlobe = dpaf_theory_ps(acfg, g, 0, 0.0);
    auto scale = [&](double v) {
        return db_scale ? 10.0 * std::log10(std::max(v, 1e-300) / mainlobe) : v;
    };

    std::ostringstream body;
    body << "axis,coordinate,theory,sim,pacf_sq,sse_sq\n";
    for (size_t i = 0; i < grid.delays.size(); ++i) {
        const double r = pacf(g, delay_wrapped.delays[i]);
        body << "delay," << grid.delays[i] << "," << fmt(scale(th_delay[i])) << ",";
        if (want_sim) body << fmt(scale(sim_delay.at(i, 0)));
        body << "," << fmt(scale(n2 * r * r)) << ",\n";
    }
    for (size_t j = 0; j < grid.dopplers.size(); ++j) {
        const double nu = grid.dopplers[j];
        const double sse_line = dirichlet_sq(nu, acfg.n) * std::norm(sse(g, nu));
        body << "doppler," << fmt(nu) << "," << fmt(scale(th_doppler[j])) << ",";
        if (want_sim) body << fmt(scale(sim_doppler.at(0, j)));
        body << ",," << fmt(scale(sse_line)) << "\n";
    }

    std::vector<std::string> extra{"mainlobe_theory: " + fmt(mainlobe)};
    if (db_scale) extra.push_back("scale: dB relative to theoretical mainlobe");
    const auto path = resolve_out(out, "cuts.csv");
    write_file_atomic(path, csv_header(cfg, extra) + body.str());
    std::cout << "wrote " << path.string() << "\n";
    return kExitOk;
}

int cmd_scenario(const ExperimentConfig& cfg, const std::string& out) {
    if (!cfg.scenario) throw ConfigError("scenario command requires a scenario block in the config");
    const ScenarioRun& run = *cfg.scenario;
    const PulseShape ps = cfg.pulse.make();

    std::vector<std::pair<std::string, AfdmConfig>> waveforms;
    for (const auto& name : run.waveforms) {
        ExperimentConfig wcfg = cfg;
        wcfg.waveform = parse_waveform(name);
        waveforms.emplace_back(name, wcfg.make_afdm_config());
    }
    ScenarioConfig sc = run.config;
    sc.radio = cfg.radio;
    const auto rows = rmse_experiment(sc, waveforms, ps, run.snr_db, cfg.seed);

    std::ostringstream body;
    body << "waveform,snr_db,rmse_mps,trials,seed\n";
    for (const auto& r : rows)
        body << r.waveform << "," << fmt(r.snr_db) << "," << fmt(r.rmse_mps) << "," << r.trials
             << "," << r.seed << "\n";
    const auto path = resolve_out(out, "scenario.csv");
    const std::vector<std::string> extra{
        "snr_reference: mean received signal power per sample (all targets, noise off)",
        "estimator: ML over +-" + fmt(run.config.doppler_window) + " Doppler cells, step " +
            fmt(run.config.doppler_step) +
            (run.config.interpolate ? ", quadratic interpolation" : ", grid argmax")};
    write_file_atomic(path, csv_header(cfg, extra) + body.str());
    std::cout << "wrote " << path.string() << "\n";
    return kExitOk;
}

int cmd_design(const ExperimentConfig& cfg, const std::string& out, double sigma_c,
               long cand_min, long cand_max) {
    if (!cfg.scenario || cfg.scenario->config.targets.size() < 2)
        throw ConfigError("design command requires a scenario with at least two targets");
    const auto& targets = cfg.scenario->config.targets;
    const size_t weak = cfg.scenario->config.weak_index;
    const size_t strong = weak == 0 ? 1 : 0;

    GuidelineInput in;
    in.d_strong_m = targets[strong].range_m;
    in.d_weak_m = targets[weak].range_m;
    in.v_strong_mps = targets[strong].velocity_mps;
    in.v_weak_mps = targets[weak].velocity_mps;
    in.fc_hz = cfg.radio.fc_hz;
    in.fs_hz = cfg.radio.fs_hz(cfg.n);
    in.n = cfg.n;
    in.sigma_c = sigma_c;

    std::vector<long> candidates;
    for (long c = cand_min; c <= cand_max; ++c) candidates.push_back(c);
    const DesignReport report = choose_two_n_c1(in, candidates);

    std::cout << "cell gaps: delta_tau=" << report.delta_tau
              << " delta_nu=" << report.delta_nu << " (mod N=" << cfg.n << ")\n";
    std::cout << "forbidden c1 family (first few): ";
    for (size_t i = 0; i < report.intervals.size() && i < 5; ++i)
        std::cout << "[" << fmt(report.intervals[i].lo) << "," << fmt(report.intervals[i].hi)
                  << "] ";
    std::cout << "\n";
    for (const auto& v : report.verdicts)
        std::cout << "2Nc1=" << v.two_n_c1 << " c1=" << fmt(v.c1)
                  << (v.analytic_forbidden ? " FORBIDDEN(analytic)" : "")
                  << (v.depression_collision ? " COLLISION(depression)" : "")
                  << (v.accepted ? " ok" : "") << "\n";
    std::cout << "chosen 2Nc1 = " << report.chosen_two_n_c1 << "\n";

    if (!out.empty()) {
        std::ostringstream body;
        body << "two_n_c1,c1,analytic_forbidden,depression_collision,accepted,chosen\n";
        for (const auto& v : report.verdicts)
            body << v.two_n_c1 << "," << fmt(v.c1) << "," << v.analytic_forbidden << ","
                 << v.depression_collision << "," << v.accepted << ","
                 << (v.two_n_c1 == report.chosen_two_n_c1) << "\n";
        const auto path = resolve_out(out, "design.csv");
        write_file_atomic(path, csv_header(cfg, {"delta_tau: " + std::to_string(report.delta_tau),
                                                 "delta_nu: " + std::to_string(report.delta_nu)}) +
                                    body.str());
        std::cout << "wrote " << path.string() << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AFDM/OFDM/OCDM ambiguity-function analysis and delay-Doppler sensing"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string waveform = "afdm", pulse_type = "none", config_path, mode = "theory", out;
    bool db_scale = false;
    double sigma_c = 0.0;
    long cand_min = 1, cand_max = 16;

    auto* dpaf = app.add_subcommand("dpaf", "average squared DPAF surface (theory and/or Monte Carlo)");
    add_common_flags(dpaf, cfg, waveform, pulse_type, config_path);
    dpaf->add_option("--mode", mode, "theory|sim|both");
    dpaf->add_option("--out", out, "output CSV path");
    dpaf->add_flag("--db", db_scale, "export dB relative to the theoretical mainlobe");

    auto* cuts = app.add_subcommand("cuts", "delay and Doppler cuts with pulse overlays");
    add_common_flags(cuts, cfg, waveform, pulse_type, config_path);
    cuts->add_option("--out", out, "output CSV path");
    cuts->add_flag("--db", db_scale, "export dB relative to the theoretical mainlobe");

    auto* scen = app.add_subcommand("scenario", "strong-weak target RMSE experiment");
    add_common_flags(scen, cfg, waveform, pulse_type, config_path);
    scen->add_option("--out", out, "output CSV path");

    auto* design = app.add_subcommand("design", "2Nc1 design rule report for a strong-weak scenario");
    add_common_flags(design, cfg, waveform, pulse_type, config_path);
    design->add_option("--out", out, "optional CSV path for the verdict table");
    design->add_option("--sigma-c", sigma_c, "robustness half-width around forbidden c1 centers");
    design->add_option("--cand-min", cand_min, "smallest candidate 2Nc1");
    design->add_option("--cand-max", cand_max, "largest candidate 2Nc1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        const ExperimentConfig resolved = load_config(config_path, cfg, cmd, waveform, pulse_type);
        if (cmd == dpaf) return cmd_dpaf(resolved, mode, out, db_scale);
        if (cmd == cuts) return cmd_cuts(resolved, out, db_scale);
        if (cmd == scen) return cmd_scenario(resolved, out);
        if (cmd == design) return cmd_design(resolved, out, sigma_c, cand_min, cand_max);
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
