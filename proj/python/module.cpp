// pybind11 bindings exposing the main operations for scripting and plotting
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "afdmsense/ambiguity.hpp"
#include "afdmsense/channel.hpp"
#include "afdmsense/design_guideline.hpp"
#include "afdmsense/receiver.hpp"

namespace py = pybind11;
using namespace afdmsense;

namespace {

ConstellationSpec spec_of(const std::string& name) { return ConstellationSpec::parse(name); }

GridSpec make_grid(const std::vector<long>& delays, const std::vector<double>& dopplers) {
    GridSpec g;
    g.delays = delays;
    g.dopplers = dopplers;
    return g;
}

py::dict grid_to_dict(const DpafGrid& g) {
    py::dict d;
    d["delays"] = g.delays;
    d["dopplers"] = g.dopplers;
    d["values"] = g.values;
    d["standard_errors"] = g.standard_errors;
    return d;
}

}  // namespace

PYBIND11_MODULE(_afdmsense, m) {
    m.doc() = "AFDM/OFDM/OCDM ambiguity-function analysis and delay-Doppler sensing";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_RuntimeError);

    py::class_<AfdmConfig>(m, "AfdmConfig")
        .def(py::init([](unsigned n, long two_n_c1, double c2, unsigned n_cp, unsigned m_guard,
                         unsigned oversampling, unsigned n_sym, const std::string& constellation) {
                 AfdmConfig cfg;
                 cfg.n = n;
                 cfg.two_n_c1 = two_n_c1;
                 cfg.c2 = c2;
                 cfg.n_cp = n_cp;
                 cfg.m_guard = m_guard;
                 cfg.oversampling = oversampling;
                 cfg.n_sym = n_sym;
                 cfg.constellation = spec_of(constellation);
                 cfg.normalize();
                 cfg.validate();
                 return cfg;
             }),
             py::arg("n"), py::arg("two_n_c1") = 0, py::arg("c2") = 0.0, py::arg("n_cp") = 0,
             py::arg("m_guard") = 0, py::arg("oversampling") = 1, py::arg("n_sym") = 1,
             py::arg("constellation") = "qam16")
        .def_readonly("n", &AfdmConfig::n)
        .def_readonly("two_n_c1", &AfdmConfig::two_n_c1)
        .def_readonly("c2", &AfdmConfig::c2)
        .def_property_readonly("c1", &AfdmConfig::c1);

    py::class_<PulseShape>(m, "PulseShape")
        .def_readonly("taps", &PulseShape::taps)
        .def_readonly("m", &PulseShape::m)
        .def_readonly("l", &PulseShape::l)
        .def_readonly("rolloff", &PulseShape::rolloff);

    py::class_<EffectiveResponse>(m, "EffectiveResponse")
        .def_readonly("g", &EffectiveResponse::g)
        .def_readonly("n", &EffectiveResponse::n)
        .def_readonly("l", &EffectiveResponse::l);

    m.def("constellation_points",
          [](const std::string& name) { return constellation_points(spec_of(name)); });
    m.def("kurtosis", [](const std::string& name) { return kurtosis(spec_of(name)); });
    m.def("draw_symbols", [](const std::string& name, size_t count, uint64_t seed) {
        return draw_symbols(spec_of(name), count, seed);
    });

    m.def("idaft_modulate", &idaft_modulate);
    m.def("daft_demodulate", &daft_demodulate);
    m.def("add_cpp", &add_cpp);
    m.def("add_gps", &add_gps);
    m.def("build_frame", &build_frame);

    m.def("rrc_taps", &rrc_taps, py::arg("m"), py::arg("l"), py::arg("rolloff"));
    m.def("rect_pulse", &rect_pulse, py::arg("l") = 1);
    m.def("effective_response", &effective_response);
    m.def("shape_symbol", &shape_symbol);
    m.def("pacf", &pacf);
    m.def("sse", &sse);
    m.def("pulse_dpaf", &pulse_dpaf);

    m.def("dirichlet_sq", &dirichlet_sq);
    m.def("dpaf_realization", &dpaf_realization);
    m.def("dpaf_theory_nops", &dpaf_theory_nops);
    m.def("dpaf_theory_ofdm", &dpaf_theory_ofdm);
    m.def("dpaf_theory_ocdm", &dpaf_theory_ocdm);
    m.def("dpaf_theory_ps", &dpaf_theory_ps);
    m.def("mainlobe_nops", &mainlobe_nops);
    m.def("mainlobe_ps", &mainlobe_ps);
    m.def("delay_cut_ps", &delay_cut_ps);
    m.def("doppler_cut_ps", &doppler_cut_ps);
    m.def(
        "dpaf_monte_carlo",
        [](const AfdmConfig& cfg, const PulseShape& ps, const std::vector<long>& delays,
           const std::vector<double>& dopplers, size_t trials, uint64_t seed) {
            return grid_to_dict(dpaf_monte_carlo(cfg, ps, make_grid(delays, dopplers), trials, seed));
        },
        py::arg("cfg"), py::arg("pulse"), py::arg("delays"), py::arg("dopplers"), py::arg("trials"),
        py::arg("seed"));
    m.def("find_depressions", [](const AfdmConfig& cfg) {
        const DepressionMap map = find_depressions(cfg);
        py::dict d;
        d["entries"] = map.entries;
        d["delay_gap"] = map.delay_gap ? py::object(py::cast(*map.delay_gap)) : py::none();
        d["doppler_gap"] = map.doppler_gap ? py::object(py::cast(*map.doppler_gap)) : py::none();
        return d;
    });

    py::class_<Target>(m, "Target")
        .def(py::init([](double range_m, double velocity_mps, double mean_amp,
                         const std::string& fluctuation) {
                 Target t;
                 t.range_m = range_m;
                 t.velocity_mps = velocity_mps;
                 t.mean_amp = mean_amp;
                 t.fluctuation =
                     fluctuation == "swerling0" ? Fluctuation::Swerling0 : Fluctuation::Swerling2;
                 return t;
             }),
             py::arg("range_m"), py::arg("velocity_mps"), py::arg("mean_amp") = 1.0,
             py::arg("fluctuation") = "swerling2");

    py::class_<RadioConfig>(m, "RadioConfig")
        .def(py::init([](double fc_hz, double delta_f_hz, double snr_db) {
                 RadioConfig r;
                 r.fc_hz = fc_hz;
                 r.delta_f_hz = delta_f_hz;
                 r.snr_db = snr_db;
                 return r;
             }),
             py::arg("fc_hz") = 24e9, py::arg("delta_f_hz") = 15e3, py::arg("snr_db") = 0.0);

    m.def("normalized_params", [](const Target& t, const RadioConfig& r, const AfdmConfig& cfg) {
        const NormalizedParams p = normalized_params(t, r, cfg);
        return py::make_tuple(p.tau_samples, p.nu, p.tau_residual);
    });
    m.def("synthesize_echo", &synthesize_echo, py::arg("data_block"), py::arg("cfg"),
          py::arg("pulse"), py::arg("targets"), py::arg("radio"), py::arg("seed"),
          py::arg("noise_off") = false);
    m.def("shaped_reference", &shaped_reference);

    m.def("matched_filter",
          [](const CVec& y, const CVec& ref, const std::vector<long>& delays,
             const std::vector<double>& dopplers) {
              const MfMap map = matched_filter(y, ref, make_grid(delays, dopplers));
              return map.values;
          });
    m.def("forbidden_c1",
          [](double d_s, double d_w, double v_s, double v_w, double fc, double fs, unsigned n,
             double sigma_c, long k_min, long k_max) {
              GuidelineInput in{d_s, d_w, v_s, v_w, fc, fs, n, sigma_c};
              std::vector<std::tuple<long, double, double, double>> out;
              for (const auto& f : forbidden_c1(in, k_min, k_max))
                  out.emplace_back(f.k, f.center, f.lo, f.hi);
              return out;
          });
    m.def("choose_two_n_c1",
          [](double d_s, double d_w, double v_s, double v_w, double fc, double fs, unsigned n,
             double sigma_c, const std::vector<long>& candidates) {
              GuidelineInput in{d_s, d_w, v_s, v_w, fc, fs, n, sigma_c};
              return choose_two_n_c1(in, candidates).chosen_two_n_c1;
          });
}
