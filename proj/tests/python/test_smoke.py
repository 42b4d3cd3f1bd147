"""Smoke tests for the python bindings: end-to-end sanity of the main operations."""

import math

import pytest

import afdmsense as afs


def test_constellation_moments():
    pts = afs.constellation_points("qam16")
    assert len(pts) == 16
    assert abs(sum(pts)) < 1e-12
    assert abs(sum(p * p for p in pts)) < 1e-12
    assert math.isclose(sum(abs(p) ** 2 for p in pts) / 16, 1.0, rel_tol=1e-12)
    assert math.isclose(afs.kurtosis("qam16"), 1.32, rel_tol=1e-12)
    assert math.isclose(afs.kurtosis("psk8"), 1.0, rel_tol=1e-12)


def test_invalid_constellation_raises():
    with pytest.raises(ValueError):
        afs.constellation_points("qam8")
    with pytest.raises(ValueError):
        afs.constellation_points("psk2")


def test_modulation_round_trip():
    cfg = afs.AfdmConfig(n=64, two_n_c1=4, c2=0.013, constellation="qam16")
    s = afs.draw_symbols("qam16", 64, 7)
    x = afs.idaft_modulate(cfg, s)
    assert math.isclose(sum(abs(v) ** 2 for v in x), sum(abs(v) ** 2 for v in s), rel_tol=1e-12)
    back = afs.daft_demodulate(cfg, x)
    assert max(abs(a - b) for a, b in zip(back, s)) < 1e-12


def test_theory_reference_values():
    cfg = afs.AfdmConfig(n=128, two_n_c1=8, constellation="qam16")
    assert math.isclose(afs.dpaf_theory_nops(cfg, 0, 0.0), 16424.96, rel_tol=1e-12)
    assert math.isclose(afs.dpaf_theory_nops(cfg, 16, 0.0), 40.96, rel_tol=1e-12)
    assert math.isclose(afs.dpaf_theory_nops(cfg, 1, 3.0), 128.0, rel_tol=1e-12)
    assert math.isclose(afs.mainlobe_nops(cfg), 16424.96, rel_tol=1e-12)


def test_depression_map():
    cfg = afs.AfdmConfig(n=128, two_n_c1=8, constellation="qam16")
    dep = afs.find_depressions(cfg)
    assert len(dep["entries"]) == 127
    assert dep["delay_gap"] == 16
    assert dep["doppler_gap"] == 8


def test_pulse_shaping_quantities():
    ps = afs.rrc_taps(5, 4, 0.35)
    assert len(ps.taps) == 41
    assert math.isclose(sum(t * t for t in ps.taps), 1.0, rel_tol=1e-12)
    g = afs.effective_response(ps, 128)
    assert math.isclose(afs.pacf(g, 0), 1.0, rel_tol=1e-12)
    assert abs(afs.sse(g, 0.0) - 1.0) < 1e-12
    assert abs(afs.pulse_dpaf(g, 3, 0.0) - afs.pacf(g, 3)) < 1e-12


def test_monte_carlo_matches_theory_loosely():
    cfg = afs.AfdmConfig(n=32, two_n_c1=2, constellation="qam16")
    out = afs.dpaf_monte_carlo(cfg, afs.rect_pulse(1), [0, 1], [0.0, 2.0], 2000, 5)
    theory = afs.dpaf_theory_nops(cfg, 0, 0.0)
    i = out["delays"].index(0)
    j = out["dopplers"].index(0.0)
    mean = out["values"][i * len(out["dopplers"]) + j]
    se = out["standard_errors"][i * len(out["dopplers"]) + j]
    assert abs(mean - theory) < 4 * se


def test_echo_and_matched_filter_peak():
    cfg = afs.AfdmConfig(n=32, two_n_c1=2, n_cp=4, m_guard=2, oversampling=2,
                         n_sym=1, constellation="qam16")
    ps = afs.rrc_taps(2, 2, 0.35)
    radio = afs.RadioConfig(fc_hz=24e9, delta_f_hz=15e3, snr_db=100.0)
    fs = 15e3 * 32
    tau = 5
    target = afs.Target(range_m=tau * 3e8 / (2 * 2 * fs), velocity_mps=0.0,
                        mean_amp=1.0, fluctuation="swerling0")
    data = afs.draw_symbols("qam16", 32, 3)
    y = afs.synthesize_echo(data, cfg, ps, [target], radio, 1)
    ref = afs.shaped_reference(data, cfg, ps)
    delays = list(range(64))
    values = afs.matched_filter(y, ref, delays, [0.0])
    peak = max(range(64), key=lambda d: abs(values[d]))
    assert peak == tau


def test_design_guideline():
    fam = afs.forbidden_c1(156.25, 937.5, 100.0, 100.0, 24e9, 1.92e6, 128, 0.0, 0, 2)
    ks = [f[0] for f in fam]
    centers = {k: c for k, c, lo, hi in fam}
    assert ks == [0, 1, 2]
    assert math.isclose(centers[1], 0.05, rel_tol=1e-12)
    chosen = afs.choose_two_n_c1(156.25, 937.5, 100.0, 100.0, 24e9, 1.92e6, 128, 0.0,
                                 list(range(1, 17)))
    assert chosen == 1
