import math

import pytest

try:
    import ionread as ir
except ImportError:
    import _ionread as ir


RATES = ir.RateSet.measured(472e3, 341.0, 16.4, 4.2, 0.04356)


def test_rate_formulas():
    constants = ir.AtomicConstants()
    beam = ir.BeamParams.from_intensity(56.2 * 10.0, 0.0, constants)
    assert beam.saturation_param == pytest.approx(56.2 / 51.0)
    assert ir.bright_scatter_rate(beam, constants) > 1e6
    assert ir.dark_pump_rate(beam, constants) > ir.bright_pump_rate(beam, constants)


def test_zero_photon_probabilities():
    pzd = ir.p_zero_dark(20e-6, RATES)
    pzb = ir.p_zero_bright(20e-6, RATES)
    assert pzd == pytest.approx(1.0 - 3.772e-4, rel=1e-3)
    assert 0.0 < pzb < 1e-3
    spec = ir.MixtureSpec()
    spec.r1, spec.r2, spec.rt, spec.t = RATES.r_bg, RATES.detected_bright + RATES.r_bg, RATES.r_b, 20e-6
    assert ir.mixture_pmf(0, spec) == pytest.approx(pzd, rel=1e-9)


def test_error_curve_and_stop_time():
    points = ir.error_curve(RATES, ir.PrepErrors(), [5e-6, 20e-6, 100e-6])
    assert [p.window for p in points] == [5e-6, 20e-6, 100e-6]
    assert points[1].avg_time == pytest.approx(ir.avg_stop_time(RATES, 20e-6))
    assert points[1].avg_time < 20e-6


def test_monte_carlo_round_trip():
    cfg = ir.TrialConfig()
    cfg.rates = RATES
    cfg.initial_state = ir.IonState.bright
    cfg.window = 20e-6
    cfg.prep = ir.PrepErrors(0.0, 0.0)
    traces = ir.run_ensemble(cfg, 2000, 7)
    assert len(traces) == 2000
    again = ir.run_ensemble(cfg, 2000, 7)
    assert all(a.timestamps == b.timestamps for a, b in zip(traces, again))
    zero_frac = sum(not t.timestamps for t in traces) / len(traces)
    assert zero_frac < 5e-3

    policy = ir.Policy()
    policy.kind = ir.PolicyKind.first_photon_stop
    policy.window = 20e-6
    out = ir.classify(traces[0], cfg.window, policy)
    assert out.decision in (ir.IonState.bright, ir.IonState.dark)


def test_calibration_fit():
    constants = ir.AtomicConstants()
    points = []
    for i_mw in (5.0, 10.0, 25.0, 51.0, 100.0, 200.0):
        intensity = i_mw * 10.0
        x = intensity / constants.i_sat
        rate = 0.04356 * constants.gamma / 2.0 * x / (1.0 + x)
        points.append(ir.CalibrationPoint(intensity, rate, 100.0))
    fit = ir.fit_saturation(points, constants)
    assert fit.converged
    assert fit.eps_sys == pytest.approx(0.04356, rel=1e-6)


def test_crosstalk_budget():
    budget = ir.measurement_crosstalk(0.814, 11e-6)
    assert budget.n_star == 74000
    assert budget.per_measurement == pytest.approx(1.35e-5, rel=1e-2)
    plan = ir.shuttle_time(200e-6)
    assert plan.n_steps == 40
    assert plan.total_time == pytest.approx(92.8e-6)
    p = ir.absorption_crosstalk(370e-6, 472e3 / 0.04356, 11e-6, 369.5e-9)
    assert 1e-6 < p < 1e-5


def test_domain_errors_raise():
    with pytest.raises(ValueError):
        ir.p_zero_dark(-1.0, RATES)
