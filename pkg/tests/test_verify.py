import math

import numpy as np
import pytest

from bachelier_lab import (
    DiscountSign,
    DriftClass,
    DriftReport,
    ModelParams,
    NonFiniteSampleError,
    ValidationError,
    analytic_drift,
    characteristic_roots_full,
    classify,
    delta_gamma,
    drift_estimate,
    general_solution,
    integrability_check,
    quantized_rate,
    sine_solution,
)

R1 = quantized_rate(1, 0.2, 1.0)
# r_1 * pi at 30-digit precision: the sine mode's drift at the origin, where
# the hedged equation kills everything except the r*V' term.
SINE_DRIFT_AT_ORIGIN = 0.6201255336059964

FULL_CASES = {
    "complex": (0.02, 0.2),
    "repeated": (0.08, 0.2),
    "distinct": (-0.02, 0.2),
}


def _full_solution(r, sigma, coef1=0.5, coef2=0.5):
    return general_solution(characteristic_roots_full(r, sigma), coef1, coef2)


def test_analytic_drift_vanishes_on_full_form_solutions():
    for r, sigma in FULL_CASES.values():
        v = _full_solution(r, sigma)
        for x in (-0.5, 0.2, 0.8):
            for t in (0.0, 1.5):
                drift = analytic_drift(v, r, sigma, x, t, DiscountSign.PLUS)
                assert abs(drift) < 1e-6


def test_analytic_drift_of_sine_at_origin():
    v = sine_solution(1.0, R1, 0.2)
    drift = analytic_drift(v, R1, 0.2, 0.0, 0.0, DiscountSign.PLUS)
    assert drift == pytest.approx(SINE_DRIFT_AT_ORIGIN, abs=1e-5)


def test_analytic_drift_of_sine_at_flat_point():
    # V'(0.5) = 0 for the first mode, so the surviving r*V' term dies too.
    v = sine_solution(1.0, R1, 0.2)
    assert abs(analytic_drift(v, R1, 0.2, 0.5, 0.0, DiscountSign.PLUS)) < 1e-5


def test_analytic_drift_minus_convention_formula():
    v = sine_solution(1.0, R1, 0.2)
    x, t, h = 0.3, 0.7, 1e-3
    dg = delta_gamma(v, x, h)
    diffusion = 0.5 * 0.2 * 0.2
    expected = math.exp(-R1 * t) * (-R1 * float(v(x)) + R1 * dg.delta + diffusion * dg.gamma)
    assert analytic_drift(v, R1, 0.2, x, t, DiscountSign.MINUS, h) == expected


def test_drift_estimate_full_form_is_drift_free():
    v = _full_solution(0.02, 0.2)
    p = ModelParams(x0=0.5, r=0.02, sigma=0.2)
    report = drift_estimate(v, p, 0.5, 0.0, 1e-3, 100_000, seed=21)
    assert abs(report.estimated_drift_rate) <= 3 * report.standard_error
    assert abs(report.z_score) <= 3


def test_drift_estimate_sine_matches_analytic_at_origin():
    v = sine_solution(1.0, R1, 0.2)
    p = ModelParams(x0=0.0, r=R1, sigma=0.2)
    report = drift_estimate(v, p, 0.0, 0.0, 1e-3, 100_000, seed=22)
    assert abs(report.estimated_drift_rate - SINE_DRIFT_AT_ORIGIN) <= 3 * report.standard_error


def test_drift_estimate_is_deterministic():
    v = sine_solution(1.0, R1, 0.2)
    p = ModelParams(x0=0.0, r=R1, sigma=0.2)
    a = drift_estimate(v, p, 0.2, 0.0, 1e-3, 10_000, seed=5)
    b = drift_estimate(v, p, 0.2, 0.0, 1e-3, 10_000, seed=5)
    assert a == b


def test_drift_estimate_degenerate_sigma_zero():
    cube = lambda x: np.asarray(x) ** 3
    p = ModelParams(x0=1.0, r=0.5, sigma=0.0)
    dt = 1e-3
    report = drift_estimate(cube, p, 1.0, 0.3, dt, 2_000, seed=0)
    assert report.degenerate
    assert report.standard_error == 0.0
    assert math.isnan(report.z_score)
    w0 = math.exp(0.5 * 0.3)
    w1 = math.exp(0.5 * (0.3 + dt))
    quotient = ((1.0 + 0.5 * dt) ** 3 * w1 - 1.0 * w0) / dt
    assert report.estimated_drift_rate == quotient


def test_drift_estimate_validates_dt_and_sample_count():
    v = sine_solution(1.0, R1, 0.2)
    p = ModelParams(x0=0.0, r=R1, sigma=0.2)
    with pytest.raises(ValidationError, match="dt"):
        drift_estimate(v, p, 0.0, 0.0, 0.02, 10_000, seed=0)
    with pytest.raises(ValidationError, match="n_samples"):
        drift_estimate(v, p, 0.0, 0.0, 1e-3, 999, seed=0)


def test_classify_examples():
    def report(est, se):
        return DriftReport(
            x0=0.0, t=0.0, dt=1e-3, n_samples=1000,
            estimated_drift_rate=est, standard_error=se,
            analytic_drift_rate=0.0, z_score=0.0,
            sign_convention=DiscountSign.PLUS,
        )

    assert classify(report(1e-4, 1e-3), 3.0).classification is DriftClass.CONSISTENT_WITH_MARTINGALE
    assert classify(report(-1e-2, 1e-3), 3.0).classification is DriftClass.SUPERMARTINGALE_STRICT
    assert classify(report(1e-2, 1e-3), 3.0).classification is DriftClass.VIOLATES_SUPERMARTINGALE
    # Degenerate reports classify by sign of the deterministic estimate.
    assert classify(report(0.0, 0.0), 3.0).classification is DriftClass.CONSISTENT_WITH_MARTINGALE
    assert classify(report(-1.0, 0.0), 3.0).classification is DriftClass.SUPERMARTINGALE_STRICT
    assert classify(report(1e-9, 0.0), 3.0).classification is DriftClass.VIOLATES_SUPERMARTINGALE


def test_classify_rejects_bad_threshold():
    rep = DriftReport(
        x0=0.0, t=0.0, dt=1e-3, n_samples=1000,
        estimated_drift_rate=0.0, standard_error=1.0,
        analytic_drift_rate=0.0, z_score=0.0,
        sign_convention=DiscountSign.PLUS,
    )
    with pytest.raises(ValidationError, match="z_threshold"):
        classify(rep, 0.0)


def test_sigma_zero_bias_shrinks_linearly_in_dt():
    # With no noise the estimate is a deterministic difference quotient, so
    # its O(dt) bias against the analytic drift is exactly measurable.
    cube = lambda x: np.asarray(x) ** 3
    p = ModelParams(x0=1.0, r=0.5, sigma=0.0)
    biases = []
    for dt in (1e-2, 5e-3, 2.5e-3):
        rep = drift_estimate(cube, p, 1.0, 0.3, dt, 2_000, seed=0)
        biases.append(rep.estimated_drift_rate - rep.analytic_drift_rate)
    assert 1.8 <= biases[0] / biases[1] <= 2.2
    assert 1.8 <= biases[1] / biases[2] <= 2.2


def test_oracle_agreement_within_noise_plus_linear_bias():
    cube = lambda x: np.asarray(x) ** 3
    p = ModelParams(x0=1.0, r=0.5, sigma=0.5)
    for dt in (1e-2, 5e-3):
        rep = drift_estimate(cube, p, 1.0, 0.0, dt, 200_000, seed=17)
        diff = abs(rep.estimated_drift_rate - rep.analytic_drift_rate)
        assert diff <= 3 * rep.standard_error + 1.0 * dt


@pytest.mark.parametrize("name", sorted(FULL_CASES))
def test_drift_free_certification_across_seeds(name):
    # >= 99 of 100 seeds must classify the exact full-form solution as
    # consistent with a martingale at the 3-sigma threshold.
    r, sigma = FULL_CASES[name]
    v = _full_solution(r, sigma)
    p = ModelParams(x0=0.5, r=r, sigma=sigma)
    n_ok = 0
    for k in range(100):
        report = drift_estimate(v, p, 0.5, 0.0, 1e-3, 10_000, seed=k)
        verdict = classify(report, 3.0)
        n_ok += verdict.classification is DriftClass.CONSISTENT_WITH_MARTINGALE
    assert n_ok >= 99


def test_hedging_gap_matches_dropped_delta_term():
    # The sine mode solves the hedged equation, so its measured drift is the
    # dropped r*Delta term; compare against the analytic derivative of sin.
    v = sine_solution(1.0, R1, 0.2)
    p = ModelParams(x0=0.0, r=R1, sigma=0.2)
    a = v.wavenumber
    for i, x0 in enumerate(np.linspace(0.05, 0.95, 10)):
        report = drift_estimate(v, p, float(x0), 0.0, 1e-3, 20_000, seed=100 + i)
        gap = R1 * a * math.cos(a * x0)
        assert abs(report.estimated_drift_rate - gap) <= 3 * report.standard_error


def test_sign_convention_consistency_of_estimator_and_formula():
    v = sine_solution(1.0, R1, 0.2)
    p = ModelParams(x0=0.0, r=R1, sigma=0.2)
    for sign in DiscountSign:
        report = drift_estimate(v, p, 0.3, 0.5, 1e-3, 50_000, seed=9, sign=sign)
        assert abs(report.z_score) <= 3


def test_integrability_sine_bound():
    v = sine_solution(2.0, R1, 0.2)
    p = ModelParams(x0=0.5, r=R1, sigma=0.2)
    witness = integrability_check(v, p, 1.5, 5_000, seed=4)
    assert witness.analytic_bound == pytest.approx(2.0 * math.exp(R1 * 1.5), rel=1e-14)
    assert math.isfinite(witness.mean_abs)
    assert witness.mean_abs <= witness.analytic_bound


def test_integrability_linear_payoff():
    identity = lambda x: np.asarray(x)
    p = ModelParams(x0=100.0, r=0.05, sigma=0.2)
    t = 4.0
    witness = integrability_check(identity, p, t, 20_000, seed=12)
    expected = (100.0 + 0.05 * t) * math.exp(0.05 * t)
    assert witness.analytic_bound is None
    assert abs(witness.mean_abs - expected) <= 5 * witness.standard_error


def test_integrability_aborts_on_non_finite_sample():
    def poisoned(x):
        x = np.asarray(x)
        return np.where(x > 100.0, np.nan, x)

    p = ModelParams(x0=100.0, r=0.0, sigma=1.0)
    with pytest.raises(NonFiniteSampleError, match="index"):
        integrability_check(poisoned, p, 1.0, 5_000, seed=3)


def test_integrability_validates_sample_count():
    v = sine_solution(1.0, R1, 0.2)
    p = ModelParams(x0=0.0, r=R1, sigma=0.2)
    with pytest.raises(ValidationError, match="n_samples"):
        integrability_check(v, p, 1.0, 10, seed=0)
