import math

import numpy as np
import pytest

from bachelier_lab import (
    CharacteristicRoots,
    OdeForm,
    OdeProblem,
    RootCase,
    ValidationError,
    characteristic_roots_full,
    characteristic_roots_hedged,
    delta_gamma,
    general_solution,
    quantized_rate,
    residual,
    sine_solution,
)

R1 = quantized_rate(1, 0.2, 1.0)  # 0.19739208802178718

# Frozen root values: the scaled polynomials lam^2 + lam + 1 and
# lam^2 + 9*lam + 9, solved at 30-digit precision.
COMPLEX_IMAG = 0.8660254037844386
DISTINCT_HI = -1.1458980337503155
DISTINCT_LO = -7.8541019662496845


def _poly_full(r, sigma, lam):
    return 0.5 * sigma * sigma * lam * lam + r * lam + r


def test_full_roots_complex_case():
    roots = characteristic_roots_full(0.02, 0.2)
    assert roots.case is RootCase.COMPLEX_CONJUGATE
    assert roots.root1 == pytest.approx(complex(-0.5, COMPLEX_IMAG), rel=1e-12)
    assert roots.root2 == pytest.approx(roots.root1.conjugate(), rel=1e-12)


def test_full_roots_distinct_case():
    roots = characteristic_roots_full(0.18, 0.2)
    assert roots.case is RootCase.DISTINCT_REAL
    assert roots.root1.imag == 0.0 and roots.root2.imag == 0.0
    assert roots.root1.real == pytest.approx(DISTINCT_HI, rel=1e-12)
    assert roots.root2.real == pytest.approx(DISTINCT_LO, rel=1e-12)


def test_full_roots_repeated_case():
    roots = characteristic_roots_full(0.08, 0.2)  # r = 2*sigma^2
    assert roots.case is RootCase.REPEATED_REAL
    assert roots.root1 == roots.root2
    assert roots.root1.real == pytest.approx(-2.0, rel=1e-12)


def test_full_roots_zero_rate():
    roots = characteristic_roots_full(0.0, 0.2)
    assert roots.case is RootCase.REPEATED_REAL
    assert roots.root1 == 0j and roots.root2 == 0j


def test_full_roots_negative_rate_is_distinct():
    roots = characteristic_roots_full(-0.02, 0.2)
    assert roots.case is RootCase.DISTINCT_REAL
    assert roots.root1.real > 0 > roots.root2.real


def test_full_roots_reject_zero_sigma():
    with pytest.raises(ValidationError, match="sigma"):
        characteristic_roots_full(0.05, 0.0)


@pytest.mark.parametrize("r", [-0.4, -0.02, 0.005, 0.02, 0.07, 0.08, 0.18, 1.5])
@pytest.mark.parametrize("sigma", [0.05, 0.2, 1.3])
def test_full_roots_satisfy_polynomial(r, sigma):
    roots = characteristic_roots_full(r, sigma)
    tol = 1e-12 * max(0.5 * sigma * sigma, abs(r))
    assert abs(_poly_full(r, sigma, roots.root1)) <= tol
    assert abs(_poly_full(r, sigma, roots.root2)) <= tol


@pytest.mark.parametrize("r,sigma", [(0.02, 0.2), (0.18, 0.2), (-0.3, 0.5), (2.0, 0.4)])
def test_full_roots_agree_with_polynomial_solver(r, sigma):
    # Independent oracle: numpy's companion-matrix root finder.
    roots = characteristic_roots_full(r, sigma)
    expected = sorted(np.roots([0.5 * sigma * sigma, r, r]), key=lambda z: (z.real, z.imag))
    got = sorted([roots.root1, roots.root2], key=lambda z: (z.real, z.imag))
    for g, e in zip(got, expected):
        assert g == pytest.approx(complex(e), rel=1e-9, abs=1e-12)


def test_hedged_roots_unit_wavenumber():
    roots = characteristic_roots_hedged(0.02, 0.2)
    assert roots.case is RootCase.COMPLEX_CONJUGATE
    assert roots.root1 == pytest.approx(1j, rel=1e-12)
    assert roots.root2 == pytest.approx(-1j, rel=1e-12)


def test_hedged_roots_pi_at_first_ladder_rate():
    roots = characteristic_roots_hedged(R1, 0.2)
    assert roots.root1.imag == pytest.approx(math.pi, rel=1e-12)
    assert roots.root1.real == 0.0
    assert abs(R1 + 0.02 * roots.root1 ** 2) <= 1e-12 * max(0.02, R1)


def test_hedged_roots_degenerate_and_invalid():
    roots = characteristic_roots_hedged(0.0, 0.2)
    assert roots.case is RootCase.REPEATED_REAL and roots.root1 == 0j
    with pytest.raises(ValidationError, match="r"):
        characteristic_roots_hedged(-0.01, 0.2)


def test_sine_solution_values():
    v = sine_solution(1.0, R1, 0.2)
    assert v(0.0) == 0.0
    assert v(0.5) == pytest.approx(1.0, rel=1e-12)
    assert abs(v(1.0)) < 1e-9


def test_sine_solution_vanishes_at_origin_for_any_parameters():
    rng = np.random.default_rng(2)
    for _ in range(20):
        v = sine_solution(rng.uniform(-5, 5), rng.uniform(0.01, 2), rng.uniform(0.05, 1))
        assert v(0.0) == 0.0


def test_general_solution_reduces_to_sine_with_conjugate_coefficients():
    # coef1 = 1/(2i), coef2 = -1/(2i) turns the exponential pair into sin.
    roots = characteristic_roots_hedged(R1, 0.2)
    ge = general_solution(roots, complex(0.0, -0.5), complex(0.0, 0.5))
    sine = sine_solution(1.0, R1, 0.2)
    xs = np.linspace(0.0, 1.0, 1000)
    assert np.max(np.abs(ge(xs) - sine(xs))) <= 1e-12


def test_general_solution_zero_coefficients():
    roots = characteristic_roots_full(0.02, 0.2)
    ge = general_solution(roots, 0.0, 0.0)
    xs = np.linspace(-2.0, 2.0, 11)
    assert np.all(ge(xs) == 0.0)


def test_general_solution_conjugate_pair_at_origin():
    roots = characteristic_roots_full(0.02, 0.2)
    ge = general_solution(roots, 0.5, 0.5)
    assert ge(0.0) == pytest.approx(1.0, rel=1e-14)


def test_general_solution_repeated_root_formula():
    roots = characteristic_roots_full(0.08, 0.2)
    ge = general_solution(roots, 0.7, 0.3)
    lam = roots.root1.real
    for x in (0.0, 0.4, 1.1):
        assert ge(x) == pytest.approx((0.7 + 0.3 * x) * math.exp(lam * x), rel=1e-13)


def test_general_solution_rejects_non_finite_coefficients():
    roots = characteristic_roots_full(0.02, 0.2)
    with pytest.raises(ValidationError, match="coef"):
        general_solution(roots, math.nan, 0.0)


def test_delta_gamma_exact_on_quadratic():
    square = lambda x: x * x
    # Binary-exact inputs make the central differences exact, not just O(h^2).
    dg = delta_gamma(square, 0.5, 0.25)
    assert dg.delta == 1.0
    assert dg.gamma == 2.0
    dg2 = delta_gamma(square, -3.0, 1e-3)
    assert dg2.delta == pytest.approx(-6.0, abs=1e-9)
    assert dg2.gamma == pytest.approx(2.0, abs=1e-6)


def test_delta_gamma_on_first_ladder_sine():
    v = sine_solution(1.0, R1, 0.2)
    mid = delta_gamma(v, 0.5, 1e-3)
    assert abs(mid.delta) < 1e-5
    assert mid.gamma == pytest.approx(-math.pi ** 2, abs=1e-3)
    origin = delta_gamma(v, 0.0, 1e-3)
    assert origin.delta == pytest.approx(math.pi, abs=1e-5)


def test_delta_gamma_step_validation():
    v = sine_solution(1.0, R1, 0.2)
    with pytest.raises(ValidationError, match="h"):
        delta_gamma(v, 0.5, 0.0)
    with pytest.raises(ValidationError, match="h"):
        delta_gamma(v, 0.5, 1e-9)
    with pytest.raises(ValidationError, match="h"):
        delta_gamma(v, 1e6, 1e-3)  # floor scales with |x|


def test_residual_sine_hedged_form():
    v = sine_solution(1.0, R1, 0.2)
    problem = OdeProblem(r=R1, sigma=0.2, form=OdeForm.HEDGED)
    assert abs(residual(v, problem, 0.3, 1e-3)) < 1e-6


def test_residual_zero_solution():
    zero = lambda x: 0.0 * np.asarray(x)
    for form in OdeForm:
        problem = OdeProblem(r=0.1, sigma=0.3, form=form)
        assert residual(zero, problem, 0.7, 1e-3) == 0.0


def test_residual_full_form_exact_solution():
    roots = characteristic_roots_full(0.02, 0.2)
    a_coef, b_coef = 0.8, 0.2
    v = general_solution(roots, a_coef, b_coef)
    problem = OdeProblem(r=0.02, sigma=0.2, form=OdeForm.FULL)
    assert abs(residual(v, problem, 0.5, 1e-3)) < 1e-5 * (abs(a_coef) + abs(b_coef))


@pytest.mark.parametrize(
    "r,case",
    [(0.02, RootCase.COMPLEX_CONJUGATE), (0.08, RootCase.REPEATED_REAL),
     (-0.02, RootCase.DISTINCT_REAL)],
)
def test_residual_quadratic_convergence_full(r, case):
    roots = characteristic_roots_full(r, 0.2)
    assert roots.case is case
    v = general_solution(roots, 0.5, 0.5)
    problem = OdeProblem(r=r, sigma=0.2, form=OdeForm.FULL)
    xs = np.linspace(0.1, 0.9, 10)
    coarse = [residual(v, problem, x, 2e-2) for x in xs]
    fine = [residual(v, problem, x, 1e-2) for x in xs]
    ratio = np.sqrt(np.mean(np.square(coarse)) / np.mean(np.square(fine)))
    assert 3.5 <= ratio <= 4.5


def test_residual_quadratic_convergence_hedged():
    v = sine_solution(1.0, R1, 0.2)
    problem = OdeProblem(r=R1, sigma=0.2, form=OdeForm.HEDGED)
    xs = np.linspace(0.1, 0.9, 10)
    coarse = [residual(v, problem, x, 2e-2) for x in xs]
    fine = [residual(v, problem, x, 1e-2) for x in xs]
    ratio = np.sqrt(np.mean(np.square(coarse)) / np.mean(np.square(fine)))
    assert 3.5 <= ratio <= 4.5


def test_full_residual_of_sine_equals_the_hedging_gap_term():
    # The sine solves the hedged form, so its full-form residual is exactly
    # the r*delta term the hedged form drops (up to finite-difference error).
    v = sine_solution(1.0, R1, 0.2)
    problem = OdeProblem(r=R1, sigma=0.2, form=OdeForm.FULL)
    for x in (0.1, 0.3, 0.6, 0.9):
        gap = R1 * delta_gamma(v, x, 1e-3).delta
        assert abs(residual(v, problem, x, 1e-3) - gap) < 1e-6


def test_ode_problem_validates_sigma():
    with pytest.raises(ValidationError, match="sigma"):
        OdeProblem(r=0.1, sigma=0.0, form=OdeForm.FULL)
