"""Two-variable zeta regularization and spectral determinants."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st
from scipy import special

from f1zeta.errors import ConvergenceError, PreconditionError, SingularityError
from f1zeta.powerlog import PowerLogSum, parse_power_log
from f1zeta.regularize import (
    Spectrum,
    circle_spectrum,
    gamma_ratio_poly,
    regularized_det,
    shift_spectrum,
    spectral_zeta,
    spectrum_by_name,
    two_variable_zeta_closed,
    two_variable_zeta_numeric,
    zeta_from_regularization,
)
from f1zeta.zetas import evaluate_zeta, zeta_of


def _circle_det_oracle(s: float) -> float:
    # independent closed form: squared regularized product over n^2 + s
    return 4 * math.sinh(math.pi * math.sqrt(s)) ** 2 / s


@st.composite
def positive_power_log_sums(draw, max_terms=4):
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        key = (Fraction(draw(st.integers(-4, 6)), draw(st.integers(1, 2))),
               draw(st.integers(0, 2)))
        terms[key] = terms.get(key, Fraction(0)) + draw(st.integers(1, 5))
    return PowerLogSum.from_dict(terms)


def test_gamma_ratio_poly():
    assert gamma_ratio_poly(0.7, 0) == 1
    assert gamma_ratio_poly(2, 3) == 2 * 3 * 4
    assert gamma_ratio_poly(0, 2) == 0


def test_closed_examples():
    alpha = Fraction(3, 2)
    n = PowerLogSum.power(alpha)
    for w, s in ((0.7, 4.0), (2 + 1j, 3 - 0.5j)):
        assert two_variable_zeta_closed(n, w, s) == pytest.approx(
            (complex(s) - 1.5) ** -complex(w)
        )
    assert two_variable_zeta_closed(PowerLogSum.log_power(), 1, 2) == pytest.approx(0.25)
    # at w = 1 the ratio polynomial is m!, so Z = sum c m! (s-lam)^(-1-m)
    n2 = parse_power_log("2*u + 3*log^2")
    s = 5.0
    assert two_variable_zeta_closed(n2, 1, s) == pytest.approx(
        2 / (s - 1) + 3 * 2 / s**3
    )
    with pytest.raises(SingularityError):
        two_variable_zeta_closed(n, 1.0, 1.5)


def test_closed_at_w_zero_is_value_at_one():
    n = parse_power_log("u^2 - 3 + u*log")
    assert two_variable_zeta_closed(n, 0, 6.0) == pytest.approx(
        float(n.value_at_one())
    )


def test_numeric_examples():
    assert two_variable_zeta_numeric(parse_power_log("u"), 1, 3) == pytest.approx(
        0.5, rel=1e-9
    )
    got = two_variable_zeta_numeric(PowerLogSum.log_power(), 0.5, 2)
    expected = special.gamma(1.5) / special.gamma(0.5) * 2**-1.5
    assert got == pytest.approx(expected, rel=1e-9)
    assert two_variable_zeta_numeric(PowerLogSum.constant(1), 2, 1) == pytest.approx(
        1.0, rel=1e-9
    )


def test_numeric_rejects_divergent_regions():
    n = parse_power_log("u^2")
    with pytest.raises(PreconditionError):
        two_variable_zeta_numeric(n, -0.5, 5)
    with pytest.raises(PreconditionError):
        two_variable_zeta_numeric(n, 1, 2)  # needs Re(s) > 2


@settings(max_examples=15, deadline=None)
@given(positive_power_log_sums())
def test_closed_matches_numeric(n):
    top = float(n.degree)
    for w in (0.5, 1.0, 2.0):
        for s in (top + 1.0, top + 2.5):
            closed = two_variable_zeta_closed(n, w, s)
            numeric = two_variable_zeta_numeric(n, w, s)
            assert abs(numeric - closed) <= 1e-8 * abs(closed)


def test_regularized_zeta_examples():
    alpha = 1.0
    assert zeta_from_regularization(PowerLogSum.power(1), 3) == pytest.approx(
        1 / (3 - alpha)
    )
    assert zeta_from_regularization(PowerLogSum.log_power(), 2) == pytest.approx(
        math.exp(0.5)
    )
    n = parse_power_log("1 - 2*u^-1 + u^-2")  # (1 - 1/u)^2
    assert zeta_from_regularization(n, 1) == pytest.approx(4 / 3)


@settings(max_examples=40, deadline=None)
@given(positive_power_log_sums())
def test_w_derivative_agrees_with_factored_evaluation(n):
    s = float(n.degree) + 1.7 + 0.3j
    direct = zeta_from_regularization(n, s)
    factored = evaluate_zeta(zeta_of(n), s)
    assert abs(direct - factored) <= 1e-12 * abs(factored)


def test_spectral_zeta_circle_values():
    circ = circle_spectrum()
    got = spectral_zeta(circ, 2, 0)
    assert got.value.real == pytest.approx(2 * special.zeta(4), rel=1e-12)
    assert got.error_bound < 1e-10

    # brute-force oracle with an integral tail bound
    ns = np.arange(1, 1_000_001, dtype=np.float64)
    brute = 2 * np.sum((ns**2 + 1) ** -2.0)
    tail = 2 / (3 * 1_000_000**3)
    got1 = spectral_zeta(circ, 2, 1)
    assert got1.error_bound < 1e-10
    assert abs(got1.value.real - brute) <= tail + 1e-10


def test_spectral_zeta_w_zero_continuation():
    circ = circle_spectrum()
    for s in (0.3, 1.0, 2.5):
        got = spectral_zeta(circ, 0, s)
        assert got.value == pytest.approx(-1.0)  # heat-kernel constant, s-free


def test_spectral_zeta_direct_mode_without_continuation():
    circ = circle_spectrum()
    bare = Spectrum("bare-circle", circ.eigenvalues, circ.tail_bound)
    got = spectral_zeta(bare, 3, 1)
    rich = spectral_zeta(circ, 3, 1)
    assert abs(got.value - rich.value) <= got.error_bound + rich.error_bound
    with pytest.raises(ConvergenceError):
        spectral_zeta(bare, 0.3, 1)  # below the abscissa, bound is infinite


def test_spectral_zeta_preconditions():
    circ = circle_spectrum()
    with pytest.raises(PreconditionError):
        spectral_zeta(circ, 2, -1)  # Re(s) <= -lambda_1


def test_regularized_det_cross_validation():
    circ = circle_spectrum()
    for s in (0.25, 1.0, 4.0):
        got = regularized_det(circ, s)
        want = _circle_det_oracle(s)
        assert abs(got - want) / want <= 1e-6


def test_regularized_det_small_s_limit():
    circ = circle_spectrum()
    s1, s2 = 1e-5, 1e-6
    v1, v2 = regularized_det(circ, s1), regularized_det(circ, s2)
    extrapolated = (s1 * v2 - s2 * v1) / (s1 - s2)
    assert abs(extrapolated - 4 * math.pi**2) <= 1e-4


def test_regularized_det_matches_w_derivative():
    # independent derivative oracle: central finite difference of the
    # continued spectral zeta in w around 0
    circ = circle_spectrum()
    s = 1.0
    h = 1e-4
    plus = spectral_zeta(circ, h, s).value.real
    minus = spectral_zeta(circ, -h, s).value.real
    slope = (plus - minus) / (2 * h)
    assert math.exp(-slope) == pytest.approx(regularized_det(circ, s), rel=1e-6)


def test_shift_consistency():
    circ = circle_spectrum()
    for s0 in (0.5, 1.0):
        shifted = shift_spectrum(circ, s0)
        fresh = regularized_det(shifted, 0.0)
        assert fresh == pytest.approx(regularized_det(circ, s0), rel=1e-9)
        moved = spectral_zeta(shifted, 2, 0.25).value
        assert moved == pytest.approx(spectral_zeta(circ, 2, 0.25 + s0).value, rel=1e-11)


def test_regularized_det_requires_continuation():
    circ = circle_spectrum()
    bare = Spectrum("bare", circ.eigenvalues, circ.tail_bound)
    with pytest.raises(ConvergenceError):
        regularized_det(bare, 1.0)


def test_spectral_identity_against_truncated_counting_function():
    # the t-integral of N(u) = sum u^(-lam_j) reproduces the operator zeta
    circ = circle_spectrum()
    cutoff = 30
    n = PowerLogSum.from_dict(
        {(Fraction(-k * k), 0): 2 for k in range(1, cutoff + 1)}
    )
    w, s = 2.0, 1.0
    integral = two_variable_zeta_numeric(n, w, s)
    full = spectral_zeta(circ, w, s)
    omitted = circ.tail_bound(cutoff, w, s)
    assert abs(integral - full.value) <= omitted + full.error_bound + 1e-10


def test_spectrum_registry():
    assert spectrum_by_name("circle").name == "circle"
    with pytest.raises(PreconditionError):
        spectrum_by_name("klein-bottle")
