import math
import re

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as spi

from equivprobe.quadrature import adaptive_simpson, integrate_piecewise
from equivprobe.signals import (Constant, Gaussian, Heaviside, Polynomial, Scale,
                                Sinusoid, Sum, Translate, continuous_convolve,
                                evaluate, integrate, signal_from_dict, translate)
from equivprobe import InputDomainError

from oracles import riemann

reals = st.floats(-3, 3, allow_nan=False)

primitives = st.one_of(
    st.builds(Heaviside, reals),
    st.builds(Constant, reals),
    st.builds(lambda c, lo, w: Polynomial(tuple(c), (lo, lo + w)),
              st.lists(st.floats(-2, 2), min_size=1, max_size=4), reals, st.floats(0, 3)),
    st.builds(Sinusoid, st.floats(-2, 2), st.floats(-10, 10), st.floats(-4, 4)),
    st.builds(Gaussian, st.floats(-2, 2), reals, st.floats(0.05, 2)),
)
signals = st.recursive(
    primitives,
    lambda inner: st.one_of(
        st.builds(lambda ts: Sum(tuple(ts)), st.lists(inner, min_size=1, max_size=3)),
        st.builds(Scale, inner, st.floats(-2, 2)),
        st.builds(Translate, inner, st.floats(-1, 1)),
    ),
    max_leaves=6,
)


def test_heaviside_values():
    assert evaluate(Heaviside(0), 0) == 0.0
    assert evaluate(Heaviside(0), 0.3) == 1.0
    assert evaluate(Heaviside(0), -1e-300) == 0.0
    assert evaluate(translate(Heaviside(0), 0.25), 0.25) == 0.0
    assert evaluate(translate(Heaviside(0), 0.25), 0.3) == 1.0


@pytest.mark.parametrize("a, b, expected", [(-1, 1, 1.0), (0, 0.5, 0.5), (-1, 0, 0.0), (0.2, 0.2, 0.0)])
def test_heaviside_integral(a, b, expected):
    assert integrate(Heaviside(0), a, b) == expected


def test_gaussian_integral_against_quadrature():
    g = Gaussian(1, 0, 0.3)
    value = integrate(g, -1, 1)
    ref, _ = spi.quad(lambda x: math.exp(-x * x / (2 * 0.09)), -1, 1, epsabs=1e-14)
    assert value == pytest.approx(ref, abs=1e-10)
    assert adaptive_simpson(g.eval, -1, 1) == pytest.approx(value, abs=1e-10)
    # closed form: 0.3 * sqrt(2 pi) * erf(1 / (0.3 sqrt 2))
    assert value == pytest.approx(0.3 * math.sqrt(2 * math.pi) * math.erf(1 / (0.3 * math.sqrt(2))), abs=1e-15)


def test_gaussian_tail_integral_keeps_precision():
    g = Gaussian(1, 0, 0.1)
    ref, _ = spi.quad(g.eval, 0.8, 0.9, epsabs=0, epsrel=1e-13)
    assert integrate(g, 0.8, 0.9) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("s", [
    Polynomial((1.0, -2.0, 0.5, 3.0), (-0.7, 0.4)),
    Sinusoid(1.3, 7.0, 0.4),
    Sinusoid(2.0, 0.0, 0.3),
    Scale(Translate(Gaussian(0.5, 0.2, 0.15), -0.3), -2.0),
    Sum((Constant(0.5), Heaviside(0.1), Sinusoid(1, 3, 0))),
])
def test_closed_forms_against_scipy(s):
    ref, _ = spi.quad(s.eval, -1.1, 0.9, points=[p for p in s.split_points() if -1.1 < p < 0.9],
                      epsabs=1e-14, limit=200)
    assert integrate(s, -1.1, 0.9) == pytest.approx(ref, abs=1e-12)


def test_input_errors():
    with pytest.raises(InputDomainError):
        evaluate(Heaviside(0), math.nan)
    with pytest.raises(InputDomainError):
        evaluate(Heaviside(0), math.inf)
    with pytest.raises(InputDomainError):
        integrate(Heaviside(0), 1, -1)
    with pytest.raises(InputDomainError):
        Gaussian(1, 0, 0)
    with pytest.raises(InputDomainError):
        Polynomial((1.0,), (1, 0))
    with pytest.raises(InputDomainError):
        translate(Heaviside(0), math.inf)


def test_translate_zero_is_identity():
    s = Sum((Gaussian(1, 0.1, 0.3), Heaviside(0.2)))
    xs = np.linspace(-2, 2, 101)
    assert [translate(s, 0).eval(x) for x in xs] == [s.eval(x) for x in xs]


def test_translate_composition_random_points():
    rng = np.random.default_rng(1)
    s = Sum((Gaussian(1, 0.1, 0.3), Sinusoid(0.5, 4, 1), Polynomial((1, 2, 3), (-5, 5))))
    a, b = 0.37, -0.81
    for x in rng.uniform(-2, 2, 1000):
        assert translate(translate(s, a), b).eval(x) == pytest.approx(translate(s, a + b).eval(x), abs=1e-12)


@given(primitives, reals, reals)
def test_translation_exact_for_primitives(s, x, d):
    assert translate(s, d).eval(x) == s.eval(x - d)


@given(signals, signals, reals, reals)
def test_integrate_linear(s1, s2, a, b):
    a, b = sorted((a, b))
    assert abs(integrate(Sum((s1, s2)), a, b) - integrate(s1, a, b) - integrate(s2, a, b)) <= 1e-13


@settings(max_examples=200)
@given(signals, reals, reals, reals)
def test_integrate_additive(s, a, b, c):
    a, b, c = sorted((a, b, c))
    assert abs(integrate(s, a, c) - integrate(s, a, b) - integrate(s, b, c)) <= 1e-12


def test_operator_sugar():
    s = 2 * Heaviside(0) + Constant(1)
    assert s.eval(1.0) == 3.0
    assert (-Constant(2)).eval(0) == -2.0


def test_convolve_zero_operand():
    for x in (-1.0, 0.0, 0.7):
        assert continuous_convolve(Constant(0), Gaussian(1, 0, 0.2), x, (-3, 3)) == 0.0


def test_convolve_box_box_apex():
    box = Polynomial((1.0,), (-0.5, 0.5))
    value = continuous_convolve(box, box, 0.0, (-1, 1))
    ref = riemann(lambda t: box.eval(t) * box.eval(-t), -1, 1, 200_000)
    assert value == pytest.approx(1.0, abs=1e-9)
    assert abs(value - ref) <= 1e-8


def test_convolve_box_box_triangle():
    box = Polynomial((1.0,), (-0.5, 0.5))
    for x in (-0.75, -0.3, 0.2, 0.9, 1.5):
        assert continuous_convolve(box, box, x, (-1, 1)) == pytest.approx(max(0.0, 1 - abs(x)), abs=1e-9)


def test_convolve_commutative_gaussians():
    rng = np.random.default_rng(3)
    for _ in range(5):
        a = Gaussian(rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5), rng.uniform(0.1, 0.5))
        b = Gaussian(rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5), rng.uniform(0.1, 0.5))
        x = rng.uniform(-1, 1)
        ab = continuous_convolve(a, b, x, (-6, 6))
        ba = continuous_convolve(b, a, x, (-6, 6))
        assert abs(ab - ba) <= 1e-9
        # Gaussian * Gaussian is Gaussian with summed variances
        var = a.width ** 2 + b.width ** 2
        exact = (a.amplitude * b.amplitude * 2 * math.pi * a.width * b.width
                 / math.sqrt(2 * math.pi * var)
                 * math.exp(-(x - a.center - b.center) ** 2 / (2 * var)))
        assert ab == pytest.approx(exact, abs=1e-9)


def test_convolve_window_errors():
    with pytest.raises(InputDomainError):
        continuous_convolve(Constant(1), Constant(1), 0.0, (1, -1))


def test_adaptive_simpson_basics():
    assert adaptive_simpson(lambda x: x ** 3 - x, -1, 2) == pytest.approx(2.25, abs=1e-13)
    assert adaptive_simpson(math.sin, 0, math.pi) == pytest.approx(2.0, abs=1e-11)
    assert adaptive_simpson(math.sin, 1, 1) == 0.0
    # a bump narrower than the node spacing needs its center as a split point
    bump = Gaussian(1, 0.37, 0.01)
    found = integrate_piecewise(bump.eval, -1, 1, bump.split_points())
    assert found == pytest.approx(bump.integrate(-1, 1), abs=1e-10)
    step = Heaviside(0.3)
    assert integrate_piecewise(step.eval, -1, 1, step.split_points()) == pytest.approx(0.7, abs=1e-12)


@given(signals)
def test_dict_round_trip(s):
    back = signal_from_dict(s.to_dict())
    assert back == s


@pytest.mark.parametrize("doc, where", [
    ({"type": "gaussian", "width": 0}, "signal"),
    ({"type": "wave"}, "signal.type"),
    ({"type": "sum", "terms": [{"type": "constant", "value": "x"}]}, "signal.terms[0].value"),
    ({"type": "scale", "factor": 2}, "signal.signal"),
    ({"type": "heaviside", "stp": 0}, "signal"),
])
def test_dict_errors_name_the_field(doc, where):
    with pytest.raises(InputDomainError, match=re.escape(where)):
        signal_from_dict(doc)
