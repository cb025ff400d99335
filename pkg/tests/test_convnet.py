import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from equivprobe import InputDomainError
from equivprobe.convnet import (NONLINEARITIES, ConvLayer, Kernel, apply_layer,
                                convolve, edge_detector_layer)
from equivprobe.sampling import DiscreteSignal, Grid
from equivprobe.shifts import shift_int

from oracles import brute_convolve, brute_layer

BOUNDARIES = ["zero", "circular", "reflect"]
EDGE_KERNEL = Kernel((2.0, -2.0), origin=1)


def test_edge_kernel_convolution():
    out = convolve(EDGE_KERNEL, [0, 0, 1, 1], "zero")
    assert out.tolist() == [0, 2, 0, -2]


def test_edge_detector_layer_outputs():
    layer = edge_detector_layer()
    assert apply_layer(layer, [0, 0, 1, 1]).tolist() == [0, 1, 0, 0]
    assert apply_layer(layer, [0, 0, 0.5, 1]).tolist() == [0, 0, 0, 0]


def test_edge_detector_layer_keeps_grid():
    sig = DiscreteSignal([0, 0, 1, 1], Grid(-1, 0.5, 4))
    out = apply_layer(edge_detector_layer(), sig)
    assert isinstance(out, DiscreteSignal)
    assert out.grid == sig.grid


@pytest.mark.parametrize("boundary", BOUNDARIES)
def test_delta_kernel_is_identity(boundary):
    x = np.random.default_rng(0).standard_normal(9)
    np.testing.assert_array_equal(convolve(Kernel((1.0,)), x, boundary), x)
    layer = ConvLayer(Kernel((1.0,)), 0.0, "identity", boundary)
    np.testing.assert_array_equal(apply_layer(layer, x), x)


def test_matches_brute_force_oracle():
    rng = np.random.default_rng(11)
    for _ in range(300):
        n = int(rng.integers(1, 33))
        taps = rng.uniform(-2, 2, rng.integers(1, 8))
        origin = int(rng.integers(taps.size))
        boundary = BOUNDARIES[rng.integers(3)]
        x = rng.standard_normal(n)
        got = convolve(Kernel(tuple(taps), origin), x, boundary)
        assert np.max(np.abs(got - brute_convolve(taps, origin, x, boundary))) <= 1e-12


def test_layer_matches_brute_force():
    rng = np.random.default_rng(12)
    for nl in NONLINEARITIES:
        for boundary in BOUNDARIES:
            taps = rng.uniform(-1, 1, 3)
            x = rng.standard_normal(10)
            layer = ConvLayer(Kernel(tuple(taps), 2), 0.3, nl, boundary)
            expect = brute_layer(taps, 2, 0.3, nl, boundary, x)
            np.testing.assert_allclose(apply_layer(layer, x), expect, rtol=0, atol=1e-12)


def test_reflect_boundary_half_sample():
    # tap at offset -1 reads index j+1; for j = n-1 that is index n, reflected to n-1
    out = convolve(Kernel((1.0, 0.0), origin=1), [1.0, 2.0, 3.0], "reflect")
    assert out.tolist() == [2.0, 3.0, 3.0]
    out = convolve(Kernel((0.0, 1.0), origin=0), [1.0, 2.0, 3.0], "reflect")
    assert out.tolist() == [1.0, 1.0, 2.0]


def test_long_kernel_on_short_signal():
    x = [1.0, -2.0]
    taps = [0.5, 1.0, -1.5, 2.0, 0.25]
    for b in BOUNDARIES:
        np.testing.assert_allclose(convolve(Kernel(taps, 2), x, b),
                                   brute_convolve(taps, 2, x, b), atol=1e-14)


def test_validation():
    with pytest.raises(InputDomainError):
        Kernel(())
    with pytest.raises(InputDomainError):
        Kernel((1.0, 2.0), origin=2)
    with pytest.raises(InputDomainError):
        ConvLayer(EDGE_KERNEL, nonlinearity="sigmoid")
    with pytest.raises(InputDomainError):
        ConvLayer(EDGE_KERNEL, boundary="valid")
    with pytest.raises(InputDomainError):
        convolve(EDGE_KERNEL, [], "zero")


def test_layer_dict_round_trip():
    layer = edge_detector_layer()
    assert layer.to_dict() == {"taps": [2.0, -2.0], "origin": 1, "bias": -1.0,
                               "nonlinearity": "relu", "boundary": "zero"}
    assert ConvLayer.from_dict(layer.to_dict()) == layer


layers = st.builds(
    lambda taps, o, bias, nl: ConvLayer(Kernel(tuple(taps), o % len(taps)), bias, nl, "circular"),
    st.lists(st.floats(-3, 3), min_size=1, max_size=6),
    st.integers(0, 5), st.floats(-2, 2), st.sampled_from(sorted(NONLINEARITIES)))
vectors = st.lists(st.floats(-10, 10), min_size=1, max_size=20).map(np.array)


@given(layers, vectors, st.integers(-50, 50))
def test_circular_layer_is_bitwise_shift_equivariant(layer, x, shift):
    lhs = apply_layer(layer, shift_int(x, shift, "circular"))
    rhs = shift_int(apply_layer(layer, x), shift, "circular")
    assert np.array_equal(lhs, rhs)


@given(st.lists(st.floats(-3, 3), min_size=1, max_size=6), st.sampled_from(BOUNDARIES),
       st.integers(1, 20), st.floats(-2, 2), st.floats(-2, 2), st.data())
def test_convolve_linear(taps, boundary, n, a, b, data):
    x1 = np.array(data.draw(st.lists(st.floats(-5, 5), min_size=n, max_size=n)))
    x2 = np.array(data.draw(st.lists(st.floats(-5, 5), min_size=n, max_size=n)))
    k = Kernel(tuple(taps))
    lhs = convolve(k, a * x1 + b * x2, boundary)
    rhs = a * convolve(k, x1, boundary) + b * convolve(k, x2, boundary)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


@given(vectors, st.integers(-30, 30), st.sampled_from(sorted(NONLINEARITIES)))
def test_nonlinearity_commutes_with_rotation(x, shift, name):
    fn = NONLINEARITIES[name]
    assert np.array_equal(fn(np.roll(x, shift)), np.roll(fn(x), shift))
