"""Discrete convolution and single convolutional layers.

Orientation: a kernel is a list of taps plus an `origin`, the tap index that
lines up with the output position. Output j is

    sum_i taps[i] * input[j - (i - origin)]

so taps [2, -2] with origin 1 compute 2*input[j+1] - 2*input[j], a
forward-difference edge detector.
"""
from dataclasses import dataclass

import numpy as np

from ._validation import InputDomainError, check_choice, check_finite
from .boundary import as_samples, check_boundary, gather, rewrap

__all__ = ["Kernel", "ConvLayer", "NONLINEARITIES", "convolve", "apply_layer",
           "edge_detector_layer"]


NONLINEARITIES = {
    "identity": lambda v: v,
    "relu": lambda v: np.maximum(v, 0.0),
    "tanh": np.tanh,
}


@dataclass(frozen=True)
class Kernel:
    taps: tuple
    origin: int = 0

    def __post_init__(self):
        taps = tuple(check_finite(t, "tap") for t in np.ravel(self.taps))
        if not taps:
            raise InputDomainError("kernel needs at least one tap")
        if isinstance(self.origin, bool) or int(self.origin) != self.origin:
            raise InputDomainError(f"origin must be an integer, got {self.origin!r}")
        origin = int(self.origin)
        if not 0 <= origin < len(taps):
            raise InputDomainError(f"origin must lie in [0, {len(taps) - 1}], got {origin}")
        object.__setattr__(self, "taps", taps)
        object.__setattr__(self, "origin", origin)

    @property
    def l1_norm(self):
        return float(np.sum(np.abs(self.taps)))


@dataclass(frozen=True)
class ConvLayer:
    """nonlinearity(convolve(kernel, input, boundary) + bias)."""

    kernel: Kernel
    bias: float = 0.0
    nonlinearity: str = "relu"
    boundary: str = "circular"

    def __post_init__(self):
        if not isinstance(self.kernel, Kernel):
            object.__setattr__(self, "kernel", Kernel(self.kernel))
        object.__setattr__(self, "bias", check_finite(self.bias, "bias"))
        check_choice(self.nonlinearity, NONLINEARITIES, "nonlinearity")
        check_boundary(self.boundary)

    def __call__(self, b):
        return apply_layer(self, b)

    def to_dict(self):
        return {"taps": list(self.kernel.taps), "origin": self.kernel.origin,
                "bias": self.bias, "nonlinearity": self.nonlinearity,
                "boundary": self.boundary}

    @classmethod
    def from_dict(cls, data, path="layer"):
        if not isinstance(data, dict):
            raise InputDomainError(f"{path}: expected an object")
        extra = sorted(set(data) - {"taps", "origin", "bias", "nonlinearity", "boundary"})
        if extra:
            raise InputDomainError(f"{path}: unexpected field(s) {extra}")
        if "taps" not in data:
            raise InputDomainError(f"{path}.taps: missing")
        taps = data["taps"]
        if not isinstance(taps, list) or not all(
                isinstance(t, (int, float)) and not isinstance(t, bool) for t in taps):
            raise InputDomainError(f"{path}.taps: expected a list of numbers")
        try:
            return cls(Kernel(taps, data.get("origin", 0)),
                       data.get("bias", 0.0),
                       data.get("nonlinearity", "relu"),
                       data.get("boundary", "circular"))
        except (InputDomainError, TypeError) as exc:
            raise InputDomainError(f"{path}: {exc}") from None


def edge_detector_layer():
    """Edge detector from the Heaviside example: taps [2, -2] at origin 1, bias -1, ReLU."""
    return ConvLayer(Kernel((2.0, -2.0), origin=1), bias=-1.0,
                     nonlinearity="relu", boundary="zero")


def convolve(kernel, b, boundary="circular"):
    """Same-length discrete convolution of `b` with `kernel`.

    Accepts a DiscreteSignal (returns one on the same grid) or a plain
    array-like (returns an ndarray). Taps are accumulated in index order,
    so a circular shift of the input yields a bitwise-identical circular
    shift of the output.
    """
    if not isinstance(kernel, Kernel):
        kernel = Kernel(kernel)
    check_boundary(boundary)
    x, grid = as_samples(b)
    j = np.arange(x.size)
    out = np.zeros(x.size)
    for i, tap in enumerate(kernel.taps):
        out += tap * gather(x, j - (i - kernel.origin), boundary)
    return rewrap(out, grid)


def apply_layer(layer, b):
    x, grid = as_samples(b)
    z = convolve(layer.kernel, x, layer.boundary) + layer.bias
    return rewrap(NONLINEARITIES[layer.nonlinearity](z), grid)

