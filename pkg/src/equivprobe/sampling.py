"""Discretization: continuous signals to pixel vectors on a uniform grid."""
from dataclasses import dataclass

import numpy as np

from ._validation import InputDomainError, check_finite, check_samples

__all__ = ["Grid", "DiscreteSignal", "discretize_avg", "discretize_sample",
           "DISCRETIZERS", "discretize"]


@dataclass(frozen=True)
class Grid:
    """`n` pixels of width `dx`; pixel j covers [x0 + j*dx, x0 + (j+1)*dx]."""

    x0: float
    dx: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "x0", check_finite(self.x0, "x0"))
        object.__setattr__(self, "dx", check_finite(self.dx, "dx"))
        if self.dx <= 0.0:
            raise InputDomainError(f"dx must be > 0, got {self.dx!r}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise InputDomainError(f"n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def from_domain(cls, lo, hi, n):
        """Split [lo, hi] into n equal pixels."""
        lo = check_finite(lo, "lo")
        hi = check_finite(hi, "hi")
        if not hi > lo:
            raise InputDomainError(f"domain must have hi > lo, got {(lo, hi)}")
        return cls(lo, (hi - lo) / n, n)

    @property
    def edges(self):
        return self.x0 + np.arange(self.n + 1) * self.dx

    @property
    def centers(self):
        return self.x0 + (np.arange(self.n) + 0.5) * self.dx

    def to_dict(self):
        return {"x0": self.x0, "dx": self.dx, "n": self.n}


@dataclass(frozen=True, eq=False)
class DiscreteSignal:
    """Pixel values bound to the grid they were taken on."""

    samples: np.ndarray
    grid: Grid

    def __post_init__(self):
        samples = check_samples(self.samples)
        if samples.size != self.grid.n:
            raise InputDomainError(
                f"got {samples.size} samples for a grid of {self.grid.n} pixels")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.grid.n

    def __array__(self, dtype=None, copy=None):
        return np.array(self.samples, dtype=dtype)

    def with_samples(self, samples):
        return DiscreteSignal(samples, self.grid)

    def to_dict(self):
        return {"x0": self.grid.x0, "dx": self.grid.dx,
                "samples": [float(v) for v in self.samples]}

    @classmethod
    def from_dict(cls, data):
        samples = data["samples"]
        return cls(samples, Grid(data["x0"], data["dx"], len(samples)))


def discretize_avg(signal, grid):
    """Mean value of `signal` over each pixel (exact integral divided by width).

    Each integral is divided by its own floating-point edge width rather than
    the nominal dx, so a constant maps to itself and an average never leaves
    the range of the signal on that pixel.
    """
    edges = grid.edges
    values = [signal.integrate(edges[j], edges[j + 1]) / (edges[j + 1] - edges[j])
              for j in range(grid.n)]
    return DiscreteSignal(values, grid)


def discretize_sample(signal, grid):
    """Value of `signal` at each pixel center."""
    return DiscreteSignal([signal.eval(x) for x in grid.centers], grid)


DISCRETIZERS = {"avg": discretize_avg, "sample": discretize_sample}


def discretize(signal, grid, method="avg"):
    try:
        fn = DISCRETIZERS[method]
    except KeyError:
        raise InputDomainError(
            f"discretizer must be one of {sorted(DISCRETIZERS)}, got {method!r}") from None
    return fn(signal, grid)
