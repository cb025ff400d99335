"""Residuals of equivariance identities, Lipschitz estimates and parameter sweeps.

A residual is the norm of the difference between the two sides of an
identity evaluated on the same grid:

- shift: layer(shift(b)) vs shift(layer(b)), integer pixel shifts
- translation: layer(D(translate(s))) vs g(layer(D(s))), where g is an
  interpolating fractional shift
- discretization commutation: D(translate(s)) vs g(D(s))

Both norms act on the raw sample difference (no dx weighting).
"""
import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ._validation import ConfigurationError, InputDomainError, check_finite
from .boundary import as_samples
from .convnet import apply_layer
from .sampling import DISCRETIZERS, discretize
from .shifts import SCHEMES, shift_frac, shift_int
from .signals import translate

__all__ = ["ResidualRecord", "PixelDelta", "SweepSpec", "residual_norms",
           "shift_equiv_residual", "translation_equiv_residual",
           "discretization_commutation_residual", "lipschitz_estimate",
           "sweep", "THREADS_ENV"]

THREADS_ENV = "EQUIVPROBE_THREADS"


@dataclass(frozen=True)
class ResidualRecord:
    n: int
    delta: float
    delta_px: float
    scheme: str
    boundary: str
    discretizer: str
    l2: float
    linf: float
    skipped: bool = False
    reason: str = ""
    signal: int | None = None
    layer: int | None = None

    def to_dict(self):
        d = asdict(self)
        for key in ("l2", "linf"):
            if math.isnan(d[key]):
                d[key] = None
        return d


def residual_norms(lhs, rhs):
    """(l2, linf) of lhs - rhs, computed so that linf <= l2 <= sqrt(n) * linf holds exactly."""
    diff = np.asarray(lhs, dtype=float) - np.asarray(rhs, dtype=float)
    linf = float(np.max(np.abs(diff))) if diff.size else 0.0
    if linf == 0.0:
        return 0.0, 0.0
    ratio = diff / linf
    return float(linf * math.sqrt(float(np.sum(ratio * ratio)))), linf


def shift_equiv_residual(layer, b, shift):
    """Norms of layer(shift(b)) - shift(layer(b)) for an integer pixel shift."""
    x, _ = as_samples(b)
    lhs = apply_layer(layer, shift_int(x, shift, layer.boundary))
    rhs = shift_int(apply_layer(layer, x), shift, layer.boundary)
    return residual_norms(lhs, rhs)


def translation_equiv_residual(layer, signal, grid, delta, scheme="linear",
                               discretizer="avg"):
    """Compare the layer on a translated-then-discretized signal with a
    fractional shift of the layer output on the untranslated one."""
    delta = check_finite(delta, "delta")
    delta_px = delta / grid.dx
    lhs = apply_layer(layer, discretize(translate(signal, delta), grid, discretizer))
    rhs = shift_frac(apply_layer(layer, discretize(signal, grid, discretizer)),
                     delta_px, scheme, layer.boundary)
    l2, linf = residual_norms(lhs.samples, rhs.samples)
    return ResidualRecord(grid.n, delta, delta_px, scheme, layer.boundary,
                          discretizer, l2, linf)


def discretization_commutation_residual(signal, grid, delta, scheme="linear",
                                        discretizer="avg", boundary="zero"):
    """Norms of D(translate(s, delta)) - g(D(s)); zero only in degenerate cases."""
    delta = check_finite(delta, "delta")
    delta_px = delta / grid.dx
    lhs = discretize(translate(signal, delta), grid, discretizer)
    rhs = shift_frac(discretize(signal, grid, discretizer), delta_px, scheme, boundary)
    l2, linf = residual_norms(lhs.samples, rhs.samples)
    return ResidualRecord(grid.n, delta, delta_px, scheme, boundary, discretizer, l2, linf)


def lipschitz_estimate(layer, b, trials=100, eps=1e-6, seed=0):
    """Largest observed ||layer(b + eps*u) - layer(b)|| / ||eps*u|| over random unit u.

    A lower bound on the local Lipschitz constant around b; deterministic
    for a given seed.
    """
    if isinstance(trials, bool) or int(trials) != trials or trials < 1:
        raise InputDomainError(f"trials must be an integer >= 1, got {trials!r}")
    eps = check_finite(eps, "eps")
    if eps <= 0.0:
        raise InputDomainError(f"eps must be > 0, got {eps!r}")
    x, _ = as_samples(b)
    rng = np.random.default_rng(seed)
    base = apply_layer(layer, x)
    best = 0.0
    for _ in range(int(trials)):
        u = rng.standard_normal(x.size)
        step = eps * (u / np.linalg.norm(u))
        ratio = np.linalg.norm(apply_layer(layer, x + step) - base) / np.linalg.norm(step)
        best = max(best, float(ratio))
    return best


@dataclass(frozen=True)
class PixelDelta:
    """A translation given as a fraction of each grid's pixel width."""

    px: float

    def resolve(self, grid):
        return self.px * grid.dx


@dataclass
class SweepSpec:
    """Axes of a sweep; rows are their Cartesian product in this field order."""

    signals: list = field(default_factory=list)
    layers: list = field(default_factory=list)
    grids: list = field(default_factory=list)
    deltas: list = field(default_factory=list)
    schemes: list = field(default_factory=list)
    discretizers: list = field(default_factory=list)

    def rows(self):
        return list(itertools.product(
            enumerate(self.signals), enumerate(self.layers), self.grids,
            self.deltas, self.schemes, self.discretizers))


def _evaluate_row(row):
    (si, signal), (li, layer), grid, delta, scheme, discretizer = row
    if isinstance(delta, PixelDelta):
        delta = delta.resolve(grid)
    try:
        rec = translation_equiv_residual(layer, signal, grid, delta, scheme, discretizer)
    except ConfigurationError as exc:
        return ResidualRecord(grid.n, float(delta), float(delta) / grid.dx, scheme,
                              layer.boundary, discretizer, math.nan, math.nan,
                              skipped=True, reason=str(exc), signal=si, layer=li)
    return ResidualRecord(**{**asdict(rec), "signal": si, "layer": li})


def thread_count(threads=None):
    """Worker count from the argument or EQUIVPROBE_THREADS; 0 or unset means auto."""
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if threads < 0:
        raise ConfigurationError(f"thread count must be >= 0, got {threads}")
    return threads or (os.cpu_count() or 1)


def sweep(spec, threads=None):
    """Evaluate every row of `spec`; results come back in row order.

    Fourier shifts on a non-circular layer are returned as skipped rows
    instead of raising.
    """
    for d in spec.discretizers:
        if d not in DISCRETIZERS:
            raise InputDomainError(f"unknown discretizer {d!r}")
    for s in spec.schemes:
        if s not in SCHEMES:
            raise InputDomainError(f"unknown scheme {s!r}")
    rows = spec.rows()
    if not rows:
        return []
    workers = min(thread_count(threads), len(rows))
    if workers == 1:
        return [_evaluate_row(r) for r in rows]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_row, rows))
