"""Out-of-range index handling for finite 1D signals.

Every operator that reads `x[i]` for i outside [0, n) goes through `gather`,
so a boundary mode means the same thing in convolution and in shifting.

- zero: reads outside the signal return 0
- circular: i mod n
- reflect: half-sample symmetric, -1 -> 0, n -> n-1, -2 -> 1, ...
"""
import numpy as np

from ._validation import InputDomainError, check_samples

BOUNDARIES = ("zero", "circular", "reflect")


def _circular(idx, n):
    return np.mod(idx, n)


def _reflect(idx, n):
    m = np.mod(idx, 2 * n)
    return np.where(m >= n, 2 * n - 1 - m, m)


_RESOLVERS = {"circular": _circular, "reflect": _reflect}


def check_boundary(boundary):
    if boundary not in BOUNDARIES:
        raise InputDomainError(f"boundary must be one of {list(BOUNDARIES)}, got {boundary!r}")
    return boundary


def gather(x, idx, boundary):
    """Return x[idx] elementwise, resolving out-of-range indices per `boundary`."""
    check_boundary(boundary)
    n = x.shape[-1]
    idx = np.asarray(idx)
    if boundary == "zero":
        inside = (idx >= 0) & (idx < n)
        out = np.zeros(idx.shape, dtype=x.dtype)
        out[inside] = x[idx[inside]]
        return out
    return x[_RESOLVERS[boundary](idx, n)]


def as_samples(b):
    """Split a DiscreteSignal or array-like into (float array, grid or None)."""
    grid = getattr(b, "grid", None)
    if grid is not None:
        return np.asarray(b.samples, dtype=float), grid
    return check_samples(b, "signal"), None


def rewrap(values, grid):
    """Inverse of `as_samples`: keep DiscreteSignal in, DiscreteSignal out."""
    if grid is None:
        return values
    from .sampling import DiscreteSignal
    return DiscreteSignal(values, grid)
