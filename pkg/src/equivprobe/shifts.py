"""Shift operators on pixel vectors: exact integer shifts and interpolated fractional shifts.

Shift amounts are in pixels and move content towards higher indices:
out[j] = in[j - shift]. A fractional shift evaluates an interpolant of the
samples at positions j - shift, so it is an approximation by construction.
"""
import math

import numpy as np

from ._validation import ConfigurationError, InputDomainError, check_finite
from .boundary import as_samples, check_boundary, gather, rewrap

__all__ = ["SCHEMES", "shift_int", "shift_frac"]

SCHEMES = ("linear", "cubic", "fourier")


def shift_int(b, shift, boundary="circular"):
    """out[j] = in[j - shift]; vacated pixels are filled per `boundary`."""
    if isinstance(shift, bool) or int(shift) != shift:
        raise InputDomainError(f"integer shift expected, got {shift!r}")
    check_boundary(boundary)
    x, grid = as_samples(b)
    return rewrap(gather(x, np.arange(x.size) - int(shift), boundary), grid)


def _linear(x, base, frac, boundary):
    # position j - shift lies between base + j and base + j + 1, at fraction 1 - frac
    j = np.arange(x.size) + base
    return frac * gather(x, j, boundary) + (1.0 - frac) * gather(x, j + 1, boundary)


def _cubic(x, base, frac, boundary):
    """Catmull-Rom through the four samples around each target position."""
    j = np.arange(x.size) + base
    ym1 = gather(x, j - 1, boundary)
    y0 = gather(x, j, boundary)
    y1 = gather(x, j + 1, boundary)
    y2 = gather(x, j + 2, boundary)
    t = 1.0 - frac
    return y0 + 0.5 * t * ((y1 - ym1)
                           + t * ((2.0 * ym1 - 5.0 * y0 + 4.0 * y1 - y2)
                                  + t * (3.0 * (y0 - y1) + y2 - ym1)))


def _fourier(x, shift):
    n = x.size
    spectrum = np.fft.rfft(x)
    k = np.arange(spectrum.size)
    ramp = np.exp(-2j * np.pi * k * (shift / n))
    if n % 2 == 0:
        # Nyquist bin keeps only the real part of its phase factor so the result stays real
        ramp[-1] = math.cos(math.pi * shift)
    return np.fft.irfft(spectrum * ramp, n)


def shift_frac(b, shift, scheme="linear", boundary="circular"):
    """Translate pixel data by a possibly non-integer number of pixels.

    Schemes: ``linear`` (two-tap), ``cubic`` (Catmull-Rom, four-tap) and
    ``fourier`` (phase ramp on the periodic extension, circular boundary
    only). Integer shifts fall through to `shift_int` for every scheme.
    """
    shift = check_finite(shift, "shift")
    if scheme not in SCHEMES:
        raise InputDomainError(f"scheme must be one of {list(SCHEMES)}, got {scheme!r}")
    check_boundary(boundary)
    if scheme == "fourier" and boundary != "circular":
        raise ConfigurationError(
            f"fourier shift needs the circular boundary, got {boundary!r}")
    if shift.is_integer():
        return shift_int(b, int(shift), boundary)
    x, grid = as_samples(b)
    if scheme == "fourier":
        return rewrap(_fourier(x, shift), grid)
    whole = math.floor(shift)
    frac = shift - whole
    interp = _linear if scheme == "linear" else _cubic
    return rewrap(interp(x, -whole - 1, frac, boundary), grid)
