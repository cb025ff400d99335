"""Exceptions and small input-checking helpers shared across the package."""
import math

import numpy as np


class InputDomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ConfigurationError(ValueError):
    """A combination of options that cannot be evaluated together."""


def check_finite(value, name):
    value = float(value)
    if not math.isfinite(value):
        raise InputDomainError(f"{name} must be finite, got {value!r}")
    return value


def check_interval(a, b, names=("a", "b")):
    a = check_finite(a, names[0])
    b = check_finite(b, names[1])
    if a > b:
        raise InputDomainError(f"{names[0]} must not exceed {names[1]}, got {a!r} > {b!r}")
    return a, b


def check_samples(values, name="samples"):
    """Coerce to a finite, non-empty 1D float array (always a fresh copy)."""
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise InputDomainError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InputDomainError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise InputDomainError(f"{name} must be finite")
    return arr


def check_choice(value, choices, name):
    if value not in choices:
        raise InputDomainError(f"{name} must be one of {sorted(choices)}, got {value!r}")
    return value
