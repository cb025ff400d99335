"""Continuous 1D signals with exact pointwise values and exact integrals.

A signal is a small immutable expression tree. Leaves are analytic
primitives (step, constant, polynomial piece, sinusoid, Gaussian bump) and
inner nodes combine them by summation, scaling and translation. Every node
knows its own antiderivative, so pixel averages can be computed without
quadrature error.

    >>> s = translate(Heaviside(0.0), 0.25)
    >>> s.eval(0.25), s.eval(0.3)
    (0.0, 1.0)
    >>> s.integrate(-1.0, 1.0)
    0.75
"""
import math
from dataclasses import dataclass

from ._validation import InputDomainError, check_finite, check_interval
from .quadrature import integrate_piecewise

__all__ = [
    "ContinuousSignal", "Heaviside", "Constant", "Polynomial", "Sinusoid",
    "Gaussian", "Sum", "Scale", "Translate", "evaluate", "integrate",
    "translate", "continuous_convolve", "signal_from_dict",
]

_SQRT_HALF_PI = math.sqrt(0.5 * math.pi)


class ContinuousSignal:
    """Base class of every signal node."""

    kind = None

    def eval(self, x):
        return self._eval(check_finite(x, "x"))

    def __call__(self, x):
        return self.eval(x)

    def integrate(self, a, b):
        """Exact integral over [a, b]; a > b is rejected rather than negated."""
        a, b = check_interval(a, b)
        return self._integrate(a, b)

    def translate(self, offset):
        return Translate(self, offset)

    def split_points(self):
        """Abscissae where the signal is non-smooth or has a narrow feature."""
        return ()

    def to_dict(self):
        raise NotImplementedError

    def __add__(self, other):
        if not isinstance(other, ContinuousSignal):
            return NotImplemented
        return Sum((self, other))

    def __mul__(self, factor):
        if isinstance(factor, ContinuousSignal):
            return NotImplemented
        return Scale(self, factor)

    __rmul__ = __mul__

    def __neg__(self):
        return Scale(self, -1.0)

    def _eval(self, x):
        raise NotImplementedError

    def _integrate(self, a, b):
        raise NotImplementedError


@dataclass(frozen=True)
class Heaviside(ContinuousSignal):
    """Unit step: 1 for x > step, 0 for x <= step."""

    step: float = 0.0
    kind = "heaviside"

    def __post_init__(self):
        object.__setattr__(self, "step", check_finite(self.step, "step"))

    def _eval(self, x):
        return 1.0 if x > self.step else 0.0

    def _integrate(self, a, b):
        lo = max(a, self.step)
        return b - lo if b > lo else 0.0

    def split_points(self):
        return (self.step,)

    def to_dict(self):
        return {"type": self.kind, "step": self.step}


@dataclass(frozen=True)
class Constant(ContinuousSignal):
    value: float = 0.0
    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "value", check_finite(self.value, "value"))

    def _eval(self, x):
        return self.value

    def _integrate(self, a, b):
        return self.value * (b - a)

    def to_dict(self):
        return {"type": self.kind, "value": self.value}


@dataclass(frozen=True)
class Polynomial(ContinuousSignal):
    """c[0] + c[1] x + c[2] x**2 + ... on the closed support [lo, hi], zero elsewhere.

    The support ends may be infinite.
    """

    coefficients: tuple = (0.0,)
    support: tuple = (-math.inf, math.inf)
    kind = "polynomial"

    def __post_init__(self):
        coeffs = tuple(check_finite(c, "coefficient") for c in self.coefficients)
        if not coeffs:
            raise InputDomainError("polynomial needs at least one coefficient")
        lo, hi = (float(v) for v in self.support)
        if math.isnan(lo) or math.isnan(hi) or lo > hi:
            raise InputDomainError(f"polynomial support must satisfy lo <= hi, got {(lo, hi)}")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "support", (lo, hi))

    def _eval(self, x):
        lo, hi = self.support
        if x < lo or x > hi:
            return 0.0
        return _horner(self.coefficients, x)

    def _integrate(self, a, b):
        lo = max(a, self.support[0])
        hi = min(b, self.support[1])
        if hi <= lo:
            return 0.0
        anti = (0.0,) + tuple(c / (k + 1) for k, c in enumerate(self.coefficients))
        return _horner(anti, hi) - _horner(anti, lo)

    def split_points(self):
        return tuple(p for p in self.support if math.isfinite(p))

    def to_dict(self):
        return {"type": self.kind, "coefficients": list(self.coefficients),
                "support": list(self.support)}


def _horner(coeffs, x):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class Sinusoid(ContinuousSignal):
    """amplitude * sin(frequency * x + phase), frequency in rad per unit x."""

    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0
    kind = "sinusoid"

    def __post_init__(self):
        for name in ("amplitude", "frequency", "phase"):
            object.__setattr__(self, name, check_finite(getattr(self, name), name))

    def _eval(self, x):
        return self.amplitude * math.sin(self.frequency * x + self.phase)

    def _integrate(self, a, b):
        # product form of cos(wa + p) - cos(wb + p): no cancellation for short
        # intervals, and the sinc factor stays finite as the frequency goes to 0
        w = self.frequency
        mid = 0.5 * w * (a + b) + self.phase
        half = 0.5 * w * (b - a)
        sinc = math.sin(half) / half if half != 0.0 else 1.0
        return self.amplitude * (b - a) * math.sin(mid) * sinc

    def to_dict(self):
        return {"type": self.kind, "amplitude": self.amplitude,
                "frequency": self.frequency, "phase": self.phase}


@dataclass(frozen=True)
class Gaussian(ContinuousSignal):
    """amplitude * exp(-(x - center)**2 / (2 width**2))."""

    amplitude: float = 1.0
    center: float = 0.0
    width: float = 1.0
    kind = "gaussian"

    def __post_init__(self):
        for name in ("amplitude", "center", "width"):
            object.__setattr__(self, name, check_finite(getattr(self, name), name))
        if self.width <= 0.0:
            raise InputDomainError(f"gaussian width must be > 0, got {self.width!r}")

    def _eval(self, x):
        z = (x - self.center) / self.width
        return self.amplitude * math.exp(-0.5 * z * z)

    def _integrate(self, a, b):
        scale = self.width * math.sqrt(2.0)
        za = (a - self.center) / scale
        zb = (b - self.center) / scale
        # erfc differences keep precision when both ends sit in the same tail
        if za > 0.0:
            diff = math.erfc(za) - math.erfc(zb)
        elif zb < 0.0:
            diff = math.erfc(-zb) - math.erfc(-za)
        else:
            diff = math.erf(zb) - math.erf(za)
        return self.amplitude * self.width * _SQRT_HALF_PI * diff

    def split_points(self):
        return (self.center,)

    def to_dict(self):
        return {"type": self.kind, "amplitude": self.amplitude,
                "center": self.center, "width": self.width}


@dataclass(frozen=True)
class Sum(ContinuousSignal):
    terms: tuple = ()
    kind = "sum"

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if not isinstance(t, ContinuousSignal):
                raise InputDomainError(f"sum term is not a signal: {t!r}")
        object.__setattr__(self, "terms", terms)

    def _eval(self, x):
        total = 0.0
        for t in self.terms:
            total += t._eval(x)
        return total

    def _integrate(self, a, b):
        total = 0.0
        for t in self.terms:
            total += t._integrate(a, b)
        return total

    def split_points(self):
        return tuple(p for t in self.terms for p in t.split_points())

    def to_dict(self):
        return {"type": self.kind, "terms": [t.to_dict() for t in self.terms]}


@dataclass(frozen=True)
class Scale(ContinuousSignal):
    signal: ContinuousSignal
    factor: float = 1.0
    kind = "scale"

    def __post_init__(self):
        if not isinstance(self.signal, ContinuousSignal):
            raise InputDomainError(f"scaled operand is not a signal: {self.signal!r}")
        object.__setattr__(self, "factor", check_finite(self.factor, "factor"))

    def _eval(self, x):
        return self.factor * self.signal._eval(x)

    def _integrate(self, a, b):
        return self.factor * self.signal._integrate(a, b)

    def split_points(self):
        return self.signal.split_points()

    def to_dict(self):
        return {"type": self.kind, "factor": self.factor, "signal": self.signal.to_dict()}


@dataclass(frozen=True)
class Translate(ContinuousSignal):
    """The wrapped signal moved by `offset` towards +x: value at x is signal(x - offset)."""

    signal: ContinuousSignal
    offset: float = 0.0
    kind = "translate"

    def __post_init__(self):
        if not isinstance(self.signal, ContinuousSignal):
            raise InputDomainError(f"translated operand is not a signal: {self.signal!r}")
        object.__setattr__(self, "offset", check_finite(self.offset, "offset"))

    def _eval(self, x):
        return self.signal._eval(x - self.offset)

    def _integrate(self, a, b):
        return self.signal._integrate(a - self.offset, b - self.offset)

    def split_points(self):
        return tuple(p + self.offset for p in self.signal.split_points())

    def to_dict(self):
        return {"type": self.kind, "offset": self.offset, "signal": self.signal.to_dict()}


def evaluate(signal, x):
    return signal.eval(x)


def integrate(signal, a, b):
    return signal.integrate(a, b)


def translate(signal, delta):
    """Return the signal whose value at x is signal(x - delta)."""
    return Translate(signal, delta)


def continuous_convolve(a, b, x, window, tol=1e-10):
    """Integral of a(t) * b(x - t) for t over `window` = (lo, hi).

    The integrand must be negligible outside the window; that is left to the
    caller. Evaluated by adaptive Simpson, split at the non-smooth points of
    both operands.
    """
    lo, hi = check_interval(window[0], window[1], ("window lo", "window hi"))
    x = check_finite(x, "x")
    breaks = list(a.split_points())
    breaks.extend(x - p for p in b.split_points())
    return integrate_piecewise(lambda t: a._eval(t) * b._eval(x - t), lo, hi, breaks, tol)


_KINDS = {cls.kind: cls for cls in (Heaviside, Constant, Polynomial, Sinusoid,
                                    Gaussian, Sum, Scale, Translate)}

_FIELDS = {
    "heaviside": ("step",),
    "constant": ("value",),
    "polynomial": ("coefficients", "support"),
    "sinusoid": ("amplitude", "frequency", "phase"),
    "gaussian": ("amplitude", "center", "width"),
    "sum": ("terms",),
    "scale": ("signal", "factor"),
    "translate": ("signal", "offset"),
}
_REQUIRED = {"coefficients", "terms", "signal"}


def signal_from_dict(data, path="signal"):
    """Rebuild a signal tree from its `to_dict` form.

    Errors are raised as InputDomainError with a dotted path to the offending
    field, e.g. ``signals[0].terms[1].width``.
    """
    if not isinstance(data, dict):
        raise InputDomainError(f"{path}: expected an object, got {type(data).__name__}")
    kind = data.get("type")
    if kind not in _KINDS:
        raise InputDomainError(f"{path}.type: unknown signal type {kind!r}, "
                               f"expected one of {sorted(_KINDS)}")
    allowed = set(_FIELDS[kind])
    extra = sorted(set(data) - allowed - {"type"})
    if extra:
        raise InputDomainError(f"{path}: unexpected field(s) {extra} for type {kind!r}")
    kwargs = {}
    for name in _FIELDS[kind]:
        if name not in data:
            if name in _REQUIRED:
                raise InputDomainError(f"{path}.{name}: missing")
            continue
        value = data[name]
        if name == "signal":
            value = signal_from_dict(value, f"{path}.signal")
        elif name == "terms":
            if not isinstance(value, list):
                raise InputDomainError(f"{path}.terms: expected a list")
            value = tuple(signal_from_dict(t, f"{path}.terms[{i}]") for i, t in enumerate(value))
        elif name in ("coefficients", "support"):
            if not isinstance(value, list) or (name == "support" and len(value) != 2):
                raise InputDomainError(f"{path}.{name}: expected a list"
                                       + (" of two numbers" if name == "support" else ""))
            value = tuple(_number(v, f"{path}.{name}") for v in value)
        else:
            value = _number(value, f"{path}.{name}")
        kwargs[name] = value
    try:
        return _KINDS[kind](**kwargs)
    except InputDomainError as exc:
        raise InputDomainError(f"{path}: {exc}") from None


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputDomainError(f"{path}: expected a number, got {value!r}")
    return float(value)
