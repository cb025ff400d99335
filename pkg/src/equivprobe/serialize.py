"""JSON/CSV encodings for sweep configs and residual records.

Sweep config document (every key optional, missing means an empty axis)::

    {
      "signals":      [{"type": "gaussian", "amplitude": 1, "center": 0, "width": 0.3}],
      "layers":       [{"taps": [2, -2], "origin": 1, "bias": -1,
                        "nonlinearity": "relu", "boundary": "zero"}],
      "grids":        [{"x0": -1, "dx": 0.5, "n": 4}, {"domain": [-1, 1], "n": 16}],
      "deltas":       [0.25, {"px": 0.5}],
      "schemes":      ["linear", "cubic", "fourier"],
      "discretizers": ["avg", "sample"]
    }

A number in `deltas` is a translation in signal units; ``{"px": f}`` means
f pixels of whichever grid the row uses.
"""
import csv
import io
import json
import math

from ._validation import InputDomainError
from .convnet import ConvLayer
from .equivariance import PixelDelta, SweepSpec
from .sampling import Grid
from .signals import signal_from_dict

CSV_COLUMNS = ("n", "delta", "delta_px", "scheme", "boundary", "discretizer",
               "l2", "linf", "skipped", "reason")

_CONFIG_KEYS = ("signals", "layers", "grids", "deltas", "schemes", "discretizers")


class ConfigError(InputDomainError):
    """Malformed sweep config; the message names the line or field at fault."""


def _grid_from_dict(data, path):
    if not isinstance(data, dict):
        raise InputDomainError(f"{path}: expected an object")
    keys = set(data)
    try:
        if keys == {"x0", "dx", "n"}:
            return Grid(_num(data["x0"], f"{path}.x0"), _num(data["dx"], f"{path}.dx"),
                        data["n"])
        if keys == {"domain", "n"}:
            dom = data["domain"]
            if not isinstance(dom, list) or len(dom) != 2:
                raise InputDomainError(f"{path}.domain: expected [lo, hi]")
            return Grid.from_domain(_num(dom[0], f"{path}.domain"),
                                    _num(dom[1], f"{path}.domain"), data["n"])
    except (InputDomainError, TypeError) as exc:
        raise InputDomainError(f"{path}: {exc}") from None
    raise InputDomainError(f"{path}: expected keys {{x0, dx, n}} or {{domain, n}}, "
                           f"got {sorted(keys)}")


def _num(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise InputDomainError(f"{path}: expected a finite number, got {value!r}")
    return float(value)


def _delta_from_json(data, path):
    if isinstance(data, dict):
        if set(data) != {"px"}:
            raise InputDomainError(f"{path}: expected a number or {{\"px\": number}}")
        return PixelDelta(_num(data["px"], f"{path}.px"))
    return _num(data, path)


def sweep_spec_from_dict(data):
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be a JSON object")
    unknown = sorted(set(data) - set(_CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"config: unknown key(s) {unknown}; allowed {list(_CONFIG_KEYS)}")
    for key in _CONFIG_KEYS:
        if key in data and not isinstance(data[key], list):
            raise ConfigError(f"{key}: expected a list")
    try:
        return SweepSpec(
            signals=[signal_from_dict(s, f"signals[{i}]")
                     for i, s in enumerate(data.get("signals", []))],
            layers=[ConvLayer.from_dict(s, f"layers[{i}]")
                    for i, s in enumerate(data.get("layers", []))],
            grids=[_grid_from_dict(g, f"grids[{i}]") for i, g in enumerate(data.get("grids", []))],
            deltas=[_delta_from_json(d, f"deltas[{i}]")
                    for i, d in enumerate(data.get("deltas", []))],
            schemes=[_choice(s, ("linear", "cubic", "fourier"), f"schemes[{i}]")
                     for i, s in enumerate(data.get("schemes", []))],
            discretizers=[_choice(s, ("avg", "sample"), f"discretizers[{i}]")
                          for i, s in enumerate(data.get("discretizers", []))],
        )
    except ConfigError:
        raise
    except InputDomainError as exc:
        raise ConfigError(str(exc)) from None


def _choice(value, options, path):
    if value not in options:
        raise InputDomainError(f"{path}: expected one of {list(options)}, got {value!r}")
    return value


def sweep_spec_to_dict(spec):
    def delta(d):
        return {"px": d.px} if isinstance(d, PixelDelta) else d
    return {
        "signals": [s.to_dict() for s in spec.signals],
        "layers": [layer.to_dict() for layer in spec.layers],
        "grids": [g.to_dict() for g in spec.grids],
        "deltas": [delta(d) for d in spec.deltas],
        "schemes": list(spec.schemes),
        "discretizers": list(spec.discretizers),
    }


def load_sweep_spec(path):
    """Read and validate a sweep config file, raising ConfigError with a location."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return sweep_spec_from_dict(data)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def format_float(value):
    """Shortest string that round-trips to the same double; empty for NaN."""
    value = float(value)
    if math.isnan(value):
        return ""
    return repr(value)


def records_to_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([r.n, format_float(r.delta), format_float(r.delta_px), r.scheme,
                         r.boundary, r.discretizer, format_float(r.l2), format_float(r.linf),
                         "true" if r.skipped else "false", r.reason])
    return buf.getvalue()


def records_to_json(records):
    return json.dumps([r.to_dict() for r in records], indent=2) + "\n"


def records_from_csv(text):
    """Parse `records_to_csv` output back into dicts of typed values."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({
            "n": int(row["n"]),
            "delta": float(row["delta"]),
            "delta_px": float(row["delta_px"]),
            "scheme": row["scheme"],
            "boundary": row["boundary"],
            "discretizer": row["discretizer"],
            "l2": float(row["l2"]) if row["l2"] else None,
            "linf": float(row["linf"]) if row["linf"] else None,
            "skipped": row["skipped"] == "true",
            "reason": row["reason"],
        })
    return rows
