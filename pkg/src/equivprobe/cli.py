"""Command-line front end.

    equivprobe repro [--out PATH] [--format csv|json]
    equivprobe sweep --config PATH --out PATH [--format csv|json|svg-plot]
    equivprobe check [--seed N]

Exit codes: 0 success, 1 reproduction or property mismatch, 2 usage,
configuration or I/O error.
"""
import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass

import numpy as np

from .checks import run_properties
from .convnet import apply_layer, edge_detector_layer
from .equivariance import translation_equiv_residual, sweep
from .sampling import Grid, discretize_avg
from .serialize import (ConfigError, format_float, load_sweep_spec, records_to_csv,
                        records_to_json)
from .signals import Heaviside, translate

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

# Heaviside worked example: N = 4 pixels on [-1, 1], translated by half a pixel.
REPRO_EXPECTED = {
    "original_pixels": [0.0, 0.0, 1.0, 1.0],
    "translated_pixels": [0.0, 0.0, 0.5, 1.0],
    "layer_output_original": [0.0, 1.0, 0.0, 0.0],
    "layer_output_translated": [0.0, 0.0, 0.0, 0.0],
}
REPRO_TOL = 1e-12


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    format: str = "csv"
    seed: int = 0


def _write_output(path, data):
    """Write text or bytes to `path` (None or '-' is stdout) via a temp file and rename."""
    if path in (None, "-"):
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        else:
            sys.stdout.write(data)
        return
    mode = "wb" if isinstance(data, bytes) else "w"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".equivprobe-", suffix=".tmp")
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": ""})) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def repro_table(layer=None):
    """Compute the four vectors and the translation residual of the Heaviside example."""
    layer = layer or edge_detector_layer()
    grid = Grid(-1.0, 0.5, 4)
    step = Heaviside(0.0)
    delta = 0.5 * grid.dx
    original = discretize_avg(step, grid)
    translated = discretize_avg(translate(step, delta), grid)
    record = translation_equiv_residual(layer, step, grid, delta, "linear", "avg")
    return {
        "original_pixels": [float(v) for v in original.samples],
        "translated_pixels": [float(v) for v in translated.samples],
        "layer_output_original": [float(v) for v in apply_layer(layer, original).samples],
        "layer_output_translated": [float(v) for v in apply_layer(layer, translated).samples],
        "translation_residual_linf": record.linf,
        "translation_residual_l2": record.l2,
    }


def _repro_mismatches(table):
    out = []
    for key, expected in REPRO_EXPECTED.items():
        got = np.asarray(table[key])
        if got.shape != (len(expected),) or np.max(np.abs(got - expected)) > REPRO_TOL:
            out.append(f"{key}: got {table[key]}, expected {expected}")
    return out


def run_repro(output_path=None, fmt="csv", layer=None):
    """Reproduce the Heaviside example; `layer` overrides the edge detector (test hook)."""
    table = repro_table(layer)
    mismatches = _repro_mismatches(table)
    if fmt == "json":
        text = json.dumps({**table, "match": not mismatches}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["quantity", "value_0", "value_1", "value_2", "value_3"])
        for key, values in table.items():
            cells = [format_float(v) for v in np.atleast_1d(values)]
            writer.writerow([key, *cells, *[""] * (4 - len(cells))])
        text = buf.getvalue()
    try:
        _write_output(output_path, text)
    except OSError as exc:
        print(f"repro: cannot write {output_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if mismatches:
        print("repro: values differ from the worked example", file=sys.stderr)
        for line in mismatches:
            print(f"  {line}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def run_sweep(config_path, output_path, fmt="csv", threads=None):
    try:
        spec = load_sweep_spec(config_path)
    except ConfigError as exc:
        print(f"sweep: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sweep: cannot read {config_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        records = sweep(spec, threads)
    except ValueError as exc:
        print(f"sweep: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if fmt == "json":
        data = records_to_json(records)
    elif fmt == "svg-plot":
        from .plotting import render_svg
        buf = io.BytesIO()
        render_svg(records, buf)
        data = buf.getvalue()
    else:
        data = records_to_csv(records)
    try:
        _write_output(output_path, data)
    except OSError as exc:
        print(f"sweep: cannot write {output_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def run_check(seed=0, stream=None):
    """Run the property suite, one PASS/FAIL line per property; 0 iff all pass."""
    stream = stream or sys.stdout
    failed = 0
    total = 0
    print(f"check seed={seed}", file=stream)
    for name, ok, detail in run_properties(seed):
        total += 1
        if ok:
            print(f"PASS {name}", file=stream)
        else:
            failed += 1
            print(f"FAIL {name}: {detail}", file=stream)
    print(f"{total - failed} passed, {failed} failed", file=stream)
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


def build_parser():
    parser = argparse.ArgumentParser(
        prog="equivprobe",
        description="Shift vs translation equivariance of 1D convolutional layers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("repro", help="reproduce the Heaviside edge-detector example")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("sweep", help="evaluate residuals over a JSON sweep config")
    p.add_argument("--config", required=True, help="sweep config JSON")
    p.add_argument("--out", required=True, help="output file, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json", "svg-plot"), default="csv")

    p = sub.add_parser("check", help="run the randomized property suite")
    p.add_argument("--seed", type=int, default=0)
    return parser


def parse_run_config(argv=None):
    args = build_parser().parse_args(argv)
    return RunConfig(command=args.command,
                     input=getattr(args, "config", None),
                     output=getattr(args, "out", None),
                     format=getattr(args, "format", "csv"),
                     seed=getattr(args, "seed", 0))


def main(argv=None):
    try:
        cfg = parse_run_config(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if cfg.command == "repro":
        return run_repro(cfg.output, cfg.format)
    if cfg.command == "sweep":
        return run_sweep(cfg.input, cfg.output, cfg.format)
    return run_check(cfg.seed)


if __name__ == "__main__":
    sys.exit(main())
