"""Static SVG line charts of sweep residuals."""
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _series(records, x_field, fixed_field):
    lines = defaultdict(list)
    for r in records:
        if r.skipped:
            continue
        key = (r.signal, r.layer, r.scheme, r.discretizer, r.boundary, getattr(r, fixed_field))
        lines[key].append((getattr(r, x_field), r.linf))
    return {k: sorted(v) for k, v in lines.items()}


def _label(key, fixed_field):
    signal, layer, scheme, disc, boundary, fixed = key
    fixed_name = "n" if fixed_field == "n" else "shift px"
    return f"s{signal} L{layer} {scheme}/{disc}/{boundary} {fixed_name}={fixed:g}"


def render_svg(records, fh):
    """Write residual-vs-delta and residual-vs-N panels (max-abs residual) to `fh`."""
    plt.rcParams["svg.hashsalt"] = "equivprobe"
    fig, (ax_d, ax_n) = plt.subplots(1, 2, figsize=(11, 4.5))
    for key, pts in _series(records, "delta", "n").items():
        xs, ys = zip(*pts)
        ax_d.plot(xs, ys, marker="o", label=_label(key, "n"))
    ax_d.set_xlabel("translation (signal units)")
    ax_d.set_ylabel("residual, max-abs")
    ax_d.set_title("residual vs translation")

    for key, pts in _series(records, "n", "delta_px").items():
        xs, ys = zip(*pts)
        ax_n.plot(xs, ys, marker="o", label=_label(key, "delta_px"))
    ax_n.set_xlabel("pixels N")
    ax_n.set_title("residual vs grid size")
    if any(r.n != records[0].n for r in records if not r.skipped):
        ax_n.set_xscale("log", base=2)
    for ax in (ax_d, ax_n):
        ax.grid(True, alpha=0.3)
        if ax.get_legend_handles_labels()[0]:
            ax.legend(fontsize=6)
    fig.tight_layout()
    fig.savefig(fh, format="svg", metadata={"Date": None})
    plt.close(fig)
