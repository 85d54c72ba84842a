"""Render site-occupation probability curves from plot-data CSV files.

Consumes only the file formats the spin-chain CLI emits: the CSV with
header ``t,p_first,p_last`` and, optionally, the event-report JSON whose
``roots[*].tau`` entries become markers.  No in-process coupling to the
producer; the language boundary is the file contract.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

CURVES = ("p_first", "p_last", "both")


class PlotDataError(ValueError):
    """Missing or malformed input file."""


@dataclass(frozen=True)
class PlotSpec:
    """What to render: input CSV, optional event JSON, output image."""

    csv_path: str
    output_path: str
    title: str = ""
    curves: str = "both"
    ese_json_path: str | None = None

    def __post_init__(self):
        if self.curves not in CURVES:
            raise ValueError(f"curves must be one of {CURVES}")


def read_curves(path: str):
    """Parse a plot-data CSV into (t, p_first, p_last) lists."""
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise PlotDataError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise PlotDataError(f"{path} is empty") from None
        if [h.strip() for h in header] != ["t", "p_first", "p_last"]:
            raise PlotDataError(f"{path} has header {header}, expected t,p_first,p_last")
        ts, first, last = [], [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                t, pf, pl = (float(v) for v in row)
            except ValueError as exc:
                raise PlotDataError(f"{path}:{lineno}: bad row {row}") from exc
            ts.append(t)
            first.append(pf)
            last.append(pl)
    if not ts:
        raise PlotDataError(f"{path} contains no data rows")
    return ts, first, last


def read_event_times(path: str):
    """Event times from a report JSON ({"roots": [{"tau": ...}, ...]})."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise PlotDataError(f"cannot open {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PlotDataError(f"{path} is not valid JSON: {exc}") from exc
    try:
        return [float(r["tau"]) for r in doc.get("roots", [])]
    except (TypeError, KeyError) as exc:
        raise PlotDataError(f"{path} has no usable roots list") from exc


def render(spec: PlotSpec) -> str:
    """Draw the probability curves (plus event markers) to an image file."""
    ts, first, last = read_curves(spec.csv_path)
    taus = read_event_times(spec.ese_json_path) if spec.ese_json_path else []

    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    if spec.curves in ("p_first", "both"):
        ax.plot(ts, first, color="tab:blue", lw=1.6, label=r"$|\langle e_0|\psi(t)\rangle|^2$")
    if spec.curves in ("p_last", "both"):
        ax.plot(ts, last, color="tab:orange", lw=1.6, label=r"$|\langle e_N|\psi(t)\rangle|^2$")
    for i, tau in enumerate(taus):
        ax.axvline(tau, color="tab:red", lw=0.9, ls="--",
                   label="state exclusion" if i == 0 else None)
        ax.plot([tau], [0.0], marker="o", color="tab:red", ms=5, zorder=5)
    ax.set_xlim(ts[0], ts[-1])
    ax.set_ylim(-0.02, 1.05)
    ax.set_xlabel("t")
    ax.set_ylabel("site occupation probability")
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(loc="center left")
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    return spec.output_path
