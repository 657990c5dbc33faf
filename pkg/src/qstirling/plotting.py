"""Efficiency-curve figures for sweep output.

Two routes: :func:`gnuplot_script` writes a script that plots straight from
the CSV file, and :func:`render_efficiency_figure` draws the same four curves
with matplotlib.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .sweep import SweepResult  # noqa: E402

# column, legend title, gnuplot style, matplotlib style
CURVES = (
    ("eta_regen_free", "regenerative, no cost", "dt 1 lc rgb 'black'", dict(color="black", ls="-")),
    ("eta_regen_cost", "regenerative, with W_cost", "dt 2 lc rgb 'red'", dict(color="red", ls="--")),
    ("eta_conventional", "conventional", "dt 4 lc rgb 'blue'", dict(color="blue", ls="-.")),
    ("eta_carnot", "Carnot", "dt 3 lc rgb 'dark-green'", dict(color="green", ls=":")),
)

AXIS_LABELS = {
    "kappa": "kappa = lambda1/lambda2",
    "j": "J",
    "lambda1": "lambda1",
    "lambda2": "lambda2",
    "t_hot": "T_h",
    "t_cold": "T_c",
}

GNUPLOT_TEMPLATE = """\
# efficiency curves from %(csv)s
set datafile separator ','
set datafile missing ''
set terminal pngcairo size 800,560
set output '%(png)s'
set xlabel '%(xlabel)s'
set ylabel 'efficiency'
set key top left
set grid
plot %(plots)s
"""


def gnuplot_script(csv_path: os.PathLike, knob_column: str, png_path: Optional[os.PathLike] = None) -> str:
    """Gnuplot script rendering the four efficiency curves from ``csv_path``.

    Columns are addressed by header name so the script survives column
    reordering.
    """
    csv_path = Path(csv_path)
    png_path = Path(png_path) if png_path else csv_path.with_suffix(".gnuplot.png")
    plots = []
    for i, (col, title, style, _) in enumerate(CURVES):
        source = f"'{csv_path.name}'" if i == 0 else "''"
        plots.append(
            f'{source} using "{knob_column}":"{col}" with lines lw 2 {style} title "{title}"'
        )
    return GNUPLOT_TEMPLATE % {
        "csv": csv_path.name,
        "png": png_path.name,
        "xlabel": AXIS_LABELS.get(knob_column, knob_column),
        "plots": ", \\\n     ".join(plots),
    }


def _series(result: SweepResult, column: str):
    xs, ys = [], []
    for x, y in zip(result.column(result.spec.knob.column), result.column(column)):
        xs.append(x)
        ys.append(float("nan") if y is None else y)
    return xs, ys


def render_efficiency_figure(result: SweepResult, path: os.PathLike, title: Optional[str] = None) -> Path:
    """Draw the efficiency curves of ``result`` and save to ``path``.

    Undefined efficiencies are left as gaps.
    """
    path = Path(path)
    knob_col = result.spec.knob.column
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for col, label, _, style in CURVES:
        xs, ys = _series(result, col)
        ax.plot(xs, ys, lw=1.8, label=label, **style)
    ax.set_xlabel(AXIS_LABELS.get(knob_col, knob_col))
    ax.set_ylabel("efficiency")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", frameon=False, fontsize=9)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    # fixed metadata keeps repeated renders byte-identical
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path
