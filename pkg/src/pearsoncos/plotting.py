"""Matplotlib rendering of (cos, r) clouds with their envelope lines."""

from __future__ import annotations

import io
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .sheaf import CloudPoint, Envelope  # noqa: E402

COS_LIMITS = (0.0, 1.0)
R_LIMITS = (-1.0, 1.0)

# fixed ids and no timestamp so identical input gives identical SVG bytes
_SVG_RC = {"svg.hashsalt": "pearsoncos", "svg.fonttype": "path"}


def cloud_figure(points: Sequence[CloudPoint], env: Envelope, width: float = 6.0):
    """Scatter of the cloud with the two envelope lines overlaid.

    Points are clamped into the [0, 1] x [-1, 1] viewport; lines are clipped
    by the axes.
    """
    fig, ax = plt.subplots(figsize=(width, width * 0.75))
    if points:
        cos = np.clip([p.cos for p in points], *COS_LIMITS)
        r = np.clip([p.r for p in points], *R_LIMITS)
        ax.scatter(cos, r, s=9, color="0.25", zorder=3, label="pairs")
    grid = np.linspace(0.0, 1.0, 101)
    for line, style, name in (
        (env.min_line, "-", "min ab = %.4g" % env.ab_min),
        (env.max_line, "--", "max ab = %.4g" % env.ab_max),
    ):
        ax.plot(grid, line.slope * (grid - line.cos_at_r0), style, color="C0", lw=1, label=name)
    ax.axhline(0.0, color="0.6", lw=0.5)
    ax.set_xlim(*COS_LIMITS)
    ax.set_ylim(*R_LIMITS)
    ax.set_xlabel("Cos")
    ax.set_ylabel("r")
    ax.set_title(f"n = {env.n}")
    ax.legend(loc="lower right", fontsize="small", frameon=False)
    fig.tight_layout()
    return fig


def figure_to_svg(fig) -> bytes:
    buf = io.BytesIO()
    with matplotlib.rc_context(_SVG_RC):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()
