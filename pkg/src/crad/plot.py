"""Static SVG 1.1 scatter plots of labelled 2-D data.

The output is plain text built by hand, so identical inputs give identical
bytes.
"""

import numpy as np

from .dataset import as_data_matrix

PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#393b79",
]
NOISE_COLOR = "#999999"


def _fmt(v):
    return f"{v:.2f}"


def scatter_svg(X, labels, cols=(0, 1), width=480, height=480, margin=20, radius=2.5):
    """Render columns ``cols`` of ``X`` as an SVG string.

    Clusters cycle through a fixed palette; label 0 is drawn as gray crosses.
    """
    X = as_data_matrix(X)
    labels = np.asarray(labels, dtype=np.int64)
    if len(labels) != X.shape[0]:
        raise ValueError(f"{len(labels)} labels for {X.shape[0]} points")
    i, j = cols
    if not (0 <= i < X.shape[1] and 0 <= j < X.shape[1]):
        raise ValueError(f"columns {cols} out of range for {X.shape[1]} columns")
    pts = X[:, [i, j]]
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    inner = np.array([width - 2 * margin, height - 2 * margin], dtype=float)
    px = margin + (pts[:, 0] - lo[0]) / span[0] * inner[0]
    # SVG y grows downwards
    py = height - margin - (pts[:, 1] - lo[1]) / span[1] * inner[1]

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    r = radius
    for x, y, lab in zip(px, py, labels):
        if lab == 0:
            out.append(
                f'<path d="M{_fmt(x - r)},{_fmt(y - r)}L{_fmt(x + r)},{_fmt(y + r)}'
                f'M{_fmt(x - r)},{_fmt(y + r)}L{_fmt(x + r)},{_fmt(y - r)}" '
                f'stroke="{NOISE_COLOR}" stroke-width="1"/>'
            )
        else:
            color = PALETTE[(int(lab) - 1) % len(PALETTE)]
            out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, X, labels, cols=(0, 1), **kw):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(scatter_svg(X, labels, cols=cols, **kw))
    return path
