"""CSV and SVG emitters used by the command-line front end.

CSV layout: '# key=value' provenance lines, a column-name row, then data
rows with floats printed at 17 significant digits so re-parsing is lossless.
Masked samples become empty cells plus a nonzero pole_flag.
"""

from __future__ import annotations

import math

import numpy as np

FLOAT_FMT = "%.17g"


def _fmt(val) -> str:
    if isinstance(val, float):
        return FLOAT_FMT % val
    return str(val)


def write_csv(path, header: dict, columns: dict, mask=None):
    """Write columns (name -> 1d array) with provenance header.

    mask, if given, marks valid rows; invalid rows get empty numeric cells
    and pole_flag=1.
    """
    names = list(columns)
    arrays = [np.asarray(columns[n]) for n in names]
    n = len(arrays[0])
    if any(len(a) != n for a in arrays):
        raise ValueError("all columns must have the same length")
    if mask is not None and len(mask) != n:
        raise ValueError("mask length must match the columns")
    with open(path, "w") as fh:
        for key, val in header.items():
            fh.write(f"# {key}={_fmt(val)}\n")
        cols = names + (["pole_flag"] if mask is not None else [])
        fh.write(",".join(cols) + "\n")
        for i in range(n):
            if mask is not None and not mask[i]:
                # keep the x coordinate, blank the field values
                row = [FLOAT_FMT % arrays[0][i]] + [""] * (len(names) - 1) + ["1"]
            else:
                row = [FLOAT_FMT % a[i] for a in arrays]
                if mask is not None:
                    row.append("0")
            fh.write(",".join(row) + "\n")


def read_csv(path):
    """Parse a file written by write_csv: (header dict, column dict).

    Empty cells come back as NaN.
    """
    header = {}
    names = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                key, _, val = line[2:].partition("=")
                header[key] = val
            elif names is None:
                names = line.split(",")
            elif line:
                rows.append([float(c) if c else math.nan for c in line.split(",")])
    data = np.array(rows, dtype=float) if rows else np.empty((0, len(names or [])))
    return header, {name: data[:, i] for i, name in enumerate(names or [])}


def _svg_path(xs, ys, x_to_px, y_to_px):
    """Polyline segments, broken at NaNs."""
    parts = []
    pen_up = True
    for x, y in zip(xs, ys):
        if not (math.isfinite(x) and math.isfinite(y)):
            pen_up = True
            continue
        cmd = "M" if pen_up else "L"
        parts.append(f"{cmd}{x_to_px(x):.2f},{y_to_px(y):.2f}")
        pen_up = False
    return " ".join(parts)


def write_svg(path, x, series, labels, dashed, title=""):
    """Minimal static line chart: one polyline per series, optional dashing.

    The y-range is clipped to the 1-99 percentile of the finite samples so
    pole blow-ups do not flatten the rest of the profile.
    """
    width, height = 800, 500
    ml, mr, mt, mb = 60, 20, 40, 45
    x = np.asarray(x, dtype=float)
    finite = np.concatenate([np.asarray(s, float)[np.isfinite(s)] for s in series])
    if finite.size == 0:
        raise ValueError("nothing to plot")
    y_lo, y_hi = np.percentile(finite, [1.0, 99.0])
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    x_lo, x_hi = float(np.min(x)), float(np.max(x))

    def x_px(v):
        return ml + (v - x_lo) / (x_hi - x_lo) * (width - ml - mr)

    def y_px(v):
        return height - mb - (v - y_lo) / (y_hi - y_lo) * (height - mt - mb)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width/2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
        # axes
        f'<line x1="{ml}" y1="{height-mb}" x2="{width-mr}" y2="{height-mb}" '
        'stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height-mb}" stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv = x_lo + frac * (x_hi - x_lo)
        yv = y_lo + frac * (y_hi - y_lo)
        lines.append(
            f'<text x="{x_px(xv):.1f}" y="{height-mb+18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{xv:.3g}</text>')
        lines.append(
            f'<text x="{ml-8}" y="{y_px(yv)+4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{yv:.3g}</text>')

    colors = ("#1f3d7a", "#a03030", "#2a7a2a", "#806020")
    clip_id = "plotclip"
    lines.append(f'<clipPath id="{clip_id}"><rect x="{ml}" y="{mt}" '
                 f'width="{width-ml-mr}" height="{height-mt-mb}"/></clipPath>')
    for i, (s, lbl, dsh) in enumerate(zip(series, labels, dashed)):
        d = _svg_path(x, np.asarray(s, float), x_px, y_px)
        dash = ' stroke-dasharray="8,5"' if dsh else ""
        lines.append(f'<path d="{d}" fill="none" stroke="{colors[i % 4]}" '
                     f'stroke-width="1.6" clip-path="url(#{clip_id})"{dash}/>')
        lines.append(
            f'<text x="{width-mr-8}" y="{mt+18+16*i}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12" fill="{colors[i % 4]}">'
            f'{lbl}{" (dashed)" if dsh else " (solid)"}</text>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
