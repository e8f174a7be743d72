#!/usr/bin/env python3
"""Regenerate the bundled 0-180 deg NACA 00xx polar fixtures.

The tables are synthetic. They follow the usual shape of low-Reynolds
symmetric-airfoil data over the full range: a linear lift slope up to stall,
an abrupt loss of leading-edge suction, flat-plate-like normal force beyond
stall, and a second, weaker attached region in reversed flow near 180 deg.
They are regression fixtures, not measurements.

Post-stall the force is split into a normal coefficient
``cn = cn90 sin(a) / (0.56 + 0.44 sin(a))`` and a chordwise coefficient
``ct = ct0 cos(a)`` and projected back onto lift and drag.

Usage:
    python scripts/make_polar_fixtures.py [output_dir]
"""

import math
import sys
from pathlib import Path

import numpy as np

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "flighttrim" / "data"

# thickness -> (lift slope /deg, stall deg, cd0, cd at 180 deg, post-stall chordwise ct0)
AIRFOILS = {
    "0012": (0.095, 10.0, 0.0095, 0.020, 0.060),
    "0015": (0.093, 11.0, 0.0100, 0.022, 0.065),
    "0018": (0.090, 12.0, 0.0110, 0.024, 0.070),
    "0021": (0.086, 13.0, 0.0120, 0.026, 0.075),
}
CN90 = 2.0
BLEND_DEG = 2.0
REVERSE = dict(slope=0.060, stall=8.0, ct0=0.050)


def _post_stall(a_deg, ct0):
    a = math.radians(a_deg)
    cn = CN90 * math.sin(a) / (0.56 + 0.44 * math.sin(a))
    ct = ct0 * math.cos(a)
    return cn * math.cos(a) - ct * math.sin(a), cn * math.sin(a) + ct * math.cos(a)


def _side(a_deg, slope, stall, cd_zero, quad, ct0):
    """Lift and drag on one side of 90 deg, a_deg measured from the leading flow direction."""
    attached = (slope * a_deg * (1.0 - 0.12 * (a_deg / stall) ** 4), cd_zero + quad * a_deg**2)
    if a_deg <= stall:
        return attached
    separated = _post_stall(a_deg, ct0)
    w = min(1.0, (a_deg - stall) / BLEND_DEG)
    if w < 1.0:
        at_stall = (slope * stall * 0.88, cd_zero + quad * stall**2)
        return tuple((1 - w) * s + w * p for s, p in zip(at_stall, separated))
    return separated


def polar(thickness):
    slope, stall, cd0, cd_pi, ct0 = AIRFOILS[thickness]
    grid = np.concatenate([np.arange(0, 31, 1.0), np.arange(35, 166, 5.0), np.arange(166, 181, 1.0)])
    rows = []
    for a in grid:
        if a <= 90:
            cl, cd = _side(a, slope, stall, cd0, 1.5e-4, ct0)
        else:
            b = 180.0 - a
            cl, cd = _side(b, REVERSE["slope"], REVERSE["stall"], cd_pi, 4e-4, REVERSE["ct0"])
            cl = -cl
        rows.append((a, round(cl, 4) + 0.0, round(cd, 4)))
    return rows


def write(thickness, out_dir):
    path = Path(out_dir) / f"naca{thickness}.csv"
    lines = [
        f"# name=NACA {thickness}",
        "# Re=160000",
        "# M=0.3",
        "# provenance: synthetic table from scripts/make_polar_fixtures.py, not measured data",
        "alpha_deg,cl,cd",
    ]
    lines += [f"{a:g},{cl:.4f},{cd:.4f}" for a, cl, cd in polar(thickness)]
    path.write_text("\n".join(lines) + "\n")
    return path


if __name__ == "__main__":
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_OUT
    out.mkdir(parents=True, exist_ok=True)
    for t in AIRFOILS:
        print(write(t, out))
