#!/usr/bin/env python3
"""Fine-grid stall-angle oracle, independent of the package.

Reads a bundled polar CSV with the csv module, interpolates linearly by hand
and returns the smallest angle on a 0.001 deg grid in (0, 90) with positive
lift and tan(a) c_L(a) <= c_D(a) - c_D(180). Used once to freeze regression
values for the tests.
"""

import csv
import math
import sys
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "flighttrim" / "data"


def rows(name):
    with open(DATA / f"{name}.csv") as fh:
        body = [line for line in fh if not line.startswith("#")]
    r = list(csv.DictReader(body))
    return [(float(x["alpha_deg"]), float(x["cl"]), float(x["cd"])) for x in r]


def interp(tab, a):
    for (a0, l0, d0), (a1, l1, d1) in zip(tab, tab[1:]):
        if a0 <= a <= a1:
            w = (a - a0) / (a1 - a0)
            return l0 + w * (l1 - l0), d0 + w * (d1 - d0)
    raise ValueError(a)


def alpha_s(name, step=0.001):
    tab = rows(name)
    cd_pi = tab[-1][2]
    k = 1
    while k * step < 90:
        a = k * step
        cl, cd = interp(tab, a)
        if cl > 0 and math.tan(math.radians(a)) * cl <= cd - cd_pi:
            return a
        k += 1
    return None


if __name__ == "__main__":
    for n in sys.argv[1:] or ["naca0012", "naca0015", "naca0018", "naca0021"]:
        print(n, alpha_s(n))
