"""Tabulated airfoil polars: CSV ingestion, symmetric extensions, interpolated models.

File format::

    # name=NACA 0021
    # Re=160000
    # M=0.3
    alpha_deg,cl,cd
    0,0,0.012
    ...

Angles are degrees on disk and radians once a model is built.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .aero import AeroModel, ModelMetadata, SymmetryClass, verify_declared_class
from .errors import ParseError, RangeError, SymmetryVerificationError, ValidationError


HEADER = ("alpha_deg", "cl", "cd")
BUNDLED = ("naca0012", "naca0015", "naca0018", "naca0021")

_META_KEYS = {"name": "name", "re": "reynolds", "m": "mach"}


class Coverage(str, enum.Enum):
    QUARTER = "0-90"
    HALF = "0-180"
    FULL = "-180-180"
    PARTIAL = "partial"


@dataclass(frozen=True)
class PolarTable:
    alpha_deg: tuple[float, ...]
    cl: tuple[float, ...]
    cd: tuple[float, ...]
    reynolds: float | None = None
    mach: float | None = None
    name: str = ""

    def __post_init__(self):
        n = len(self.alpha_deg)
        if not (len(self.cl) == n == len(self.cd)):
            raise ValidationError("alpha_deg, cl and cd must have equal lengths")
        if n < 2:
            raise ValidationError("a polar needs at least two rows")
        a = np.asarray(self.alpha_deg)
        if not np.all(np.diff(a) > 0):
            raise ValidationError("alpha_deg must be strictly increasing")
        bad = [i for i, v in enumerate(self.cd) if not v > 0]
        if bad:
            raise ValidationError(f"cd must be positive (row {bad[0]}, alpha={self.alpha_deg[bad[0]]})")

    def __len__(self) -> int:
        return len(self.alpha_deg)

    @property
    def coverage(self) -> Coverage:
        lo, hi = self.alpha_deg[0], self.alpha_deg[-1]
        if lo == 0 and hi == 90:
            return Coverage.QUARTER
        if lo == 0 and hi == 180:
            return Coverage.HALF
        if lo == -180 and hi == 180:
            return Coverage.FULL
        return Coverage.PARTIAL

    def restrict(self, lo_deg: float, hi_deg: float) -> "PolarTable":
        """Rows with lo_deg <= alpha <= hi_deg."""
        rows = [r for r in self.rows() if lo_deg <= r[0] <= hi_deg]
        return _from_rows(rows, self)

    def rows(self):
        return list(zip(self.alpha_deg, self.cl, self.cd))

    def lookup(self, alpha_deg: float) -> tuple[float, float]:
        i = self.alpha_deg.index(alpha_deg)
        return self.cl[i], self.cd[i]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "reynolds": self.reynolds,
            "mach": self.mach,
            "coverage": self.coverage.value,
            "alpha_deg": list(self.alpha_deg),
            "cl": list(self.cl),
            "cd": list(self.cd),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PolarTable":
        d = json.loads(text)
        return cls(
            alpha_deg=tuple(map(float, d["alpha_deg"])),
            cl=tuple(map(float, d["cl"])),
            cd=tuple(map(float, d["cd"])),
            reynolds=d.get("reynolds"),
            mach=d.get("mach"),
            name=d.get("name", ""),
        )


def _from_rows(rows, like: PolarTable) -> PolarTable:
    rows = sorted(rows)
    return PolarTable(
        alpha_deg=tuple(r[0] for r in rows),
        cl=tuple(r[1] for r in rows),
        cd=tuple(r[2] for r in rows),
        reynolds=like.reynolds,
        mach=like.mach,
        name=like.name,
    )


def _number(text: str, lineno: int, what: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise ParseError(f"{what} is not a number: {text!r}", lineno) from None
    if not math.isfinite(x):
        raise ParseError(f"{what} is not finite: {text!r}", lineno)
    return x


def parse_polar_csv(text: str | bytes) -> PolarTable:
    """Parse and validate a polar file.

    Rows may come in any order and are sorted by angle; a repeated angle is a
    :class:`ValidationError`, as is a nonpositive drag coefficient.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    meta: dict = {}
    rows: list[tuple[float, float, float, int]] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                attr = _META_KEYS.get(key.strip().lower())
                if attr == "name":
                    meta["name"] = value.strip()
                elif attr is not None:
                    meta[attr] = _number(value.strip(), lineno, key.strip())
            continue
        fields = next(csv.reader([line]))
        fields = [f.strip() for f in fields]
        if not header_seen:
            if tuple(fields) != HEADER:
                raise ParseError(f"expected header {','.join(HEADER)!r}, got {line!r}", lineno)
            header_seen = True
            continue
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, got {len(fields)}", lineno)
        a, cl, cd = (_number(f, lineno, name) for f, name in zip(fields, HEADER))
        if not cd > 0:
            raise ValidationError(f"cd must be positive, got {cd!r} at alpha={a!r}", lineno)
        rows.append((a, cl, cd, lineno))
    if not header_seen:
        raise ParseError("missing header row")
    rows.sort(key=lambda r: r[0])
    for prev, cur in zip(rows, rows[1:]):
        if cur[0] == prev[0]:
            raise ValidationError(f"duplicate alpha {cur[0]!r} (also on line {prev[3]})", cur[3])
    return PolarTable(
        alpha_deg=tuple(r[0] for r in rows),
        cl=tuple(r[1] for r in rows),
        cd=tuple(r[2] for r in rows),
        reynolds=meta.get("reynolds"),
        mach=meta.get("mach"),
        name=meta.get("name", ""),
    )


def write_polar_csv(table: PolarTable) -> str:
    """Serialise a table in the format read by :func:`parse_polar_csv` (full precision)."""
    out = io.StringIO()
    if table.name:
        out.write(f"# name={table.name}\n")
    if table.reynolds is not None:
        out.write(f"# Re={table.reynolds!r}\n")
    if table.mach is not None:
        out.write(f"# M={table.mach!r}\n")
    out.write(",".join(HEADER) + "\n")
    for a, cl, cd in table.rows():
        out.write(f"{a!r},{cl!r},{cd!r}\n")
    return out.getvalue()


def read_polar(path) -> PolarTable:
    return parse_polar_csv(Path(path).read_bytes())


def load_bundled(name: str) -> PolarTable:
    """One of the polar fixtures shipped with the package, e.g. ``"naca0021"``."""
    key = name.lower().replace(" ", "").replace("_", "")
    if key not in BUNDLED:
        raise KeyError(f"no bundled polar {name!r}; available: {', '.join(BUNDLED)}")
    data = resources.files("flighttrim").joinpath("data").joinpath(f"{key}.csv").read_bytes()
    return parse_polar_csv(data)


def _require_span(table: PolarTable, hi: float) -> None:
    a = table.alpha_deg
    if a[0] < 0 or a[-1] > hi:
        raise RangeError(f"table spans [{a[0]}, {a[-1]}] deg, exceeding [0, {hi}]")
    if a[0] != 0 or a[-1] != hi:
        raise RangeError(f"table spans [{a[0]}, {a[-1]}] deg, must cover [0, {hi}] exactly")


def _require_zero_lift(table: PolarTable, at: float, why: str, tol: float = 1e-12) -> None:
    cl, _ = table.lookup(at)
    if abs(cl) > tol:
        raise ValidationError(f"c_L({at:g} deg) = {cl!r} must vanish for {why}")


def extend_symmetric(table: PolarTable) -> PolarTable:
    """Mirror a [0, 180] deg table to [-180, 180] with even drag and odd lift."""
    _require_span(table, 180.0)
    _require_zero_lift(table, 0.0, "an odd lift law")
    _require_zero_lift(table, 180.0, "an odd lift law")
    mirrored = [(-a, -cl, cd) for a, cl, cd in table.rows() if a > 0]
    return _from_rows(mirrored + table.rows(), table)


def extend_bisymmetric(table: PolarTable) -> PolarTable:
    """Build a [-180, 180] deg table from [0, 90] deg data.

    Values on [90, 180] follow from pi-periodicity and parity,
    c(alpha) = c(alpha - 180) with c_L odd and c_D even; the result is then
    mirrored like :func:`extend_symmetric`.
    """
    _require_span(table, 90.0)
    _require_zero_lift(table, 0.0, "an odd lift law")
    _require_zero_lift(table, 90.0, "an odd, pi-periodic lift law")
    upper = [(180.0 - a, -cl, cd) for a, cl, cd in table.rows() if a < 90]
    half = _from_rows(table.rows() + upper, table)
    return extend_symmetric(half)


class _Interpolant:
    """Piecewise-linear interpolation over canonical angles in radians.

    Callers pass angles already reduced to (-pi, pi], as :class:`AeroModel`
    requires; anything outside is clamped to the end values.
    """

    def __init__(self, alpha_rad: np.ndarray, values: np.ndarray):
        self.x = alpha_rad
        self.y = values

    def __call__(self, alpha):
        return np.interp(alpha, self.x, self.y)


def build_model(
    table: PolarTable,
    ka: float,
    symmetry_class: SymmetryClass | str = SymmetryClass.GENERIC,
    rho: float | None = None,
    sigma: float | None = None,
) -> AeroModel:
    """Interpolated model over a full-coverage table; the declared class is verified."""
    if table.coverage is not Coverage.FULL:
        raise RangeError(f"build_model needs [-180, 180] deg coverage, table is {table.coverage.value}")
    x = np.radians(np.asarray(table.alpha_deg, dtype=float))
    x[0], x[-1] = -math.pi, math.pi
    model = AeroModel(
        lift=_Interpolant(x, np.asarray(table.cl, dtype=float)),
        drag=_Interpolant(x, np.asarray(table.cd, dtype=float)),
        ka=ka,
        symmetry_class=SymmetryClass(symmetry_class),
        metadata=ModelMetadata(rho=rho, sigma=sigma, reynolds=table.reynolds, mach=table.mach, name=table.name),
        tabulated=True,
    )
    report = verify_declared_class(model)
    if report is not None and not report.passed:
        raise SymmetryVerificationError(
            f"{table.name or 'table'} fails the {model.symmetry_class.value} check "
            f"(worst alpha {report.worst_alpha_deg:.3f} deg)",
            report,
        )
    return model
