import math
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flighttrim.aero import SymmetryClass, eval_coeffs, verify_bisymmetry, verify_symmetry
from flighttrim.errors import ParseError, RangeError, SymmetryVerificationError, ValidationError
from flighttrim.polar_io import (
    BUNDLED,
    Coverage,
    PolarTable,
    build_model,
    extend_bisymmetric,
    extend_symmetric,
    load_bundled,
    parse_polar_csv,
    read_polar,
    write_polar_csv,
)
from oracles import read_fixture_rows

SMALL = """# name=Test foil
# Re=100000
# M=0.1
# a free comment
alpha_deg,cl,cd
0,0,0.01
90,1.0,1.5
180,0,0.02
"""


def table(rows, **kw):
    return PolarTable(tuple(r[0] for r in rows), tuple(r[1] for r in rows), tuple(r[2] for r in rows), **kw)


def test_parse_metadata_and_rows():
    t = parse_polar_csv(SMALL)
    assert t.name == "Test foil" and t.reynolds == 100000 and t.mach == 0.1
    assert t.rows() == [(0.0, 0.0, 0.01), (90.0, 1.0, 1.5), (180.0, 0.0, 0.02)]
    assert t.coverage is Coverage.HALF
    assert parse_polar_csv(SMALL.encode()) == t


def test_rows_are_sorted():
    text = "alpha_deg,cl,cd\n90,1,1\n0,0,0.1\n45,0.5,0.5\n"
    assert parse_polar_csv(text).alpha_deg == (0.0, 45.0, 90.0)


def test_duplicate_angle_reports_line():
    text = "alpha_deg,cl,cd\n0,0,0.1\n5,0.5,0.1\n5,0.6,0.1\n"
    with pytest.raises(ValidationError, match="line 4"):
        parse_polar_csv(text)


@pytest.mark.parametrize("cd", ["0", "-0.1"])
def test_nonpositive_drag_rejected(cd):
    with pytest.raises(ValidationError, match="line 3"):
        parse_polar_csv(f"alpha_deg,cl,cd\n0,0,0.1\n10,0.5,{cd}\n")


@pytest.mark.parametrize(
    "text, line",
    [
        ("alpha,cl,cd\n0,0,0.1\n", 1),
        ("alpha_deg,cl,cd\n0,0\n", 2),
        ("alpha_deg,cl,cd\n0,zero,0.1\n", 2),
        ("alpha_deg,cl,cd\n0,nan,0.1\n", 2),
        ("# Re=lots\nalpha_deg,cl,cd\n0,0,0.1\n", 1),
    ],
)
def test_malformed_input(text, line):
    with pytest.raises(ParseError, match=f"line {line}"):
        parse_polar_csv(text)


def test_missing_header_and_bad_encoding():
    with pytest.raises(ParseError):
        parse_polar_csv("# only comments\n")
    with pytest.raises(ParseError):
        parse_polar_csv(b"\xff\xfe\x00")


def test_too_few_rows():
    with pytest.raises(ValidationError):
        parse_polar_csv("alpha_deg,cl,cd\n0,0,0.1\n")


rows_strategy = st.lists(
    st.tuples(
        st.floats(-180, 180, allow_nan=False),
        st.floats(-3, 3, allow_nan=False),
        st.floats(1e-4, 3, allow_nan=False),
    ),
    min_size=2,
    max_size=40,
    unique_by=lambda r: r[0],
)


@given(rows_strategy)
@settings(max_examples=100)
def test_write_parse_roundtrip(rows):
    t = table(sorted(rows), name="rt", reynolds=2e5, mach=0.2)
    assert parse_polar_csv(write_polar_csv(t)) == t
    assert PolarTable.from_json(t.to_json()) == t


def test_read_polar_from_disk(tmp_path):
    p = tmp_path / "foil.csv"
    p.write_text(SMALL)
    assert read_polar(p).name == "Test foil"


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_fixtures_parse(name):
    t = load_bundled(name)
    assert t.coverage is Coverage.HALF
    assert t.lookup(0.0)[0] == 0.0 and t.lookup(180.0)[0] == 0.0
    path = resources.files("flighttrim").joinpath("data").joinpath(f"{name}.csv")
    assert t.rows() == read_fixture_rows(str(path))


def test_unknown_bundled_name():
    with pytest.raises(KeyError):
        load_bundled("naca2412")


def test_symmetric_extension():
    base = load_bundled("naca0021")
    full = extend_symmetric(base)
    assert full.coverage is Coverage.FULL
    assert len(full) == 2 * len(base) - 1
    for a, cl, cd in base.rows():
        assert full.lookup(-a) == (-cl, cd)


def test_symmetric_extension_preconditions():
    with pytest.raises(RangeError):
        extend_symmetric(table([(0, 0, 0.1), (90, 1, 1)]))
    with pytest.raises(ValidationError):
        extend_symmetric(table([(0, 0.1, 0.1), (180, 0, 0.1)]))


def test_bisymmetric_extension():
    quarter = load_bundled("naca0021").restrict(0, 90)
    assert quarter.coverage is Coverage.QUARTER
    full = extend_bisymmetric(quarter)
    assert full.coverage is Coverage.FULL
    m = build_model(full, 0.08, "bisymmetric")
    assert verify_bisymmetry(m).passed
    for a, cl, cd in quarter.rows():
        assert full.lookup(a - 180.0) == (cl, cd)
    with pytest.raises(RangeError):
        extend_bisymmetric(load_bundled("naca0021"))


def test_bisymmetric_extension_needs_zero_lift_at_quarter_turn():
    with pytest.raises(ValidationError):
        extend_bisymmetric(table([(0, 0, 0.1), (45, 1, 1), (90, 0.3, 1.5)]))


def test_model_interpolates_linearly_and_hits_nodes():
    t = load_bundled("naca0021")
    m = build_model(extend_symmetric(t), 0.08, "symmetric")
    for a, cl, cd in t.rows():
        got = eval_coeffs(m, math.radians(a))
        assert got == pytest.approx((cl, cd), abs=1e-12)
    # the stall jump between the 13 and 14 deg rows
    (l13, d13), (l14, d14) = t.lookup(13.0), t.lookup(14.0)
    mid = eval_coeffs(m, math.radians(13.5))
    assert mid == pytest.approx((0.5 * (l13 + l14), 0.5 * (d13 + d14)), abs=1e-12)
    assert min(l13, l14) <= eval_coeffs(m, math.radians(13.9))[0] <= max(l13, l14)
    assert eval_coeffs(m, math.radians(-13.5)) == pytest.approx((-mid[0], mid[1]), abs=1e-12)


def test_build_model_requires_full_coverage():
    with pytest.raises(RangeError):
        build_model(load_bundled("naca0012"), 0.08)


def test_build_model_verifies_declared_class():
    full = extend_symmetric(load_bundled("naca0012"))
    assert verify_symmetry(build_model(full, 0.08, "symmetric")).passed
    with pytest.raises(SymmetryVerificationError) as exc:
        build_model(full, 0.08, SymmetryClass.BISYMMETRIC)
    assert exc.value.report is not None and not exc.value.report.passed


def test_table_validation():
    with pytest.raises(ValidationError):
        table([(10, 0, 0.1), (0, 0, 0.1)])
    with pytest.raises(ValidationError):
        PolarTable((0.0, 1.0), (0.0,), (0.1, 0.1))
