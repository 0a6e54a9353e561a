import csv
import io
import math

import pytest

from couette import analysis
from couette.analysis import (
    Exact,
    Hpm,
    MethodSpec,
    PadeBuilt,
    PadeFixture,
    Quantity,
    Rk4,
    divergence_summary,
    divergence_time,
    parse_method,
    sweep,
    time_grid,
    write_csv,
)
from couette.model import SPECIAL_CASE
from couette.pade import Fixture, RationalFn

Y, VY, VX = Quantity.Y, Quantity.VY, Quantity.VX

# Regression constants (tol = 1e-2, dt = 0.01, special case with unit coupling)
HPM12_Y_TSTAR = 5.05
HPM12_VY_TSTAR = 4.66
VY1010_VY_TSTAR = 26.14


def test_sweep_basic_shape():
    rows = sweep(SPECIAL_CASE, [MethodSpec(Exact(), Y), MethodSpec(Hpm(4), Y)], [0, 0.5, 1.0])
    assert [r.t for r in rows] == [0.0, 0.5, 1.0]
    assert rows[0].values == (0.0, 0.0)
    assert rows[0].errors == (0.0, 0.0)


def test_hpm4_at_one():
    rows = sweep(SPECIAL_CASE, [MethodSpec(Hpm(4), Y)], [1.0])
    value, err = rows[0].values[0], rows[0].errors[0]
    assert abs(value - 0.3681) <= 5e-4
    # printed brackets summed in 30-digit arithmetic, minus e^-1
    assert abs(err - 5.39773346478811e-4) <= 1e-13


def test_vx88_at_one():
    rows = sweep(SPECIAL_CASE, [MethodSpec(PadeFixture(Fixture.VX88), VX)], [1.0])
    assert rows[0].errors[0] <= 1e-3


def test_errors_nonnegative_and_exact_column_zero():
    methods = [MethodSpec(Exact(), VY), MethodSpec(Hpm(6), VY),
               MethodSpec(PadeFixture(Fixture.VY1010), VY), MethodSpec(Rk4(1e-2), VY),
               MethodSpec(PadeBuilt(4, 4, 8), VY)]
    for row in sweep(SPECIAL_CASE, methods, time_grid(10, 0.25)):
        assert row.errors[0] == 0.0
        assert all(e >= 0 for e in row.errors)
        assert row.errors[3] < 1e-7


def test_grid_validation():
    with pytest.raises(ValueError):
        sweep(SPECIAL_CASE, [MethodSpec(Exact(), Y)], [0.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        sweep(SPECIAL_CASE, [MethodSpec(Exact(), Y)], [-1.0, 1.0])


def test_time_grid():
    assert time_grid(1, 1) == [0.0, 1.0]
    g = time_grid(1, 0.1)
    assert len(g) == 11 and g[3] == 0.3 and g[-1] == 1.0


def test_fixture_quantity_mismatch_rejected():
    with pytest.raises(ValueError):
        MethodSpec(PadeFixture(Fixture.VX88), Y)


@pytest.mark.parametrize("label", ["exact", "hpm:12", "pade:vx88", "pade:vy1010",
                                   "pade:8/8:exact", "pade:4/3:hpm:10", "rk4:0.001"])
def test_method_labels_roundtrip(label):
    assert parse_method(label).label() == label


def test_unknown_method():
    with pytest.raises(ValueError):
        parse_method("taylor:3")


def test_divergence_of_exact_is_none():
    assert divergence_time(SPECIAL_CASE, MethodSpec(Exact(), Y), 1e-12) is None


def test_hpm12_divergence_brackets_claim():
    t_star = divergence_time(SPECIAL_CASE, MethodSpec(Hpm(12), Y), 1e-2, 20.0, 0.01)
    assert 4 <= t_star <= 8
    assert t_star == pytest.approx(HPM12_Y_TSTAR, abs=1e-9)


def test_pade_fixture_outlasts_hpm():
    hpm = divergence_time(SPECIAL_CASE, MethodSpec(Hpm(12), VY), 1e-2, 50.0, 0.01)
    pade = divergence_time(SPECIAL_CASE, MethodSpec(PadeFixture(Fixture.VY1010), VY),
                           1e-2, 50.0, 0.01)
    assert hpm == pytest.approx(HPM12_VY_TSTAR, abs=1e-9)
    assert pade == pytest.approx(VY1010_VY_TSTAR, abs=1e-9)
    assert pade > hpm


@pytest.mark.parametrize("method", [MethodSpec(Hpm(8), Y), MethodSpec(Hpm(12), VY),
                                    MethodSpec(PadeFixture(Fixture.VX88), VX)])
def test_divergence_monotone_in_tol(method):
    tols = [1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 1e-1, 1.0]
    times = [divergence_time(SPECIAL_CASE, method, tol, 30.0, 0.05) for tol in tols]
    as_num = [math.inf if t is None else t for t in times]
    assert as_num == sorted(as_num)


def test_small_time_error_shrinks_with_order():
    t = 0.2
    errs = [sweep(SPECIAL_CASE, [MethodSpec(Hpm(n), Y)], [t])[0].errors[0] for n in range(9)]
    # float evaluation of the sums bottoms out near 1e-12 (cancelling coefficients)
    for a, b in zip(errs, errs[1:]):
        assert b < a or b < 1e-11
    assert errs[6] < 1e-10


def test_pole_becomes_missing_cell(monkeypatch):
    monkeypatch.setattr(analysis, "paper_fixture", lambda which: RationalFn((1,), (1, -1)))
    spec = MethodSpec(PadeFixture(Fixture.VX88), VX)
    rows = sweep(SPECIAL_CASE, [spec], [0.0, 0.5, 1.0])
    assert rows[2].values == (None,) and rows[2].errors == (None,)
    buf = io.StringIO()
    write_csv(rows, buf)
    assert buf.getvalue().splitlines()[-1] == "1,pade:vx88,vx,,"
    assert divergence_time(SPECIAL_CASE, spec, 100.0, 1.0, 0.5) == 1.0


def test_csv_schema_and_roundtrip():
    methods = [MethodSpec(Exact(), Y), MethodSpec(Hpm(3), Y)]
    rows = sweep(SPECIAL_CASE, methods, time_grid(2, 0.5))
    buf = io.StringIO()
    write_csv(rows, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "t,method,quantity,value,abs_error"
    parsed = list(csv.DictReader(io.StringIO(buf.getvalue())))
    assert len(parsed) == len(rows) * 2
    for rec, (row, i) in zip(parsed, [(r, i) for r in rows for i in range(2)]):
        assert float(rec["t"]) == row.t
        assert float(rec["value"]) == row.values[i]
        assert float(rec["abs_error"]) == row.errors[i]


def test_divergence_summary_records_thresholds():
    s = divergence_summary(SPECIAL_CASE, MethodSpec(Hpm(12), Y), 1e-2, 20.0, 0.01)
    assert s["tol"] == 1e-2 and s["dt"] == 0.01 and s["t_max"] == 20.0
    assert s["method"] == "hpm:12" and s["quantity"] == "y"
    assert s["t_star"] == pytest.approx(HPM12_Y_TSTAR)
