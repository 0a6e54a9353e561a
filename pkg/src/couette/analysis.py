"""Side-by-side sampling of the exact solution, HPM partial sums, Padé
approximants and RK4, with absolute errors and divergence times."""

from __future__ import annotations

import csv
import enum
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence, TextIO, Union

from . import exact, oracle
from .algebra import ExpPoly
from .errors import PoleError
from .hpm import hpm_expand, partial_sum
from .model import ModelParams
from .pade import Fixture, RationalFn, build_pade, eval_rational, paper_fixture

DEFAULT_TOL = 1e-2
DEFAULT_DT = 0.01


class Quantity(enum.Enum):
    X = "x"
    Y = "y"
    VX = "vx"
    VY = "vy"

    @property
    def is_velocity(self) -> bool:
        return self in (Quantity.VX, Quantity.VY)


@dataclass(frozen=True)
class Exact:
    def label(self) -> str:
        return "exact"


@dataclass(frozen=True)
class Hpm:
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("HPM order must be >= 0")

    def label(self) -> str:
        return f"hpm:{self.order}"


@dataclass(frozen=True)
class PadeFixture:
    which: Fixture

    def label(self) -> str:
        return f"pade:{self.which.value}"


@dataclass(frozen=True)
class PadeBuilt:
    m: int
    n: int
    source_order: int | None = None  # None: exact Taylor series

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("Padé degrees must be >= 0")
        if self.source_order is not None and self.source_order < 0:
            raise ValueError("HPM source order must be >= 0")

    def label(self) -> str:
        src = "exact" if self.source_order is None else f"hpm:{self.source_order}"
        return f"pade:{self.m}/{self.n}:{src}"


@dataclass(frozen=True)
class Rk4:
    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("RK4 step must be > 0")

    def label(self) -> str:
        return f"rk4:{self.h!r}"


MethodKind = Union[Exact, Hpm, PadeFixture, PadeBuilt, Rk4]

FIXTURE_QUANTITY = {Fixture.VX88: Quantity.VX, Fixture.VY1010: Quantity.VY}


@dataclass(frozen=True)
class MethodSpec:
    kind: MethodKind
    quantity: Quantity

    def __post_init__(self):
        object.__setattr__(self, "quantity", Quantity(self.quantity))
        if isinstance(self.kind, PadeFixture):
            expected = FIXTURE_QUANTITY[self.kind.which]
            if self.quantity is not expected:
                raise ValueError(
                    f"fixture {self.kind.which.value} approximates {expected.value}, "
                    f"not {self.quantity.value}"
                )

    @property
    def label(self) -> str:
        return self.kind.label()


def parse_method(text: str) -> MethodKind:
    """Inverse of ``kind.label()``: ``exact``, ``hpm:N``, ``pade:vx88``,
    ``pade:M/N:hpm:K``, ``pade:M/N:exact``, ``rk4:H``."""
    s = text.strip().lower()
    if s == "exact":
        return Exact()
    if m := re.fullmatch(r"hpm:(\d+)", s):
        return Hpm(int(m[1]))
    if m := re.fullmatch(r"pade:(vx88|vy1010)", s):
        return PadeFixture(Fixture(m[1]))
    if m := re.fullmatch(r"pade:(\d+)/(\d+):(exact|hpm:(\d+))", s):
        src = None if m[3] == "exact" else int(m[4])
        return PadeBuilt(int(m[1]), int(m[2]), src)
    if m := re.fullmatch(r"rk4:(.+)", s):
        return Rk4(float(m[1]))
    raise ValueError(f"unrecognised method {text!r}")


@dataclass(frozen=True)
class ComparisonRow:
    """Values and absolute errors at one grid time, in method order.
    ``None`` marks a cell lost to a pole."""

    t: float
    methods: tuple[MethodSpec, ...]
    values: tuple[float | None, ...]
    errors: tuple[float | None, ...]


# -- per-method evaluators ---------------------------------------------------

_QUANTITY_INDEX = {Quantity.X: 0, Quantity.Y: 1, Quantity.VX: 2, Quantity.VY: 3}


@lru_cache(maxsize=64)
def _hpm_sum(p: ModelParams, order: int) -> tuple[ExpPoly, ExpPoly]:
    return partial_sum(hpm_expand(p, order), order)


def hpm_quantity(p: ModelParams, order: int, q: Quantity) -> ExpPoly:
    x, y = _hpm_sum(p, order)
    f = x if q in (Quantity.X, Quantity.VX) else y
    return f.differentiate() if q.is_velocity else f


def series_for(p: ModelParams, q: Quantity, order: int, source_order: int | None = None) -> list:
    """Exact Maclaurin coefficients of quantity ``q`` through ``t**order``,
    taken from the exact solution or from the HPM partial sum."""
    if source_order is not None:
        return hpm_quantity(p, source_order, q).maclaurin(order)
    xs, ys = exact.exact_maclaurin(p, order + 1)
    c = xs if q in (Quantity.X, Quantity.VX) else ys
    if q.is_velocity:
        return [(k + 1) * c[k + 1] for k in range(order + 1)]
    return c[: order + 1]


@lru_cache(maxsize=64)
def built_pade(p: ModelParams, kind: PadeBuilt, q: Quantity) -> RationalFn:
    coeffs = series_for(p, q, kind.m + kind.n, kind.source_order)
    return build_pade(coeffs, kind.m, kind.n)


def _exact_values(p: ModelParams, q: Quantity, times: Sequence[float]) -> list[float]:
    i = _QUANTITY_INDEX[q]
    return [exact.exact_state(p, t)[1 + i] for t in times]


def _pointwise(fn: Callable[[float], float], times: Sequence[float]) -> list[float | None]:
    out = []
    for t in times:
        try:
            out.append(fn(t))
        except PoleError:
            out.append(None)
    return out


def evaluate_method(p: ModelParams, spec: MethodSpec, times: Sequence[float]) -> list[float | None]:
    kind, q = spec.kind, spec.quantity
    if isinstance(kind, Exact):
        return _exact_values(p, q, times)
    if isinstance(kind, Hpm):
        return _pointwise(hpm_quantity(p, kind.order, q).evaluate, times)
    if isinstance(kind, PadeFixture):
        r = paper_fixture(kind.which)
        return _pointwise(lambda t: eval_rational(r, t), times)
    if isinstance(kind, PadeBuilt):
        r = built_pade(p, kind, q)
        return _pointwise(lambda t: eval_rational(r, t), times)
    if isinstance(kind, Rk4):
        i = _QUANTITY_INDEX[q]
        return [s[1 + i] for s in oracle.sample_at(p, times, kind.h)]
    raise TypeError(f"unknown method kind {kind!r}")


def _abs_error(value, reference) -> float | None:
    if value is None:
        return None
    return abs(value - reference)


def _check_grid(t_grid: Sequence[float]) -> None:
    for a, b in zip(t_grid, t_grid[1:]):
        if not b > a:
            raise ValueError("time grid must be strictly increasing")
    if t_grid and t_grid[0] < 0:
        raise ValueError("time grid must be nonnegative")


def sweep(p: ModelParams, methods: Sequence[MethodSpec], t_grid: Sequence[float]) -> list[ComparisonRow]:
    t_grid = [float(t) for t in t_grid]
    _check_grid(t_grid)
    methods = tuple(methods)
    refs = {q: _exact_values(p, q, t_grid) for q in {m.quantity for m in methods}}
    columns = []
    for m in methods:
        if isinstance(m.kind, Exact):
            columns.append(list(refs[m.quantity]))
        else:
            columns.append(evaluate_method(p, m, t_grid))
    rows = []
    for i, t in enumerate(t_grid):
        values = tuple(col[i] for col in columns)
        errors = tuple(
            0.0 if isinstance(m.kind, Exact) else _abs_error(v, refs[m.quantity][i])
            for m, v in zip(methods, values)
        )
        rows.append(ComparisonRow(t, methods, values, errors))
    return rows


def time_grid(t_max: float, dt: float) -> list[float]:
    """``0, dt, 2 dt, ...`` up to and including ``t_max`` (to rounding)."""
    if not dt > 0:
        raise ValueError("dt must be > 0")
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    n = math.floor(t_max / dt * (1 + 1e-12))
    # strip k*dt representation noise (0.1*3 -> 0.3)
    return [float(f"{k * dt:.15g}") for k in range(n + 1)]


def divergence_time(
    p: ModelParams,
    m: MethodSpec,
    tol: float = DEFAULT_TOL,
    t_max: float = 20.0,
    dt: float = DEFAULT_DT,
) -> float | None:
    """First grid time where ``|method - exact| > tol``; ``None`` if never.

    A pole or a non-finite value counts as exceeding the tolerance.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    grid = time_grid(t_max, dt)
    if isinstance(m.kind, Exact):
        return None
    ref = _exact_values(p, m.quantity, grid)
    values = evaluate_method(p, m, grid)
    for t, v, r in zip(grid, values, ref):
        if v is None or not math.isfinite(v) or abs(v - r) > tol:
            return t
    return None


def divergence_summary(p: ModelParams, m: MethodSpec, tol: float, t_max: float, dt: float) -> dict:
    t_star = divergence_time(p, m, tol, t_max, dt)
    return {
        "method": m.label,
        "quantity": m.quantity.value,
        "tol": tol,
        "t_max": t_max,
        "dt": dt,
        "error_kind": "absolute",
        "t_star": t_star,
        "params": p.to_json(),
    }


# -- output ------------------------------------------------------------------

CSV_HEADER = ("t", "method", "quantity", "value", "abs_error")


def fmt_float(x: float | None, digits: int = 17) -> str:
    if x is None:
        return ""
    return format(x, f".{digits}g")


def iter_csv_rows(rows: Iterable[ComparisonRow], digits: int = 17):
    for row in rows:
        for m, v, e in zip(row.methods, row.values, row.errors):
            yield (fmt_float(row.t, digits), m.label, m.quantity.value,
                   fmt_float(v, digits), fmt_float(e, digits))


def write_csv(rows: Iterable[ComparisonRow], fh: TextIO, digits: int = 17) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(iter_csv_rows(rows, digits))


def rows_to_json(rows: Iterable[ComparisonRow]) -> list[dict]:
    return [
        {
            "t": row.t,
            "cells": [
                {"method": m.label, "quantity": m.quantity.value, "value": v, "abs_error": e}
                for m, v, e in zip(row.methods, row.values, row.errors)
            ],
        }
        for row in rows
    ]
