"""Padé approximants with exact rational coefficients.

The denominator system is solved by fraction-free (Bareiss) elimination over
the integers, so the coefficients come out exact however large they get.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import rat_str, to_rat
from .errors import PoleError

POLE_THRESHOLD = 1e-300


@dataclass(frozen=True)
class Degeneracy:
    requested: tuple[int, int]
    effective: tuple[int, int]
    matched_order: int
    consistent: bool


@dataclass(frozen=True)
class RationalFn:
    """``numer(t) / denom(t)``, normalised so that ``denom[0] == 1``."""

    numer: tuple[Fraction, ...]
    denom: tuple[Fraction, ...]
    degeneracy: Degeneracy | None = field(default=None, compare=False)

    def __post_init__(self):
        num = [to_rat(c) for c in self.numer]
        den = [to_rat(c) for c in self.denom]
        if not den or den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        if den[0] != 1:
            lead = den[0]
            num = [c / lead for c in num]
            den = [c / lead for c in den]
        while len(num) > 1 and num[-1] == 0:
            num.pop()
        while len(den) > 1 and den[-1] == 0:
            den.pop()
        object.__setattr__(self, "numer", tuple(num) or (Fraction(0),))
        object.__setattr__(self, "denom", tuple(den))

    @property
    def degrees(self) -> tuple[int, int]:
        return len(self.numer) - 1, len(self.denom) - 1

    def __call__(self, t: float) -> float:
        return eval_rational(self, t)

    def maclaurin(self, order: int) -> list[Fraction]:
        """Exact series of ``numer / denom`` through ``t**order``."""
        out: list[Fraction] = []
        for k in range(order + 1):
            a = self.numer[k] if k < len(self.numer) else Fraction(0)
            s = sum(
                (self.denom[j] * out[k - j] for j in range(1, min(k, len(self.denom) - 1) + 1)),
                Fraction(0),
            )
            out.append(a - s)
        return out

    def equivalent(self, other: RationalFn) -> bool:
        """Equal as rational functions (cross-multiplied)."""
        return _poly_mul(self.numer, other.denom) == _poly_mul(other.numer, self.denom)

    def to_json(self) -> dict:
        return {
            "numer": [rat_str(c) for c in self.numer],
            "denom": [rat_str(c) for c in self.denom],
        }

    @classmethod
    def from_json(cls, data: dict) -> RationalFn:
        return cls(tuple(data["numer"]), tuple(data["denom"]))


class PadeDegenerateError(ArithmeticError):
    """The requested [m/n] approximant does not exist with ``denom[0] == 1``.

    ``result`` holds the minimal-degree approximant that matches the series
    through ``report.matched_order``.
    """

    def __init__(self, report: Degeneracy, result: RationalFn):
        m, n = report.requested
        super().__init__(
            f"[{m}/{n}] Padé system is inconsistent; best achievable matches "
            f"through t^{report.matched_order} with degrees {report.effective}"
        )
        self.report = report
        self.result = result


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        scale = math.lcm(*(c.denominator for c in row)) if row else 1
        out.append([int(c * scale) for c in row])
    return out


def _bareiss(aug: list[list[int]], ncols: int) -> list[int]:
    """Fraction-free row reduction of ``aug`` in place; returns pivot columns."""
    nrows = len(aug)
    prev = 1
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        width = len(aug[r])
        for i in range(r + 1, nrows):
            for j in range(c + 1, width):
                aug[i][j] = (aug[r][c] * aug[i][j] - aug[i][c] * aug[r][j]) // prev
            aug[i][c] = 0
        prev = aug[r][c]
        pivots.append(c)
        r += 1
    return pivots


def rank(M: list[list[Fraction]]) -> int:
    if not M or not M[0]:
        return 0
    return len(_bareiss(_integer_rows([list(row) for row in M]), len(M[0])))


def solve_exact(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve ``M b = rhs`` exactly; free unknowns are set to zero.

    Returns ``None`` when the system is inconsistent.  Elimination is
    Bareiss-style on integer rows; only back substitution touches fractions.
    """
    ncols = len(M[0]) if M else 0
    if ncols == 0:
        return [] if all(r == 0 for r in rhs) else None
    aug = _integer_rows([list(row) + [r] for row, r in zip(M, rhs)])
    pivots = _bareiss(aug, ncols)
    r = len(pivots)
    if any(aug[i][ncols] != 0 for i in range(r, len(aug))):
        return None
    sol = [Fraction(0)] * ncols
    for i in reversed(range(r)):
        c = pivots[i]
        acc = Fraction(aug[i][ncols])
        for j in range(c + 1, ncols):
            if aug[i][j]:
                acc -= aug[i][j] * sol[j]
        sol[c] = acc / aug[i][c]
    return sol


def _denominator_system(c: Sequence[Fraction], m: int, ncols: int, nrows: int):
    def coef(k):
        return c[k] if 0 <= k < len(c) else Fraction(0)

    M = [[coef(m + 1 + i - j) for j in range(1, ncols + 1)] for i in range(nrows)]
    rhs = [-coef(m + 1 + i) for i in range(nrows)]
    return M, rhs


def _assemble(c: Sequence[Fraction], m: int, b: list[Fraction]) -> RationalFn:
    den = [Fraction(1)] + list(b)
    num = []
    for i in range(m + 1):
        num.append(sum((den[j] * c[i - j] for j in range(min(i, len(den) - 1) + 1)), Fraction(0)))
    return RationalFn(tuple(num), tuple(den))


def build_pade(c: Sequence, m: int, n: int) -> RationalFn:
    """The [m/n] Padé approximant of the series with coefficients ``c``.

    The denominator degree is taken as small as possible, so a series that
    already comes from a lower-degree rational function is returned exactly.
    If the full system is singular the result carries a :class:`Degeneracy`
    report; if it is inconsistent :class:`PadeDegenerateError` is raised.
    """
    if m < 0 or n < 0:
        raise ValueError("Padé degrees must be nonnegative")
    c = [to_rat(x) for x in c]
    if len(c) < m + n + 1:
        raise ValueError(f"[{m}/{n}] needs {m + n + 1} coefficients, got {len(c)}")
    M, rhs = _denominator_system(c, m, n, n)
    full_singular = rank(M) < n
    for k in range(n + 1):
        sub = [row[:k] for row in M]
        b = solve_exact(sub, rhs) if k else ([] if all(x == 0 for x in rhs) else None)
        if b is not None:
            r = _assemble(c, m, b)
            if full_singular:
                report = Degeneracy((m, n), r.degrees, m + n, True)
                r = RationalFn(r.numer, r.denom, report)
            return r
    # inconsistent: give up equations from the top until something fits
    for rows in range(n - 1, -1, -1):
        Mr, rr = M[:rows], rhs[:rows]
        for k in range(n + 1):
            sub = [row[:k] for row in Mr]
            b = solve_exact(sub, rr) if k else ([] if all(x == 0 for x in rr) else None)
            if b is not None:
                r = _assemble(c, m, b)
                report = Degeneracy((m, n), r.degrees, m + rows, False)
                raise PadeDegenerateError(report, RationalFn(r.numer, r.denom, report))
    raise AssertionError("unreachable: the empty system is always consistent")


def eval_rational(r: RationalFn, t: float) -> float:
    t = float(t)
    num = 0.0
    for a in reversed(r.numer):
        num = num * t + float(a)
    den = 0.0
    for b in reversed(r.denom):
        den = den * t + float(b)
    if abs(den) < POLE_THRESHOLD:
        raise PoleError(t, den)
    return num / den


class Fixture(enum.Enum):
    VX88 = "vx88"
    VY1010 = "vy1010"


def _fr(s: str) -> Fraction:
    return Fraction(s)


_VX88_NUMER = (
    "1", "80630168/150869313", "-94677997/258633108", "130919939/1508693130",
    "-1097649283/94142451312", "352444733/353034192420", "-573969527/10355669644320",
    "29057689/15533504466480", "-213287989/7117169319187200",
)
_VX88_DENOM = (
    "1", "80630168/150869313", "34638557/258633108", "10391023/502897710",
    "203299561/94142451312", "55668097/353034192420", "27350129/3451889881440",
    "786311/3106700893296", "24009973/6022220193158400",
)
_VY1010_NUMER = (
    "1",
    "-617044058999277705/383360519991315667",
    "28813203934779614633/29135399519339990692",
    "-706520298740306571137/1485905375486339525292",
    "158825071969373483159/1485905375486339525292",
    "-8660567629020972911/782055460782283960680",
    "16420817408783354039/71323458023344297214016",
    "87188708731614445057/1248160515408525201245280",
    "-1062628804263470249167/129808693602486620929509120",
    "56968766216441448797/146034780302797448545697760",
    "-260048516288380772873/36717316190417644205775436800",
)
_VY1010_DENOM = (
    "1",
    "149676980983353629/383360519991315667",
    "7861005765239380203/29135399519339990692",
    "215683905534451894091/1485905375486339525292",
    "22009213655154354015/495301791828779841764",
    "42598825941687607239/4953017918287798417640",
    "404907655928398513021/356617290116721486070080",
    "43862642271172589551/416053505136175067081760",
    "883706266259083441033/129808693602486620929509120",
    "16590820145764536325/58413912121118979418279104",
    "307482708619550706343/51404242666584701888085611520",
)

_FIXTURES = {
    Fixture.VX88: (_VX88_NUMER, _VX88_DENOM),
    Fixture.VY1010: (_VY1010_NUMER, _VY1010_DENOM),
}


def paper_fixture(which) -> RationalFn:
    """Published [8/8] approximant of Vx or [10/10] approximant of Vy
    for the unit-coefficient case, transcribed coefficient by coefficient."""
    which = Fixture(which)
    num, den = _FIXTURES[which]
    return RationalFn(tuple(map(_fr, num)), tuple(map(_fr, den)))
