"""Exact arithmetic on exp-polynomials.

An :class:`ExpPoly` is a finite sum ``sum_mu P_mu(t) * exp(mu * t)`` where
every mode ``mu`` and every polynomial coefficient is a
:class:`fractions.Fraction`.  The class is closed under addition,
multiplication, differentiation and integration, which is all the
perturbation solver needs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import DomainError

Rat = Fraction


def to_rat(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, :class:`~numbers.Rational` instances and strings such as
    ``"-3/4"`` or ``"7"``.  Floats are refused: they would silently smuggle
    binary rounding into exact computations.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def rat_str(q: Fraction) -> str:
    """Render as ``"p/q"`` with decimal integers (``"2/1"`` for integers)."""
    return f"{q.numerator}/{q.denominator}"


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return out


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_deriv(p: Sequence[Fraction]) -> list[Fraction]:
    return [k * p[k] for k in range(1, len(p))]


def _horner(coeffs: Sequence[float], t: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


class ExpPoly:
    """Immutable exp-polynomial in canonical form.

    Terms are held as a tuple of ``(mode, coeffs)`` pairs, sorted by mode,
    where ``coeffs[k]`` multiplies ``t**k``.  Zero polynomials are pruned and
    every coefficient vector ends in a nonzero entry, so two equal functions
    always have identical ``terms``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, list[Fraction]] = {}
        for mode, coeffs in items:
            mu = to_rat(mode)
            cs = [to_rat(c) for c in coeffs]
            acc[mu] = _poly_add(acc.get(mu, []), cs)
        canon = []
        for mu in sorted(acc):
            cs = _trim(acc[mu])
            if cs:
                canon.append((mu, cs))
        self._terms: tuple[tuple[Fraction, tuple[Fraction, ...]], ...] = tuple(canon)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> ExpPoly:
        return cls()

    @classmethod
    def const(cls, c) -> ExpPoly:
        return cls({0: [c]})

    @classmethod
    def monomial(cls, c, k: int = 0, mode=0) -> ExpPoly:
        """``c * t**k * exp(mode * t)``."""
        if k < 0:
            raise ValueError("negative power of t")
        return cls({mode: [0] * k + [c]})

    @classmethod
    def exp(cls, mode) -> ExpPoly:
        return cls({mode: [1]})

    # -- structure ----------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[Fraction, tuple[Fraction, ...]], ...]:
        return self._terms

    @property
    def modes(self) -> tuple[Fraction, ...]:
        return tuple(mu for mu, _ in self._terms)

    def coeffs(self, mode) -> tuple[Fraction, ...]:
        mu = to_rat(mode)
        for m, cs in self._terms:
            if m == mu:
                return cs
        return ()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, ExpPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == ExpPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self):
        return f"ExpPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mu, cs in self._terms:
            for k, c in enumerate(cs):
                if c == 0:
                    continue
                body = []
                if k:
                    body.append("t" if k == 1 else f"t^{k}")
                if mu:
                    body.append(f"exp({mu}*t)")
                body = "*".join(body)
                if body and abs(c) == 1:
                    parts.append(body if c > 0 else "-" + body)
                else:
                    parts.append(f"{c}*{body}" if body else str(c))
        return " + ".join(parts).replace("+ -", "- ")

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> ExpPoly:
        if isinstance(other, ExpPoly):
            return other
        return ExpPoly.const(to_rat(other))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return ExpPoly(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly((mu, [-c for c in cs]) for mu, cs in self._terms)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            try:
                s = to_rat(other)
            except TypeError:
                return NotImplemented
            return ExpPoly((mu, [s * c for c in cs]) for mu, cs in self._terms)
        prods = []
        for mu, p in self._terms:
            for nu, q in other._terms:
                prods.append((mu + nu, _poly_mul(p, q)))
        return ExpPoly(prods)

    __rmul__ = __mul__

    # -- calculus -----------------------------------------------------------

    def differentiate(self) -> ExpPoly:
        """Exact d/dt, using d/dt[t^k e^{mu t}] = (k t^{k-1} + mu t^k) e^{mu t}."""
        out = []
        for mu, cs in self._terms:
            out.append((mu, _poly_add(_poly_deriv(cs), [mu * c for c in cs])))
        return ExpPoly(out)

    def antiderivative(self) -> ExpPoly:
        """The primitive ``F`` with ``F' == self`` and ``F(0) == 0``."""
        out = []
        for mu, cs in self._terms:
            if mu == 0:
                out.append((mu, [Fraction(0)] + [c / (k + 1) for k, c in enumerate(cs)]))
                continue
            # P' + mu P = p  =>  P = sum_j (-1)^j p^(j) / mu^(j+1)
            prim = []
            deriv = list(cs)
            sign_scale = 1 / mu
            while deriv:
                prim = _poly_add(prim, [sign_scale * c for c in deriv])
                deriv = _poly_deriv(deriv)
                sign_scale = -sign_scale / mu
            out.append((mu, prim))
            if prim:
                out.append((Fraction(0), [-prim[0]]))
        return ExpPoly(out)

    def __call__(self, t: float) -> float:
        return self.evaluate(t)

    def evaluate(self, t: float) -> float:
        """Float value at ``t``; coefficients are rounded to float here, once."""
        total = 0.0
        for mu, cs in self._terms:
            poly = _horner([float(c) for c in cs], t)
            if mu == 0:
                total += poly
            else:
                try:
                    e = math.exp(float(mu) * t)
                except OverflowError:
                    e = math.inf
                total += poly * e
        return total

    def at_zero(self) -> Fraction:
        """Exact value at ``t = 0``."""
        return sum((cs[0] for _, cs in self._terms), Fraction(0))

    def maclaurin(self, order: int) -> list[Fraction]:
        """Exact Taylor coefficients about 0 through ``t**order``."""
        if order < 0:
            raise ValueError("order must be >= 0")
        out = [Fraction(0)] * (order + 1)
        for mu, cs in self._terms:
            # exp series mu^i / i!
            ser = [Fraction(1)]
            for i in range(1, order + 1):
                ser.append(ser[-1] * mu / i)
            for k, c in enumerate(cs):
                if c == 0:
                    continue
                for j in range(k, order + 1):
                    out[j] += c * ser[j - k]
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"mode": rat_str(mu), "coeffs": [rat_str(c) for c in cs]}
            for mu, cs in self._terms
        ]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> ExpPoly:
        return cls((item["mode"], item["coeffs"]) for item in data)


def truncated_series(coeffs: Sequence[Fraction]) -> ExpPoly:
    """The polynomial ``sum_k coeffs[k] t**k`` as an :class:`ExpPoly`."""
    return ExpPoly({0: list(coeffs)})


def solve_driven(B, f: ExpPoly, z0=0, zdot0=0) -> ExpPoly:
    """Solve ``z'' + B z' = f`` with ``z(0) = z0``, ``z'(0) = zdot0`` exactly.

    Uses the integrating factor ``exp(B t)`` for ``w = z'``; resonant forcing
    (modes ``0`` and ``-B``) comes out with the degree lift built in.
    """
    B = to_rat(B)
    if B <= 0:
        raise DomainError(f"solve_driven requires B > 0, got B = {B}")
    z0, zdot0 = to_rat(z0), to_rat(zdot0)
    decay = ExpPoly.exp(-B)
    w = decay * ((ExpPoly.exp(B) * f).antiderivative() + zdot0)
    return w.antiderivative() + z0
