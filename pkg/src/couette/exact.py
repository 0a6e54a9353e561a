"""Closed-form solution of the particle system.

With ``D = B**2 - lambda**2`` and ``lambda**2 = Cbar * (alpha - A)`` the
solution is::

    x = beta*alpha*t + gamma - gamma e^{-Bt} Ch + (u - beta*alpha - B*gamma) e^{-Bt} Sh
    y = beta - beta e^{-Bt} Ch + (v - B*beta) e^{-Bt} Sh

where ``Ch = cosh(lambda t)`` and ``Sh = sinh(lambda t) / lambda`` are taken
as entire functions of ``lambda**2``.  When ``D == 0`` a separate polynomial
plus ``exp(-2Bt)`` form applies.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ExpPoly
from .model import SPECIAL_CASE, SPECIAL_CASE_LITERAL, ModelParams, TrajectorySample

__all__ = [
    "DerivedParams",
    "ModelParams",
    "Regime",
    "SPECIAL_CASE",
    "SPECIAL_CASE_LITERAL",
    "TrajectorySample",
    "derive_params",
    "exact_expoly",
    "exact_maclaurin",
    "exact_position",
    "exact_velocity",
    "kernels",
    "residual",
    "trajectory",
]

# |D| <= GUARD_REL * max(B^2, 1) is evaluated with the D == 0 formulas.
GUARD_REL = 1e-9
# Below this relative |D| the beta/gamma form cancels badly; switch to the
# expm1-based rearrangement.
NEAR_RESONANT_REL = 1e-3


class Regime(enum.Enum):
    GENERIC = "generic"
    LAMBDA_EQUALS_B = "lambda_equals_b"


@dataclass(frozen=True)
class DerivedParams:
    lambda_sq: Fraction
    regime: Regime
    beta: Fraction | None = None
    gamma: Fraction | None = None


def derive_params(p: ModelParams) -> DerivedParams:
    lambda_sq = p.Cbar * (p.alpha - p.A)
    D = p.B**2 - lambda_sq
    if D == 0:
        return DerivedParams(lambda_sq, Regime.LAMBDA_EQUALS_B)
    beta = (p.v * p.B - p.u * p.Cbar) / D
    gamma = ((p.u * p.B + p.v * p.A) - 2 * p.B * beta * p.alpha) / D
    return DerivedParams(lambda_sq, Regime.GENERIC, beta, gamma)


def kernels(lambda_sq, t: float) -> tuple[float, float]:
    """``(cosh(lambda t), sinh(lambda t)/lambda)`` for any sign of lambda**2."""
    ls = float(lambda_sq)
    if ls > 0:
        lam = math.sqrt(ls)
        try:
            return math.cosh(lam * t), math.sinh(lam * t) / lam
        except OverflowError:
            return math.inf, math.copysign(math.inf, t)
    if ls < 0:
        om = math.sqrt(-ls)
        return math.cos(om * t), math.sin(om * t) / om
    return 1.0, float(t)


def _damped_kernels(B: float, lambda_sq, t: float) -> tuple[float, float]:
    """``(e^{-Bt} Ch, e^{-Bt} Sh)``."""
    ch, sh = kernels(lambda_sq, t)
    if math.isinf(ch):
        # fold the damping into the exponent before it overflows
        lam = math.sqrt(float(lambda_sq))
        hi, lo = math.exp((lam - B) * t), math.exp(-(lam + B) * t)
        return 0.5 * (hi + lo), 0.5 * (hi - lo) / lam
    e = math.exp(-B * t)
    return e * ch, e * sh


def _g1(z: float) -> float:
    """(1 - e^{-z}) / z."""
    if z == 0.0:
        return 1.0
    return -math.expm1(-z) / z


def _g2(z: float) -> float:
    """(z - 1 + e^{-z}) / z**2."""
    if abs(z) < 0.1:
        term, total, k = 0.5, 0.5, 0
        while abs(term) > 1e-18 * abs(total):
            k += 1
            term *= -z / (k + 2)
            total += term
        return total
    return (z + math.expm1(-z)) / (z * z)


def _relative_gap(p: ModelParams, lambda_sq: Fraction) -> float:
    return abs(float(p.B**2 - lambda_sq)) / max(float(p.B**2), 1.0)


def _branch(p: ModelParams, d: DerivedParams) -> str:
    if d.regime is Regime.LAMBDA_EQUALS_B:
        return "degenerate"
    gap = _relative_gap(p, d.lambda_sq)
    if gap <= GUARD_REL:
        return "degenerate"
    if gap <= NEAR_RESONANT_REL and d.lambda_sq >= p.B**2 / 4:
        return "near"
    return "generic"


def _degenerate(p: ModelParams, t: float) -> tuple[float, float, float, float]:
    B, A, Cb, al, u, v = p.B, p.A, p.Cbar, p.alpha, p.u, p.v
    P = v * B - u * Cb
    x2 = P * al / (4 * B)
    x1 = (2 * B * (u * B + v * A) - P * al) / (4 * B**2)
    x0 = (2 * B * (u * B - v * A) + P * al) / (8 * B**3)
    y1 = P / (2 * B)
    y0 = (v * B + u * Cb) / (4 * B**2)
    one_minus = -math.expm1(-2 * float(B) * t)
    x = (float(x2) * t + float(x1)) * t + float(x0) * one_minus
    y = float(y1) * t + float(y0) * one_minus
    # x1 + 2B x0 == u and y1 + 2B y0 == v identically
    vx = float(2 * x2) * t + float(u) - float(2 * B * x0) * one_minus
    vy = float(v) - float(2 * B * y0) * one_minus
    return x, y, vx, vy


def _near_resonant(p: ModelParams, d: DerivedParams, t: float):
    # Rearranged so that no 1/D factor appears:
    #   y = P Phi1 + v K,  x = u K + (uB + vA) Phi1 + alpha P Phi2
    # K = e^{-Bt} Sh, Phi1 = int_0^t K, Phi2 = int_0^t Phi1.
    B = float(p.B)
    lam = math.sqrt(float(d.lambda_sq))
    a2 = B + lam
    a1 = float(p.B**2 - d.lambda_sq) / a2  # B - lambda without cancellation
    e1, e2 = math.exp(-a1 * t), math.exp(-a2 * t)
    K = (e1 - e2) / (2 * lam)
    dK = 0.5 * (e1 + e2) - B * K
    phi1 = t * (_g1(a1 * t) - _g1(a2 * t)) / (2 * lam)
    phi2 = t * t * (_g2(a1 * t) - _g2(a2 * t)) / (2 * lam)
    P = float(p.v * p.B - p.u * p.Cbar)
    Q = float(p.u * p.B + p.v * p.A)
    u, v, al = float(p.u), float(p.v), float(p.alpha)
    x = u * K + Q * phi1 + al * P * phi2
    y = P * phi1 + v * K
    vx = u * dK + Q * K + al * P * phi1
    vy = P * K + v * dK
    return x, y, vx, vy


def _generic(p: ModelParams, d: DerivedParams, t: float):
    B = float(p.B)
    ech, esh = _damped_kernels(B, d.lambda_sq, t)
    beta, gamma = d.beta, d.gamma
    ba = float(beta * p.alpha)
    g = float(gamma)
    x = ba * t + g - g * ech + float(p.u - beta * p.alpha - p.B * gamma) * esh
    y = float(beta) - float(beta) * ech + float(p.v - p.B * beta) * esh
    # velocity coefficients combined exactly so that t = 0 returns (u, v)
    D = p.B**2 - d.lambda_sq
    dK = ech - B * esh
    vx = ba * (1.0 - dK) + float(gamma * D) * esh + float(p.u) * dK
    vy = float(beta * D) * esh + float(p.v) * dK
    return x, y, vx, vy


def _evaluate(p: ModelParams, t: float):
    d = derive_params(p)
    branch = _branch(p, d)
    if branch == "degenerate":
        return _degenerate(p, t)
    if branch == "near":
        return _near_resonant(p, d, t)
    return _generic(p, d, t)


def exact_position(p: ModelParams, t: float) -> tuple[float, float]:
    x, y, _, _ = _evaluate(p, float(t))
    return x, y


def exact_velocity(p: ModelParams, t: float) -> tuple[float, float]:
    _, _, vx, vy = _evaluate(p, float(t))
    return vx, vy


def exact_state(p: ModelParams, t: float) -> TrajectorySample:
    t = float(t)
    return TrajectorySample(t, *_evaluate(p, t))


def trajectory(p: ModelParams, times) -> list[TrajectorySample]:
    return [exact_state(p, t) for t in times]


def residual(p: ModelParams, x: ExpPoly, y: ExpPoly) -> tuple[ExpPoly, ExpPoly]:
    """Left-hand sides of both equations applied to ``(x, y)``, exactly."""
    dx, dy = x.differentiate(), y.differentiate()
    slip = dx - p.alpha * y
    r1 = dx.differentiate() - p.A * dy + p.B * slip
    r2 = dy.differentiate() + p.B * dy + p.Cbar * slip
    return r1, r2


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def exact_expoly(p: ModelParams) -> tuple[ExpPoly, ExpPoly]:
    """The closed-form ``(x, y)`` as exact exp-polynomials.

    Only possible when ``lambda`` is rational (including 0) or in the
    ``lambda == B`` regime; otherwise ``ValueError``.
    """
    d = derive_params(p)
    B = p.B
    if d.regime is Regime.LAMBDA_EQUALS_B:
        P = p.v * B - p.u * p.Cbar
        one_minus = 1 - ExpPoly.exp(-2 * B)
        x = ExpPoly({0: [0, (2 * B * (p.u * B + p.v * p.A) - P * p.alpha) / (4 * B**2),
                         P * p.alpha / (4 * B)]})
        x = x + (2 * B * (p.u * B - p.v * p.A) + P * p.alpha) / (8 * B**3) * one_minus
        y = ExpPoly({0: [0, P / (2 * B)]}) + (p.v * B + p.u * p.Cbar) / (4 * B**2) * one_minus
        return x, y
    lam = _rational_sqrt(d.lambda_sq)
    if lam is None:
        raise ValueError(f"lambda^2 = {d.lambda_sq} has no rational square root")
    if lam == 0:
        ch, sh = ExpPoly.const(1), ExpPoly.monomial(1, 1)
    else:
        ch = Fraction(1, 2) * (ExpPoly.exp(lam) + ExpPoly.exp(-lam))
        sh = (ExpPoly.exp(lam) - ExpPoly.exp(-lam)) * (1 / (2 * lam))
    e = ExpPoly.exp(-B)
    beta, gamma, al = d.beta, d.gamma, p.alpha
    x = (ExpPoly.monomial(beta * al, 1) + gamma - gamma * e * ch
         + (p.u - beta * al - B * gamma) * e * sh)
    y = beta - beta * e * ch + (p.v - B * beta) * e * sh
    return x, y


def exact_maclaurin(p: ModelParams, order: int) -> tuple[list[Fraction], list[Fraction]]:
    """Exact Taylor coefficients of ``(x, y)`` about ``t = 0``.

    Obtained straight from the differential equations by coefficient
    recursion, so it works for irrational ``lambda`` too.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    n = max(order, 1)
    xs = [Fraction(0), p.u] + [Fraction(0)] * (n - 1)
    ys = [Fraction(0), p.v] + [Fraction(0)] * (n - 1)
    for k in range(0, n - 1):
        slip = (k + 1) * xs[k + 1] - p.alpha * ys[k]
        scale = (k + 2) * (k + 1)
        xs[k + 2] = (p.A * (k + 1) * ys[k + 1] - p.B * slip) / scale
        ys[k + 2] = (-p.B * (k + 1) * ys[k + 1] - p.Cbar * slip) / scale
    return xs[: order + 1], ys[: order + 1]


def special_case_closed_form() -> dict[str, ExpPoly]:
    """x = 2 - 2e^-t - t e^-t, y = t e^-t and their derivatives."""
    e = ExpPoly.exp(-1)
    t = ExpPoly.monomial(1, 1)
    x = 2 - 2 * e - t * e
    y = t * e
    return {"x": x, "y": y, "vx": (1 + t) * e, "vy": (1 - t) * e}
