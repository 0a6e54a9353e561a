"""Fixed-step classical RK4 on the first-order form of the particle system.

State is ``(x, y, p, q)`` with ``p = x'`` and ``q = y'``::

    x' = p
    y' = q
    p' = A q - B (p - alpha y)
    q' = -B q - Cbar (p - alpha y)

Deliberately shares nothing with :mod:`couette.exact` beyond the parameter
type, so the two can check each other.
"""

from __future__ import annotations

import math
from typing import Iterable

from .errors import DivergenceError
from .model import ModelParams, TrajectorySample


def _rhs(c, s):
    A, B, Cb, al = c
    x, y, p, q = s
    slip = p - al * y
    return (p, q, A * q - B * slip, -B * q - Cb * slip)


def _step(c, s, h):
    k1 = _rhs(c, s)
    k2 = _rhs(c, tuple(si + 0.5 * h * ki for si, ki in zip(s, k1)))
    k3 = _rhs(c, tuple(si + 0.5 * h * ki for si, ki in zip(s, k2)))
    k4 = _rhs(c, tuple(si + h * ki for si, ki in zip(s, k3)))
    return tuple(
        si + h / 6.0 * (a + 2.0 * b + 2.0 * cc + d)
        for si, a, b, cc, d in zip(s, k1, k2, k3, k4)
    )


def _coeffs(p: ModelParams):
    return float(p.A), float(p.B), float(p.Cbar), float(p.alpha)


def _sample(t, s) -> TrajectorySample:
    if not all(math.isfinite(v) for v in s):
        raise DivergenceError(t)
    return TrajectorySample(t, s[0], s[1], s[2], s[3])


def integrate(p: ModelParams, t_end: float, h: float) -> list[TrajectorySample]:
    """Samples at ``0, h, 2h, ...`` and at ``t_end`` (last step shortened)."""
    if not t_end > 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if not 0 < h <= t_end:
        raise ValueError(f"step must satisfy 0 < h <= t_end, got h={h}")
    t_end, h = float(t_end), float(h)
    c = _coeffs(p)
    s = (0.0, 0.0, float(p.u), float(p.v))
    out = [_sample(0.0, s)]
    n = max(1, math.ceil(t_end / h * (1 - 1e-12)))
    for k in range(1, n + 1):
        t = t_end if k == n else k * h
        s = _step(c, s, t - out[-1].t)
        out.append(_sample(t, s))
    return out


def sample_at(p: ModelParams, times: Iterable[float], h: float) -> list[TrajectorySample]:
    """RK4 solution at each requested (nondecreasing) time, stepping by ``h``
    between consecutive requests and shortening the last step of each leg."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    c = _coeffs(p)
    s = (0.0, 0.0, float(p.u), float(p.v))
    t = 0.0
    out = []
    for target in times:
        target = float(target)
        if target < t:
            raise ValueError("sample times must be nondecreasing and >= 0")
        while target - t > 1e-12 * max(1.0, target):
            dt = min(h, target - t)
            s = _step(c, s, dt)
            t += dt
            if not all(math.isfinite(v) for v in s):
                raise DivergenceError(t)
        t = target
        out.append(_sample(target, s))
    return out
