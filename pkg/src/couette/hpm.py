"""Order-by-order homotopy-perturbation expansion of the particle system.

Order 0 solves ``z'' + B z' = 0`` with the problem's initial data.  Each
later order is driven by the coupling terms of the previous one::

    x_n'' + B x_n' = A y_{n-1}' + B alpha y_{n-1}
    y_n'' + B y_n' = -Cbar (x_{n-1}' - alpha y_{n-1})

with zero initial data.  Every term is an exact :class:`ExpPoly` with modes
in ``{0, -B}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import ExpPoly, solve_driven
from .model import ModelParams


@dataclass(frozen=True)
class HpmExpansion:
    params: ModelParams
    orders: tuple[tuple[ExpPoly, ExpPoly], ...]

    def __len__(self):
        return len(self.orders)

    def term(self, n: int) -> tuple[ExpPoly, ExpPoly]:
        return self.orders[n]

    def partial_sum(self, N: int) -> tuple[ExpPoly, ExpPoly]:
        return partial_sum(self, N)


def hpm_expand(p: ModelParams, N: int) -> HpmExpansion:
    if N < 0:
        raise ValueError(f"number of orders must be >= 0, got {N}")
    B = p.B
    x = solve_driven(B, ExpPoly.zero(), 0, p.u)
    y = solve_driven(B, ExpPoly.zero(), 0, p.v)
    orders = [(x, y)]
    for _ in range(N):
        dx, dy = x.differentiate(), y.differentiate()
        fx = p.A * dy + B * p.alpha * y
        fy = -p.Cbar * (dx - p.alpha * y)
        x, y = solve_driven(B, fx), solve_driven(B, fy)
        orders.append((x, y))
    return HpmExpansion(p, tuple(orders))


def partial_sum(e: HpmExpansion, N: int) -> tuple[ExpPoly, ExpPoly]:
    """Sum of orders ``0..N`` inclusive."""
    if not 0 <= N < len(e.orders):
        raise IndexError(f"partial sum index {N} outside 0..{len(e.orders) - 1}")
    x, y = ExpPoly.zero(), ExpPoly.zero()
    for xn, yn in e.orders[: N + 1]:
        x, y = x + xn, y + yn
    return x, y


def partial_sums(e: HpmExpansion) -> list[tuple[ExpPoly, ExpPoly]]:
    out = []
    x, y = ExpPoly.zero(), ExpPoly.zero()
    for xn, yn in e.orders:
        x, y = x + xn, y + yn
        out.append((x, y))
    return out


def agreement_degree(a: list[Fraction], b: list[Fraction]) -> int:
    """Number of leading Taylor coefficients on which ``a`` and ``b`` agree."""
    k = 0
    for ca, cb in zip(a, b):
        if ca != cb:
            break
        k += 1
    return k
