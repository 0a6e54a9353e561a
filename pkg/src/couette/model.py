"""Plain data types describing the particle problem.

The governing system is::

    x'' - A y' + B (x' - alpha y) = 0
    y'' + B y' + Cbar (x' - alpha y) = 0
    x(0) = 0, x'(0) = u,  y(0) = 0, y'(0) = v
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from typing import NamedTuple

from .algebra import rat_str, to_rat
from .errors import DomainError


@dataclass(frozen=True)
class ModelParams:
    """Exact rational coefficients of the system.

    ``Cbar`` is the coupling in the y-equation.  Use :meth:`from_c` to build it
    from ``C`` via ``Cbar = C + A`` instead.
    """

    A: Fraction
    B: Fraction
    Cbar: Fraction
    alpha: Fraction
    u: Fraction
    v: Fraction

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, to_rat(getattr(self, f.name)))
        if self.B <= 0:
            raise DomainError(f"drag coefficient must satisfy B > 0, got B = {self.B}")

    @classmethod
    def from_c(cls, A, B, C, alpha, u, v) -> ModelParams:
        A = to_rat(A)
        return cls(A=A, B=B, Cbar=to_rat(C) + A, alpha=alpha, u=u, v=v)

    def replace(self, **changes) -> ModelParams:
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ModelParams(**values)

    def to_json(self) -> dict:
        return {f.name: rat_str(getattr(self, f.name)) for f in fields(self)}

    @classmethod
    def from_json(cls, data: dict) -> ModelParams:
        return cls(**{f.name: data[f.name] for f in fields(cls)})


# A = B = alpha = u = v = 1 with unit coupling, the reading under which the
# published closed form x = 2 - 2e^-t - t e^-t, y = t e^-t solves the system.
SPECIAL_CASE = ModelParams(A=1, B=1, Cbar=1, alpha=1, u=1, v=1)

# The same case with Cbar = C + A = 2, taken literally.
SPECIAL_CASE_LITERAL = ModelParams.from_c(1, 1, 1, 1, 1, 1)


class TrajectorySample(NamedTuple):
    t: float
    x: float
    y: float
    vx: float
    vy: float
