"""Exception types shared across the package."""


class DomainError(ValueError):
    """A model parameter lies outside the supported domain (e.g. B <= 0)."""


class PoleError(ArithmeticError):
    """A rational function was evaluated at (or numerically at) a pole."""

    def __init__(self, t, denominator):
        super().__init__(f"pole at t={t!r}: |denominator| = {abs(denominator):.3e}")
        self.t = t
        self.denominator = denominator


class DivergenceError(ArithmeticError):
    """Numerical integration produced a non-finite state."""

    def __init__(self, t):
        super().__init__(f"non-finite state encountered at t={t!r}")
        self.t = t
