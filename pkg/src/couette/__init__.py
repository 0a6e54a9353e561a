"""Spherical particle in plane Couette flow: exact solution versus
homotopy-perturbation series and Padé approximants."""

from .algebra import ExpPoly, solve_driven, to_rat
from .analysis import MethodSpec, Quantity, divergence_time, sweep
from .errors import DivergenceError, DomainError, PoleError
from .exact import (
    DerivedParams,
    Regime,
    derive_params,
    exact_position,
    exact_state,
    exact_velocity,
    kernels,
    residual,
)
from .hpm import HpmExpansion, hpm_expand, partial_sum
from .model import SPECIAL_CASE, SPECIAL_CASE_LITERAL, ModelParams, TrajectorySample
from .oracle import integrate
from .pade import PadeDegenerateError, RationalFn, build_pade, eval_rational, paper_fixture

__version__ = "0.1.0"
