import json
import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from couette.algebra import ExpPoly, rat_str, solve_driven, to_rat, truncated_series
from couette.errors import DomainError

from .strategies import exppolys

T = ExpPoly.monomial(1, 1)
E = ExpPoly.exp(-1)


def test_canonical_form_prunes_and_sorts():
    f = ExpPoly({1: [0, 0], -1: [2, 0, 0], 0: [F(3, 6)]})
    assert f.terms == ((F(-1), (F(2),)), (F(0), (F(1, 2),)))
    assert ExpPoly({0: [0]}).is_zero()
    assert ExpPoly({-1: [1]}) + ExpPoly({-1: [-1]}) == ExpPoly.zero()


def test_first_two_printed_brackets_sum_to_t():
    assert (1 - E) + (E + T - 1) == T


def test_mode_addition_on_multiply():
    assert (T * E) * (T * E) == ExpPoly.monomial(1, 2, -2)


def test_scalar_scale():
    assert 3 * T == ExpPoly.monomial(3, 1)
    assert T * F(1, 2) == ExpPoly.monomial(F(1, 2), 1)


@pytest.mark.parametrize("f, expected", [
    (T * E, (1 - T) * E),
    (ExpPoly.const(5), ExpPoly.zero()),
    (2 - 2 * E - T * E, (1 + T) * E),
])
def test_differentiate(f, expected):
    assert f.differentiate() == expected


@pytest.mark.parametrize("f, expected", [
    (T * E, 1 - (1 + T) * E),
    (ExpPoly.const(1), T),
    (E, 1 - E),
])
def test_antiderivative(f, expected):
    assert f.antiderivative() == expected


def test_evaluate_matches_high_precision():
    mpmath.mp.dps = 30
    assert (T * E).evaluate(1.0) == float(mpmath.exp(-1))
    assert (T * E).evaluate(1.0) == 0.36787944117144233
    assert (1 - E).evaluate(1.0) == float(1 - mpmath.exp(-1))
    assert (1 - E).evaluate(1.0) == 0.6321205588285577


def test_evaluate_overflow_gives_inf():
    assert ExpPoly.exp(1).evaluate(1000.0) == math.inf


def test_maclaurin_examples():
    assert (T * E).maclaurin(4) == [0, 1, -1, F(1, 2), F(-1, 6)]
    assert ExpPoly.const(1).maclaurin(2) == [1, 0, 0]
    assert ((1 + T) * E).maclaurin(3) == [1, 0, F(-1, 2), F(1, 3)]


def test_maclaurin_closed_form_of_one_plus_t_times_decay():
    coeffs = ((1 + T) * E).maclaurin(12)
    assert coeffs == [F((-1) ** k * (1 - k), math.factorial(k)) for k in range(13)]


@pytest.mark.parametrize("f, z0, zdot0, expected", [
    (ExpPoly.const(1), 0, 0, E + T - 1),
    (-2 * E, 0, 0, -2 + 2 * E + 2 * T * E),
    (ExpPoly.zero(), 0, 1, 1 - E),
])
def test_solve_driven_examples(f, z0, zdot0, expected):
    assert solve_driven(1, f, z0, zdot0) == expected


def test_solve_driven_rejects_nonpositive_drag():
    with pytest.raises(DomainError):
        solve_driven(0, ExpPoly.const(1))
    with pytest.raises(DomainError):
        solve_driven(-1, ExpPoly.const(1))


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_rat(0.5)
    with pytest.raises(TypeError):
        ExpPoly({0.5: [1]})


def test_json_roundtrip_and_format():
    f = 2 - 2 * E - T * E + ExpPoly.monomial(F(-3, 7), 2, F(1, 2))
    data = f.to_json()
    assert data[0] == {"mode": "-1/1", "coeffs": ["-2/1", "-1/1"]}
    assert ExpPoly.from_json(json.loads(json.dumps(data))) == f
    assert rat_str(F(-4, 6)) == "-2/3"


@given(exppolys(), exppolys(), exppolys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ExpPoly.zero()


@given(exppolys())
def test_antiderivative_inverts_derivative(f):
    F_ = f.antiderivative()
    assert F_.differentiate() == f
    assert F_.at_zero() == 0


@given(exppolys())
def test_derivative_is_a_derivation(f):
    g = ExpPoly.monomial(F(2, 3), 1, -1) + 1
    assert (f * g).differentiate() == f.differentiate() * g + f * g.differentiate()


@settings(max_examples=50)
@given(exppolys(), st.floats(min_value=-1, max_value=1))
def test_maclaurin_truncation_converges(f, t):
    exact = f.evaluate(t)
    errs = [abs(truncated_series(f.maclaurin(n)).evaluate(t) - exact) for n in (4, 8, 12)]
    scale = 1e-12 * max(1.0, abs(exact))
    assert errs[1] <= errs[0] + scale
    assert errs[2] <= errs[1] + scale


@given(exppolys(max_modes=2, max_degree=3), st.sampled_from([F(1), F(2), F(1, 2)]),
       st.integers(-3, 3), st.integers(-3, 3))
def test_solve_driven_identity(f, B, z0, zdot0):
    z = solve_driven(B, f, z0, zdot0)
    dz = z.differentiate()
    assert dz.differentiate() + B * dz - f == ExpPoly.zero()
    assert z.at_zero() == z0
    assert dz.at_zero() == zdot0


def test_resonant_forcing_lifts_degree():
    # modes 0 and -B are homogeneous solutions
    z = solve_driven(2, ExpPoly.monomial(1, 2, -2))
    assert len(z.coeffs(-2)) == 4
    z = solve_driven(2, ExpPoly.monomial(1, 2))
    assert len(z.coeffs(0)) == 4
