import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lagcomplex import (
    Parity,
    Signature,
    order_of,
    parity_of,
    partial_deriv,
    total_deriv,
    var_deriv,
    var_deriv_all,
)
from lagcomplex.corpus import Stream, random_lagrangian

from conftest import P, SIGS, expressions
from oracles import sympy_euler_equation, textbook_euler_lagrange, to_sympy

S10 = Signature(1, 0, 1, 0)


def test_partial_deriv_examples():
    assert partial_deriv(P("1/2*x1[1]^2", S10), P("x1[1]", S10)) == P("x1[1]", S10)
    sig = Signature(0, 2, 1, 0)
    assert partial_deriv(P("th1*th2", sig), P("th2", sig)) == -P("th1", sig)
    sig = Signature(3, 0, 1, 0)
    assert not partial_deriv(P("x1*x2", sig), P("x3", sig))


def test_total_deriv_examples():
    assert total_deriv(P("x1", S10), 1) == P("x1[1]", S10)
    assert total_deriv(P("1/2*x1[1]^2", S10), 1) == P("x1[1]*x1[1 1]", S10)
    sig = Signature(0, 1, 0, 1)
    assert not total_deriv(total_deriv(P("th1", sig), 1), 1)


def test_total_deriv_explicit_time():
    sig = Signature(1, 0, 1, 1)
    assert total_deriv(P("t1^2*x1", sig), 1) == P("2*t1*x1 + t1^2*x1[1]", sig)
    assert total_deriv(P("tau1", sig), 2) == 1


def test_total_deriv_rejects_bad_index():
    with pytest.raises(ValueError):
        total_deriv(P("x1", S10), 2)


def test_var_deriv_examples():
    # oracle values: sympy's euler_equations on the same Lagrangians
    for text, expected in [("1/2*x1[1]^2", "-x1[1 1]"), ("1/2*x1[1 1]^2", "x1[1 1 1 1]")]:
        L = P(text, S10)
        assert sympy.expand(sympy_euler_equation(to_sympy(L))) == to_sympy(P(expected, S10))
        assert var_deriv(L, 1) == P(expected, S10)
    assert var_deriv(P("x1", S10), 1) == 1


def test_var_deriv_all_examples():
    sig = Signature(2, 0, 1, 0)
    f = var_deriv_all(P("1/2*(x1[1]^2 + x2[1]^2)", sig))
    assert f.components == (P("-x1[1 1]", sig), P("-x2[1 1]", sig))
    assert all(not c for c in var_deriv_all(P("0", sig)))
    f = var_deriv_all(P("x1*x2", sig))
    assert (f[1], f[2]) == (P("x2", sig), P("x1", sig))


def test_var_deriv_rejects_time_dependence():
    with pytest.raises(ValueError):
        var_deriv(P("t1*x1", S10), 1)


def test_order_of_examples():
    assert order_of(P("1/2*x1[1]^2", S10)) == 1
    sig = Signature(1, 0, 2, 0)
    assert order_of(P("x1[2]*x1[1 1]", sig)) == 2
    assert order_of(P("0", sig)) == -math.inf
    assert order_of(P("3*x1", sig)) == 0


def test_odd_coordinate_variational_derivative():
    # delta/delta xi of xi*xi_1 with left derivatives: d/dxi gives xi_1,
    # the velocity term gives -D(-xi) = xi_1 again
    sig = Signature(0, 1, 1, 0)
    assert var_deriv(P("th1*th1[1]", sig), 1) == P("2*th1[1]", sig)


def _gen_pairs(data, sig):
    a = data.draw(expressions(sig, parity=data.draw(st.integers(0, 1))))
    b = data.draw(expressions(sig, parity=data.draw(st.integers(0, 1))))
    return a, b


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_leibniz_partial(data):
    sig = data.draw(st.sampled_from(SIGS))
    a, b = _gen_pairs(data, sig)
    v = data.draw(st.sampled_from(sorted((a + b).gens()) or [None]))
    if v is None or v[0] != 2:
        return
    pv = v[5]
    sign = -1 if pv and parity_of(a) == Parity.ODD else 1
    assert partial_deriv(a * b, v) == partial_deriv(a, v) * b + sign * (a * partial_deriv(b, v))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_leibniz_total(data):
    sig = data.draw(st.sampled_from(SIGS))
    a, b = _gen_pairs(data, sig)
    F = data.draw(st.integers(1, sig.ntimes))
    sign = -1 if sig.time_parity(F) and parity_of(a) == Parity.ODD else 1
    assert total_deriv(a * b, F) == total_deriv(a, F) * b + sign * (a * total_deriv(b, F))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_total_derivatives_supercommute(data):
    sig = data.draw(st.sampled_from(SIGS))
    e = data.draw(expressions(sig))
    F = data.draw(st.integers(1, sig.ntimes))
    G = data.draw(st.integers(1, sig.ntimes))
    sign = -1 if sig.time_parity(F) and sig.time_parity(G) else 1
    assert total_deriv(total_deriv(e, F), G) == sign * total_deriv(total_deriv(e, G), F)


@pytest.mark.parametrize("seed", range(3))
def test_order_bound(seed):
    stream = Stream(seed)
    for sig in (Signature(1, 0, 1, 0), Signature(1, 1, 1, 1), Signature(2, 0, 2, 0)):
        for k in (1, 2, 3):
            L = random_lagrangian(stream, sig, k, max_terms=2)
            for A in range(1, sig.ncoords + 1):
                assert order_of(var_deriv(L, A)) <= 2 * k


def test_textbook_oracle_equivalence():
    stream = Stream(2024)
    for _ in range(60):
        L = random_lagrangian(stream, S10, 1 + stream.below(2))
        expected = textbook_euler_lagrange(to_sympy(L.body), 1, 1)
        assert sympy.expand(to_sympy(var_deriv(L, 1)) - expected) == 0


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_linearity(data):
    sig = data.draw(st.sampled_from(SIGS))
    a = data.draw(expressions(sig, times=False))
    b = data.draw(expressions(sig, times=False))
    p, q = Fraction(3, 2), Fraction(-2)
    for A in range(1, sig.ncoords + 1):
        assert var_deriv(p * a + q * b, A) == p * var_deriv(a, A) + q * var_deriv(b, A)
