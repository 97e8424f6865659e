import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagcomplex import (
    INHOMOGENEOUS,
    Expression,
    Lagrangian,
    Parity,
    ParityError,
    Signature,
    SignatureError,
    add,
    canonicalize,
    jet,
    mul,
    parity_of,
    scale,
    substitute,
    time_var,
)
from lagcomplex.algebra import jet_gen

from conftest import P, expressions, homogeneous_pair, raw_terms, SIGS

S10 = Signature(1, 0, 1, 0)
S02 = Signature(0, 2, 1, 0)


def test_parity_addition():
    assert Parity.EVEN + Parity.ODD == Parity.ODD
    assert Parity.ODD + Parity.ODD == Parity.EVEN


def test_signature_parities():
    sig = Signature(2, 1, 1, 2)
    assert [sig.coord_parity(A) for A in (1, 2, 3)] == [0, 0, 1]
    assert [sig.time_parity(F) for F in (1, 2, 3)] == [0, 1, 1]
    with pytest.raises(SignatureError):
        sig.coord_parity(4)
    with pytest.raises(SignatureError):
        Signature(-1, 0, 0, 0)
    assert Signature.parse("sig 2|1 1|2") == sig
    assert str(sig) == "2|1 1|2"


def test_jet_variable_parity():
    sig = Signature(1, 1, 1, 1)
    assert parity_of(jet(sig, 1, 1)) == Parity.EVEN
    assert parity_of(jet(sig, 1, 2)) == Parity.ODD
    assert parity_of(jet(sig, 2, 2)) == Parity.EVEN
    assert jet_gen(sig, 1, (2, 2)) == (0, None)


def test_odd_square_annihilates():
    th = (jet_gen(S02, 1)[1])
    assert not canonicalize(S02, [(5, [th, th])])


def test_odd_transposition_flips_sign():
    th1, th2 = jet_gen(S02, 1)[1], jet_gen(S02, 2)[1]
    e = canonicalize(S02, [(1, [th2, th1])])
    assert e == -canonicalize(S02, [(1, [th1, th2])])


def test_even_factors_merge():
    x, x1 = jet_gen(S10, 1)[1], jet_gen(S10, 1, (1,))[1]
    e = canonicalize(S10, [(1, [x1, x]), (1, [x, x1])])
    assert e == 2 * P("x1*x1[1]", S10)


def test_canonicalize_rejects_foreign_generators():
    g = jet_gen(Signature(3, 0, 1, 0), 3)[1]
    with pytest.raises(SignatureError):
        canonicalize(S10, [(1, [g])])


def test_mul_and_add_examples():
    th1, th2 = jet(S02, 1), jet(S02, 2)
    assert not mul(th1, th1)
    assert not add(mul(th1, th2), mul(th2, th1))
    L = P("1/2*x1[1]^2 + x1", S10)
    assert not add(L, scale(-1, L))


def test_signature_mismatch():
    with pytest.raises(SignatureError):
        jet(S10, 1) + jet(Signature(1, 0, 2, 0), 1)


def test_parity_of_examples():
    assert parity_of(P("x1*x1[1]", S10)) == Parity.EVEN
    sig = Signature(1, 1, 1, 0)
    assert parity_of(P("th1", sig)) == Parity.ODD
    assert parity_of(P("x1 + th1", sig)) == INHOMOGENEOUS


def test_lagrangian_requires_homogeneous_parity():
    with pytest.raises(ParityError):
        Lagrangian(P("x1 + th1", Signature(1, 1, 1, 0)))


def test_substitute_examples():
    assert substitute(P("x1[1]^2", S10), {1: time_var(S10, 1)}) == 1
    assert substitute(P("x1[1 1]", S10), {1: time_var(S10, 1) ** 3}) == 6 * time_var(S10, 1)
    sig = Signature(0, 1, 0, 1)
    tau = time_var(sig, 1)
    assert substitute(P("th1", sig), {1: tau}) == tau


def test_substitute_odd_time_derivative():
    sig = Signature(0, 1, 0, 1)
    tau = time_var(sig, 1)
    # D_tau (tau) = 1 and the odd jet th1[1] is even
    assert substitute(P("th1[1]", sig), {1: tau}) == 1


def test_substitute_errors():
    sig = Signature(1, 1, 1, 1)
    with pytest.raises(ParityError):
        substitute(P("x1", sig), {1: time_var(sig, 2)})
    with pytest.raises(KeyError):
        substitute(P("x1*th1", sig), {1: time_var(sig, 1)})


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_canonicalize_idempotent(data):
    sig = data.draw(st.sampled_from(SIGS))
    e = canonicalize(sig, data.draw(raw_terms(sig)))
    again = canonicalize(sig, [(c, [g for g, p in mono for _ in range(p)]) for mono, c in e.terms.items()])
    assert again == e


@settings(max_examples=200, deadline=None)
@given(homogeneous_pair())
def test_super_commutativity(pair):
    a, b = pair
    sign = -1 if parity_of(a) == Parity.ODD and parity_of(b) == Parity.ODD else 1
    assert a * b == sign * (b * a)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_associativity_and_distributivity(data):
    sig = data.draw(st.sampled_from(SIGS))
    a, b, c = (data.draw(expressions(sig, max_terms=3)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(st.data())
def test_repeated_odd_symbol_vanishes(data):
    sig = data.draw(st.sampled_from(SIGS))
    e = data.draw(expressions(sig, parity=1))
    for mono, _ in e:
        odd = [g for g, _ in mono if g[5]]
        assert len(odd) == len(set(odd))
    g = jet_gen(sig, sig.ncoords)[1]
    if g[5]:
        assert not canonicalize(sig, [(1, [g, jet_gen(sig, 1)[1], g])])


def test_power_and_zero():
    x = jet(S10, 1)
    assert x ** 0 == 1
    assert str(x ** 3) == "x1^3"
    assert not Expression.zero(S10)
    assert parity_of(Expression.zero(S10)) == Parity.EVEN
