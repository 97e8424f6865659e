import itertools

import pytest

from lagcomplex import (
    NotFormLike,
    PolyForm,
    Signature,
    apply_d,
    bridge_check,
    cohomology_dims,
    exterior_deriv,
    form_to_lagrangian,
    lagrangian_to_form,
)
from lagcomplex.derham import coeff_signature, monomial_forms, sigma, _velocity_det

from conftest import P
from oracles import polynomial_derham_dims


def form(n, degree, items):
    sig = coeff_signature(n)
    return PolyForm(n, degree, {key: P(text, sig) for key, text in items.items()})


def test_form_to_lagrangian_examples():
    assert form_to_lagrangian(form(2, 1, {(1,): "x2"})).body == P("x2*x1[1]", Signature(2, 0, 1, 0))
    sig = Signature(2, 0, 2, 0)
    assert form_to_lagrangian(form(2, 2, {(1, 2): "1"})).body == P("-x1[1]*x2[2] + x2[1]*x1[2]", sig)
    assert form_to_lagrangian(form(3, 0, {(): "x1*x3"})).body == P("x1*x3", Signature(3, 0, 0, 0))


def test_sigma_values():
    assert [sigma(k) for k in range(6)] == [1, 1, -1, -1, 1, 1]


def test_exterior_deriv_examples():
    assert exterior_deriv(form(2, 0, {(): "x1*x2"})) == form(2, 1, {(1,): "x2", (2,): "x1"})
    assert exterior_deriv(form(2, 1, {(1,): "x2"})) == form(2, 2, {(1, 2): "-1"})
    top = exterior_deriv(form(2, 2, {(1, 2): "x1"}))
    assert top.degree == 3 and not top


def test_polyform_validation():
    with pytest.raises(ValueError):
        form(2, 2, {(2, 1): "1"})
    with pytest.raises(ValueError):
        form(2, 1, {(3,): "1"})
    with pytest.raises(ValueError):
        PolyForm(1, 0, {(): P("x1[1]", Signature(1, 0, 1, 0))})


def test_lagrangian_to_form_round_trip():
    for n, k in [(2, 1), (3, 2), (3, 3), (2, 0)]:
        for w in monomial_forms(n, k, 1):
            assert lagrangian_to_form(form_to_lagrangian(w)) == w


@pytest.mark.parametrize(
    "sig, text, message",
    [
        (Signature(1, 0, 1, 0), "x1[1]^2", "multilinear"),
        (Signature(1, 0, 1, 0), "x1[1 1]", "multilinear"),
        (Signature(2, 0, 2, 0), "x1[1]*x2[2]", "alternating"),
        (Signature(1, 1, 1, 0), "th1", "even"),
        (Signature(1, 0, 1, 0), "t1*x1[1]", "time"),
    ],
)
def test_lagrangian_to_form_rejects(sig, text, message):
    with pytest.raises(NotFormLike, match=message):
        lagrangian_to_form(P(text, sig))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bridge_exhaustive(n):
    for k in range(n + 1):
        for w in monomial_forms(n, k, 2):
            assert not bridge_check(w), str(w)
            assert not exterior_deriv(exterior_deriv(w))


def test_sign_calibration_matches_frozen_sigma():
    # pick the sign of each degree so d(det-Lagrangian) matches the det of dw, starting from +1
    n = 3
    found = [1]
    for k in range(n):
        w = form(n, k, {tuple(range(1, k + 1)): f"x{k + 1}"})
        dw = exterior_deriv(w)
        lhs = apply_d(found[k] * sum_dets(w)).body
        rhs = sum_dets(dw)
        found.append(1 if lhs == rhs else -1)
        assert lhs == found[-1] * rhs
    assert found == [sigma(k) for k in range(n + 1)]


def sum_dets(w):
    sig = Signature(w.n, 0, w.degree, 0)
    out = P("0", sig)
    for key, c in w.coeffs.items():
        out = out + c.in_signature(sig) * _velocity_det(sig, key)
    return out


@pytest.mark.parametrize("n, bound", list(itertools.product(range(1, 4), range(4))))
def test_cohomology_against_oracle(n, bound):
    dims = cohomology_dims(n, bound)
    assert dims == polynomial_derham_dims(n, bound)
    assert dims == [1] + [0] * n


def test_cohomology_bounds():
    assert cohomology_dims(0, 2) == [1]
    with pytest.raises(ValueError):
        cohomology_dims(5, 1)
    with pytest.raises(ValueError):
        cohomology_dims(2, -1)
