"""Even-case dictionary between polynomial differential forms and Lagrangians.

A ``k``-form ``sum w_I dx^I`` corresponds to the first-order Lagrangian of
``k``-paths ``sigma_k * sum_I w_I(x) det[x^{I_i}_{,j}]``.  The sign
``sigma_k = (-1)^{k(k-1)/2}`` is forced by requiring ``d`` of Lagrangians to
match the exterior derivative: ``d`` appends the new time as the *last*
column of the velocity determinant while ``dx^B ^ w`` puts ``B`` first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .algebra import JET, Expression, Lagrangian, Signature, as_expression, jet
from .lagrangian_complex import apply_d
from .variational import partial_deriv


def sigma(k: int) -> int:
    return -1 if (k * (k - 1) // 2) % 2 else 1


def coeff_signature(n: int) -> Signature:
    return Signature(n, 0, 0, 0)


@dataclass(frozen=True)
class PolyForm:
    """Polynomial ``degree``-form on ``R^n``; keys are strictly increasing index tuples."""

    n: int
    degree: int
    coeffs: Dict[Tuple[int, ...], Expression] = field(default_factory=dict)

    def __post_init__(self):
        sig = coeff_signature(self.n)
        clean = {}
        for key, c in self.coeffs.items():
            key = tuple(key)
            if len(key) != self.degree or list(key) != sorted(set(key)) or not all(1 <= a <= self.n for a in key):
                raise ValueError(f"bad index tuple {key} for a {self.degree}-form on R^{self.n}")
            c = c.in_signature(sig)
            if any(g[0] != JET or g[2] for g in c.gens()):
                raise ValueError("form coefficients must be polynomials in the coordinates")
            if c:
                clean[key] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (self.n, self.degree, self.coeffs) == (other.n, other.degree, other.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({c})" + ("*" + "^".join(f"dx{a}" for a in key) if key else "") for key, c in self.coeffs.items()
        )


def _velocity_det(sig: Signature, key: Tuple[int, ...]) -> Expression:
    k = len(key)
    out = Expression.constant(sig, 1) if k == 0 else Expression.zero(sig)
    for perm in itertools.permutations(range(k)) if k else ():
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        term = Expression.constant(sig, -1 if inv % 2 else 1)
        for i in range(k):
            term = term * jet(sig, key[i], perm[i] + 1)
        out = out + term
    return out


def form_to_lagrangian(w: PolyForm) -> Lagrangian:
    sig = Signature(w.n, 0, w.degree, 0)
    out = Expression.zero(sig)
    for key, c in w.coeffs.items():
        out = out + c.in_signature(sig) * _velocity_det(sig, key)
    return Lagrangian(out * sigma(w.degree))


class NotFormLike(ValueError):
    pass


def lagrangian_to_form(L) -> PolyForm:
    """Inverse of :func:`form_to_lagrangian`; rejects non form-like input."""
    e = as_expression(L)
    sig = e.sig
    if sig.m or sig.s:
        raise NotFormLike("only even signatures carry differential forms")
    k = sig.r
    coeffs: Dict[Tuple[int, ...], Expression] = {}
    csig = coeff_signature(sig.n)
    for mono, c in e.terms.items():
        velocities = []
        rest = []
        for g, p in mono:
            if g[0] != JET:
                raise NotFormLike(f"explicit time in {Expression(sig, {mono: c})}")
            if g[2] == 0:
                rest.append((g, p))
            elif g[2] == 1 and p == 1:
                velocities.append(g)
            else:
                raise NotFormLike(f"not multilinear in the velocities: {Expression(sig, {mono: c})}")
        times = sorted(g[3][0] for g in velocities)
        if times != list(range(1, k + 1)):
            raise NotFormLike(f"not multilinear in the velocities: {Expression(sig, {mono: c})}")
        by_time = {g[3][0]: g[1] for g in velocities}
        coords = tuple(by_time[j] for j in range(1, k + 1))
        if list(coords) == sorted(set(coords)):
            coeffs[coords] = coeffs.get(coords, Expression.zero(csig)) + Expression(csig, {tuple(rest): c * sigma(k)})
    w = PolyForm(sig.n, k, coeffs)
    diff = form_to_lagrangian(w).body - e
    if diff:
        mono = min(diff.terms)
        raise NotFormLike(f"not alternating: {Expression(sig, {mono: diff.terms[mono]})}")
    return w


def exterior_deriv(w: PolyForm) -> PolyForm:
    """Classical ``dw``; a top-degree input gives the zero form of degree ``n+1``."""
    sig = coeff_signature(w.n)
    out: Dict[Tuple[int, ...], Expression] = {}
    for key, c in w.coeffs.items():
        for B in range(1, w.n + 1):
            if B in key:
                continue
            dc = partial_deriv(c, jet(sig, B))
            if not dc:
                continue
            pos = sum(1 for a in key if a < B)
            new = tuple(sorted(key + (B,)))
            out[new] = out.get(new, Expression.zero(sig)) + (dc if pos % 2 == 0 else -dc)
    return PolyForm(w.n, w.degree + 1, out)


def bridge_check(w: PolyForm) -> Expression:
    """``d(L_w) - L_{dw}``; zero when the dictionary intertwines the differentials."""
    lhs = apply_d(form_to_lagrangian(w)).body
    rhs = form_to_lagrangian(exterior_deriv(w)).body
    return lhs - rhs


def coefficient_monomials(n: int, max_degree: int) -> List[Expression]:
    """All monomials ``x^a`` with ``|a| <= max_degree`` (none if negative)."""
    sig = coeff_signature(n)
    out = []
    for d in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(1, n + 1), d):
            e = Expression.constant(sig, 1)
            for a in combo:
                e = e * jet(sig, a)
            out.append(e)
    return out


def monomial_forms(n: int, degree: int, coeff_degree: int) -> List[PolyForm]:
    return [
        PolyForm(n, degree, {key: mono})
        for key in itertools.combinations(range(1, n + 1), degree)
        for mono in coefficient_monomials(n, coeff_degree)
    ]


MAX_N = 4
MAX_DEGREE_BOUND = 4


def cohomology_dims(n: int, degree_bound: int) -> List[int]:
    """Betti numbers of the polynomial de Rham complex truncated at weight ``degree_bound``.

    A ``k``-form ``x^a dx^I`` has weight ``|a| + k``; ``d`` preserves weight, so
    forms of weight ``<= degree_bound`` (coefficient degree ``<= degree_bound - k``)
    make a finite subcomplex.  Ranks are exact over ``QQ``.
    """
    if not 0 <= n <= MAX_N or not 0 <= degree_bound <= MAX_DEGREE_BOUND:
        raise ValueError(f"cohomology_dims supports n <= {MAX_N}, degree_bound <= {MAX_DEGREE_BOUND}")
    bases = [monomial_forms(n, k, degree_bound - k) for k in range(n + 1)]
    ranks = []
    for k in range(n + 1):
        src = bases[k]
        tgt = bases[k + 1] if k < n else []
        index = {(f.degree, next(iter(f.coeffs)), _mono_key(next(iter(f.coeffs.values())))): i for i, f in enumerate(tgt)}
        rows = [[QQ(0)] * len(src) for _ in range(len(tgt))]
        for j, f in enumerate(src):
            for key, c in exterior_deriv(f).coeffs.items():
                for mono, q in c.terms.items():
                    i = index[(k + 1, key, mono)]
                    rows[i][j] = QQ(q.numerator, q.denominator)
        ranks.append(DomainMatrix(rows, (len(tgt), len(src)), QQ).rank() if tgt and src else 0)
    dims = []
    for k in range(n + 1):
        kernel = len(bases[k]) - ranks[k]
        dims.append(kernel - (ranks[k - 1] if k else 0))
    return dims


def _mono_key(e: Expression):
    (mono,) = e.terms
    return mono
