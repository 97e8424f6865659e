"""Exact actions of polynomial paths, divergence certificates and Stokes' formula."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple, Union

from .algebra import (
    EVEN_TIME,
    ODD_TIME,
    Expression,
    Lagrangian,
    ParityError,
    Signature,
    SignatureError,
    as_expression,
    jet_gen,
    parity_of,
    substitute,
    substitute_gens,
    time_gen,
)
from .lagrangian_complex import apply_d
from .variational import order_of, partial_deriv, total_deriv, total_deriv_internal


def _check_components(sig: Signature, components) -> Tuple[Expression, ...]:
    if len(components) != sig.ncoords:
        raise SignatureError(f"expected {sig.ncoords} components, got {len(components)}")
    out = []
    for A, c in enumerate(components, start=1):
        c = c.in_signature(sig)
        if not c.is_jet_free():
            raise ValueError(f"component {A} contains jet variables")
        p = parity_of(c)
        if c and p != sig.coord_parity(A):
            raise ParityError(f"component {A} has parity {p}, coordinate parity is {sig.coord_parity(A)}")
        out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class Path:
    """Polynomial map from the ``r|s`` cube: one time polynomial per coordinate."""

    sig: Signature
    components: Tuple[Expression, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", _check_components(self.sig, self.components))

    @classmethod
    def from_mapping(cls, sig: Signature, comps: Dict[int, Expression]) -> "Path":
        return cls(sig, tuple(comps.get(A, Expression.zero(sig)) for A in range(1, sig.ncoords + 1)))

    def binding(self) -> Dict[int, Expression]:
        return {A: c for A, c in enumerate(self.components, start=1)}


def _restrict_time(e: Expression, sig: Signature, k: int, value) -> Expression:
    target = time_gen(sig, k)

    def image(g):
        if g == target:
            return Expression.constant(sig, value)
        return Expression.from_gen(sig, g)

    return substitute_gens(e, image, sig)


@dataclass(frozen=True)
class Homotopy:
    """A family of ``r|s`` paths; even time ``r+1`` of the lifted signature is the parameter."""

    base_sig: Signature
    components: Tuple[Expression, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", _check_components(self.base_sig.lift(), self.components))

    @classmethod
    def from_mapping(cls, base_sig: Signature, comps: Dict[int, Expression]) -> "Homotopy":
        lifted = base_sig.lift()
        return cls(base_sig, tuple(comps.get(A, Expression.zero(lifted)) for A in range(1, lifted.ncoords + 1)))

    @property
    def sig(self) -> Signature:
        return self.base_sig.lift()

    def as_path(self) -> Path:
        """The whole family as one ``(r+1)|s`` path."""
        return Path(self.sig, self.components)

    def at(self, value) -> Path:
        sig = self.sig
        comps = tuple(_restrict_time(c, sig, sig.r, value).in_signature(self.base_sig) for c in self.components)
        return Path(self.base_sig, comps)

    def flatness_order(self):
        """Largest ``K`` such that the deformation vanishes to order ``K`` on the even boundary.

        The deformation is ``components - components|_{parameter=0}``;
        ``math.inf`` if it is zero or there is no even boundary.
        """
        sig = self.sig
        best = math.inf
        for c in self.components:
            delta = c - _restrict_time(c, sig, sig.r, 0)
            if not delta:
                continue
            for F in range(1, self.base_sig.r + 1):
                for value in (0, 1):
                    j, cur = 0, delta
                    while cur and not _restrict_time(cur, sig, F, value):
                        cur = total_deriv(cur, F)
                        j += 1
                    if cur:
                        best = min(best, j)
        return best


def berezin_integrate(e: Expression, odd_vars: Optional[Iterable[int]] = None) -> Expression:
    """Top coefficient in the odd times ``odd_vars`` (flat indices; default all).

    The ascending product ``tau_i1 ... tau_ik`` integrates to ``+1``; odd
    factors standing in front of it are moved past it with the usual sign.
    """
    sig = e.sig
    if not e.is_jet_free():
        raise ValueError("Berezin integration applies to polynomials in the times only")
    if odd_vars is None:
        wanted = set(range(1, sig.s + 1))
    else:
        wanted = set()
        for F in odd_vars:
            p, k = sig.split_time(F)
            if p != 1:
                raise SignatureError(f"time index {F} is even")
            wanted.add(k)
    out: Dict = {}
    for mono, c in e.terms.items():
        hit = [i for i, (g, _) in enumerate(mono) if g[0] == ODD_TIME and g[1] in wanted]
        if len(hit) != len(wanted):
            continue
        flips = 0
        odd_before = 0
        for i, (g, _) in enumerate(mono):
            if g[0] == ODD_TIME and g[1] in wanted:
                flips += odd_before
            elif g[5]:
                odd_before += 1
        rest = tuple(f for i, f in enumerate(mono) if i not in hit)
        v = out.get(rest, 0) + (-c if flips % 2 else c)
        if v:
            out[rest] = v
        else:
            out.pop(rest, None)
    return Expression(sig, out)


def integrate_cube(e: Expression) -> Fraction:
    """Integral of an even-time polynomial over ``[0, 1]^r``."""
    total = Fraction(0)
    for mono, c in e.terms.items():
        v = Fraction(c)
        for g, p in mono:
            if g[0] != EVEN_TIME:
                raise ValueError(f"cannot integrate {e} over the even cube")
            v /= p + 1
        total += v
    return total


def action_eval(L: Union[Lagrangian, Expression], path: Path) -> Fraction:
    """``S[path] = int_{I^{r|s}} L(path)`` computed exactly."""
    e = as_expression(L)
    if e.sig != path.sig:
        raise SignatureError(f"Lagrangian in {e.sig} but path in {path.sig}")
    integrand = substitute(e, path.binding(), path.sig)
    return integrate_cube(berezin_integrate(integrand))


def divergence_decompose(L: Union[Lagrangian, Expression]) -> Tuple[Dict[int, Expression], Expression]:
    """Write ``dL - D_{r+1} L`` as ``sum_F D_F h^F`` over the old times ``F``.

    With ``eta^A = x^A_{,r+1}`` each term ``(D_mu eta^A) dL/dx^A_{,mu}`` of
    ``D_{r+1} L`` is integrated by parts one derivative at a time,
    ``(D_F Q) P = D_F(Q P) - (-1)^{F~ Q~} Q D_F P``, until ``eta`` stands bare;
    the bare terms add up to ``dL`` and the peeled ones are the certificates.
    Returns ``(h, residual)`` with ``h`` keyed by flat index in ``(r+1)|s``.
    """
    e = as_expression(L)
    if not e.is_time_independent():
        raise ValueError("divergence decomposition needs a time-independent Lagrangian")
    base = e.sig
    sig = base.lift()
    e = e.in_signature(sig)
    new = sig.r
    g_acc: Dict[int, Expression] = {}
    for g in sorted(e.gens()):
        if not g[2]:
            continue
        A = g[1]
        steps = [(0, k) for k in g[3]] + [(1, k) for k in g[4]]
        P = partial_deriv(e, g)
        sign = 1
        for i, (fp, k) in enumerate(steps):
            tail = steps[i + 1:]
            s_q, q_gen = jet_gen(
                sig, A, [new] + [sig.flat_time(tp, tk) for tp, tk in tail]
            )
            Q = Expression.from_gen(sig, q_gen, s_q)
            F = sig.flat_time(fp, k)
            g_acc[F] = g_acc.get(F, Expression.zero(sig)) + sign * (Q * P)
            q_parity = (sig.coord_parity(A) + sum(tp for tp, _ in tail)) % 2
            P = total_deriv_internal(P, fp, k)
            sign = -sign if not (fp and q_parity) else sign
    certificates = {F: -v for F, v in sorted(g_acc.items()) if v}
    residual = apply_d(e.in_signature(base)).body - total_deriv(e, new)
    for F, v in certificates.items():
        residual = residual - total_deriv(v, F)
    return certificates, residual


def stokes_check(L: Union[Lagrangian, Expression], H: Homotopy) -> Tuple[Fraction, Fraction]:
    """``(S[end] - S[start], integral of dL over the homotopy)``; the two must agree."""
    e = as_expression(L)
    if e.sig != H.base_sig:
        raise SignatureError(f"Lagrangian in {e.sig} but homotopy over {H.base_sig}")
    k = order_of(e)
    need = 2 * k if k > 0 else 0
    flat = H.flatness_order()
    if flat < need:
        raise ValueError(f"homotopy is flat to order {flat} on the boundary, need {need}")
    lhs = action_eval(e, H.at(1)) - action_eval(e, H.at(0))
    rhs = action_eval(apply_d(e), H.as_path())
    return lhs, rhs
