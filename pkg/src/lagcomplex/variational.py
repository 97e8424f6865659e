"""Partial, total and variational derivatives on jet expressions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union

from .algebra import (
    EVEN_TIME,
    JET,
    ODD_TIME,
    Expression,
    Gen,
    Lagrangian,
    Signature,
    SignatureError,
    apply_derivation,
    as_expression,
    max_order,
    single_gen,
)

ONE = {(): 1}


@lru_cache(maxsize=None)
def _total_image(g: Gen, parity: int, k: int):
    kind, idx, order, evens, odds, gp = g
    if kind == EVEN_TIME:
        return ONE if parity == 0 and idx == k else None
    if kind == ODD_TIME:
        return ONE if parity == 1 and idx == k else None
    if parity == 0:
        pos = 0
        while pos < len(evens) and evens[pos] <= k:
            pos += 1
        new = (JET, idx, order + 1, evens[:pos] + (k,) + evens[pos:], odds, gp)
        return {((new, 1),): 1}
    if k in odds:
        return None
    below = sum(1 for o in odds if o < k)
    new_odds = tuple(sorted(odds + (k,)))
    new = (JET, idx, order + 1, evens, new_odds, gp ^ 1)
    return {((new, 1),): -1 if below % 2 else 1}


def total_deriv_internal(e: Expression, parity: int, k: int) -> Expression:
    """``D`` along the ``k``-th even (``parity=0``) or odd (``parity=1``) time."""
    return apply_derivation(e, lambda g: _total_image(g, parity, k))


def total_deriv(e: Expression, F: int) -> Expression:
    """Total derivative ``D_F`` (flat time index ``F`` in ``1..r+s``).

    A derivation of parity ``F~``: ``D_F t^F = 1`` and ``D_F x^A_{,mu} = x^A_{,F mu}``,
    reordered into canonical form (odd indices pass each other with a sign, a
    repeated odd index gives 0).
    """
    parity, k = e.sig.split_time(F)
    return total_deriv_internal(e, parity, k)


def total_deriv_multi(e: Expression, evens, odds) -> Expression:
    """``D_mu e`` with ``D_mu = D_F1 ... D_Fl`` in canonical order (innermost applied first)."""
    for k in reversed(odds):
        e = total_deriv_internal(e, 1, k)
    for k in reversed(evens):
        e = total_deriv_internal(e, 0, k)
    return e


def _as_gen(v) -> Gen:
    return single_gen(v) if isinstance(v, Expression) else v


def partial_deriv(e: Expression, v) -> Expression:
    """Left derivative of ``e`` with respect to the generator ``v``.

    ``v`` may be a generator tuple or an expression that is a single generator.
    """
    g = _as_gen(v)
    return apply_derivation(e, lambda h: ONE if h == g else None)


def order_of(e: Union[Expression, Lagrangian]):
    """Highest derivative order of a jet variable; ``-math.inf`` for zero."""
    return max_order(as_expression(e))


def _require_autonomous(e: Expression) -> None:
    if not e.is_time_independent():
        raise ValueError("variational derivative needs a time-independent Lagrangian")


def var_deriv(L: Union[Lagrangian, Expression], A: int) -> Expression:
    """Super Euler-Lagrange expression ``delta L / delta x^A``.

    Sum over the jet variables ``x^A_{,mu}`` present in ``L`` of
    ``(-1)^{|mu|} (-1)^{A~ p(mu)} D_mu (dL/dx^A_{,mu})`` with left partials.
    """
    e = as_expression(L)
    _require_autonomous(e)
    sig = e.sig
    pa = sig.coord_parity(A)
    result = Expression.zero(sig)
    for g in sorted(e.gens()):
        if g[1] != A:
            continue
        term = total_deriv_multi(partial_deriv(e, g), g[3], g[4])
        if (g[2] + pa * len(g[4])) % 2:
            term = -term
        result = result + term
    return result


@dataclass(frozen=True)
class Covector:
    """One expression per coordinate: the components ``f_A``."""

    sig: Signature
    components: Tuple[Expression, ...]

    def __post_init__(self):
        if len(self.components) != self.sig.ncoords:
            raise SignatureError(f"expected {self.sig.ncoords} components, got {len(self.components)}")
        object.__setattr__(
            self, "components", tuple(c.in_signature(self.sig) for c in self.components)
        )

    def __getitem__(self, A: int) -> Expression:
        """Component for coordinate ``A`` (1-based)."""
        return self.components[A - 1]

    def __iter__(self):
        return iter(self.components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def var_deriv_all(L: Union[Lagrangian, Expression]) -> Covector:
    e = as_expression(L)
    return Covector(e.sig, tuple(var_deriv(e, A) for A in range(1, e.sig.ncoords + 1)))

