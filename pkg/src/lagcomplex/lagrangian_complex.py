"""The differential ``d`` on Lagrangians and the identities it satisfies."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Mapping, Tuple, Union

from .algebra import (
    INHOMOGENEOUS,
    JET,
    Expression,
    Lagrangian,
    ParityError,
    Signature,
    SignatureError,
    as_expression,
    jet,
    parity_of,
    substitute_gens,
)
from .variational import Covector, order_of, partial_deriv, total_deriv_multi, var_deriv

LagrangianLike = Union[Lagrangian, Expression]


def _checked(L: LagrangianLike) -> Expression:
    e = as_expression(L)
    if not e.is_time_independent():
        raise ValueError("the differential is defined for time-independent Lagrangians")
    if parity_of(e) == INHOMOGENEOUS:
        raise ParityError(f"inhomogeneous Lagrangian: {e}")
    return e


def apply_d(L: LagrangianLike) -> Lagrangian:
    """``dL = x^A_{,r+1} * delta L / delta x^A`` as a Lagrangian of ``(r+1)|s``-paths.

    The new time is even and takes index ``r+1``; old odd times move up by one.
    """
    e = _checked(L)
    sig = e.sig.lift()
    e = e.in_signature(sig)
    out = Expression.zero(sig)
    for A in range(1, sig.ncoords + 1):
        E = var_deriv(e, A)
        if E:
            out = out + jet(sig, A, sig.r) * E
    return Lagrangian(out)


def d_squared_check(L: LagrangianLike) -> Expression:
    """``d(dL)``; anything other than zero is a bug."""
    return apply_d(apply_d(L)).body


@dataclass(frozen=True)
class CoordinateChange:
    """``x^A = maps[A](y)``: polynomials in the new coordinates (order-0 jets).

    The maps are stored against one signature but apply in any ``r|s`` with the
    same ``n|m``.
    """

    sig: Signature
    maps: Tuple[Expression, ...]

    def __post_init__(self):
        if len(self.maps) != self.sig.ncoords:
            raise SignatureError(f"expected {self.sig.ncoords} maps, got {len(self.maps)}")
        for A, f in enumerate(self.maps, start=1):
            if any(g[0] != JET or g[2] for g in f.gens()):
                raise ValueError(f"map for coordinate {A} must be a polynomial in the coordinates")
            p = parity_of(f)
            if f and p != self.sig.coord_parity(A):
                raise ParityError(f"map for coordinate {A} has the wrong parity")

    @classmethod
    def from_mapping(cls, sig: Signature, maps: Mapping[int, Expression]) -> "CoordinateChange":
        """Missing coordinates map to themselves."""
        return cls(sig, tuple(maps.get(A, jet(sig, A)).in_signature(sig) for A in range(1, sig.ncoords + 1)))

    @classmethod
    def identity(cls, sig: Signature) -> "CoordinateChange":
        return cls.from_mapping(sig, {})

    def map_in(self, sig: Signature, A: int) -> Expression:
        if (sig.n, sig.m) != (self.sig.n, self.sig.m):
            raise SignatureError(f"coordinate change for {self.sig.n}|{self.sig.m} used in {sig}")
        return self.maps[A - 1].in_signature(sig)

    def jacobian(self, sig: Signature, A: int, B: int) -> Expression:
        """Left derivative of ``x^A`` with respect to ``y^B``."""
        return partial_deriv(self.map_in(sig, A), jet(sig, B))


def pullback_expr(e: Expression, phi: CoordinateChange) -> Expression:
    """Substitute ``x^A_{,mu} -> D_mu phi^A(y)``; explicit times are left alone."""
    sig = e.sig
    maps = [phi.map_in(sig, A) for A in range(1, sig.ncoords + 1)]

    def image(g):
        if g[0] != JET:
            return Expression.from_gen(sig, g)
        return total_deriv_multi(maps[g[1] - 1], g[3], g[4])

    return substitute_gens(e, image, sig)


def pullback(L: LagrangianLike, phi: CoordinateChange) -> Lagrangian:
    return Lagrangian(pullback_expr(as_expression(L), phi))


def covector_check(L: LagrangianLike, phi: CoordinateChange) -> List[Expression]:
    """Per ``B``: ``delta(phi*L)/delta y^B - sum_A (dx^A/dy^B) phi*(delta L/delta x^A)``."""
    e = _checked(L)
    sig = e.sig
    pulled = pullback_expr(e, phi)
    E_old = [pullback_expr(var_deriv(e, A), phi) for A in range(1, sig.ncoords + 1)]
    out = []
    for B in range(1, sig.ncoords + 1):
        diff = var_deriv(pulled, B)
        for A in range(1, sig.ncoords + 1):
            if E_old[A - 1]:
                diff = diff - phi.jacobian(sig, A, B) * E_old[A - 1]
        out.append(diff)
    return out


def naturality_check(L: LagrangianLike, phi: CoordinateChange) -> Expression:
    """``d(phi*L) - phi*(dL)``; zero means ``d`` commutes with coordinate changes."""
    e = _checked(L)
    return apply_d(pullback_expr(e, phi)).body - pullback_expr(apply_d(e).body, phi)


def helmholtz_check(f: Covector) -> Expression:
    """Obstruction ``d(x^A_{,r+1} f_A)`` for ``f`` to be variational.

    Zero is necessary for ``f_A = delta L / delta x^A`` for some ``L``.
    """
    sig = f.sig
    offsets = set()
    for A, comp in enumerate(f.components, start=1):
        if not comp.is_time_independent():
            raise ValueError(f"component {A} depends explicitly on time")
        p = parity_of(comp)
        if p == INHOMOGENEOUS:
            raise ParityError(f"component {A} has inhomogeneous parity")
        if comp:
            offsets.add((int(p) + sig.coord_parity(A)) % 2)
    if len(offsets) > 1:
        raise ParityError("components do not share the parity of a single Lagrangian")
    lifted = sig.lift()
    M = Expression.zero(lifted)
    for A, comp in enumerate(f.components, start=1):
        if comp:
            M = M + jet(lifted, A, lifted.r) * comp.in_signature(lifted)
    return apply_d(M).body


def filtration_check(L: LagrangianLike) -> Tuple[object, object, bool]:
    """``(order L, order dL, order dL <= order L)``."""
    e = _checked(L)
    k = order_of(e)
    kd = order_of(apply_d(e))
    return k, kd, kd <= k
