"""Seeded random corpora of expressions, Lagrangians and coordinate changes.

Draws come from MT19937 as seeded by :meth:`random.Random.seed` with an
integer (the reference ``init_by_array`` on the 32-bit words of the seed).
Every integer in ``[0, n)`` is ``genrand_int32() % n``; nothing else is used,
so a corpus is fixed by the seed and this module's draw order.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional, Sequence

from .algebra import (
    Expression,
    Lagrangian,
    Signature,
    canonicalize,
    jet,
    jet_gen,
    mono_parity,
    time_gen,
    time_var,
)
from .lagrangian_complex import CoordinateChange
from .variational import order_of

COEFFS = (1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(-2, 3))


class Stream:
    def __init__(self, seed: int):
        self._rng = random.Random(seed)

    def below(self, n: int) -> int:
        return self._rng.getrandbits(32) % n

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]

    def coeff(self) -> Fraction:
        return Fraction(self.choice(COEFFS))


def random_jet_gen(stream: Stream, sig: Signature, order: int):
    """A jet generator of exactly ``order`` (retries past vanishing odd repeats)."""
    for _ in range(100):
        A = 1 + stream.below(sig.ncoords)
        idx = [1 + stream.below(sig.ntimes) for _ in range(order)] if order else []
        _, g = jet_gen(sig, A, idx)
        if g is not None:
            return g
    raise ValueError(f"no jet variable of order {order} in {sig}")


def _coord_gens(stream: Stream, sig: Signature, degree: int) -> list:
    return [jet_gen(sig, 1 + stream.below(sig.ncoords))[1] for _ in range(degree)]


def random_lagrangian(
    stream: Stream,
    sig: Signature,
    order: int = 1,
    coeff_degree: int = 2,
    max_terms: int = 3,
    parity: Optional[int] = None,
) -> Lagrangian:
    """Time-independent homogeneous Lagrangian of exactly the given order.

    Terms are ``c * (up to coeff_degree coordinates) * (one or two jets of order 1..order)``;
    terms of the wrong parity are discarded.
    """
    if order > 0 and sig.ntimes == 0:
        raise ValueError("positive order needs at least one time variable")
    for _ in range(1000):
        target = parity if parity is not None else stream.below(2)
        raw = []
        for t in range(1 + stream.below(max_terms)):
            factors = _coord_gens(stream, sig, stream.below(coeff_degree + 1))
            if order:
                nj = 1 + stream.below(2)
                for j in range(nj):
                    k = order if (t == 0 and j == 0) else 1 + stream.below(order)
                    factors.append(random_jet_gen(stream, sig, k))
            elif not factors:
                factors = _coord_gens(stream, sig, 1)
            raw.append((stream.coeff(), factors))
        e = canonicalize(sig, raw)
        e = Expression(sig, {mono: c for mono, c in e.terms.items() if mono_parity(mono) == target})
        if e and order_of(e) == order:
            return Lagrangian(e)
    raise RuntimeError(f"could not draw a Lagrangian of order {order} in {sig}")


def random_expression(stream: Stream, sig: Signature, max_terms: int = 4, max_factors: int = 3, max_order: int = 2,
                      with_times: bool = True, homogeneous: Optional[int] = None) -> Expression:
    """Arbitrary polynomial in jets (and optionally explicit times)."""
    raw = []
    for _ in range(stream.below(max_terms + 1)):
        factors = []
        for _ in range(stream.below(max_factors + 1)):
            if with_times and sig.ntimes and stream.below(4) == 0:
                factors.append(time_gen(sig, 1 + stream.below(sig.ntimes)))
            elif sig.ncoords:
                k = stream.below(max_order + 1) if sig.ntimes else 0
                factors.append(random_jet_gen(stream, sig, k))
        raw.append((stream.coeff(), factors))
    e = canonicalize(sig, raw)
    if homogeneous is not None:
        e = Expression(sig, {mono: c for mono, c in e.terms.items() if mono_parity(mono) == homogeneous})
    return e


CHANGE_KINDS = ("linear", "affine", "quadratic")


def random_change(stream: Stream, sig: Signature, kind: str) -> CoordinateChange:
    """Triangular (hence invertible) change ``x^A = y^A + higher terms``.

    ``linear`` mixes coordinates of the same parity, ``affine`` adds constants
    to even coordinates, ``quadratic`` adds products of later coordinates,
    including even products of two odd ones and even*odd terms in odd maps.
    """
    maps = {}
    n, N = sig.n, sig.ncoords
    for A in range(1, N + 1):
        image = jet(sig, A)
        later = [B for B in range(A + 1, N + 1) if (B <= n) == (A <= n)]
        for B in later:
            if stream.below(2):
                image = image + stream.coeff() * jet(sig, B)
        if kind in ("affine", "quadratic") and A <= n and stream.below(3):
            image = image + stream.coeff()
        if kind == "quadratic":
            if A <= n:
                evens = list(range(A + 1, n + 1))
                if evens:
                    B, C = stream.choice(evens), stream.choice(evens)
                    image = image + stream.coeff() * jet(sig, B) * jet(sig, C)
                if sig.m >= 2:
                    image = image + stream.coeff() * jet(sig, n + 1) * jet(sig, n + 2)
            else:
                odds = list(range(A + 1, N + 1))
                if n and odds:
                    image = image + stream.coeff() * jet(sig, 1 + stream.below(n)) * jet(sig, stream.choice(odds))
                elif n:
                    image = image + stream.coeff() * jet(sig, 1 + stream.below(n)) * jet(sig, A)
        maps[A] = image
    return CoordinateChange.from_mapping(sig, maps)


def corpus(seed: int, sig: Signature, count: int, order: int = 1, coeff_degree: int = 2) -> List[Lagrangian]:
    stream = Stream(seed)
    return [random_lagrangian(stream, sig, order, coeff_degree) for _ in range(count)]


def _random_time_poly(stream: Stream, sig: Signature, max_degree: int = 2) -> Expression:
    e = Expression.zero(sig)
    for _ in range(1 + stream.below(2)):
        term = Expression.constant(sig, stream.coeff())
        for _ in range(stream.below(max_degree + 1)):
            if sig.r:
                term = term * time_var(sig, 1 + stream.below(sig.r))
        e = e + term
    return e


def random_homotopy(stream: Stream, base: Signature, flatness: int):
    """Boundary-flat polynomial homotopy over ``base``.

    The starting path is a random time polynomial per coordinate (odd coordinates get
    one odd time factor, or vanish when ``s = 0``); the deformation is
    ``t_{r+1} * prod_F (t_F (1 - t_F))^flatness * (random polynomial)``.
    """
    from .action import Homotopy

    sig = base.lift()
    s_par = time_var(sig, sig.r)
    bump = Expression.constant(sig, 1)
    for F in range(1, base.r + 1):
        t = time_var(sig, F)
        bump = bump * (t * (1 - t)) ** flatness
    comps = {}
    for A in range(1, sig.ncoords + 1):
        odd = sig.coord_parity(A)
        if odd and not sig.s:
            continue
        tau = time_var(sig, sig.r + 1 + stream.below(sig.s)) if odd else Expression.constant(sig, 1)
        # the starting path must not depend on the deformation parameter t_{r+1}
        start = tau * _random_time_poly(stream, base).in_signature(sig)
        deform = tau * s_par ** (1 + stream.below(2)) * bump * _random_time_poly(stream, sig, 1)
        comps[A] = start + deform
    return Homotopy.from_mapping(base, comps)
