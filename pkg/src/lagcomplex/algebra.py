"""Graded polynomial algebra of jet variables over a super signature.

Every value of the engine is an :class:`Expression`: a finite sum of
rational multiples of monomials in three kinds of generators

* even time variables ``t1 .. tr``,
* odd time variables ``tau1 .. taus``,
* jet variables ``x^A_{,mu}`` (printed ``x1[1 2]``, ``th1[3]``, ...).

A generator is stored as a plain tuple ``(kind, index, order, evens, odds, parity)``
so that the canonical order is ordinary tuple comparison.  For a jet variable
``index`` is the coordinate ``A`` (1-based, ``A <= n`` even), ``evens`` the sorted
even time indices (with repetition) and ``odds`` the sorted odd time indices,
numbered *relative to the odd block* (``1..s``).  Because odd indices are
relative, lifting an expression from ``r|s`` to ``(r+1)|s`` never touches
stored generators; only printing converts to the flat numbering ``1..r+s``.

The jet variable with multi-index ``F1 .. Fl`` in canonical order (evens
ascending, then odds ascending) stands for ``D_F1 D_F2 ... D_Fl x^A``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

EVEN_TIME, ODD_TIME, JET = 0, 1, 2

Gen = tuple
Monomial = Tuple[Tuple[Gen, int], ...]
Rational = Union[int, Fraction]


class SignatureError(ValueError):
    """An index or symbol lies outside the declared signature."""


class ParityError(ValueError):
    """Parities of the operands do not fit together."""


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__


INHOMOGENEOUS = "inhomogeneous"


@dataclass(frozen=True)
class Signature:
    """Dimensions ``n|m`` of the target and ``r|s`` of the source cube."""

    n: int
    m: int
    r: int
    s: int

    def __post_init__(self):
        if min(self.n, self.m, self.r, self.s) < 0:
            raise SignatureError(f"negative dimension in {self}")

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """``"n|m r|s"`` (an optional leading ``sig`` is accepted)."""
        parts = text.split()
        if parts and parts[0] == "sig":
            parts = parts[1:]
        try:
            (n, m), (r, s) = (tuple(int(v) for v in p.split("|")) for p in parts)
        except ValueError:
            raise SignatureError(f"malformed signature {text!r}") from None
        return cls(n, m, r, s)

    def __str__(self):
        return f"{self.n}|{self.m} {self.r}|{self.s}"

    @property
    def ncoords(self) -> int:
        return self.n + self.m

    @property
    def ntimes(self) -> int:
        return self.r + self.s

    def coord_parity(self, A: int) -> int:
        if not 1 <= A <= self.ncoords:
            raise SignatureError(f"coordinate index {A} outside 1..{self.ncoords}")
        return 0 if A <= self.n else 1

    def time_parity(self, F: int) -> int:
        return self.split_time(F)[0]

    def split_time(self, F: int) -> Tuple[int, int]:
        """Flat time index -> ``(parity, index within its block)``."""
        if not 1 <= F <= self.ntimes:
            raise SignatureError(f"time index {F} outside 1..{self.ntimes}")
        return (0, F) if F <= self.r else (1, F - self.r)

    def flat_time(self, parity: int, k: int) -> int:
        return k if parity == 0 else self.r + k

    def lift(self, k: int = 1) -> "Signature":
        """Signature with ``k`` more even time variables."""
        return Signature(self.n, self.m, self.r + k, self.s)


# --- generators -------------------------------------------------------------

def jet_gen(sig: Signature, A: int, indices: Iterable[int] = ()) -> Tuple[int, Optional[Gen]]:
    """Jet generator for ``x^A`` differentiated along flat time ``indices``.

    Returns ``(sign, gen)``; ``gen`` is None when a repeated odd index kills it.
    """
    pa = sig.coord_parity(A)
    evens, odds = [], []
    sign = 1
    for F in indices:
        p, k = sig.split_time(F)
        if p == 0:
            evens.append(k)
            continue
        if k in odds:
            return 0, None
        odds.append(k)
    # the operators were written in the given order; sorting odd ones costs a sign
    inversions = sum(1 for i in range(len(odds)) for j in range(i + 1, len(odds)) if odds[i] > odds[j])
    if inversions % 2:
        sign = -1
    evens.sort()
    odds.sort()
    return sign, (JET, A, len(evens) + len(odds), tuple(evens), tuple(odds), (pa + len(odds)) % 2)


def time_gen(sig: Signature, F: int) -> Gen:
    p, k = sig.split_time(F)
    return (EVEN_TIME if p == 0 else ODD_TIME, k, 0, (), (), p)


def gen_valid(sig: Signature, g: Gen) -> bool:
    kind, idx, _, evens, odds, _ = g
    if kind == EVEN_TIME:
        return 1 <= idx <= sig.r
    if kind == ODD_TIME:
        return 1 <= idx <= sig.s
    if not 1 <= idx <= sig.ncoords:
        return False
    return all(k <= sig.r for k in evens) and all(k <= sig.s for k in odds)


def gen_flat_indices(sig: Signature, g: Gen) -> Tuple[int, ...]:
    return tuple(g[3]) + tuple(sig.r + k for k in g[4])


def gen_name(sig: Signature, g: Gen) -> str:
    kind, idx = g[0], g[1]
    if kind == EVEN_TIME:
        return f"t{idx}"
    if kind == ODD_TIME:
        return f"tau{idx}"
    base = f"x{idx}" if idx <= sig.n else f"th{idx - sig.n}"
    if g[2]:
        base += "[" + " ".join(str(F) for F in gen_flat_indices(sig, g)) + "]"
    return base


# --- monomial kernel --------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Tuple[int, Optional[Monomial]]:
    """Product of two canonical monomials: ``(sign, monomial)`` or ``(0, None)``."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    odd_a = sum(1 for g, _ in a if g[5])
    out = []
    sign = 1
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ga = a[i][0]
        gb = b[j][0]
        if ga < gb:
            out.append(a[i])
            if ga[5]:
                odd_a -= 1
            i += 1
        elif gb < ga:
            # gb jumps over every odd factor still left in a
            if gb[5] and odd_a & 1:
                sign = -sign
            out.append(b[j])
            j += 1
        else:
            if ga[5]:
                return 0, None
            out.append((ga, a[i][1] + b[j][1]))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def canonical_monomial(factors: Iterable[Gen]) -> Tuple[int, Optional[Monomial]]:
    """Sort a raw factor list; returns ``(sign, monomial)`` or ``(0, None)``."""
    factors = list(factors)
    sign = 1
    # insertion sort so that each odd/odd transposition is visible
    for i in range(1, len(factors)):
        j = i
        while j > 0 and factors[j] < factors[j - 1]:
            if factors[j][5] and factors[j - 1][5]:
                sign = -sign
            factors[j], factors[j - 1] = factors[j - 1], factors[j]
            j -= 1
    out = []
    for g in factors:
        if out and out[-1][0] == g:
            if g[5]:
                return 0, None
            out[-1] = (g, out[-1][1] + 1)
        else:
            out.append((g, 1))
    return sign, tuple(out)


def mono_parity(mono: Monomial) -> int:
    return sum(1 for g, _ in mono if g[5]) % 2


def _acc(out: Dict[Monomial, Fraction], mono: Monomial, c) -> None:
    v = out.get(mono, 0) + c
    if v:
        out[mono] = v
    else:
        out.pop(mono, None)


# --- expressions ------------------------------------------------------------

class Expression:
    """Canonical element of the graded polynomial algebra for ``sig``.

    ``terms`` maps canonical monomials to nonzero ``Fraction`` coefficients and
    must not be mutated once the expression is built.
    """

    __slots__ = ("sig", "terms", "_hash")

    def __init__(self, sig: Signature, terms: Optional[Dict[Monomial, Fraction]] = None):
        self.sig = sig
        self.terms = terms if terms is not None else {}
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, sig: Signature) -> "Expression":
        return cls(sig, {})

    @classmethod
    def constant(cls, sig: Signature, q: Rational) -> "Expression":
        q = Fraction(q)
        return cls(sig, {(): q} if q else {})

    @classmethod
    def from_gen(cls, sig: Signature, g: Optional[Gen], coeff: Rational = 1) -> "Expression":
        if g is None or not coeff:
            return cls(sig, {})
        return cls(sig, {((g, 1),): Fraction(coeff)})

    # structure
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Expression.constant(self.sig, other)
        if not isinstance(other, Expression):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self.terms.items())))
        return self._hash

    def gens(self) -> set:
        return {g for mono in self.terms for g, _ in mono}

    def is_time_independent(self) -> bool:
        return all(g[0] == JET for g in self.gens())

    def is_jet_free(self) -> bool:
        return all(g[0] != JET for g in self.gens())

    def in_signature(self, sig: Signature) -> "Expression":
        """The same expression re-tagged with ``sig`` (checked)."""
        if sig == self.sig:
            return self
        for g in self.gens():
            if not gen_valid(sig, g):
                raise SignatureError(f"{gen_name(self.sig, g)} does not exist in signature {sig}")
            if g[0] == JET and (g[1] <= self.sig.n) != (g[1] <= sig.n):
                raise SignatureError(f"coordinate parity changes between {self.sig} and {sig}")
        return Expression(sig, self.terms)

    # arithmetic
    def _coerce(self, other) -> "Expression":
        if isinstance(other, Expression):
            if other.sig != self.sig:
                raise SignatureError(f"signature mismatch: {self.sig} vs {other.sig}")
            return other
        if isinstance(other, (int, Fraction)):
            return Expression.constant(self.sig, other)
        raise TypeError(f"cannot combine Expression with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            _acc(out, mono, c)
        return Expression(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Expression(self.sig, {mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        other = self._coerce(other)
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sign, mono = mono_mul(ma, mb)
                if mono is not None:
                    _acc(out, mono, ca * cb if sign > 0 else -ca * cb)
        return Expression(self.sig, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Expression.constant(self.sig, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return f"Expression({str(self)!r}, sig={str(self.sig)!r})"

    def __str__(self):
        from .grammar import format_expression

        return format_expression(self)


Expr = Expression


def add(a: Expression, b: Expression) -> Expression:
    return a + b


def mul(a: Expression, b: Expression) -> Expression:
    return a * b


def scale(q: Rational, a: Expression) -> Expression:
    q = Fraction(q)
    if not q:
        return Expression.zero(a.sig)
    return Expression(a.sig, {mono: q * c for mono, c in a.terms.items()})


def canonicalize(sig: Signature, raw_terms: Iterable[Tuple[Rational, Iterable[Gen]]]) -> Expression:
    """Canonical expression from ``(coefficient, [generator, ...])`` pairs.

    Generators are checked against ``sig``; odd squares vanish and each
    transposition of two odd factors flips the sign.
    """
    out: Dict[Monomial, Fraction] = {}
    for coeff, factors in raw_terms:
        factors = list(factors)
        for g in factors:
            if not gen_valid(sig, g):
                raise SignatureError(f"generator {g!r} outside signature {sig}")
        sign, mono = canonical_monomial(factors)
        if mono is not None and coeff:
            _acc(out, mono, Fraction(coeff) * sign)
    return Expression(sig, out)


def parity_of(e: Expression):
    """Shared parity of all terms, or ``INHOMOGENEOUS``.  Zero counts as even."""
    parities = {mono_parity(mono) for mono in e.terms}
    if len(parities) > 1:
        return INHOMOGENEOUS
    return Parity(parities.pop()) if parities else Parity.EVEN


def jet(sig: Signature, A: int, *indices: int) -> Expression:
    """The jet variable ``x^A_{,F1...Fl}`` as an expression (flat indices)."""
    sign, g = jet_gen(sig, A, indices)
    return Expression.from_gen(sig, g, sign)


def time_var(sig: Signature, F: int) -> Expression:
    return Expression.from_gen(sig, time_gen(sig, F))


def single_gen(e: Expression) -> Gen:
    """The generator of an expression that is exactly one bare generator."""
    if len(e.terms) == 1:
        (mono, c), = e.terms.items()
        if c == 1 and len(mono) == 1 and mono[0][1] == 1:
            return mono[0][0]
    raise ValueError(f"{e} is not a single generator")


# --- derivations and substitutions -------------------------------------------

Image = Callable[[Gen], Optional[Dict[Monomial, Fraction]]]


def apply_derivation(e: Expression, image: Image, sig: Optional[Signature] = None) -> Expression:
    """Apply the left derivation whose values on generators are ``image(g)``.

    ``image(g)`` must be homogeneous of parity ``parity(g) + parity(D)``.  The
    sign of a term is ``(-1)^{parity(D) * parity(prefix)}`` for passing ``D``
    through the prefix, times ``(-1)^{parity(Dg) * parity(prefix)}`` for moving
    ``D(g)`` to the front; the product only depends on ``parity(g)``.
    """
    out: Dict[Monomial, Fraction] = {}
    for mono, c in e.terms.items():
        prefix = 0
        for i, (g, p) in enumerate(mono):
            img = image(g)
            if img:
                if p > 1:
                    rest = mono[:i] + ((g, p - 1),) + mono[i + 1:]
                else:
                    rest = mono[:i] + mono[i + 1:]
                coef = c * p
                if g[5] and prefix:
                    coef = -coef
                for im, ic in img.items():
                    sign, prod = mono_mul(im, rest)
                    if prod is not None:
                        _acc(out, prod, coef * ic if sign > 0 else -coef * ic)
            if g[5]:
                prefix ^= 1
    return Expression(sig or e.sig, out)


def substitute_gens(e: Expression, image: Callable[[Gen], Expression], sig: Signature) -> Expression:
    """Superalgebra homomorphism sending each generator ``g`` to ``image(g)``.

    Images must have the parity of the generator they replace.
    """
    cache: Dict[Tuple[Gen, int], Expression] = {}
    out: Dict[Monomial, Fraction] = {}
    for mono, c in e.terms.items():
        prod = Expression.constant(sig, c)
        for g, p in mono:
            key = (g, p)
            if key not in cache:
                cache[key] = image(g) ** p
            prod = prod * cache[key]
            if not prod:
                break
        for m2, c2 in prod.terms.items():
            _acc(out, m2, c2)
    return Expression(sig, out)


def substitute(e: Expression, binding: Mapping[int, Expression], sig_target: Optional[Signature] = None) -> Expression:
    """Prolong a path: replace each ``x^A_{,mu}`` by ``D_mu binding[A]``.

    ``binding`` values are polynomials in the time variables of
    ``sig_target``; time variables of ``e`` are kept as they are.
    """
    from .variational import total_deriv_internal

    if sig_target is None:
        sig_target = next(iter(binding.values())).sig if binding else e.sig
    bound = {}
    for A, val in binding.items():
        val = val.in_signature(sig_target)
        if not val.is_jet_free():
            raise ValueError(f"binding for coordinate {A} contains jet variables")
        pv = parity_of(val)
        if val and pv != sig_target.coord_parity(A):
            raise ParityError(f"binding for coordinate {A} has parity {pv}, expected {sig_target.coord_parity(A)}")
        bound[A] = val

    def image(g: Gen) -> Expression:
        if g[0] != JET:
            return Expression.from_gen(sig_target, g) if gen_valid(sig_target, g) else _missing(g)
        if g[1] not in bound:
            raise KeyError(f"unbound coordinate {gen_name(e.sig, g)}")
        val = bound[g[1]]
        for k in reversed(g[4]):
            val = total_deriv_internal(val, 1, k)
        for k in reversed(g[3]):
            val = total_deriv_internal(val, 0, k)
        return val

    def _missing(g):
        raise SignatureError(f"{gen_name(e.sig, g)} does not exist in {sig_target}")

    return substitute_gens(e, image, sig_target)


@dataclass(frozen=True)
class Lagrangian:
    """An element of the space of Lagrangians of ``r|s``-paths."""

    body: Expression

    def __post_init__(self):
        if parity_of(self.body) == INHOMOGENEOUS:
            raise ParityError(f"Lagrangian must have homogeneous parity: {self.body}")

    @property
    def sig(self) -> Signature:
        return self.body.sig

    @property
    def parity(self) -> Parity:
        return parity_of(self.body)

    def __str__(self):
        return str(self.body)


def as_expression(L: Union[Lagrangian, Expression]) -> Expression:
    return L.body if isinstance(L, Lagrangian) else L


def max_order(e: Expression):
    if not e.terms:
        return -math.inf
    return max((g[2] for g in e.gens() if g[0] == JET), default=0)
