"""Text form of expressions and of the small input file formats.

Expression grammar::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' INT)?
    atom    := INT ('/' INT)? | symbol | '(' expr ')'
    symbol  := ('x' | 'th') INT ('[' INT* ']')? | 't' INT | 'tau' INT

Files start with a ``sig n|m r|s`` header, ``#`` starts a comment.  After the
header either plain expressions follow (one per line), or a section header:

* ``path`` / ``homotopy`` / ``change``: lines ``A = <expr>`` where ``A`` is a
  coordinate name (``x1``, ``th2``) or its index.  Homotopy expressions live in
  ``(r+1)|s``; ``t{r+1}`` is the deformation parameter.
* ``form [degree]``: lines ``A1 A2 ... : <expr>`` with coefficients in the
  even coordinates only.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import (
    Expression,
    Signature,
    SignatureError,
    gen_name,
    jet_gen,
    time_gen,
)


class ParseError(ValueError):
    def __init__(self, message: str, column: int, line: Optional[int] = None, source: Optional[str] = None):
        self.message = message
        self.column = column
        self.line = line
        self.source = source
        super().__init__(str(self))

    def __str__(self):
        where = f"{self.source or '<input>'}:{self.line}:" if self.line is not None else "column "
        return f"{where}{self.column}: {self.message}"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<sym>[A-Za-z]+\d*)|(?P<op>[-+*/^()\[\]]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if mt is None:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", col)
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), mt.start(kind) + 1))
        pos = mt.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


_SYMBOL = re.compile(r"(x|th|tau|t)(\d+)$")


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.sig = sig
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, col = self.next()
        if val != value or kind == "end":
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", col)

    def parse(self) -> Expression:
        e = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", col)
        return e

    def expr(self) -> Expression:
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.next()[1]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> Expression:
        e = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.next()
            e = e * self.unary()
        return e

    def unary(self) -> Expression:
        kind, val, _ = self.peek()
        if kind == "op" and val in ("-", "+"):
            self.next()
            e = self.unary()
            return -e if val == "-" else e
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.next()
            kind, val, col = self.next()
            if kind != "num":
                raise ParseError("expected integer exponent", col)
            return base ** int(val)
        return base

    def atom(self) -> Expression:
        kind, val, col = self.next()
        if kind == "num":
            q = Fraction(int(val))
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.next()
                k2, v2, c2 = self.next()
                if k2 != "num":
                    raise ParseError("expected denominator", c2)
                if int(v2) == 0:
                    raise ParseError("zero denominator", c2)
                q = Fraction(int(val), int(v2))
            return Expression.constant(self.sig, q)
        if kind == "sym":
            return self.symbol(val, col)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {found}", col)

    def symbol(self, name: str, col: int) -> Expression:
        mt = _SYMBOL.match(name)
        if mt is None:
            raise ParseError(f"unknown symbol {name!r}", col)
        head, k = mt.group(1), int(mt.group(2))
        sig = self.sig
        if head in ("t", "tau"):
            F = k if head == "t" else sig.r + k
            limit = sig.r if head == "t" else sig.s
            if not 1 <= k <= limit:
                raise ParseError(f"unknown symbol {name!r} in signature {sig}", col)
            return Expression.from_gen(sig, time_gen(sig, F))
        limit = sig.n if head == "x" else sig.m
        if not 1 <= k <= limit:
            raise ParseError(f"unknown symbol {name!r} in signature {sig}", col)
        A = k if head == "x" else sig.n + k
        indices = []
        if self.peek()[0] == "op" and self.peek()[1] == "[":
            self.next()
            while True:
                kind, val, c = self.next()
                if kind == "num":
                    F = int(val)
                    if not 1 <= F <= sig.ntimes:
                        raise ParseError(f"time index {F} outside 1..{sig.ntimes}", c)
                    indices.append(F)
                elif kind == "op" and val == "]":
                    break
                else:
                    found = "end of input" if kind == "end" else repr(val)
                    raise ParseError(f"expected index or ']', found {found}", c)
        sign, g = jet_gen(sig, A, indices)
        return Expression.from_gen(sig, g, sign)


def parse(text: str, sig: Signature) -> Expression:
    """Parse one expression in signature ``sig``."""
    return _Parser(text, sig).parse()


def _term_key(mono):
    return (sum(p for _, p in mono), mono)


def format_expression(e: Expression) -> str:
    """Canonical text; ``parse(format_expression(e), e.sig) == e``."""
    if not e.terms:
        return "0"
    parts = []
    for mono in sorted(e.terms, key=_term_key):
        c = e.terms[mono]
        factors = "*".join(
            gen_name(e.sig, g) + (f"^{p}" if p > 1 else "") for g, p in mono
        )
        if not factors:
            text = str(c)
        elif c == 1:
            text = factors
        elif c == -1:
            text = "-" + factors
        else:
            text = f"{c}*{factors}"
        if parts:
            parts.append(" - " + text[1:] if text.startswith("-") else " + " + text)
        else:
            parts.append(text)
    return "".join(parts)


# --- files --------------------------------------------------------------------

@dataclass
class Document:
    sig: Signature
    kind: str = "expressions"
    items: list = field(default_factory=list)
    assignments: Dict = field(default_factory=dict)
    degree: Optional[int] = None


def _coord_index(token: str, sig: Signature) -> int:
    token = token.strip()
    if token.isdigit():
        A = int(token)
    else:
        mt = re.fullmatch(r"(x|th)(\d+)", token)
        if mt is None:
            raise ValueError(f"bad coordinate name {token!r}")
        A = int(mt.group(2)) + (0 if mt.group(1) == "x" else sig.n)
    sig.coord_parity(A)
    return A


def read_document(text: str, source: str = "<input>", sig: Optional[Signature] = None) -> Document:
    """Parse a file in one of the formats described in the module docstring."""
    doc: Optional[Document] = Document(sig) if sig is not None else None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        head = stripped.split()[0]
        try:
            if head == "sig":
                if doc is None or sig is None:
                    doc = Document(Signature.parse(stripped))
                continue
            if doc is None:
                raise ParseError("missing 'sig n|m r|s' header", indent + 1)
            if head in ("path", "homotopy", "change", "form") and doc.kind == "expressions" and not doc.items:
                doc.kind = head
                rest = stripped.split()[1:]
                if head == "form" and rest:
                    doc.degree = int(rest[0])
                continue
            if doc.kind == "expressions":
                doc.items.append(_parse_at(stripped, doc.sig, indent))
            elif doc.kind == "form":
                if ":" not in stripped:
                    raise ParseError("expected 'A1 A2 ... : <expr>'", indent + 1)
                left, right = line.split(":", 1)
                key = tuple(int(v) for v in left.split())
                offset = len(left) + 1 + len(right) - len(right.lstrip())
                coeff_sig = Signature(doc.sig.n, 0, 0, 0)
                doc.assignments[key] = doc.assignments.get(key, Expression.zero(coeff_sig)) + _parse_at(
                    right.strip(), coeff_sig, offset
                )
            else:
                if "=" not in stripped:
                    raise ParseError("expected 'A = <expr>'", indent + 1)
                left, right = line.split("=", 1)
                try:
                    A = _coord_index(left, doc.sig)
                except (ValueError, SignatureError) as exc:
                    raise ParseError(str(exc), indent + 1) from None
                offset = len(left) + 1 + len(right) - len(right.lstrip())
                esig = doc.sig.lift() if doc.kind == "homotopy" else doc.sig
                doc.assignments[A] = _parse_at(right.strip(), esig, offset)
        except ParseError as exc:
            exc.line = lineno
            exc.source = source
            raise
        except (ValueError, SignatureError) as exc:
            raise ParseError(str(exc), indent + 1, lineno, source) from None
    if doc is None:
        raise ParseError("missing 'sig n|m r|s' header", 1, 1, source)
    return doc


def _parse_at(text: str, sig: Signature, offset: int) -> Expression:
    try:
        return parse(text, sig)
    except ParseError as exc:
        exc.column += offset
        raise


def format_document(sig: Signature, expressions) -> str:
    lines = [f"sig {sig}"]
    lines.extend(format_expression(e) for e in expressions)
    return "\n".join(lines) + "\n"


__all__ = [
    "ParseError",
    "Document",
    "parse",
    "format_expression",
    "read_document",
    "format_document",
]
