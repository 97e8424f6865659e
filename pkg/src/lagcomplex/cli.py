"""Command-line front end: ``lagcomplex <command> [files] [options]``.

Exit status 0 means every contract held, 1 that a mathematical contract
failed (the offending expression is printed), 2 an input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FilePath
from typing import List, Optional

from .action import Homotopy, divergence_decompose, stokes_check
from .algebra import INHOMOGENEOUS, Lagrangian, ParityError, Signature, SignatureError, parity_of
from .corpus import CHANGE_KINDS, Stream, corpus, random_change
from .derham import PolyForm, bridge_check, cohomology_dims, monomial_forms
from .grammar import ParseError, format_expression, read_document
from .lagrangian_complex import CoordinateChange, apply_d, covector_check, d_squared_check, helmholtz_check, naturality_check
from .variational import Covector, var_deriv_all

COMMANDS = ("el", "diff", "d2check", "helmholtz", "pullback-check", "divergence", "stokes", "derham-check", "cohomology", "canon")


class InputError(Exception):
    pass


class Report:
    def __init__(self, command: str):
        self.command = command
        self.ok = True
        self.lines: List[str] = []
        self.items: List[dict] = []

    def add(self, line: str, ok: bool = True, **data):
        self.lines.append(line)
        if not ok:
            self.ok = False
        if data:
            self.items.append(dict(data, ok=ok))

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps({"command": self.command, "ok": self.ok, "results": self.items}, indent=2, sort_keys=True) + "\n"
        return "".join(line + "\n" for line in self.lines)


def _load(path: str, sig: Optional[Signature], kind: Optional[str] = None):
    try:
        text = FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    doc = read_document(text, source=path, sig=sig)
    if kind is not None and doc.kind != kind:
        raise InputError(f"{path}: expected a '{kind}' section, found {doc.kind}")
    return doc


def _lagrangians(path: str, sig: Optional[Signature]) -> List[Lagrangian]:
    doc = _load(path, sig, "expressions")
    out = []
    for i, e in enumerate(doc.items, start=1):
        if parity_of(e) == INHOMOGENEOUS:
            raise InputError(f"{path}: expression {i} has inhomogeneous parity")
        if not e.is_time_independent():
            raise InputError(f"{path}: expression {i} depends explicitly on time")
        out.append(Lagrangian(e))
    return out


def _corpus_sig(args) -> Signature:
    if args.sig is not None:
        return args.sig
    return Signature(args.n, args.m, args.r, args.s)


def cmd_canon(args, rep: Report):
    for path in args.files:
        for e in _load(path, args.sig, "expressions").items:
            rep.add(format_expression(e), expression=format_expression(e))


def cmd_el(args, rep: Report):
    for L in _lagrangians(args.files[0], args.sig):
        comps = [format_expression(c) for c in var_deriv_all(L)]
        for c in comps:
            rep.add(c)
        rep.items.append({"lagrangian": format_expression(L.body), "euler_lagrange": comps, "ok": True})


def cmd_diff(args, rep: Report):
    for L in _lagrangians(args.files[0], args.sig):
        dL = format_expression(apply_d(L).body)
        rep.add(dL, lagrangian=format_expression(L.body), d=dL)


def cmd_d2check(args, rep: Report):
    if args.files:
        cases = [(str(L.sig), L) for L in _lagrangians(args.files[0], args.sig)]
        label = args.files[0]
    else:
        sig = _corpus_sig(args)
        cases = [(str(sig), L) for L in corpus(args.seed, sig, args.count, args.order, args.coeff_degree)]
        label = f"seed {args.seed} sig {sig} order {args.order}"
    failures = 0
    for i, (sig_text, L) in enumerate(cases):
        z = d_squared_check(L)
        if z:
            failures += 1
            rep.add(f"FAIL #{i} {format_expression(L.body)} -> {format_expression(z)}", ok=False,
                    index=i, lagrangian=format_expression(L.body), d2=format_expression(z))
        else:
            rep.items.append({"index": i, "lagrangian": format_expression(L.body), "d2": "0", "ok": True})
    status = "PASS" if failures == 0 else "FAIL"
    rep.lines.insert(0, f"{'case':<40} {'count':>6} {'zero':>6}  status")
    rep.lines.insert(1, f"{label:<40} {len(cases):>6} {len(cases) - failures:>6}  {status}")


def cmd_helmholtz(args, rep: Report):
    doc = _load(args.files[0], args.sig, "expressions")
    try:
        z = helmholtz_check(Covector(doc.sig, tuple(doc.items)))
    except (SignatureError, ParityError, ValueError) as exc:
        raise InputError(f"{args.files[0]}: {exc}") from None
    text = format_expression(z)
    rep.add(text, ok=not z, obstruction=text)


def _changes(args, sig: Signature) -> List[CoordinateChange]:
    if args.change:
        doc = _load(args.change, args.sig, "change")
        return [CoordinateChange.from_mapping(doc.sig, doc.assignments)]
    stream = Stream(args.seed + 1)
    return [random_change(stream, sig, CHANGE_KINDS[i % 3]) for i in range(args.count)]


def cmd_pullback_check(args, rep: Report):
    if args.files:
        Ls = _lagrangians(args.files[0], args.sig)
    else:
        Ls = corpus(args.seed, _corpus_sig(args), args.count, args.order, args.coeff_degree)
    if not Ls:
        return
    changes = _changes(args, Ls[0].sig)
    for i, L in enumerate(Ls):
        for j, phi in enumerate(changes):
            cov = [format_expression(c) for c in covector_check(L, phi)]
            nat = format_expression(naturality_check(L, phi))
            ok = nat == "0" and all(c == "0" for c in cov)
            line = f"L#{i} phi#{j} covector {'PASS' if all(c == '0' for c in cov) else 'FAIL ' + '; '.join(cov)}" \
                   f" naturality {'PASS' if nat == '0' else 'FAIL ' + nat}"
            rep.add(line, ok=ok, lagrangian=i, change=j, covector=cov, naturality=nat)


def cmd_divergence(args, rep: Report):
    for i, L in enumerate(_lagrangians(args.files[0], args.sig)):
        h, res = divergence_decompose(L)
        rep.add(f"L#{i}")
        for F, v in h.items():
            rep.add(f"  h[{F}] = {format_expression(v)}")
        text = format_expression(res)
        rep.add(f"  residual = {text}", ok=not res, index=i,
                certificates={str(F): format_expression(v) for F, v in h.items()}, residual=text)


def cmd_stokes(args, rep: Report):
    if len(args.files) != 2:
        raise InputError("stokes needs a Lagrangian file and a homotopy file")
    Ls = _lagrangians(args.files[0], args.sig)
    doc = _load(args.files[1], args.sig, "homotopy")
    try:
        homotopy = Homotopy.from_mapping(doc.sig, doc.assignments)
    except (SignatureError, ParityError, ValueError) as exc:
        raise InputError(f"{args.files[1]}: {exc}") from None
    for i, L in enumerate(Ls):
        try:
            lhs, rhs = stokes_check(L, homotopy)
        except (SignatureError, ValueError) as exc:
            raise InputError(str(exc)) from None
        rep.add(f"L#{i} lhs = {lhs} rhs = {rhs} {'PASS' if lhs == rhs else 'FAIL'}",
                ok=lhs == rhs, index=i, lhs=str(lhs), rhs=str(rhs))


def cmd_derham_check(args, rep: Report):
    if args.files:
        doc = _load(args.files[0], args.sig, "form")
        degree = doc.degree if doc.degree is not None else (len(next(iter(doc.assignments))) if doc.assignments else 0)
        forms = [PolyForm(doc.sig.n, degree, doc.assignments)]
    else:
        n = args.n
        forms = [w for k in range(min(n, 3) + 1) for w in monomial_forms(n, k, args.coeff_degree)]
    bad = 0
    for i, w in enumerate(forms):
        z = bridge_check(w)
        if z:
            bad += 1
            rep.add(f"FAIL {w} -> {format_expression(z)}", ok=False, form=str(w), defect=format_expression(z))
    rep.lines.insert(0, f"forms {len(forms)} zero {len(forms) - bad} {'PASS' if not bad else 'FAIL'}")


def cmd_cohomology(args, rep: Report):
    try:
        dims = cohomology_dims(args.n, args.degree_bound)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep.add(" ".join(str(d) for d in dims), n=args.n, degree_bound=args.degree_bound, dims=dims)


HANDLERS = {
    "canon": cmd_canon,
    "el": cmd_el,
    "diff": cmd_diff,
    "d2check": cmd_d2check,
    "helmholtz": cmd_helmholtz,
    "pullback-check": cmd_pullback_check,
    "divergence": cmd_divergence,
    "stokes": cmd_stokes,
    "derham-check": cmd_derham_check,
    "cohomology": cmd_cohomology,
}

NEEDS_FILE = {"canon", "el", "diff", "helmholtz", "divergence", "stokes"}


def _signature(text: str) -> Signature:
    try:
        return Signature.parse(text)
    except SignatureError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lagcomplex", description="Exact checks for the complex of Lagrangians.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("files", nargs="*")
    p.add_argument("--sig", type=_signature, help="override the file signature, e.g. '1|0 1|0'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--coeff-degree", type=int, default=2)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--degree-bound", type=int, default=2)
    p.add_argument("--change", help="coordinate change file for pullback-check")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write the report to FILE instead of standard output")
    return p


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    try:
        if args.command in NEEDS_FILE and not args.files:
            raise InputError(f"{args.command} needs an input file")
        HANDLERS[args.command](args, rep)
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (InputError, SignatureError, ParityError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    text = rep.render(args.json)
    if args.out:
        FilePath(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if rep.ok else 1


def main() -> None:
    sys.exit(run())
