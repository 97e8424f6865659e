import pytest
from hypothesis import strategies as st

from lagcomplex import Signature, canonicalize, parse
from lagcomplex.algebra import jet_gen, time_gen

ACCEPTANCE: dict = {}


@pytest.fixture
def record_criterion():
    def record(number, name, ok, detail=""):
        ACCEPTANCE[number] = (name, ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


def P(text, sig):
    return parse(text, sig)


SIGS = [
    Signature(1, 0, 1, 0),
    Signature(2, 1, 1, 1),
    Signature(1, 2, 2, 1),
    Signature(0, 2, 1, 2),
]


@st.composite
def raw_terms(draw, sig, max_terms=4, max_factors=3, max_order=2, times=True):
    """Raw (coefficient, generator list) pairs before canonicalization."""
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        coeff = draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
        factors = []
        for _ in range(draw(st.integers(0, max_factors))):
            if times and sig.ntimes and draw(st.integers(0, 4)) == 0:
                factors.append(time_gen(sig, draw(st.integers(1, sig.ntimes))))
                continue
            A = draw(st.integers(1, sig.ncoords))
            k = draw(st.integers(0, max_order)) if sig.ntimes else 0
            idx = [draw(st.integers(1, sig.ntimes)) for _ in range(k)]
            _, g = jet_gen(sig, A, idx)
            if g is not None:
                factors.append(g)
        terms.append((coeff, factors))
    return terms


@st.composite
def expressions(draw, sig=None, parity=None, **kw):
    sig = sig or draw(st.sampled_from(SIGS))
    e = canonicalize(sig, draw(raw_terms(sig, **kw)))
    if parity is not None:
        from lagcomplex.algebra import Expression, mono_parity

        e = Expression(sig, {m: c for m, c in e.terms.items() if mono_parity(m) == parity})
    return e


@st.composite
def homogeneous_pair(draw, **kw):
    sig = draw(st.sampled_from(SIGS))
    a = draw(expressions(sig, parity=draw(st.integers(0, 1)), **kw))
    b = draw(expressions(sig, parity=draw(st.integers(0, 1)), **kw))
    return a, b
