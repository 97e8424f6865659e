"""
d applied twice vanishes
========================

Seeded random Lagrangians in a few signatures; every ``d(dL)`` canonicalizes
to the zero expression.
"""
from lagcomplex import Signature, apply_d, d_squared_check
from lagcomplex.corpus import corpus

for text in ["1|0 1|0", "2|1 1|1", "1|2 2|1", "0|2 0|1"]:
    sig = Signature.parse(text)
    Ls = corpus(seed=7, sig=sig, count=50, order=1)
    zeros = sum(1 for L in Ls if not d_squared_check(L))
    print(f"{text:>8}: {zeros}/{len(Ls)} Lagrangians with d^2 L = 0")

# one worked case, so the cancellation is visible
L = corpus(seed=6, sig=Signature.parse("1|1 1|1"), count=1)[0]
dL = apply_d(L)
print(f"\nL      = {L.body}")
print(f"dL     = {dL.body}")
print(f"d(dL)  = {apply_d(dL).body}")
