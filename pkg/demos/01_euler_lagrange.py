"""
Variational derivatives and the differential on Lagrangians
===========================================================

A free particle, a higher-order bending energy and a super Lagrangian with
an odd coordinate and an odd time.
"""
from lagcomplex import Signature, apply_d, parse, var_deriv_all

# one even coordinate, one even time
sig = Signature.parse("1|0 1|0")
for text in ["1/2*x1[1]^2", "1/2*x1[1 1]^2", "x1^2*x1[1] + x1[1]^3"]:
    L = parse(text, sig)
    print(f"L = {L}")
    print(f"  E(L) = {var_deriv_all(L)[1]}")
    print(f"  dL   = {apply_d(L).body}")

# d lives one time up: the new time is t2, and dL is linear in x1[2]
super_sig = Signature.parse("1|1 1|1")
L = parse("x1[1]*th1*th1[2]", super_sig)
print(f"\nin {super_sig}: L = {L}")
for A, comp in enumerate(var_deriv_all(L), start=1):
    print(f"  E_{A}(L) = {comp}")
print(f"  dL = {apply_d(L).body}  (signature {apply_d(L).sig})")
