"""
Coordinate independence
=======================

Euler-Lagrange equations transform as a covector and ``d`` commutes with
pullback, also when the change of variables mixes in odd coordinates.
"""
from lagcomplex import CoordinateChange, Signature, covector_check, naturality_check, parse, pullback

sig = Signature.parse("1|0 1|0")
phi = CoordinateChange(sig, (parse("x1 + x1^2", sig),))
L = parse("1/2*x1[1]^2", sig)
print(f"phi*L = {pullback(L, phi).body}")
print(f"covector defect: {covector_check(L, phi)[0]}")
print(f"naturality defect: {naturality_check(L, phi)}")

sig = Signature.parse("1|2 1|0")
phi = CoordinateChange.from_mapping(sig, {
    1: parse("x1 + th1*th2", sig),
    2: parse("th1 + x1*th2", sig),
    3: parse("th2 - 2*x1^2*th2", sig),
})
L = parse("x1[1]*th1*th2[1] + x1^2*th1[1]*th2", sig)
print(f"\nodd change, L = {L}")
print(f"phi*L = {pullback(L, phi).body}")
print("covector defects:", [str(c) for c in covector_check(L, phi)])
print(f"naturality defect: {naturality_check(L, phi)}")
