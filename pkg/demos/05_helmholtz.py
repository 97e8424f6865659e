"""
Which equations come from a Lagrangian?
=======================================

An Euler-Lagrange covector passes the check; ``f = x'`` does not, and the
printed obstruction shows why.
"""
from lagcomplex import Covector, Signature, helmholtz_check, parse, var_deriv_all

sig = Signature.parse("1|0 1|0")
candidates = {
    "x''": Covector(sig, (parse("x1[1 1]", sig),)),
    "x'": Covector(sig, (parse("x1[1]", sig),)),
    "E(x^2 x'^2)": var_deriv_all(parse("x1^2*x1[1]^2", sig)),
}
for name, f in candidates.items():
    z = helmholtz_check(f)
    print(f"{name:>12}: {'variational (necessary condition holds)' if not z else 'obstruction ' + str(z)}")
