"""
Actions and Stokes' formula
===========================

The change of action along a boundary-flat homotopy equals the action of
``dL`` on the homotopy.  Both sides are exact rationals; a Gauss-Legendre
estimate of the left side is printed next to them.
"""
import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import leggauss

from lagcomplex import Homotopy, Path, Signature, action_eval, divergence_decompose, parse, stokes_check, time_var

sig = Signature.parse("1|0 1|0")
L = parse("1/2*x1[1]^2", sig)
t = time_var(sig, 1)
print(f"S[t]   = {action_eval(L, Path(sig, (t,)))}")
print(f"S[t^2] = {action_eval(L, Path(sig, (t * t,)))}")

h, residual = divergence_decompose(L)
print(f"\ndL - D_2 L = D_1 h with h = {h[1]}, residual {residual}")

H = Homotopy(sig, (parse("t1 + t2*(t1*(1 - t1))^2", sig.lift()),))
print(f"homotopy flat to order {H.flatness_order()} at the boundary")
lhs, rhs = stokes_check(L, H)
print(f"S[G1] - S[G0] = {lhs},  action of dL = {rhs}")

nodes, weights = leggauss(30)
nodes, weights = (nodes + 1) / 2, weights / 2
bump = Polynomial([0, 1, -1]) ** 2


def energy(s):
    v = (Polynomial([0, 1]) + s * bump).deriv()
    return np.sum(weights * v(nodes) ** 2) / 2


print(f"quadrature: {energy(1.0) - energy(0.0):.15f} vs {float(lhs):.15f}")

# an odd time integrates a la Berezin: only the tau coefficient survives
sig = Signature.parse("1|1 1|1")
path = Path.from_mapping(sig, {1: parse("t1", sig), 2: parse("tau1*t1^2", sig)})
print(f"\nsuper action of th1*th1[2]: {action_eval(parse('th1*th1[2]', sig), path)}")
