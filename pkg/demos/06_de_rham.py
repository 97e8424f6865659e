"""
Differential forms inside the complex
=====================================

Forms become Lagrangians through velocity determinants, and ``d`` on the
Lagrangian side matches the exterior derivative.
"""
from lagcomplex import PolyForm, Signature, apply_d, bridge_check, cohomology_dims, exterior_deriv, form_to_lagrangian, parse
from lagcomplex.derham import monomial_forms

coeffs = Signature(3, 0, 0, 0)
w = PolyForm(3, 1, {(1,): parse("x2*x3", coeffs), (3,): parse("x1^2", coeffs)})
print(f"w      = {w}")
print(f"dw     = {exterior_deriv(w)}")
print(f"L_w    = {form_to_lagrangian(w).body}")
print(f"d(L_w) = {apply_d(form_to_lagrangian(w)).body}")
print(f"L_dw   = {form_to_lagrangian(exterior_deriv(w)).body}")

forms = [f for k in range(4) for f in monomial_forms(3, k, 2)]
print(f"\nbridge holds on {sum(1 for f in forms if not bridge_check(f))}/{len(forms)} monomial forms on R^3")
for n in range(1, 4):
    print(f"polynomial cohomology of R^{n}, weight <= 3: {cohomology_dims(n, 3)}")
