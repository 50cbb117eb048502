"""Blow-up eigenvalues, invariant curves and a short phase portrait of the family rescaling."""

from nilcyc import blowup

a = -0.5
for pt in blowup.singular_points_on_blowup(a, mu_bar=(0.6, 0.0, 0.8)):
    print(pt.label, pt.chart, "eigenvalues", tuple(round(float(x), 12) for x in pt.eigenvalues))

B, mu5 = 1.5, 0.1
fam = blowup.QuadraticFamily(B, (0, 0, 0, 0, mu5))
coeffs = blowup.invariant_parabola(B, mu5)
print("parabola", coeffs, "defect", blowup.parabola_defect(fam, coeffs).as_expr())
print("label at mu = 0:", blowup.integrability_residuals(blowup.QuadraticFamily(B, (0,) * 5))[1])

F = blowup.family_rescaling_field((0.6, 0.0, 0.8), a)
for tr in blowup.portrait(F, [(0.0, -0.5)], t_max=3.0, n=4):
    print(tr.round(4))
