"""Melnikov and divergence integrals, 2F1 branches and the second derivative of the section map."""

import math

from nilcyc import verify

print("melnikov_parabola(1) / pi =", verify.melnikov_parabola(1.0) / math.pi)
for mu5 in (1e-2, 1e-3, 1e-4):
    I = verify.divergence_integral(1.5, mu5)
    print(f"mu5={mu5:.0e}: integral {I:.12e}, ratio to 2 B^1.5 (B-1) pi mu5 = {I / verify.divergence_reference(1.5, mu5):.9f}")
b = (5 - 8 * 0.9) / (2 * (1 - 2 * 0.9))
print("2F1 series vs connection at z=0.55:", verify.hyp2f1_series(0.5, b, 1.5, 0.55), verify.hyp2f1_connection(0.5, b, 1.5, 0.55))
for B in (0.6, 0.75, 0.9):
    print(f"B={B}: I3 quad/closed/diff", verify.i3_compare(B, 1.0, 0.5), "S''(0) =", verify.s_second_derivative(B, 0.01, 0.5))
