"""Closed-form Dulac maps against direct integration of the normal form."""

import numpy as np

from nilcyc.dulac import DulacParams, dulac_type_II, integrate_type_II, phi_envelope, phi_residual
from nilcyc.normal_form import SigmaClass

P = DulacParams(SigmaClass.integer(1), 1.05, eta=0.3, rho0=0.2, Y0=0.25)
print("r          closed                  integrated              rel diff")
for r in np.geomspace(1e-4, 1e-1, 4):
    a, b = dulac_type_II(r, 0.3, P), integrate_type_II(r, 0.3, P)
    print(f"{r:.1e}  {a:.16e}  {b:.16e}  {abs(a - b) / abs(a):.1e}")

Q = DulacParams(SigmaClass.integer(1), 1.05, eta=0.3, Y0=0.5, Phi={(0, 1): 0.01})
print("\nnonlinear correction vs its envelope")
for r in np.geomspace(1e-4, 1e-1, 4):
    print(f"r={r:.1e}: |phi| / envelope = {abs(phi_residual(r, 0.3, Q)) / phi_envelope(r, Q):.3e}")
