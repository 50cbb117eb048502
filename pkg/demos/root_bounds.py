"""Certify a root bound for a four-term boundary displacement and count roots on leaves."""

import numpy as np

from nilcyc.monomial_algebra import certify, count_roots_leaf, make_template

V = make_template("BoundaryP1", eps0=2e-3, eps1=-0.4, mu_bar3=0.3, alpha=0.02)
cert = certify(V)
print(f"certificate: {cert.theorem}, at most {cert.bound} small roots")
for nu in np.geomspace(1e-4, 1e-7, 4):
    rc = count_roots_leaf(V, nu, nu / 0.5, 0.05, grid=4096, rho_max=0.5)
    print(f"nu={nu:.0e}: {rc.count} roots at r = {[f'{r:.3e}' for r in rc.roots]}")
