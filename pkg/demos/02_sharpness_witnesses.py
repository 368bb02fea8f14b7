"""
Matrices that attain the bound
==============================

For any admissible (D, d, b) a 3x3 matrix exists whose in-gap eigenvector
is rotated by exactly the bound. Below beta all coupling goes to the nearer
gap edge; above it the coupling is split so the eigenvalue lands on the
maximiser of the graph norm.
"""

# %%

import numpy as np

from tantheta import build_xi_witness, eigensolve, xi
from tantheta.secular import beta

D, d = 4.0, 1.0
print("beta =", beta(D / 2, D / 2 - d))

# %%
for b in (0.3, 0.7, 0.8, 1.2, 1.9):
    r = build_xi_witness(D, d, b)
    print(f"b={b:4.2f} {r.regime:14s} b-={r.matrix.b_minus:.6f} b+={r.matrix.b_plus:.6f} "
          f"z={r.z:+.6f} tan={r.tan_theta:.10f} bound={r.bound:.10f}")

# %%
# Cross-check one witness with the dense eigensolver.
r = build_xi_witness(D, d, 1.2)
w, V = eigensolve(r.matrix.matrix())
k = int(np.argmax(np.abs(V[0])))
print("dense tan^2 =", np.sum(V[1:, k] ** 2) / V[0, k] ** 2, " xi =", xi(D, d, 1.2))
