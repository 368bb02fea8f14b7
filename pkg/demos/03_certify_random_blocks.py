"""
Certifying the bounds on random block matrices
==============================================

Random self-adjoint block matrices [[A0, B], [B^T, A1]] with spec(A0) inside
a gap of spec(A1): every eigenvector with eigenvalue in the gap is checked
against each applicable bound by the Jacobi eigensolver.
"""

# %%
import math

from tantheta.blockmodel import certify, random_instance
from tantheta.geometry import centered_geometry

g = centered_geometry(6.0, 1.0)
vmax = math.sqrt(g.d * g.delta_len)

# %%
worst = 0.0
violations = 0
for seed in range(200):
    vnorm = 0.99 * vmax * (seed % 20) / 19
    c = certify(random_instance(3, 12, g, vnorm, seed))
    violations += c.violations
    worst = max(worst, c.max_tightest_ratio)
print("violations:", violations, " largest tan(theta)/tightest bound:", round(worst, 4))

# %%
# A single report in detail.
c = certify(random_instance(2, 6, g, 1.3, seed=7))
for r in c.reports:
    print(f"z={r.eigenvalue:+.5f} in_window={r.in_window} tan={r.tan_theta:.5f}",
          [(bv.kind.value, round(bv.value, 5)) for bv in r.bounds])
print(c.gap)
