"""
Rotation bounds at a glance
===========================

Evaluate every angle bound for an eigenvector whose eigenvalue sits in a
gap of length D of the rest of the spectrum, at distance d, as the
coupling norm b grows.
"""

# %%
import math

import numpy as np

from tantheta import best_bound, kappa_tan, make_geometry, xi
from tantheta.bounds import apriori_tan_theta

D, d = 4.0, 1.0
g = make_geometry(-D / 2, D / 2, d)

# %%
# sqrt(xi) is defined up to sqrt(d D), the a priori b/d only up to sqrt(2) d
# and the kappa bound up to sqrt(d (D - d)).
print(f"{'b':>6} {'sqrt_xi':>10} {'b/d':>10} {'kappa_tan':>10}")
for b in np.linspace(0, 0.99 * math.sqrt(d * D), 12):
    apriori = apriori_tan_theta(d, b) if b < math.sqrt(2) * d else float("nan")
    kap = kappa_tan(D, d, b) if b * b < d * (D - d) else float("nan")
    print(f"{b:6.3f} {math.sqrt(xi(D, d, b)):10.6f} {apriori:10.6f} {kap:10.6f}")

# %%
# The aggregate view sorts the applicable bounds, tightest first.
for bv in best_bound(g, 1.2, include_invalid=True):
    print(bv.kind.value, bv.valid, bv.value, bv.reason)

# %%
# When the gap is exactly twice the distance, xi collapses to (b/d)^2.
for b in (0.3, 0.9, 1.4):
    print(b, xi(2 * d, d, b), (b / d) ** 2)
