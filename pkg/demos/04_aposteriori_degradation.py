"""
Why an a priori bound matters
=============================

With the symmetric gap (-d, d), lam = 0 and all coupling on one edge, the
perturbed eigenvalue creeps toward the gap edge as b -> sqrt(2) d. The a
posteriori bound b / delta then explodes, while b / d never exceeds sqrt(2).
"""

# %%
from tantheta import sweep_aposteriori

for row in sweep_aposteriori(1.0, 12):
    print(f"b={row['b']:.4f} delta={row['delta']:.5f} tan={row['tan_theta']:.5f} "
          f"b/d={row['apriori']:.5f} b/delta={row['aposteriori']:.3f}")
