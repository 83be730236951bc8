"""Why [-1, 0] is the classical interval: enumerating hidden-variable models.

A deterministic local strategy pre-assigns an outcome (0 or 1) to each of the
four analyzers.  Correlations then factorize and Gamma becomes linear in the
four bits, so the classical reach of Gamma is the convex hull of its values
on the 16 strategies.
"""

import numpy as np

from atombell import lhv_vertices

vertices = lhv_vertices()
print("strategy (q1_a, q1_a', q2_b, q2_b') -> Gamma")
for bits, value in vertices:
    print(f"  {bits} -> {value:+.0f}")

values = np.array([value for _, value in vertices])
print()
print(f"vertex minimum: {values.min():+.0f}")
print(f"vertex maximum: {values.max():+.0f}")
print(f"strategies attaining -1: {[bits for bits, v in vertices if v == -1.0]}")

print()
print("random mixtures of strategies stay inside the hull:")
rng = np.random.default_rng(3)
mixed = rng.dirichlet(np.ones(16), size=100_000) @ values
print(f"  100000 mixtures span [{mixed.min():.6f}, {mixed.max():.6f}]")
print("so any local hidden-variable model obeys -1 <= Gamma <= 0;")
print("the quantum extrema -9/8 and +1/8 are genuinely nonclassical.")
