"""
How mu scales on long chains
============================

On chains of cliques the algebraic connectivity decays like c pi^2/n^2.
We watch mu n^2/pi^2 settle, compare it with a cheap test-vector bound,
and look at the random-walk relaxation time of cubic chains.
"""

import math

from algconn import GammaSpec, block_path, fiedler, gamma_d, test_vector_bound as cosine_bound
from algconn.verify import aldous_fill_ratio

# chains of K1+K1+K2 blocks: the limit is abc = 2
for m in (10, 40, 160):
    spec = GammaSpec.single(1, 1, 2, m)
    G, _ = gamma_d(spec)
    mu = fiedler(G).mu
    print(f"m={m:4d} n={G.n:4d}  mu n^2/pi^2 = {mu * G.n ** 2 / math.pi ** 2:.5f}"
          f"   bound/mu = {cosine_bound(spec) / mu:.5f}")

# mixing the blocks pins the constant between the smallest and largest product
spec = GammaSpec(5, ((1, 1, 4), (2, 2, 2)), (60, 60))
G, _ = gamma_d(spec)
print("mixed chain:", round(fiedler(G).mu * G.n ** 2 / math.pi ** 2, 4), "between 4 and 8")

# cubic block paths come close to the largest possible relaxation time
for m in (20, 80):
    G = block_path(3, "L", m)
    print(f"cubic block path n={G.n}: tau / (3n^2 / 2pi^2) = {aldous_fill_ratio(G):.4f}")
