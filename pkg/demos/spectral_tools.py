"""
Spectral tools
==============

The dense eigensolver, two routes to mu, and what a Fiedler vector looks
like on a chain of cliques.
"""

import numpy as np

from algconn import fiedler, g_abc, laplacian, quotient_mu, relaxation_time
from algconn.eigen import eigen_full
from algconn.spectral import fiedler_structure_check

# the in-house solver against LAPACK on a random symmetric matrix
rng = np.random.default_rng(0)
A = rng.standard_normal((300, 300))
A = (A + A.T) / 2
w, V = eigen_full(A)
print("max |eig - numpy| :", np.abs(w - np.linalg.eigvalsh(A)).max())
print("max |V^T V - I|   :", np.abs(V.T @ V - np.eye(300)).max())

# the chain K2+K3+K4 repeated: its cliques form an equitable partition,
# so a 3m x 3m quotient carries the same mu as the full Laplacian
G, cells = g_abc(2, 3, 4, 30)
dense = fiedler(G)
quo = quotient_mu(G, cells)
print(f"\nn={G.n}: dense mu {dense.mu:.15e}")
print(f"{'':{len(str(G.n)) + 3}} quotient {quo.mu:.15e}  ({len(cells)} cells)")

# the Fiedler vector is constant on cells and changes sign once
cell_vals = [dense.vector[list(c)].mean() for c in cells.cells]
print("first cell values:", np.round(cell_vals[:6], 4))
rep = fiedler_structure_check(G, dense, cells)
print("structure ok:", rep.ok, " sign-connected:", rep.sign_sets_connected, " monotone cells:", rep.cells)

# random-walk relaxation time of the three-vertex path
Gr, _ = g_abc(1, 1, 1, 1)
print("\nrelaxation time of P3:", relaxation_time(Gr))
print("L(P3) spectrum:", np.round(eigen_full(laplacian(Gr))[0], 12))
