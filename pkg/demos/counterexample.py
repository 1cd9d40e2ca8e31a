"""
Maximum diameter does not mean minimum connectivity
===================================================

Among cubic graphs on n = 4m+16 vertices, the maximum-diameter graph is
not the one with the smallest algebraic connectivity: a graph whose
diameter is one less has a strictly smaller mu.
"""

from algconn import counterexample_pair, diameter, fiedler
from algconn.families import counterexample_exprs

for kind, m in [("cubic", 4), ("cubic", 20), ("quartic", 1), ("quartic", 10)]:
    G, Gp = counterexample_pair(kind, m)
    a, b = fiedler(G), fiedler(Gp)
    print(f"{kind:8s} m={m:3d} n={G.n:4d}  diam {diameter(G)} vs {diameter(Gp)}"
          f"   mu {a.mu:.6e} vs {b.mu:.6e}   smaller: {b.mu < a.mu}")

# the two quartic graphs, as construction strings
g, gp = counterexample_exprs("quartic", 3)
print()
print("max diameter :", g)
print("smaller mu   :", gp)
