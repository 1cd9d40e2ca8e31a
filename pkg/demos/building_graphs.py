"""
Building graphs from construction strings
=========================================

A tour of the expression language: sequential joins, 1-factor edits and
end blocks, checked against diameter and block structure.
"""

from algconn import build, diameter, block_decomposition
from algconn.graph import degree_profile, is_regular

# a sequential join: every vertex of a cell sees every vertex of the next
G, cells = build("K2+K3+K4")
print("K2+K3+K4:", G.n, "vertices,", G.edge_count, "edges, cells", cells.sizes())

# K4 minus one perfect matching is a 4-cycle
C, _ = build("K4^-1")
print("K4^-1 is 2-regular:", is_regular(C, 2), "with", C.edge_count, "edges")

# repeat a pattern, then hang an end block off the last cell
G, cells = build("K3 + K2^-1 + (K1+K2+K2)_5 o H2")
prof = degree_profile(G)
print("quartic chain:", G.n, "vertices, degrees", dict(prof.counts), "diameter", diameter(G))

# the block tree of a chain like this is a path
bd = block_decomposition(G)
print("blocks:", len(bd.blocks), " cut vertices:", len(bd.cut_vertices),
      " path-like:", bd.block_tree_is_path)

# mistakes are reported with a byte offset
try:
    build("K2 ++ K3")
except ValueError as exc:
    print("syntax error ->", exc)
