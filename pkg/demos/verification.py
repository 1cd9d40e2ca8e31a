"""
Checking claims numerically
===========================

Each check returns a self-describing report. Here: the maximum-diameter
regular graphs, a scaling sweep written to CSV, and a small gadget whose
effect on mu fades as the chain grows.
"""

import tempfile
from pathlib import Path

from algconn import GammaSpec
from algconn.dsl import primitive
from algconn.verify import perturbation_trend, scaling_sweep, table1_audit

# every row of the regular maximum-diameter table for d = 4
for rep in table1_audit([4], 5):
    print(rep.summary(), rep.measured)

# mu n^2 / pi^2 for quartic minimal-degree chains with target 4
out = Path(tempfile.mkdtemp())
rep, csv = scaling_sweep("iv", None, [25, 50, 100], out_dir=out)
print()
print(rep.summary())
print(csv, end="")
print("written:", sorted(p.name for p in out.iterdir()))

# hang a K5 off the end of K1+K2+K2 chains
rep = perturbation_trend(GammaSpec.single(1, 2, 2, 25), primitive("K", 5), [25, 50, 100])
print()
print(rep.summary())
print("mu ratios:", [round(r, 5) for r in rep.measured["ratio"]])
