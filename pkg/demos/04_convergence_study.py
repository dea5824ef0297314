"""Relative L1 errors for N = 16 ... 256 and the order of the NT scheme.

The time step of the error tables admits two readings (a fixed ratio
dt = dx/4, or a CFL number); both are shown.  With dt = dx/4 the Courant
number of the all-shock problem slightly exceeds the NT stability limit and
those runs abort.
"""
import math
import warnings

import numpy as np

from twofluid import exact_riemann as E
from twofluid import simulation as S
from twofluid.cli import TABLE_POLICIES, error_table, format_table, ExperimentConfig

for name, spec in (("all-shock", E.EXPERIMENT1), ("all-rarefaction", E.EXPERIMENT2)):
    sol = E.build(spec)
    tables = error_table(sol, ExperimentConfig())
    for (kind, value), cells in tables.items():
        print(format_table(f"{name}: {kind} = {value}", cells))
        print()

# %% NT self-convergence on smooth periodic data
def smooth(grid):
    xm, dx = grid.midpoints, grid.dx
    m = 0.5 + 0.1 * (np.cos(2 * np.pi * (xm - dx / 2))
                     - np.cos(2 * np.pi * (xm + dx / 2))) / (2 * np.pi * dx)
    return np.tile([1.0, 0.0], (len(grid.nodes), 1)), np.stack([m, 0 * m], -1)


sols = {}
for N in (64, 128, 256, 512):
    cfg = S.RunConfig(grid=S.StaggeredGrid(0, 1, N), T=0.05, initial=smooth,
                      scheme="nt", boundary="periodic", ratio=0.1)
    sols[N] = S.run(cfg).w[:, 0]
diffs = [np.mean(np.abs(sols[N] - 0.5 * (sols[2 * N][0::2] + sols[2 * N][1::2])))
         for N in (64, 128, 256)]
for (a, b), N in zip(zip(diffs, diffs[1:]), (128, 256)):
    print(f"observed order around N = {N}: {math.log2(a / b):.3f}")
