"""Timing and accuracy on balanced dual quaternion and dual complex cycles.

A balanced cycle has the same Laplacian spectrum as the plain cycle,
2 - 2 cos(2 pi j / n).  The residue column is the 2-norm distance between
that closed form and the computed standard parts plus the computed dual
parts, which should all be zero.
"""

import sys
import time

from dualherm import Ring, adjacency_laplacian, check_balance, gen_balanced_cycle, smm_eig
from dualherm.gaingraph import cycle_residue

sizes = [int(s) for s in sys.argv[1:]] or [10, 20, 50, 100, 200]

for ring in (Ring.COMPLEX, Ring.QUATERNION):
    print(f"dual {ring.name.lower()} cycles")
    print(f"{'n':>5} {'time (s)':>9} {'residue':>9} {'Err':>9}")
    for n in sizes:
        g = gen_balanced_cycle(n, ring, seed=n)
        t0 = time.perf_counter()
        _, L = adjacency_laplacian(g)
        dec = smm_eig(L)
        elapsed = time.perf_counter() - t0
        err = check_balance(g).err
        print(f"{n:>5} {elapsed:9.3f} {cycle_residue(dec, n):9.1e} {err:9.1e}")
