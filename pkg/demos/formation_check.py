"""Recovering a multi-agent formation from relative poses.

Six agents sit at random unit dual quaternion configurations q_i.  Each
communication link (i, j) reports the relative configuration q_i* q_j.  Such a
scheme is reasonable: a formation reproducing every link exists and is unique
up to a common left factor.  Corrupting one link breaks that, and the
corresponding gain graph stops being balanced.
"""

import numpy as np

from dualherm import ConfigScheme, Formation, Ring, check_balance, random_unit_dual, verify_reasonable

rng = np.random.default_rng(2024)
truth = Formation(tuple(random_unit_dual(Ring.QUATERNION, rng) for _ in range(6)))
links = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4), (2, 5)]
scheme = ConfigScheme.from_formation(truth, links)

found = verify_reasonable(scheme)
print("clean scheme")
print(f"  reasonable: {found.reasonable}, balanced: {check_balance(scheme.to_graph()).balanced}")
print(f"  distance to the true formation up to a left factor: {found.coset_distance(truth):.1e}")

gains = dict(scheme.gains)
gains[(2, 3)] = gains[(2, 3)] * random_unit_dual(Ring.QUATERNION, rng)
bad = ConfigScheme(6, gains, Ring.QUATERNION)
out = verify_reasonable(bad)
print("one corrupted link (3-4, counting from 1)")
print(f"  reasonable: {out.reasonable}, balanced: {check_balance(bad.to_graph()).balanced}")
print(f"  worst edge {out.edge[0] + 1}-{out.edge[1] + 1}, mismatch {out.mismatch:.3f}")
