"""Dual eigenpairs of two 3x3 dual complex Hermitian matrices.

Both matrices share the standard part J - I (J the all-ones matrix), whose
eigenvalue -1 is double.  The dual part decides what happens inside that
eigenspace: for A it splits the double eigenvalue into -1 +/- 1.1547 eps, for
B it leaves both dual parts at zero.
"""

import numpy as np

from dualherm import DualMatrix, smm_eig

J = np.ones((3, 3)) - np.eye(3)
A_dual = np.array([[0, 1j, -2j], [-1j, 0, -1j], [2j, 1j, 0]])
B_dual = np.array([[0, 1j, 0], [-1j, 0, -1j], [0, 1j, 0]])

for name, dual in (("A", A_dual), ("B", B_dual)):
    dec = smm_eig(DualMatrix.from_parts(J, dual))
    print(f"matrix {name}")
    for c in dec.clusters:
        print(f"  standard eigenvalue {c.lambda_s:+.4f} (multiplicity {c.multiplicity}),"
              f" supplement eigenvalues {np.round(c.dual_values, 4) + 0.0}")
    for p in dec:
        x_s, x_d = p.vector.native()
        print(f"  {p.value:.6g}   residual {p.residual:.1e}")
        print(f"    x_s = {np.round(x_s, 4)}")
        print(f"    x_d = {np.round(x_d, 4)}")
