"""Balance of two dual complex unit gain triangles.

Both Laplacians have the standard spectrum {0, 3, 3}, so the standard part
alone cannot tell the graphs apart.  The switching test can: it builds the
diagonal matrix of normalized entries of the eigenvector for eigenvalue 0
and measures how far the switched Laplacian is from the plain one.
"""

from dualherm import DualScalar, Ring, UnitGainGraph, check_balance, verify_reasonable

C = DualScalar.complex


def triangle(g12, g13, g23):
    return UnitGainGraph(3, ((0, 1, g12), (0, 2, g13), (1, 2, g23)), Ring.COMPLEX)


graphs = {
    "unbalanced": triangle(C(1, 1j), C(1, -2j), C(1, -1j)),
    "balanced": triangle(C(1, 1j), C(1), C(1, -1j)),
}

for name, g in graphs.items():
    r = check_balance(g)
    print(f"{name} triangle")
    print("  Laplacian spectrum:", ", ".join(f"{v:.4f}" for v in r.spectrum))
    print(f"  Err = {r.err:.6f}, balanced = {r.balanced}")
    out = verify_reasonable(g)
    print(f"  formation exists: {out.reasonable}")
