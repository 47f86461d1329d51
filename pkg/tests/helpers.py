"""Shared builders for the worked 3-vertex examples and random test matrices."""

from __future__ import annotations

import numpy as np

from dualherm import ConfigScheme, DualMatrix, DualScalar, Ring, UnitGainGraph, random_unit_dual
from dualherm import ground as gr

C = DualScalar.complex

# Adjacency of the unbalanced dual complex triangle (Phi_A)
EX_A_STD = np.ones((3, 3)) - np.eye(3)
EX_A_DUAL = np.array([[0, 1j, -2j], [-1j, 0, -1j], [2j, 1j, 0]])
# Adjacency of the balanced triangle (Phi_B)
EX_B_DUAL = np.array([[0, 1j, 0], [-1j, 0, -1j], [0, 1j, 0]])

# Reference standard eigenvectors of A_s for the example (4 digits)
V1 = np.array([0.5774, 0.5774, 0.5774])
V2 = np.array([-0.7152, 0.0166, 0.6987])
V3 = np.array([0.3938, -0.8163, 0.4225])


def matrix_a() -> DualMatrix:
    return DualMatrix.from_parts(EX_A_STD.astype(complex), EX_A_DUAL)


def matrix_b() -> DualMatrix:
    return DualMatrix.from_parts(EX_A_STD.astype(complex), EX_B_DUAL)


def graph_a() -> UnitGainGraph:
    return UnitGainGraph(3, ((0, 1, C(1, 1j)), (0, 2, C(1, -2j)), (1, 2, C(1, -1j))), Ring.COMPLEX)


def graph_b() -> UnitGainGraph:
    return UnitGainGraph(3, ((0, 1, C(1, 1j)), (0, 2, C(1, 0)), (1, 2, C(1, -1j))), Ring.COMPLEX)


def reference_basis():
    """The reference v2, v3 projected onto the exact eigenspace and orthonormalized."""
    V = np.stack([V2, V3], axis=1)
    P = np.eye(3) - np.ones((3, 3)) / 3  # projector onto the complement of (1, 1, 1)
    W, R = np.linalg.qr(P @ V)
    return W * np.sign(np.diag(R))[None, :]


def random_ground(rng: np.random.Generator, shape: tuple[int, ...], ring: Ring) -> np.ndarray:
    out = np.zeros(shape + (4,))
    out[..., :ring.ncomp] = rng.normal(size=shape + (ring.ncomp,))
    return out


def random_hermitian(rng: np.random.Generator, n: int, ring: Ring) -> np.ndarray:
    return gr.hermitian_part(random_ground(rng, (n, n), ring))


def random_unitary(rng: np.random.Generator, n: int, ring: Ring) -> np.ndarray:
    """Gram-Schmidt on random columns, scalars acting on the right."""
    X = random_ground(rng, (n, n), ring)
    Q = np.zeros_like(X)
    for k in range(n):
        v = X[:, k]
        for _ in range(2):
            for j in range(k):
                coef = gr.qmul(gr.qconj(Q[:, j]), v).sum(axis=0)
                v = v - gr.qmul(Q[:, j], coef)
        Q[:, k] = v / np.sqrt(gr.abs2(v).sum())
    return Q


def random_dual_hermitian(rng: np.random.Generator, n: int, ring: Ring,
                          repeated: bool = False) -> DualMatrix:
    """Random dual Hermitian matrix; ``repeated`` forces multiple standard eigenvalues."""
    vals = rng.normal(size=n)
    if repeated and n >= 2:
        vals[1] = vals[0]
        if n >= 5:
            vals[3] = vals[4] = vals[2]
    U = random_unitary(rng, n, ring)
    A_s = gr.hermitian_part(gr.matmul(U * vals[None, :, None], gr.ctranspose(U), ring))
    return DualMatrix(A_s, random_hermitian(rng, n, ring), ring)


def apply(A: DualMatrix, x_s: np.ndarray, x_d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Standard and dual parts of ``A x`` in the 4-layout."""
    r = A.ring
    return (gr.matmul(A.standard, x_s, r),
            gr.matmul(A.standard, x_d, r) + gr.matmul(A.dual, x_s, r))


def pair_residual(A: DualMatrix, pair) -> float:
    """Independent recomputation of ``twoR(A x - x lambda)``."""
    x = pair.vector
    ls, ld = pair.value.standard, pair.value.dual
    ax_s, ax_d = apply(A, x.standard, x.dual)
    r_s = ax_s - ls * x.standard
    r_d = ax_d - ls * x.dual - ld * x.standard
    return float(np.sqrt(gr.abs2(r_s).sum() + gr.abs2(r_d).sum()))


def perturbation_case(rng: np.random.Generator, n: int, repeated: bool = False) -> DualMatrix:
    """Dual complex Hermitian matrix with standard gaps >= 1 and a modest dual part.

    Keeping ``lambda_i - lambda_j`` away from zero (apart from deliberate
    repeats) bounds the second-order term of ``eig(A_s + t A_d)`` so a forward
    difference at ``t = 1e-5`` resolves the first-order slope to about 1e-5.
    """
    vals = np.cumsum(rng.uniform(1.0, 2.0, size=n))
    if repeated and n >= 2:
        vals[1] = vals[0]
    U = random_unitary(rng, n, Ring.COMPLEX)
    A_s = gr.hermitian_part(gr.matmul(U * vals[None, :, None], gr.ctranspose(U), Ring.COMPLEX))
    return DualMatrix(A_s, 0.5 * random_hermitian(rng, n, Ring.COMPLEX), Ring.COMPLEX)


def finite_difference_slopes(A: DualMatrix, t: float) -> np.ndarray:
    """``(eig(A_s + t A_d) - eig(A_s)) / t`` from numpy's Hermitian solver."""
    A_s, A_d = A.native()
    return (np.linalg.eigvalsh(A_s + t * A_d) - np.linalg.eigvalsh(A_s)) / t


def random_connected_scheme(rng, n, extra, ring=Ring.QUATERNION):
    """Cycle plus ``extra`` random chords, gains q_i* q_j from a random formation."""
    truth = [random_unit_dual(ring, rng) for _ in range(n)]
    edges = {(i, (i + 1) % n) for i in range(n)}
    while len(edges) < n + extra:
        i, j = rng.choice(n, size=2, replace=False)
        if (i, j) not in edges and (j, i) not in edges:
            edges.add((int(i), int(j)))
    return truth, ConfigScheme.from_formation(truth, sorted(edges))
