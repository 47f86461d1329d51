"""Eigenvalues of dual Hermitian matrices by the supplement matrix method.

For ``A = A_s + A_d eps`` Hermitian, the standard parts of the dual
eigenvalues are the eigenvalues of ``A_s``.  For an eigenvalue ``lambda_s`` of
multiplicity ``k`` with orthonormal eigenbasis ``W`` (``n x k``), the dual parts
are the eigenvalues of the k x k Hermitian supplement matrix ``W* A_d W`` and
the standard eigenvectors are ``W y`` for its eigenvectors ``y``.  Dual parts
of the eigenvectors solve the singular system
``(lambda_s I - A_s) x_d = (A_d - lambda_d I) x_s``; the minimal-norm solution
``U (lambda_s I - S)^+ U* A_d x_s`` is used, with ``A_s = U S U*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import ground as gr
from .dmat import DualMatrix, DualVector, hermitian_deviation, mat_norm
from .errors import InconsistentSystem, NotHermitian
from .ground import Ring
from .heig import GroundEigenDecomposition, eig_hermitian, normalize_phase
from .ring import DualNumber

__all__ = [
    "EigenCluster",
    "DualEigenPair",
    "DualEigenDecomposition",
    "cluster_eigenvalues",
    "supplement_matrix",
    "dual_correction",
    "smm_eig",
    "det_dual",
    "charpoly_eval",
]

CLUSTER_TOL = 1e-8
HERMITIAN_RTOL = 1e-10


@dataclass(eq=False)
class EigenCluster:
    """Group of numerically equal standard eigenvalues.

    ``indices`` index into the ascending ground spectrum.  ``basis`` (``W``),
    ``supplement`` and ``dual_values`` are filled in by :func:`smm_eig`.
    """

    lambda_s: float
    multiplicity: int
    indices: tuple[int, ...]
    basis: np.ndarray | None = None
    supplement: np.ndarray | None = None
    dual_values: np.ndarray | None = None
    imag_residue: float = 0.0


@dataclass(frozen=True, eq=False)
class DualEigenPair:
    value: DualNumber
    vector: DualVector
    residual: float


@dataclass(eq=False)
class DualEigenDecomposition:
    """Dual eigenpairs sorted descending by the dual-number order."""

    pairs: list[DualEigenPair]
    clusters: list[EigenCluster]
    ring: Ring
    ground: GroundEigenDecomposition | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @property
    def values(self) -> list[DualNumber]:
        return [p.value for p in self.pairs]

    @property
    def standard_values(self) -> np.ndarray:
        return np.array([p.value.standard for p in self.pairs])

    @property
    def dual_values(self) -> np.ndarray:
        return np.array([p.value.dual for p in self.pairs])

    @property
    def residuals(self) -> np.ndarray:
        return np.array([p.residual for p in self.pairs])

    @property
    def vectors(self) -> DualMatrix:
        """Eigenvectors as the columns of a dual matrix."""
        s = np.stack([p.vector.standard for p in self.pairs], axis=1)
        d = np.stack([p.vector.dual for p in self.pairs], axis=1)
        return DualMatrix(s, d, self.ring)

    def ascending(self) -> list[DualEigenPair]:
        return self.pairs[::-1]

    def is_positive_semidefinite(self) -> bool:
        return all(v >= DualNumber(0.0) for v in self.values)

    def is_positive_definite(self) -> bool:
        return all(v > DualNumber(0.0) for v in self.values)


def cluster_eigenvalues(values, tol: float = CLUSTER_TOL) -> list[EigenCluster]:
    """Split a sorted spectrum at gaps larger than ``tol * max(1, |lambda|)``."""
    values = np.asarray(values, dtype=float)
    clusters: list[EigenCluster] = []
    start = 0
    n = len(values)
    for i in range(1, n + 1):
        if i == n or values[i] - values[i - 1] > tol * max(1.0, abs(values[i - 1]), abs(values[i])):
            idx = tuple(range(start, i))
            clusters.append(EigenCluster(float(values[start:i].mean()), len(idx), idx))
            start = i
    return clusters


def _layout(x, ring: Ring | None, ndim: int) -> tuple[np.ndarray, Ring]:
    arr = np.asarray(x)
    if arr.ndim == ndim + 1 and arr.shape[-1] == 4 and not np.iscomplexobj(arr):
        return arr.astype(float), (gr.infer_ring(arr) if ring is None else Ring.parse(ring))
    out, inferred = gr.from_native(arr, None, ndim=ndim)
    return out, inferred if ring is None else Ring.parse(ring).promote(inferred)


def _supplement(W: np.ndarray, A_d: np.ndarray, ring: Ring) -> np.ndarray:
    return gr.matmul(gr.ctranspose(W), gr.matmul(A_d, W, ring), ring)


def supplement_matrix(W, A_d, ring: Ring | None = None) -> np.ndarray:
    """``W* A_d W`` for an orthonormal eigenbasis ``W`` of one eigenvalue.

    Accepts native or 4-layout arrays and returns the native k x k matrix.
    """
    W4, rw = _layout(W, ring, 2)
    A4, ra = _layout(A_d, ring, 2)
    r = rw.promote(ra)
    return gr.to_native(_supplement(W4, A4, r), r)


def _corrections(U: np.ndarray, sigma: np.ndarray, A_d: np.ndarray, X_s: np.ndarray,
                 lam_s: np.ndarray, lam_d: np.ndarray, ring: Ring, tol: float,
                 check_tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Minimal-norm dual parts for every column of ``X_s`` at once.

    Returns ``(X_d, kernel_defect)`` where ``kernel_defect[c]`` is the norm of
    the right-hand side's component in the kernel of ``lambda_s I - A_s``.
    """
    M = gr.matmul(gr.ctranspose(U), gr.matmul(A_d, X_s, ring), ring)
    diff = lam_s[None, :] - sigma[:, None]
    kernel = np.abs(diff) <= tol * np.maximum(1.0, np.abs(lam_s))[None, :]
    G = np.where(kernel, 0.0, 1.0 / np.where(kernel, 1.0, diff))
    X_d = gr.matmul(U, M * G[:, :, None], ring)
    # With a small gap to a neighbouring eigenvalue X_d is large, and roundoff
    # in U leaks a kernel component of size eps * |X_d|; one reorthogonalization
    # pass restores x_s* x_d = 0 without changing the residual.
    leak = gr.matmul(gr.ctranspose(U), X_d, ring) * kernel[:, :, None]
    X_d = X_d - gr.matmul(U, leak, ring)

    coords = gr.matmul(gr.ctranspose(U), X_s, ring)
    rhs_kernel = (M - coords * lam_d[None, :, None]) * kernel[:, :, None]
    defect = np.sqrt(gr.abs2(rhs_kernel).sum(axis=0))
    bad = np.flatnonzero(defect > check_tol)
    if bad.size:
        c = int(bad[0])
        raise InconsistentSystem(
            f"dual part {lam_d[c]!r} leaves a kernel component of norm {defect[c]:.3e} "
            f"(> {check_tol:.1e}); it is not a supplement eigenvalue")
    return X_d, defect


def dual_correction(lambda_s: float, lambda_d: float, x_s, decomposition: GroundEigenDecomposition,
                    A_d, *, tol: float = CLUSTER_TOL, check_tol: float | None = None) -> np.ndarray:
    """Minimal-norm ``x_d`` with ``(lambda_s I - A_s) x_d = (A_d - lambda_d I) x_s``.

    ``decomposition`` is the ground eigendecomposition of ``A_s``.  Eigenvalues
    within ``tol * max(1, |lambda_s|)`` of ``lambda_s`` span the kernel.  Raises
    :class:`InconsistentSystem` when the right-hand side has a kernel component
    larger than ``check_tol`` (default ``1e-8 * (1 + ||A_d||_F)``).
    """
    ring = decomposition.ring
    x4, rx = _layout(x_s, ring, 1)
    A4, ra = _layout(A_d, ring, 2)
    ring = ring.promote(rx).promote(ra)
    if check_tol is None:
        check_tol = 1e-8 * (1.0 + math.sqrt(float(gr.abs2(A4).sum())))
    X_d, _ = _corrections(decomposition.vectors, decomposition.values, A4, x4[:, None, :],
                          np.array([float(lambda_s)]), np.array([float(lambda_d)]),
                          ring, tol, check_tol)
    return gr.to_native(X_d[:, 0], ring)


def _check_hermitian(A: DualMatrix, tol: float | None) -> None:
    n, m = A.shape
    if n != m:
        raise NotHermitian(f"matrix of shape {A.shape} is not square")
    if tol is None:
        tol = HERMITIAN_RTOL * mat_norm(A, "froR")
    dev = hermitian_deviation(A)
    if dev > tol:
        raise NotHermitian(f"max |A - A*| = {dev:.3e} exceeds {tol:.3e}")


def _select_clusters(clusters: list[EigenCluster], top_k: int | None, which: str) -> list[EigenCluster]:
    if top_k is None:
        return clusters
    if which not in ("largest", "smallest"):
        raise ValueError(f"which must be 'largest' or 'smallest', not {which!r}")
    ordered = clusters[::-1] if which == "largest" else clusters
    # Whole clusters only: a truncated eigenspace would give wrong supplement matrices.
    picked, count = [], 0
    for c in ordered:
        if count >= top_k:
            break
        picked.append(c)
        count += c.multiplicity
    return sorted(picked, key=lambda c: c.indices[0])


def smm_eig(A: DualMatrix, *, tol: float = CLUSTER_TOL, hermitian_tol: float | None = None,
            top_k: int | None = None, which: str = "largest") -> DualEigenDecomposition:
    """All dual eigenpairs of a dual Hermitian matrix.

    Parameters
    ----------
    A : DualMatrix
        Dual Hermitian matrix over R, C or Q.
    tol : float
        Relative gap below which standard eigenvalues are treated as equal;
        also the pseudoinverse cutoff.
    hermitian_tol : float, optional
        Absolute bound on ``max |A - A*|`` (default ``1e-10 * froR(A)``).
    top_k, which : optional
        Return only the ``top_k`` largest (or smallest) eigenpairs.  Whole
        standard eigenvalue clusters are always processed, so an eigenspace is
        never cut in half.
    """
    _check_hermitian(A, hermitian_tol)
    ring = A.ring
    A_s = gr.hermitian_part(A.standard)
    A_d = gr.hermitian_part(A.dual)
    n = A.shape[0]
    dec = eig_hermitian(A_s, ring)
    U, sigma = dec.vectors, dec.values
    clusters = _select_clusters(cluster_eigenvalues(sigma, tol), top_k, which)

    norm_s = math.sqrt(float(gr.abs2(A_s).sum()))
    norm_d = math.sqrt(float(gr.abs2(A_d).sum()))
    noise = 1e3 * np.finfo(float).eps * (norm_s + norm_d)

    cols_s, lam_s, lam_d = [], [], []
    for c in clusters:
        W = U[:, list(c.indices)]
        S = _supplement(W, A_d, ring)
        c.basis = W
        c.supplement = S
        c.imag_residue = float(np.abs(S[np.arange(c.multiplicity), np.arange(c.multiplicity), 1:]).max())
        S = gr.hermitian_part(S)
        offdiag = S.copy()
        offdiag[np.arange(c.multiplicity), np.arange(c.multiplicity)] = 0.0
        if c.multiplicity == 1 or np.sqrt(gr.abs2(offdiag).max()) <= noise:
            # Numerically diagonal: keep W and read the dual parts off the diagonal.
            dvals = S[np.arange(c.multiplicity), np.arange(c.multiplicity), 0]
            order = np.argsort(dvals, kind="stable")
            dvals, Y = dvals[order], gr.identity(c.multiplicity)[:, order]
        else:
            sub = eig_hermitian(S, ring)
            dvals, Y = sub.values, sub.vectors
        c.dual_values = np.asarray(dvals, dtype=float)
        Xs = gr.matmul(W, Y, ring)
        cols_s.append(Xs)
        lam_s.extend([c.lambda_s] * c.multiplicity)
        lam_d.extend(c.dual_values)

    if not clusters:
        return DualEigenDecomposition([], [], ring, dec)
    X_s = normalize_phase(np.concatenate(cols_s, axis=1))
    lam_s = np.asarray(lam_s)
    lam_d = np.asarray(lam_d)
    check_tol = 1e-8 * (1.0 + norm_d) * max(1.0, norm_s)
    X_d, _ = _corrections(U, sigma, A_d, X_s, lam_s, lam_d, ring, tol, check_tol)

    R_s = gr.matmul(A_s, X_s, ring) - X_s * lam_s[None, :, None]
    R_d = (gr.matmul(A_s, X_d, ring) + gr.matmul(A_d, X_s, ring)
           - X_d * lam_s[None, :, None] - X_s * lam_d[None, :, None])
    resid = np.sqrt(gr.abs2(R_s).sum(axis=0) + gr.abs2(R_d).sum(axis=0))

    order = sorted(range(len(lam_s)), key=lambda i: (lam_s[i], lam_d[i]), reverse=True)
    pairs = [DualEigenPair(DualNumber(lam_s[i], lam_d[i]),
                           DualVector(X_s[:, i], X_d[:, i], ring), float(resid[i]))
             for i in order]
    if top_k is not None:
        pairs = pairs[:top_k] if which == "largest" else pairs[::-1][:top_k][::-1]
    return DualEigenDecomposition(pairs, clusters, ring, dec)


def det_dual(A: DualMatrix, *, tol: float = CLUSTER_TOL) -> DualNumber:
    """Product of the n dual eigenvalues."""
    vals = smm_eig(A, tol=tol).values
    return reduce(lambda a, b: a * b, vals, DualNumber(1.0))


def charpoly_eval(A: DualMatrix, lam, *, tol: float = CLUSTER_TOL,
                  decomposition: DualEigenDecomposition | None = None) -> DualNumber:
    """``prod_i (lam - lambda_i)`` in dual arithmetic.

    Standard parts within the cluster tolerance of an eigenvalue's standard
    part are taken as equal, so roots are recognised exactly.
    """
    lam = lam if isinstance(lam, DualNumber) else DualNumber(float(lam))
    dec = decomposition if decomposition is not None else smm_eig(A, tol=tol)
    out = DualNumber(1.0)
    for v in dec.values:
        ds = lam.standard - v.standard
        if abs(ds) <= tol * max(1.0, abs(v.standard)):
            ds = 0.0
        out = out * DualNumber(ds, lam.dual - v.dual)
    return out
