"""Hermitian eigensolver for real, complex and quaternion matrices.

Real and complex matrices are reduced to a real symmetric tridiagonal form
by Householder reflections plus a diagonal phase scaling, then diagonalised
by implicit QL iterations with Wilkinson shifts.  Quaternion matrices go
through their complex adjoint; its spectrum is doubled, and each pair of
complex eigenvectors collapses back into one quaternion eigenvector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ground as gr
from .errors import ClusterPairingError, NotHermitian
from .ground import Ring

__all__ = [
    "GroundEigenDecomposition",
    "complex_adjoint",
    "eig_hermitian",
    "normalize_phase",
    "tridiagonalize",
    "tridiagonal_ql",
]

_EPS = np.finfo(float).eps
_MAX_QL_ITER = 60


@dataclass(frozen=True, eq=False)
class GroundEigenDecomposition:
    """``H U = U diag(values)`` with orthonormal columns ``U``.

    ``values`` is ascending; ``vectors`` has shape ``(n, n, 4)`` and column
    ``j`` belongs to ``values[j]``.
    """

    values: np.ndarray
    vectors: np.ndarray
    ring: Ring

    def native_vectors(self) -> np.ndarray:
        return gr.to_native(self.vectors, self.ring)

    def residual(self, H: np.ndarray) -> float:
        """``||H U - U diag(values)||_F`` for ``H`` in the 4-layout."""
        lhs = gr.matmul(H, self.vectors, self.ring)
        rhs = self.vectors * self.values[None, :, None]
        return float(np.sqrt(gr.abs2(lhs - rhs).sum()))

    def orthonormality_error(self) -> float:
        gram = gr.matmul(gr.ctranspose(self.vectors), self.vectors, self.ring)
        return float(np.sqrt(gr.abs2(gram - gr.identity(len(self.values))).sum()))


def complex_adjoint(A: np.ndarray) -> np.ndarray:
    """``[[A1, A2], [-conj(A2), conj(A1)]]`` for ``A = A1 + A2 j``.

    ``A`` is a quaternion matrix in the 4-layout (``(n, m, 4)``).  The map is
    multiplicative and commutes with the conjugate transpose.
    """
    a1, a2 = gr.to_pair(A)
    return np.block([[a1, a2], [-a2.conj(), a1.conj()]])


def tridiagonalize(H: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reduce a real symmetric or complex Hermitian matrix to real tridiagonal form.

    Returns ``(d, e, Q)`` with ``H = Q T Q*`` where ``T`` has diagonal ``d``
    and real nonnegative off-diagonal ``e`` (``e[k]`` couples ``k`` and
    ``k+1``; ``e[-1] = 0``).
    """
    A = np.array(H, copy=True)
    n = A.shape[0]
    is_complex = np.iscomplexobj(A)
    vs: list[np.ndarray | None] = []
    off = np.zeros(n, dtype=A.dtype)
    for k in range(n - 2):
        x = A[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0 or np.linalg.norm(x[1:]) == 0.0:
            vs.append(None)
            off[k] = x[0]
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        sub = A[k + 1:, k + 1:]
        p = sub @ v
        w = p - np.vdot(v, p).real * v
        sub -= 2.0 * (np.outer(v, w.conj()) + np.outer(w, v.conj()))
        off[k] = -phase * alpha
        vs.append(v)
    if n >= 2:
        off[n - 2] = A[n - 1, n - 2]
    d = np.real(np.diag(A)).astype(float)

    Q = np.eye(n, dtype=A.dtype)
    for k in range(len(vs) - 1, -1, -1):
        v = vs[k]
        if v is None:
            continue
        blk = Q[k + 1:, k + 1:]
        blk -= 2.0 * np.outer(v, v.conj() @ blk)

    # Diagonal phases turn the (possibly complex) off-diagonal real and >= 0.
    e = np.zeros(n)
    phases = np.ones(n, dtype=A.dtype)
    for k in range(n - 1):
        mag = abs(off[k])
        e[k] = mag
        if mag != 0.0:
            phases[k + 1] = phases[k] * (off[k] / mag)
        else:
            phases[k + 1] = phases[k]
    if is_complex or np.any(phases != 1):
        Q = Q * phases[None, :]
    return d, e, Q


def tridiagonal_ql(d: np.ndarray, e: np.ndarray, Zt: np.ndarray | None = None) -> np.ndarray:
    """Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.

    ``d`` (diagonal) and ``e`` (``e[k]`` couples ``k, k+1``) are consumed.
    Rotations are accumulated into the rows of ``Zt`` in place, so on exit row
    ``j`` of ``Zt`` is the eigenvector of the returned (unsorted) ``d[j]``.
    """
    d = [float(v) for v in d]
    e = [float(v) for v in e]
    n = len(d)
    if n:
        e[n - 1] = 0.0
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > _MAX_QL_ITER:
                raise np.linalg.LinAlgError("tridiagonal QL did not converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if Zt is not None:
                    zi = Zt[i]
                    zi1 = Zt[i + 1]
                    f = zi1.copy()
                    zi1 *= c
                    zi1 += s * zi
                    zi *= c
                    zi -= s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.array(d)


def _native_eigh(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenpairs of a real symmetric or complex Hermitian array."""
    n = H.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=H.dtype)
    d, e, Q = tridiagonalize(H)
    Zt = np.eye(n)
    vals = tridiagonal_ql(d, e, Zt)
    order = np.argsort(vals, kind="stable")
    vecs = Q @ Zt[order].T
    return vals[order], vecs


def _pair_quaternion_vectors(E: np.ndarray, n: int) -> np.ndarray:
    """Collapse ``2k`` complex-adjoint eigenvectors into ``k`` quaternion ones.

    A quaternion vector ``v1 + v2 j`` is encoded as ``[v1; -conj(v2)]``; its
    right multiple by ``j`` is ``J c = [conj(c2); -conj(c1)]``.  Greedy
    selection with projection onto the complement of ``{c, J c}`` yields an
    orthonormal quaternion basis of the invariant subspace.
    """
    R = E.copy()
    k = E.shape[1] // 2
    chosen: list[np.ndarray] = []
    out = np.zeros((n, k, 4))
    for t in range(k):
        norms = np.linalg.norm(R, axis=0)
        c = R[:, int(np.argmax(norms))].copy()
        for _ in range(2):
            for q in chosen:
                c -= q * np.vdot(q, c)
        c /= np.linalg.norm(c)
        jc = np.concatenate([c[n:].conj(), -c[:n].conj()])
        chosen.extend([c, jc])
        R -= np.outer(c, c.conj() @ R) + np.outer(jc, jc.conj() @ R)
        out[:, t] = gr.from_pair(c[:n], -c[n:].conj())
    return out


def normalize_phase(U: np.ndarray) -> np.ndarray:
    """Right-multiply each column so its largest-modulus entry is real positive."""
    if U.shape[0] == 0:
        return U.copy()
    mags = gr.abs2(U)
    idx = np.argmax(mags, axis=0)
    cols = np.arange(U.shape[1])
    pivot = U[idx, cols]
    norm = np.sqrt(gr.abs2(pivot))
    norm[norm == 0.0] = 1.0
    unit = gr.qconj(pivot) / norm[:, None]
    return gr.qmul(U, unit[None, :, :])


def eig_hermitian(H, ring: Ring | None = None, *, tol: float = 1e-10,
                  pair_tol: float = 1e-9) -> GroundEigenDecomposition:
    """Full eigendecomposition of a Hermitian matrix over R, C or Q.

    ``H`` is either a native real/complex ``(n, n)`` array or a 4-layout
    ``(n, n, 4)`` array (``ring`` then selects the ring, default inferred from
    the nonzero components).  Raises :class:`NotHermitian` when the largest
    entry of ``H - H*`` exceeds ``tol * ||H||_F``.
    """
    arr = np.asarray(H)
    if arr.ndim == 3:
        A = arr.astype(float)
        ring = gr.infer_ring(A) if ring is None else Ring.parse(ring)
    else:
        A, inferred = gr.from_native(arr, None, ndim=2)
        ring = inferred if ring is None else Ring.parse(ring).promote(inferred)
    n = A.shape[0]
    if A.shape[:2] != (n, n):
        raise NotHermitian(f"matrix of shape {A.shape[:2]} is not square")
    scale = math.sqrt(float(gr.abs2(A).sum()))
    dev = gr.hermitian_deviation(A)
    if dev > tol * scale:
        raise NotHermitian(f"max |H - H*| = {dev:.3e} exceeds {tol:.1e} * ||H||_F")
    A = gr.hermitian_part(A)

    if ring is Ring.QUATERNION:
        values, U = _quaternion_eigh(A, pair_tol * max(1.0, scale))
    else:
        vals, vecs = _native_eigh(gr.to_native(A, ring))
        values, U = vals, gr.from_native(vecs, ring, ndim=2)[0]
    return GroundEigenDecomposition(values, normalize_phase(U), ring)


def _quaternion_eigh(A: np.ndarray, gap_tol: float) -> tuple[np.ndarray, np.ndarray]:
    n = A.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0, 4))
    vals, vecs = _native_eigh(complex_adjoint(A))
    values = np.zeros(n)
    U = np.zeros((n, n, 4))
    start = col = 0
    m = len(vals)
    while start < m:
        stop = start + 1
        while stop < m and vals[stop] - vals[stop - 1] <= gap_tol:
            stop += 1
        size = stop - start
        if size % 2:
            raise ClusterPairingError(
                f"eigenvalue cluster near {vals[start]:.6g} has odd size {size} in the complex adjoint")
        k = size // 2
        block = vals[start:stop]
        values[col:col + k] = 0.5 * (block[0::2] + block[1::2])
        U[:, col:col + k] = _pair_quaternion_vectors(vecs[:, start:stop], n)
        col += k
        start = stop
    return values, U
