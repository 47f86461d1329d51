"""Array arithmetic over the ground rings in a uniform 4-real layout.

Every ground array has a trailing axis of length 4 holding ``(w, x, y, z)``
for ``w + x i + y j + z k``.  Real entries use only ``w``; complex entries use
``w`` and ``x``.  A quaternion matrix ``A`` is also written as a pair of
complex matrices ``A = A1 + A2 j`` with ``A1 = w + x i`` and ``A2 = y + z i``,
which turns quaternion matrix products into four complex BLAS calls.
"""

from __future__ import annotations

import enum

import numpy as np


class Ring(str, enum.Enum):
    """Ground ring of a dual element: real, complex or quaternion."""

    REAL = "r"
    COMPLEX = "c"
    QUATERNION = "q"

    @classmethod
    def parse(cls, value: "Ring | str") -> "Ring":
        if isinstance(value, Ring):
            return value
        key = str(value).strip().lower()
        aliases = {
            "r": cls.REAL, "real": cls.REAL,
            "c": cls.COMPLEX, "complex": cls.COMPLEX,
            "q": cls.QUATERNION, "quaternion": cls.QUATERNION,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown ring {value!r}") from None

    @property
    def ncomp(self) -> int:
        return {Ring.REAL: 1, Ring.COMPLEX: 2, Ring.QUATERNION: 4}[self]

    def promote(self, other: "Ring") -> "Ring":
        order = [Ring.REAL, Ring.COMPLEX, Ring.QUATERNION]
        return max(self, other, key=order.index)


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise Hamilton product of two broadcastable ``(..., 4)`` arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    return np.stack([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ], axis=-1)


def qconj(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def abs2(a: np.ndarray) -> np.ndarray:
    """Squared modulus of every entry."""
    return np.sum(np.asarray(a, dtype=float) ** 2, axis=-1)


def real_dot(a: np.ndarray, b: np.ndarray) -> float:
    """``Re tr(A* B)``, i.e. the Euclidean inner product of the components."""
    return float(np.sum(np.asarray(a, dtype=float) * np.asarray(b, dtype=float)))


def to_pair(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=float)
    return a[..., 0] + 1j * a[..., 1], a[..., 2] + 1j * a[..., 3]


def from_pair(a1: np.ndarray, a2: np.ndarray) -> np.ndarray:
    return np.stack([a1.real, a1.imag, a2.real, a2.imag], axis=-1)


def to_native(a: np.ndarray, ring: Ring) -> np.ndarray:
    """Real array, complex array, or the 4-layout itself for quaternions."""
    a = np.asarray(a, dtype=float)
    if ring is Ring.REAL:
        return a[..., 0].copy()
    if ring is Ring.COMPLEX:
        return a[..., 0] + 1j * a[..., 1]
    return a.copy()


def from_native(x, ring: Ring | None = None, *, ndim: int) -> tuple[np.ndarray, Ring]:
    """Lift a native array of logical rank ``ndim`` into the 4-layout.

    A real or complex array of rank ``ndim`` maps to the real or complex ring;
    a real array of rank ``ndim + 1`` whose last axis has length 4 is a
    quaternion array.  ``ring`` overrides the inferred ring (upwards only).
    """
    arr = np.asarray(x)
    if arr.ndim == ndim + 1 and arr.shape[-1] == 4 and not np.iscomplexobj(arr):
        inferred = Ring.QUATERNION
        out = arr.astype(float, copy=True)
    elif arr.ndim == ndim:
        out = np.zeros(arr.shape + (4,))
        if np.iscomplexobj(arr):
            out[..., 0] = arr.real
            out[..., 1] = arr.imag
            inferred = Ring.COMPLEX
        else:
            out[..., 0] = arr
            inferred = Ring.REAL
    else:
        raise ValueError(f"cannot interpret array of shape {arr.shape} as rank-{ndim} ground array")
    if ring is None:
        return out, inferred
    ring = Ring.parse(ring)
    if ring.promote(inferred) is not ring:
        raise ValueError(f"{inferred.name.lower()} data does not fit in the {ring.name.lower()} ring")
    return out, ring


def ctranspose(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose of a ``(n, m, 4)`` ground matrix."""
    return qconj(np.swapaxes(a, 0, 1))


def matmul(a: np.ndarray, b: np.ndarray, ring: Ring = Ring.QUATERNION) -> np.ndarray:
    """Ground matrix product for ``(n, k, 4) @ (k, m, 4)`` (or ``(k, 4)`` vectors)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if ring is Ring.REAL:
        out = np.zeros(_product_shape(a, b) + (4,))
        out[..., 0] = a[..., 0] @ b[..., 0]
        return out
    a1, a2 = to_pair(a)
    b1, b2 = to_pair(b)
    if ring is Ring.COMPLEX:
        return from_pair(a1 @ b1, np.zeros(_product_shape(a, b)))
    # (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
    return from_pair(a1 @ b1 - a2 @ b2.conj(), a1 @ b2 + a2 @ b1.conj())


def _product_shape(a: np.ndarray, b: np.ndarray) -> tuple[int, ...]:
    if b.ndim == 2:
        return (a.shape[0],)
    return (a.shape[0], b.shape[1])


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n, 4))
    out[np.arange(n), np.arange(n), 0] = 1.0
    return out


def scalar_diag(values) -> np.ndarray:
    """Diagonal ground matrix with real diagonal ``values``."""
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    out = np.zeros((n, n, 4))
    out[np.arange(n), np.arange(n), 0] = values
    return out


def hermitian_deviation(a: np.ndarray) -> float:
    """Largest entry modulus of ``A - A*``."""
    if a.size == 0:
        return 0.0
    return float(np.sqrt(abs2(a - ctranspose(a)).max()))


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + ctranspose(a))


def infer_ring(a: np.ndarray, tol: float = 0.0) -> Ring:
    """Smallest ring containing every entry of a 4-layout array."""
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return Ring.REAL
    if np.abs(a[..., 2:]).max() > tol:
        return Ring.QUATERNION
    if np.abs(a[..., 1]).max() > tol:
        return Ring.COMPLEX
    return Ring.REAL
