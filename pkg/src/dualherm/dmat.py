"""Dual vectors and dual matrices over a ground ring.

Both parts are stored in the 4-real layout of :mod:`dualherm.ground`, so a
``DualMatrix`` holds two ``(n, m, 4)`` arrays and a ``DualVector`` two
``(n, 4)`` arrays.  Quaternion vectors form a right module: scalars act on the
right, ``A x = x lambda``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ground as gr
from .errors import RingMismatch
from .ground import Ring
from .ring import DualNumber, DualScalar, Quaternion

__all__ = [
    "DualVector",
    "DualMatrix",
    "dagger",
    "dual_matmul",
    "vec_norm",
    "mat_norm",
    "is_hermitian",
]

HERMITIAN_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class DualVector:
    standard: np.ndarray
    dual: np.ndarray
    ring: Ring

    def __post_init__(self):
        s = np.asarray(self.standard, dtype=float)
        d = np.asarray(self.dual, dtype=float)
        if s.ndim != 2 or s.shape[-1] != 4 or s.shape != d.shape:
            raise ValueError(f"expected two (n, 4) arrays, got {s.shape} and {d.shape}")
        object.__setattr__(self, "standard", s)
        object.__setattr__(self, "dual", d)
        object.__setattr__(self, "ring", Ring.parse(self.ring))

    @classmethod
    def from_parts(cls, standard, dual=None, ring: Ring | None = None) -> "DualVector":
        """Build from native arrays: 1-D real/complex, or ``(n, 4)`` quaternion."""
        s, rs = gr.from_native(standard, ring, ndim=1)
        if dual is None:
            d, rd = np.zeros_like(s), rs
        else:
            d, rd = gr.from_native(dual, ring, ndim=1)
        return cls(s, d, rs.promote(rd) if ring is None else Ring.parse(ring))

    @classmethod
    def from_scalars(cls, entries: list[DualScalar]) -> "DualVector":
        ring = entries[0].ring
        if any(e.ring is not ring for e in entries):
            raise RingMismatch("mixed rings in vector entries")
        arr = np.stack([e.as_array() for e in entries])
        return cls(arr[:, 0], arr[:, 1], ring)

    def __len__(self) -> int:
        return self.standard.shape[0]

    def __getitem__(self, i: int) -> DualScalar:
        return DualScalar(Quaternion.from_array(self.standard[i]),
                          Quaternion.from_array(self.dual[i]), self.ring)

    def native(self) -> tuple[np.ndarray, np.ndarray]:
        return gr.to_native(self.standard, self.ring), gr.to_native(self.dual, self.ring)

    def __add__(self, other: "DualVector") -> "DualVector":
        _same_ring(self, other)
        return DualVector(self.standard + other.standard, self.dual + other.dual, self.ring)

    def __sub__(self, other: "DualVector") -> "DualVector":
        _same_ring(self, other)
        return DualVector(self.standard - other.standard, self.dual - other.dual, self.ring)

    def right_mul(self, c: DualScalar | DualNumber | float) -> "DualVector":
        """``x c`` with the scalar acting on the right."""
        if not isinstance(c, DualScalar):
            c = DualScalar(Quaternion(), Quaternion(), self.ring) + c
        cs, cd = c.standard.as_array(), c.dual.as_array()
        return DualVector(gr.qmul(self.standard, cs),
                          gr.qmul(self.standard, cd) + gr.qmul(self.dual, cs), self.ring)

    def inner(self, other: "DualVector") -> DualScalar:
        """``x* y``."""
        _same_ring(self, other)
        cs, cd = gr.qconj(self.standard), gr.qconj(self.dual)
        s = gr.qmul(cs, other.standard).sum(axis=0)
        d = (gr.qmul(cs, other.dual) + gr.qmul(cd, other.standard)).sum(axis=0)
        return DualScalar(Quaternion.from_array(s), Quaternion.from_array(d), self.ring)

    def is_appreciable(self) -> bool:
        return bool(np.any(self.standard != 0.0))

    def is_unit(self, tol: float = 1e-10) -> bool:
        return vec_norm(self, "two").isclose(DualNumber(1.0), tol)

    def norm(self, kind: str = "two"):
        return vec_norm(self, kind)


@dataclass(frozen=True, eq=False)
class DualMatrix:
    standard: np.ndarray
    dual: np.ndarray
    ring: Ring

    def __post_init__(self):
        s = np.asarray(self.standard, dtype=float)
        d = np.asarray(self.dual, dtype=float)
        if s.ndim != 3 or s.shape[-1] != 4 or s.shape != d.shape:
            raise ValueError(f"expected two (n, m, 4) arrays, got {s.shape} and {d.shape}")
        object.__setattr__(self, "standard", s)
        object.__setattr__(self, "dual", d)
        object.__setattr__(self, "ring", Ring.parse(self.ring))

    @classmethod
    def from_parts(cls, standard, dual=None, ring: Ring | None = None) -> "DualMatrix":
        """Build from native arrays: 2-D real/complex, or ``(n, m, 4)`` quaternion."""
        s, rs = gr.from_native(standard, ring, ndim=2)
        if dual is None:
            d, rd = np.zeros_like(s), rs
        else:
            d, rd = gr.from_native(dual, ring, ndim=2)
        return cls(s, d, rs.promote(rd) if ring is None else Ring.parse(ring))

    @classmethod
    def zeros(cls, n: int, m: int | None = None, ring: Ring = Ring.REAL) -> "DualMatrix":
        m = n if m is None else m
        return cls(np.zeros((n, m, 4)), np.zeros((n, m, 4)), ring)

    @classmethod
    def identity(cls, n: int, ring: Ring = Ring.REAL) -> "DualMatrix":
        return cls(gr.identity(n), np.zeros((n, n, 4)), ring)

    @classmethod
    def diagonal(cls, entries: list[DualScalar]) -> "DualMatrix":
        n = len(entries)
        out = cls.zeros(n, n, entries[0].ring)
        for i, e in enumerate(entries):
            if e.ring is not out.ring:
                raise RingMismatch("mixed rings on the diagonal")
            out.standard[i, i] = e.standard.as_array()
            out.dual[i, i] = e.dual.as_array()
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.standard.shape[:2]

    def __getitem__(self, idx) -> DualScalar:
        i, j = idx
        return DualScalar(Quaternion.from_array(self.standard[i, j]),
                          Quaternion.from_array(self.dual[i, j]), self.ring)

    def native(self) -> tuple[np.ndarray, np.ndarray]:
        return gr.to_native(self.standard, self.ring), gr.to_native(self.dual, self.ring)

    def column(self, j: int) -> DualVector:
        return DualVector(self.standard[:, j], self.dual[:, j], self.ring)

    def __add__(self, other: "DualMatrix") -> "DualMatrix":
        _same_ring(self, other)
        return DualMatrix(self.standard + other.standard, self.dual + other.dual, self.ring)

    def __sub__(self, other: "DualMatrix") -> "DualMatrix":
        _same_ring(self, other)
        return DualMatrix(self.standard - other.standard, self.dual - other.dual, self.ring)

    def __neg__(self) -> "DualMatrix":
        return DualMatrix(-self.standard, -self.dual, self.ring)

    def __matmul__(self, other):
        return dual_matmul(self, other)

    def dagger(self) -> "DualMatrix":
        return dagger(self)

    H = property(dagger)

    def is_hermitian(self, tol: float | None = None) -> bool:
        return is_hermitian(self, tol)

    def norm(self, kind: str = "fro"):
        return mat_norm(self, kind)


def _same_ring(a, b) -> None:
    if a.ring is not b.ring:
        raise RingMismatch(f"{a.ring.name} vs {b.ring.name}")


def dagger(A: DualMatrix) -> DualMatrix:
    """Conjugate transpose of both parts."""
    return DualMatrix(gr.ctranspose(A.standard), gr.ctranspose(A.dual), A.ring)


def dual_matmul(A: DualMatrix, B: DualMatrix | DualVector) -> DualMatrix | DualVector:
    """``A_s B_s + (A_s B_d + A_d B_s) eps``."""
    _same_ring(A, B)
    inner = B.standard.shape[0]
    if A.shape[1] != inner:
        raise ValueError(f"inner dimensions differ: {A.shape} @ {B.standard.shape[:-1]}")
    r = A.ring
    s = gr.matmul(A.standard, B.standard, r)
    d = gr.matmul(A.standard, B.dual, r) + gr.matmul(A.dual, B.standard, r)
    return type(B)(s, d, r)


def vec_norm(x: DualVector, kind: str = "two") -> DualNumber | float:
    """Dual 2-norm (``kind="two"``) or real 2R-norm (``kind="twoR"``)."""
    ns2 = float(gr.abs2(x.standard).sum())
    nd2 = float(gr.abs2(x.dual).sum())
    if kind == "twoR":
        return math.sqrt(ns2 + nd2)
    if kind != "two":
        raise ValueError(f"unknown vector norm {kind!r}")
    if ns2 == 0.0:
        return DualNumber(0.0, math.sqrt(nd2))
    ns = math.sqrt(ns2)
    # x_s* x_d + x_d* x_s = 2 Re(x_s* x_d)
    return DualNumber(ns, gr.real_dot(x.standard, x.dual) / ns)


def mat_norm(A: DualMatrix, kind: str = "fro") -> DualNumber | float:
    """Dual F-norm (``kind="fro"``) or real F^R-norm (``kind="froR"``)."""
    ns2 = float(gr.abs2(A.standard).sum())
    nd2 = float(gr.abs2(A.dual).sum())
    if kind == "froR":
        return math.sqrt(ns2 + nd2)
    if kind != "fro":
        raise ValueError(f"unknown matrix norm {kind!r}")
    if ns2 == 0.0:
        return DualNumber(0.0, math.sqrt(nd2))
    ns = math.sqrt(ns2)
    # tr(A_s* A_d + A_d* A_s) = 2 Re tr(A_s* A_d)
    return DualNumber(ns, gr.real_dot(A.standard, A.dual) / ns)


def hermitian_deviation(A: DualMatrix) -> float:
    """Largest entry modulus of ``A - A*`` over both parts."""
    n, m = A.shape
    if n != m:
        return math.inf
    return max(gr.hermitian_deviation(A.standard), gr.hermitian_deviation(A.dual))


def is_hermitian(A: DualMatrix, tol: float | None = None) -> bool:
    """``A = A*`` up to ``tol`` (default ``1e-10 * froR(A)``)."""
    n, m = A.shape
    if n != m:
        return False
    if tol is None:
        tol = HERMITIAN_RTOL * mat_norm(A, "froR")
    return hermitian_deviation(A) <= tol
