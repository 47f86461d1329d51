"""Dual numbers, quaternions, and dual elements over R, C and Q.

A dual element ``a = a_s + a_d eps`` has a standard part and a dual part in the
same ground ring and ``eps**2 = 0``.  Ground scalars are stored as
:class:`Quaternion` values regardless of ring; the ring tag only records which
components may be nonzero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import total_ordering

import numpy as np

from .errors import (
    InfinitesimalNotInvertible,
    NonImaginaryTranslation,
    NonUnitRotation,
    RingMismatch,
)
from .ground import Ring

__all__ = [
    "Ring",
    "Quaternion",
    "DualNumber",
    "DualScalar",
    "dual_mul",
    "dual_inv",
    "dual_magnitude",
    "dual_compare",
    "make_rigid_motion",
]

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class Quaternion:
    """``w + x i + y j + z k`` with ``i**2 = j**2 = k**2 = ijk = -1``."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        w, x, y, z = (float(v) for v in np.asarray(arr, dtype=float).reshape(4))
        return cls(w, x, y, z)

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        """Accept a Quaternion, real or complex number, or 4-sequence."""
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (int, float, np.floating, np.integer)):
            return cls(float(value))
        if isinstance(value, (complex, np.complexfloating)):
            return cls(float(value.real), float(value.imag))
        return cls.from_array(value)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __add__(self, other):
        o = Quaternion.coerce(other)
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = Quaternion.coerce(other)
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        return Quaternion.coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        o = Quaternion.coerce(other)
        a, b = self, o
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __rmul__(self, other):
        return Quaternion.coerce(other) * self

    def __truediv__(self, other: float):
        return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)

    __abs__ = norm

    def inverse(self) -> "Quaternion":
        n2 = self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conjugate() / n2

    def is_zero(self) -> bool:
        return self.w == 0.0 and self.x == 0.0 and self.y == 0.0 and self.z == 0.0

    def isclose(self, other, tol: float = DEFAULT_TOL) -> bool:
        o = Quaternion.coerce(other)
        return max(abs(self.w - o.w), abs(self.x - o.x), abs(self.y - o.y), abs(self.z - o.z)) <= tol

    def ring(self) -> Ring:
        if self.y != 0.0 or self.z != 0.0:
            return Ring.QUATERNION
        if self.x != 0.0:
            return Ring.COMPLEX
        return Ring.REAL

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


@total_ordering
@dataclass(frozen=True)
class DualNumber:
    """Real dual number ``standard + dual*eps``, ordered lexicographically."""

    standard: float
    dual: float = 0.0

    def __post_init__(self):
        # "+ 0.0" folds negative zero into zero.
        object.__setattr__(self, "standard", float(self.standard) + 0.0)
        object.__setattr__(self, "dual", float(self.dual) + 0.0)

    @staticmethod
    def _coerce(other) -> "DualNumber":
        if isinstance(other, DualNumber):
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return DualNumber(float(other))
        return NotImplemented

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.standard, self.dual) < (o.standard, o.dual)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return DualNumber(self.standard + o.standard, self.dual + o.dual)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return DualNumber(self.standard - o.standard, self.dual - o.dual)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return DualNumber(-self.standard, -self.dual)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return DualNumber(self.standard * o.standard,
                          self.standard * o.dual + self.dual * o.standard)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def inverse(self) -> "DualNumber":
        if self.standard == 0.0:
            raise InfinitesimalNotInvertible("dual number with zero standard part")
        inv = 1.0 / self.standard
        return DualNumber(inv, -self.dual * inv * inv)

    def is_appreciable(self) -> bool:
        return self.standard != 0.0

    def sqrt(self) -> "DualNumber":
        """Principal square root of a positive dual number."""
        if self.standard <= 0.0:
            raise ValueError("square root needs a positive standard part")
        s = math.sqrt(self.standard)
        return DualNumber(s, self.dual / (2.0 * s))

    def twoR(self) -> float:
        return math.hypot(self.standard, self.dual)

    def isclose(self, other, tol: float = DEFAULT_TOL) -> bool:
        o = self._coerce(other)
        return abs(self.standard - o.standard) <= tol and abs(self.dual - o.dual) <= tol

    def to_scalar(self, ring: Ring = Ring.REAL) -> "DualScalar":
        return DualScalar(Quaternion(self.standard), Quaternion(self.dual), Ring.parse(ring))

    def __format__(self, spec: str) -> str:
        spec = spec or ".4g"
        sign = "-" if self.dual < 0 or (self.dual == 0 and math.copysign(1, self.dual) < 0) else "+"
        return f"{format(self.standard, spec)} {sign} {format(abs(self.dual), spec)}ε"

    def __str__(self) -> str:
        return format(self, ".6g")


def _check_in_ring(q: Quaternion, ring: Ring) -> None:
    if ring is Ring.QUATERNION:
        return
    if q.y != 0.0 or q.z != 0.0 or (ring is Ring.REAL and q.x != 0.0):
        raise RingMismatch(f"{q!r} is not an element of the {ring.name.lower()} ring")


@dataclass(frozen=True)
class DualScalar:
    """Dual element ``standard + dual*eps`` over ``ring``."""

    standard: Quaternion
    dual: Quaternion = field(default_factory=Quaternion)
    ring: Ring = Ring.QUATERNION

    def __post_init__(self):
        object.__setattr__(self, "standard", Quaternion.coerce(self.standard))
        object.__setattr__(self, "dual", Quaternion.coerce(self.dual))
        object.__setattr__(self, "ring", Ring.parse(self.ring))
        _check_in_ring(self.standard, self.ring)
        _check_in_ring(self.dual, self.ring)

    # -- constructors -------------------------------------------------
    @classmethod
    def real(cls, standard: float, dual: float = 0.0) -> "DualScalar":
        return cls(Quaternion(float(standard)), Quaternion(float(dual)), Ring.REAL)

    @classmethod
    def complex(cls, standard: complex, dual: complex = 0.0) -> "DualScalar":
        s, d = complex(standard), complex(dual)
        return cls(Quaternion(s.real, s.imag), Quaternion(d.real, d.imag), Ring.COMPLEX)

    @classmethod
    def quaternion(cls, standard, dual=(0.0, 0.0, 0.0, 0.0)) -> "DualScalar":
        return cls(Quaternion.coerce(standard), Quaternion.coerce(dual), Ring.QUATERNION)

    @classmethod
    def one(cls, ring: Ring = Ring.QUATERNION) -> "DualScalar":
        return cls(Quaternion(1.0), Quaternion(), Ring.parse(ring))

    @classmethod
    def zero(cls, ring: Ring = Ring.QUATERNION) -> "DualScalar":
        return cls(Quaternion(), Quaternion(), Ring.parse(ring))

    @classmethod
    def from_array(cls, arr, ring: Ring = Ring.QUATERNION) -> "DualScalar":
        """From a ``(2, 4)`` array ``[standard, dual]``."""
        arr = np.asarray(arr, dtype=float)
        return cls(Quaternion.from_array(arr[0]), Quaternion.from_array(arr[1]), ring)

    def as_array(self) -> np.ndarray:
        return np.stack([self.standard.as_array(), self.dual.as_array()])

    def as_ring(self, ring: Ring) -> "DualScalar":
        return DualScalar(self.standard, self.dual, ring)

    # -- arithmetic ---------------------------------------------------
    def _other(self, other) -> "DualScalar":
        if isinstance(other, DualScalar):
            if other.ring is not self.ring:
                raise RingMismatch(f"cannot combine {self.ring.name} and {other.ring.name} dual elements")
            return other
        if isinstance(other, DualNumber):
            return other.to_scalar(self.ring)
        if isinstance(other, (int, float, np.floating, np.integer)):
            return DualScalar(Quaternion(float(other)), Quaternion(), self.ring)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return DualScalar(self.standard + o.standard, self.dual + o.dual, self.ring)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return DualScalar(self.standard - o.standard, self.dual - o.dual, self.ring)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return DualScalar(-self.standard, -self.dual, self.ring)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return dual_mul(self, o)

    def __rmul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return dual_mul(o, self)

    def conjugate(self) -> "DualScalar":
        return DualScalar(self.standard.conjugate(), self.dual.conjugate(), self.ring)

    def inverse(self) -> "DualScalar":
        return dual_inv(self)

    def magnitude(self) -> DualNumber:
        return dual_magnitude(self)

    def is_appreciable(self) -> bool:
        return not self.standard.is_zero()

    def is_unit(self, tol: float = 1e-10) -> bool:
        return dual_magnitude(self).isclose(DualNumber(1.0), tol)

    def twoR(self) -> float:
        """``sqrt(|a_s|**2 + |a_d|**2)``."""
        return math.hypot(self.standard.norm(), self.dual.norm())

    def isclose(self, other, tol: float = DEFAULT_TOL) -> bool:
        o = self._other(other)
        return self.standard.isclose(o.standard, tol) and self.dual.isclose(o.dual, tol)

    def __repr__(self) -> str:
        return f"DualScalar({self.standard!r}, {self.dual!r}, ring={self.ring.name})"


def dual_mul(a: DualScalar, b: DualScalar) -> DualScalar:
    """``a b = a_s b_s + (a_s b_d + a_d b_s) eps``; order matters for quaternions."""
    if a.ring is not b.ring:
        raise RingMismatch(f"cannot multiply {a.ring.name} by {b.ring.name} dual elements")
    return DualScalar(a.standard * b.standard,
                      a.standard * b.dual + a.dual * b.standard, a.ring)


def dual_inv(a: DualScalar) -> DualScalar:
    """Two-sided inverse ``a_s^-1 - a_s^-1 a_d a_s^-1 eps``."""
    if not a.is_appreciable():
        raise InfinitesimalNotInvertible(f"{a!r} is infinitesimal")
    s_inv = a.standard.inverse()
    return DualScalar(s_inv, -(s_inv * a.dual * s_inv), a.ring)


def dual_magnitude(a: DualScalar) -> DualNumber:
    """Nonnegative dual-number magnitude of a dual element.

    For appreciable ``a`` the dual part is ``(a_s a_d* + a_d a_s*) / (2|a_s|)``;
    the numerator is ``2 Re(a_s a_d*)`` in every ground ring, so only its real
    component is kept.
    """
    ns = a.standard.norm()
    if ns == 0.0:
        return DualNumber(0.0, a.dual.norm())
    cross = a.standard * a.dual.conjugate() + a.dual * a.standard.conjugate()
    return DualNumber(ns, cross.w / (2.0 * ns))


def dual_compare(a: DualNumber, b: DualNumber) -> int:
    """-1, 0 or 1 under the lexicographic (standard, dual) order."""
    a, b = DualNumber._coerce(a), DualNumber._coerce(b)
    if a == b:
        return 0
    return 1 if a > b else -1


def make_rigid_motion(rotation, translation, *, ring: Ring = Ring.QUATERNION,
                      tol: float = DEFAULT_TOL) -> DualScalar:
    """Unit dual element ``q_s + (eps/2) q_s p`` for a rotation then a translation.

    ``rotation`` must be a unit ground element and ``translation`` an imaginary
    one.  With ``ring=Ring.COMPLEX`` this builds unit dual complex numbers.
    """
    q_s = Quaternion.coerce(rotation)
    p = Quaternion.coerce(translation)
    ring = Ring.parse(ring)
    if abs(q_s.norm() - 1.0) > tol:
        raise NonUnitRotation(f"|q_s| = {q_s.norm()!r} is not 1")
    if abs(p.w) > tol * (1.0 + p.norm()):
        raise NonImaginaryTranslation(f"translation has real part {p.w!r}")
    p = Quaternion(0.0, p.x, p.y, p.z)
    return DualScalar(q_s, 0.5 * (q_s * p), ring)
