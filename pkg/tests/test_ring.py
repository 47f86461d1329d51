import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualherm import (
    DualNumber,
    DualScalar,
    InfinitesimalNotInvertible,
    NonImaginaryTranslation,
    NonUnitRotation,
    Quaternion,
    Ring,
    RingMismatch,
    dual_compare,
    dual_inv,
    dual_magnitude,
    dual_mul,
    make_rigid_motion,
)
from dualherm import ground as gr

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)
dual_quats = st.builds(lambda s, d: DualScalar(s, d, Ring.QUATERNION), quats, quats)
appreciable = dual_quats.filter(lambda a: a.standard.norm() > 1e-2)


def left_matrix(q: Quaternion) -> np.ndarray:
    """Real 4x4 matrix of left multiplication by q (independent product oracle)."""
    w, x, y, z = q
    return np.array([[w, -x, -y, -z], [x, w, -z, y], [y, z, w, -x], [z, -y, x, w]])


def test_hamilton_units():
    i, j, k = Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)
    minus_one = Quaternion(-1.0)
    assert i * i == minus_one and j * j == minus_one and k * k == minus_one
    assert i * j * k == minus_one
    assert i * j == k and j * i == -k


@given(quats, quats)
def test_product_matches_matrix_oracle(p, q):
    expected = left_matrix(p) @ q.as_array()
    assert np.allclose((p * q).as_array(), expected, atol=1e-9)
    assert np.allclose(gr.qmul(p.as_array(), q.as_array()), expected, atol=1e-9)


def test_complex_product():
    a = DualScalar.complex(1, 1j)
    b = DualScalar.complex(1, -1j)
    assert dual_mul(a, b) == DualScalar.complex(1, 0)


def test_inverse_pair_product():
    assert dual_mul(DualScalar.real(2, 3), DualScalar.real(0.5, -0.75)).isclose(DualScalar.real(1.0))


def test_quaternion_products_do_not_commute():
    a = DualScalar.quaternion((0, 1, 0, 0), (0, 0, 1, 0))   # i + j eps
    b = DualScalar.quaternion((0, 0, 1, 0), (0, 1, 0, 0))   # j + i eps
    assert dual_mul(a, b) == DualScalar.quaternion((0, 0, 0, 1), (-2, 0, 0, 0))
    assert dual_mul(b, a) == DualScalar.quaternion((0, 0, 0, -1), (-2, 0, 0, 0))


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        dual_mul(DualScalar.real(1.0), DualScalar.complex(1.0))
    with pytest.raises(RingMismatch):
        DualScalar(Quaternion(0, 1), Quaternion(), Ring.REAL)


def test_inverse_examples():
    assert dual_inv(DualScalar.real(2, 3)).isclose(DualScalar.real(0.5, -0.75))
    assert dual_inv(DualScalar.quaternion((0, 1, 0, 0))) == DualScalar.quaternion((0, -1, 0, 0))
    with pytest.raises(InfinitesimalNotInvertible):
        dual_inv(DualScalar.real(0, 5))
    with pytest.raises(ZeroDivisionError):
        DualScalar.real(0, 5).inverse()


def test_magnitude_examples():
    assert dual_magnitude(DualScalar.complex(0, 3j)) == DualNumber(0, 3)
    assert dual_magnitude(DualScalar.complex(3 + 4j)) == DualNumber(5, 0)
    assert dual_magnitude(DualScalar.complex(1, 1j)) == DualNumber(1, 0)


def test_compare_examples():
    assert dual_compare(DualNumber(2, 0), DualNumber(1, 9)) == 1
    assert dual_compare(DualNumber(1, 2), DualNumber(1, 1)) == 1
    assert dual_compare(DualNumber(1, 1), DualNumber(1, 1)) == 0
    assert dual_compare(DualNumber(-1, 5), DualNumber(0, -5)) == -1


def test_rigid_motion_examples():
    q = make_rigid_motion(Quaternion(1), Quaternion(0, 2))
    assert q == DualScalar.quaternion((1, 0, 0, 0), (0, 1, 0, 0))
    assert q.is_unit()
    q = make_rigid_motion(Quaternion(0, 0, 0, 1), Quaternion(0, 1))
    assert q == DualScalar.quaternion((0, 0, 0, 1), (0, 0, 0.5, 0))
    cross = q.standard * q.dual.conjugate() + q.dual * q.standard.conjugate()
    assert cross.is_zero()
    with pytest.raises(NonImaginaryTranslation):
        make_rigid_motion(Quaternion(1), Quaternion(1, 1))
    with pytest.raises(NonUnitRotation):
        make_rigid_motion(Quaternion(2), Quaternion(0, 1))


def test_negative_zero_is_folded():
    assert f"{DualNumber(-1.0, -0.0)}".endswith("+ 0ε")


@given(dual_quats, dual_quats)
def test_conjugate_reverses_products(a, b):
    assert (a * b).conjugate().isclose(b.conjugate() * a.conjugate(), 1e-9)


@given(appreciable)
def test_inverse_is_two_sided(a):
    one = DualScalar.one()
    tol = 1e-12 * max(1.0, a.twoR() * a.inverse().twoR()) * 10
    assert (a * a.inverse()).isclose(one, tol)
    assert (a.inverse() * a).isclose(one, tol)


@given(appreciable, appreciable)
def test_magnitude_is_multiplicative(a, b):
    lhs = dual_magnitude(a * b)
    rhs = dual_magnitude(a) * dual_magnitude(b)
    scale = 1.0 + lhs.twoR()
    assert lhs.isclose(rhs, 1e-10 * scale)


@given(quats.filter(lambda q: q.norm() > 1e-3), st.tuples(finite, finite, finite))
def test_rigid_motion_is_unit(rot, t):
    q = make_rigid_motion(rot / rot.norm(), Quaternion(0, *t))
    cross = q.standard * q.dual.conjugate() + q.dual * q.standard.conjugate()
    assert cross.norm() <= 1e-12 * (1 + q.dual.norm())
    assert abs(q.standard.norm() - 1.0) <= 1e-12


duals = st.builds(DualNumber, finite, finite)


@given(duals, duals, duals)
def test_order_is_total_transitive_and_translation_invariant(a, b, c):
    assert (a < b) + (a == b) + (a > b) == 1
    if a <= b and b <= c:
        assert a <= c
    if a < b and all((x + c).standard - c.standard == x.standard and (x + c).dual - c.dual == x.dual
                     for x in (a, b)):
        # only meaningful when neither sum rounds (a subnormal a_s vanishes in a_s + 1)
        assert dual_compare(a + c, b + c) == -1


def test_sqrt_and_division():
    r = DualNumber(4, 1).sqrt()
    assert r.isclose(DualNumber(2, 0.25))
    assert (DualNumber(1, 2) / DualNumber(1, 2)).isclose(DualNumber(1))
    assert math.isclose(DualNumber(3, 4).twoR(), 5.0)
