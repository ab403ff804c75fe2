"""
Test suite for exact scalars and quaternions.

Covers:
- Field laws of ℚ(i)[√2] (property-based)
- Division, inverse and zero-division errors
- Canonical text form
- Quaternion products, conjugation and the ℂ-part
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.errors import ScalarDivisionError
from src.algebra.scalars import (
    HALF,
    I,
    I_Q,
    INV_SQRT2,
    J_Q,
    K_Q,
    ONE,
    ONE_Q,
    SQRT2,
    ZERO,
    Ext2Scalar,
    Quaternion,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Ext2Scalar, rationals, rationals, rationals, rationals)
real_scalars = st.builds(Ext2Scalar, rationals, rationals)
quaternions = st.builds(Quaternion, real_scalars, real_scalars, real_scalars, real_scalars)


class TestExt2ScalarLaws:
    """Ring and field laws, checked on random elements."""

    @given(scalars, scalars)
    def test_add_commutative(self, x, y):
        assert x + y == y + x

    @given(scalars, scalars, scalars)
    def test_mul_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(scalars, scalars)
    def test_mul_commutative(self, x, y):
        assert x * y == y * x

    @given(scalars, scalars, scalars)
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(scalars)
    def test_additive_inverse(self, x):
        assert x + (-x) == ZERO
        assert x - x == 0

    @settings(max_examples=60)
    @given(scalars)
    def test_multiplicative_inverse(self, x):
        if x.is_zero:
            with pytest.raises(ScalarDivisionError):
                x.inverse()
        else:
            assert x * x.inverse() == ONE
            assert ONE / x == x.inverse()

    @given(scalars, scalars)
    def test_conjugate_is_multiplicative(self, x, y):
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()

    @given(scalars)
    def test_real_and_imaginary_parts(self, x):
        assert x.real_part() + x.imag_part() * I == x


class TestExt2ScalarValues:
    """Exact constants and conversions."""

    def test_sqrt2_squares_to_two(self):
        assert SQRT2 * SQRT2 == 2

    def test_inverse_sqrt2(self):
        assert ONE / SQRT2 == INV_SQRT2
        assert INV_SQRT2 * INV_SQRT2 == HALF

    def test_i_squares_to_minus_one(self):
        assert I * I == -1

    def test_division_by_zero(self):
        with pytest.raises(ScalarDivisionError):
            ONE / 0
        with pytest.raises(ZeroDivisionError):
            SQRT2 / ZERO

    def test_mixed_operands(self):
        assert 1 + SQRT2 == Ext2Scalar(1, 1)
        assert Fraction(1, 2) * SQRT2 == INV_SQRT2
        assert 3 - ONE == 2

    def test_unsupported_operand(self):
        with pytest.raises(TypeError):
            ONE + 1.5
        with pytest.raises(TypeError):
            Ext2Scalar.coerce(0.5)

    def test_str_form(self):
        assert str(HALF) == "1/2+0√2+0i+0i√2"
        assert str(Ext2Scalar(-1, 2, Fraction(-1, 3), 0)) == "-1+2√2-1/3i+0i√2"

    def test_hash_matches_int(self):
        assert hash(Ext2Scalar(5)) == hash(5)
        assert {Ext2Scalar(2): "x"}[2] == "x"

    def test_to_float(self):
        value = (ONE + SQRT2 + I).to_float()
        assert value.real == pytest.approx(1 + 2 ** 0.5)
        assert value.imag == pytest.approx(1.0)

    def test_bool(self):
        assert not ZERO
        assert I


class TestQuaternion:
    """Hamilton products and the ℂ ⊕ ℂj split."""

    def test_unit_products(self):
        assert I_Q * J_Q == K_Q
        assert J_Q * K_Q == I_Q
        assert K_Q * I_Q == J_Q
        assert J_Q * I_Q == -K_Q
        assert I_Q * I_Q == -ONE_Q

    @given(quaternions, quaternions, quaternions)
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(quaternions, quaternions)
    def test_conjugate_reverses_products(self, a, b):
        assert (a * b).conjugate() == b.conjugate() * a.conjugate()

    @given(quaternions, quaternions)
    def test_norm_is_multiplicative(self, a, b):
        assert (a * b).norm_sq() == a.norm_sq() * b.norm_sq()

    @settings(max_examples=40)
    @given(quaternions)
    def test_inverse(self, q):
        if q.is_zero:
            with pytest.raises(ScalarDivisionError):
                q.inverse()
        else:
            assert q * q.inverse() == ONE_Q

    def test_complex_coefficients_rejected(self):
        with pytest.raises(ValueError):
            Quaternion(I)

    def test_pair_roundtrip(self):
        x, y = Ext2Scalar(1, 0, 2), Ext2Scalar(0, 1, -1)
        q = Quaternion.from_pair(x, y)
        assert q.to_pair() == (x, y)
        assert q == Quaternion(1, 2, SQRT2, -1)

    def test_c_part(self):
        q = Quaternion(1, 2, 3, 4)
        assert q.c_part() == Ext2Scalar(1, 0, 2)
        assert J_Q.c_part() == ZERO

    def test_scalar_multiplication(self):
        assert 2 * I_Q == Quaternion(0, 2)
        assert I_Q * SQRT2 == Quaternion(0, SQRT2)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
