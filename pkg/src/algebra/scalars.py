"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                            EXACT SCALARS                                     ║
║                                                                              ║
║  Exact arithmetic in ℚ(i)[√2], quaternions over its real subring, and the    ║
║  numpy complex128 backend used for constants that leave ℚ(√2).               ║
╚══════════════════════════════════════════════════════════════════════════════╝

ARCHITECTURE
============
    int / Fraction
          │ coerce
          ▼
    ┌──────────────┐   real parts    ┌──────────────┐
    │  Ext2Scalar  │ ──────────────► │  Quaternion  │  Hamilton product
    │ a+b√2+ci+di√2│                 │  c1,ci,cj,ck │  conjugate, [q]_ℂ
    └──────┬───────┘                 └──────────────┘
           │ to_float()
           ▼
    numpy.complex128  (float backend)

Ext2Scalar arithmetic is exact: a nonzero element always has an inverse, and
dividing by zero raises ScalarDivisionError.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Tuple, Union

import numpy as np

from src.algebra.errors import ScalarDivisionError

RationalLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "Ext2Scalar"]
FloatScalar = np.complex128

_ZERO = Fraction(0)
_ONE = Fraction(1)
_SQRT2_FLOAT = float(np.sqrt(2.0))


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Expected an exact rational, got {type(value).__name__}")


def _signed(value: Fraction) -> str:
    return str(value) if value < 0 else f"+{value}"


# ═══════════════════════════════════════════════════════════════════════════════
# ℚ(i)[√2]
# ═══════════════════════════════════════════════════════════════════════════════

class Ext2Scalar:
    """
    An element a + b√2 + (c + d√2)i of ℚ(i)[√2] with rational a, b, c, d.

    Supports +, -, *, / with ints, Fractions and other Ext2Scalars; any
    other operand type returns NotImplemented.

    Example:
        >>> SQRT2 * SQRT2 == 2
        True
        >>> (ONE / SQRT2) == Ext2Scalar(0, Fraction(1, 2))
        True
    """

    __slots__ = ("_parts",)

    def __init__(
        self,
        re_rat: RationalLike = 0,
        re_sqrt2: RationalLike = 0,
        im_rat: RationalLike = 0,
        im_sqrt2: RationalLike = 0,
    ):
        self._parts: Tuple[Fraction, Fraction, Fraction, Fraction] = (
            _as_fraction(re_rat),
            _as_fraction(re_sqrt2),
            _as_fraction(im_rat),
            _as_fraction(im_sqrt2),
        )

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> "Ext2Scalar":
        obj = cls.__new__(cls)
        obj._parts = (a, b, c, d)
        return obj

    @classmethod
    def coerce(cls, value: ScalarLike) -> "Ext2Scalar":
        """Lift an int or Fraction into the ring; Ext2Scalars pass through."""
        if isinstance(value, Ext2Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._raw(Fraction(value), _ZERO, _ZERO, _ZERO)
        raise TypeError(f"Cannot coerce {type(value).__name__} to Ext2Scalar")

    @classmethod
    def _maybe(cls, value) -> "Ext2Scalar | None":
        if isinstance(value, Ext2Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._raw(Fraction(value), _ZERO, _ZERO, _ZERO)
        return None

    # ───────────────────────────────────────────────────────────────────────────
    # Components
    # ───────────────────────────────────────────────────────────────────────────

    @property
    def re_rat(self) -> Fraction:
        return self._parts[0]

    @property
    def re_sqrt2(self) -> Fraction:
        return self._parts[1]

    @property
    def im_rat(self) -> Fraction:
        return self._parts[2]

    @property
    def im_sqrt2(self) -> Fraction:
        return self._parts[3]

    @property
    def parts(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._parts

    @property
    def is_zero(self) -> bool:
        return not any(self._parts)

    @property
    def is_real(self) -> bool:
        return not self._parts[2] and not self._parts[3]

    @property
    def is_rational(self) -> bool:
        return not self._parts[1] and not self._parts[2] and not self._parts[3]

    def real_part(self) -> "Ext2Scalar":
        a, b, _, _ = self._parts
        return Ext2Scalar._raw(a, b, _ZERO, _ZERO)

    def imag_part(self) -> "Ext2Scalar":
        _, _, c, d = self._parts
        return Ext2Scalar._raw(c, d, _ZERO, _ZERO)

    def conjugate(self) -> "Ext2Scalar":
        a, b, c, d = self._parts
        return Ext2Scalar._raw(a, b, -c, -d)

    # ───────────────────────────────────────────────────────────────────────────
    # Arithmetic
    # ───────────────────────────────────────────────────────────────────────────

    def __bool__(self) -> bool:
        return not self.is_zero

    def __neg__(self) -> "Ext2Scalar":
        a, b, c, d = self._parts
        return Ext2Scalar._raw(-a, -b, -c, -d)

    def __pos__(self) -> "Ext2Scalar":
        return self

    def __add__(self, other) -> "Ext2Scalar":
        o = Ext2Scalar._maybe(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self._parts
        a2, b2, c2, d2 = o._parts
        return Ext2Scalar._raw(a1 + a2, b1 + b2, c1 + c2, d1 + d2)

    __radd__ = __add__

    def __sub__(self, other) -> "Ext2Scalar":
        o = Ext2Scalar._maybe(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self._parts
        a2, b2, c2, d2 = o._parts
        return Ext2Scalar._raw(a1 - a2, b1 - b2, c1 - c2, d1 - d2)

    def __rsub__(self, other) -> "Ext2Scalar":
        o = Ext2Scalar._maybe(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "Ext2Scalar":
        o = Ext2Scalar._maybe(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self._parts
        a2, b2, c2, d2 = o._parts
        if not (b1 or c1 or d1):
            return Ext2Scalar._raw(a1 * a2, a1 * b2, a1 * c2, a1 * d2)
        if not (b2 or c2 or d2):
            return Ext2Scalar._raw(a2 * a1, a2 * b1, a2 * c1, a2 * d1)
        # (A1 + iB1)(A2 + iB2) with A, B in ℚ(√2)
        re_a = a1 * a2 + 2 * b1 * b2 - c1 * c2 - 2 * d1 * d2
        re_b = a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2
        im_a = a1 * c2 + 2 * b1 * d2 + c1 * a2 + 2 * d1 * b2
        im_b = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        return Ext2Scalar._raw(re_a, re_b, im_a, im_b)

    __rmul__ = __mul__

    def inverse(self) -> "Ext2Scalar":
        """
        Multiplicative inverse.

        Raises:
            ScalarDivisionError: if the scalar is exactly zero
        """
        if self.is_zero:
            raise ScalarDivisionError("division by exact zero in ℚ(i)[√2]")
        a, b, c, d = self._parts
        # |x|² = u + v√2 in ℚ(√2); its inverse is (u - v√2)/(u² - 2v²)
        u = a * a + 2 * b * b + c * c + 2 * d * d
        v = 2 * (a * b + c * d)
        den = u * u - 2 * v * v
        inv_norm = Ext2Scalar._raw(u / den, -v / den, _ZERO, _ZERO)
        return self.conjugate() * inv_norm

    def __truediv__(self, other) -> "Ext2Scalar":
        o = Ext2Scalar._maybe(other)
        if o is None:
            return NotImplemented
        if o.is_rational:
            if not o._parts[0]:
                raise ScalarDivisionError("division by exact zero in ℚ(i)[√2]")
            r = o._parts[0]
            a, b, c, d = self._parts
            return Ext2Scalar._raw(a / r, b / r, c / r, d / r)
        return self * o.inverse()

    def __rtruediv__(self, other) -> "Ext2Scalar":
        o = Ext2Scalar._maybe(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other) -> bool:
        o = Ext2Scalar._maybe(other)
        if o is None:
            return NotImplemented
        return self._parts == o._parts

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self._parts[0])
        return hash(self._parts)

    # ───────────────────────────────────────────────────────────────────────────
    # Conversion
    # ───────────────────────────────────────────────────────────────────────────

    def to_float(self) -> FloatScalar:
        """Embed into numpy complex128 with √2 taken positive."""
        a, b, c, d = self._parts
        return FloatScalar(complex(float(a) + float(b) * _SQRT2_FLOAT, float(c) + float(d) * _SQRT2_FLOAT))

    def __str__(self) -> str:
        a, b, c, d = self._parts
        return f"{a}{_signed(b)}√2{_signed(c)}i{_signed(d)}i√2"

    def __repr__(self) -> str:
        return f"Ext2Scalar({self._parts[0]}, {self._parts[1]}, {self._parts[2]}, {self._parts[3]})"


ZERO = Ext2Scalar()
ONE = Ext2Scalar(1)
HALF = Ext2Scalar(Fraction(1, 2))
I = Ext2Scalar(0, 0, 1)
SQRT2 = Ext2Scalar(0, 1)
INV_SQRT2 = Ext2Scalar(0, Fraction(1, 2))


def scalar(value: ScalarLike) -> Ext2Scalar:
    """Shorthand for Ext2Scalar.coerce."""
    return Ext2Scalar.coerce(value)


def to_float(value: ScalarLike) -> FloatScalar:
    return Ext2Scalar.coerce(value).to_float()


# ═══════════════════════════════════════════════════════════════════════════════
# QUATERNIONS
# ═══════════════════════════════════════════════════════════════════════════════

def _real(value: ScalarLike) -> Ext2Scalar:
    x = Ext2Scalar.coerce(value)
    if not x.is_real:
        raise ValueError(f"Quaternion coefficients must be real, got {x}")
    return x


class Quaternion:
    """
    c1 + ci·i + cj·j + ck·k with real coefficients in ℚ(√2).

    The complex chart writes q = x + y·j with x = c1 + ci·i and y = cj + ck·i,
    so left multiplication by complex numbers is the complex structure.

    Example:
        >>> I_Q * J_Q == K_Q
        True
    """

    __slots__ = ("_c",)

    def __init__(self, c1: ScalarLike = 0, ci: ScalarLike = 0, cj: ScalarLike = 0, ck: ScalarLike = 0):
        self._c = (_real(c1), _real(ci), _real(cj), _real(ck))

    @classmethod
    def _raw(cls, c) -> "Quaternion":
        obj = cls.__new__(cls)
        obj._c = tuple(c)
        return obj

    @classmethod
    def from_pair(cls, x: ScalarLike, y: ScalarLike) -> "Quaternion":
        """Build x + y·j from complex x, y."""
        x = Ext2Scalar.coerce(x)
        y = Ext2Scalar.coerce(y)
        return cls._raw((x.real_part(), x.imag_part(), y.real_part(), y.imag_part()))

    @classmethod
    def from_complex(cls, z: ScalarLike) -> "Quaternion":
        return cls.from_pair(z, ZERO)

    @property
    def coefficients(self) -> Tuple[Ext2Scalar, Ext2Scalar, Ext2Scalar, Ext2Scalar]:
        return self._c

    @property
    def c1(self) -> Ext2Scalar:
        return self._c[0]

    @property
    def ci(self) -> Ext2Scalar:
        return self._c[1]

    @property
    def cj(self) -> Ext2Scalar:
        return self._c[2]

    @property
    def ck(self) -> Ext2Scalar:
        return self._c[3]

    def to_pair(self) -> Tuple[Ext2Scalar, Ext2Scalar]:
        """Return (x, y) with self = x + y·j."""
        c1, ci, cj, ck = self._c
        return c1 + ci * I, cj + ck * I

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self._c)

    @property
    def is_imaginary(self) -> bool:
        return self._c[0].is_zero

    def real_part(self) -> Ext2Scalar:
        return self._c[0]

    def conjugate(self) -> "Quaternion":
        c1, ci, cj, ck = self._c
        return Quaternion._raw((c1, -ci, -cj, -ck))

    def norm_sq(self) -> Ext2Scalar:
        return sum((c * c for c in self._c), ZERO)

    def inverse(self) -> "Quaternion":
        n = self.norm_sq()
        if n.is_zero:
            raise ScalarDivisionError("inverse of the zero quaternion")
        return self.conjugate().scale(n.inverse())

    def scale(self, r: ScalarLike) -> "Quaternion":
        r = _real(r)
        return Quaternion._raw(tuple(r * c for c in self._c))

    def c_part(self) -> Ext2Scalar:
        """[q]_ℂ = ½(q − i q i), returned as a complex scalar."""
        h = self - I_Q * self * I_Q
        if not (h.cj.is_zero and h.ck.is_zero):
            raise ArithmeticError("q − iqi left the complex line")
        return (h.c1 + h.ci * I) * HALF

    def __neg__(self) -> "Quaternion":
        return Quaternion._raw(tuple(-c for c in self._c))

    def __add__(self, other) -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion._raw(tuple(a + b for a, b in zip(self._c, other._c)))

    def __sub__(self, other) -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion._raw(tuple(a - b for a, b in zip(self._c, other._c)))

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, (int, Fraction, Ext2Scalar)):
            return self.scale(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        a1, b1, c1, d1 = self._c
        a2, b2, c2, d2 = other._c
        return Quaternion._raw((
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ))

    def __rmul__(self, other) -> "Quaternion":
        if isinstance(other, (int, Fraction, Ext2Scalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return "Quaternion({}, {}, {}, {})".format(*(str(c) for c in self._c))


ONE_Q = Quaternion(1)
I_Q = Quaternion(0, 1)
J_Q = Quaternion(0, 0, 1)
K_Q = Quaternion(0, 0, 0, 1)

QUATERNION_UNITS: Tuple[Quaternion, ...] = (ONE_Q, I_Q, J_Q, K_Q)
IMAGINARY_UNITS: Tuple[Quaternion, ...] = (I_Q, J_Q, K_Q)
