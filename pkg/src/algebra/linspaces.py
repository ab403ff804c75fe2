"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          DEFINING REPRESENTATIONS                            ║
║                                                                              ║
║  H = ℂ², E = ℂ²ⁿ, F = H ⊕ E with their symplectic forms and quaternionic     ║
║  structures, the real module T = ℍⁿ, and the isomorphism ℂ⊗T ≅ H⊗E.          ║
╚══════════════════════════════════════════════════════════════════════════════╝

ARCHITECTURE
============
    TVector (row of quaternions)           SymplecticVector
         │  Ψ: x + y·j ↦ (x, y)                 ├── HVector  basis p = j, q = −1
         ▼                                      ├── EVector  basis δ_a, jδ_a
    EVector ───────────────┐                    └── FVector  H ⊕ E
                           ▼
       phi(x, t) ──► TensorProduct (H ⊗ E) ──► phi_inv_tensor ──► CTVector

    CartanElement (sp(1) ⊕ sp(n) ⊕ ℍⁿ)  ◄──►  real operator on ℍⁿ⁺¹

CONVENTIONS
===========
    σ(b_{2a}, b_{2a+1}) = 1 and J(b_{2a}) = b_{2a+1} in every space.
    Sp(1) acts on H by h ↦ h·z̄ and Sp(n) on E by v ↦ v·A^H.
"""
from __future__ import annotations

from typing import Callable, ClassVar, Dict, Iterator, List, Mapping, Sequence, Tuple, Type, TypeVar

from src.algebra.errors import (
    CartanDecompositionError,
    GroupElementError,
    NonCanonicalBaseError,
    SpaceMismatchError,
)
from src.algebra.linalg import LabeledBasis, OperatorMatrix
from src.algebra.scalars import (
    INV_SQRT2,
    I,
    I_Q,
    J_Q,
    K_Q,
    ONE,
    ONE_Q,
    QUATERNION_UNITS,
    ZERO,
    Ext2Scalar,
    Quaternion,
    ScalarLike,
)

V = TypeVar("V", bound="SymplecticVector")
QuaternionMatrix = Tuple[Tuple[Quaternion, ...], ...]

_UNIT_NAMES = ("1", "i", "j", "k")


def basis_sigma(i: int, j: int) -> int:
    """σ(b_i, b_j) for symplectic basis vectors."""
    if i % 2 == 0 and j == i + 1:
        return 1
    if i % 2 == 1 and j == i - 1:
        return -1
    return 0


# ═══════════════════════════════════════════════════════════════════════════════
# SYMPLECTIC VECTORS
# ═══════════════════════════════════════════════════════════════════════════════

class SymplecticVector:
    """Complex coordinates with respect to a symplectic (Darboux) basis."""

    space: ClassVar[str] = "V"
    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[ScalarLike]):
        coords = tuple(Ext2Scalar.coerce(c) for c in coords)
        if not coords or len(coords) % 2:
            raise SpaceMismatchError(f"{self.space} needs an even, nonzero number of coordinates")
        self.coords: Tuple[Ext2Scalar, ...] = coords

    @classmethod
    def basis(cls: Type[V], dim: int, k: int) -> V:
        return cls(tuple(ONE if i == k else ZERO for i in range(dim)))

    @classmethod
    def zero(cls: Type[V], dim: int) -> V:
        return cls((ZERO,) * dim)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coords)

    def _check(self, other: "SymplecticVector") -> None:
        if type(other) is not type(self) or other.dim != self.dim:
            raise SpaceMismatchError(f"{self.space}({self.dim}) vs {other.space}({other.dim})")

    def __add__(self: V, other: V) -> V:
        self._check(other)
        return type(self)(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self: V, other: V) -> V:
        self._check(other)
        return type(self)(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self: V) -> V:
        return type(self)(tuple(-a for a in self.coords))

    def scale(self: V, c: ScalarLike) -> V:
        c = Ext2Scalar.coerce(c)
        return type(self)(tuple(c * a for a in self.coords))

    def __rmul__(self: V, c) -> V:
        return self.scale(c)

    def J(self: V) -> V:
        """Quaternionic structure; conjugate-linear with J² = −1."""
        out: List[Ext2Scalar] = []
        for a in range(0, self.dim, 2):
            x, y = self.coords[a], self.coords[a + 1]
            out.extend((-y.conjugate(), x.conjugate()))
        return type(self)(out)

    def sigma(self, other: "SymplecticVector") -> Ext2Scalar:
        """Complex symplectic form σ(self, other)."""
        self._check(other)
        c, d = self.coords, other.coords
        return sum((c[a] * d[a + 1] - c[a + 1] * d[a] for a in range(0, self.dim, 2)), ZERO)

    def euclidean(self, other: "SymplecticVector") -> Ext2Scalar:
        """Real euclidean product Re σ(self, J other)."""
        return self.sigma(other.J()).real_part()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymplecticVector):
            return NotImplemented
        return type(self) is type(other) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.space, self.coords))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(str(c) for c in self.coords)})"


class HVector(SymplecticVector):
    """Vector of the defining representation H of Sp(1), basis (p, q)."""

    space = "H"
    __slots__ = ()

    def __init__(self, coords: Sequence[ScalarLike]):
        super().__init__(coords)
        if self.dim != 2:
            raise SpaceMismatchError("H is two-dimensional")

    @classmethod
    def from_quaternion(cls, h: Quaternion) -> "HVector":
        x, y = h.to_pair()
        return cls((y, -x))

    def to_quaternion(self) -> Quaternion:
        a, b = self.coords
        return Quaternion.from_pair(-b, a)


class EVector(SymplecticVector):
    """Vector of the defining representation E of Sp(n), basis δ_a, jδ_a."""

    space = "E"
    __slots__ = ()

    @property
    def n(self) -> int:
        return self.dim // 2

    @classmethod
    def from_tvector(cls, t: "TVector") -> "EVector":
        coords: List[Ext2Scalar] = []
        for q in t.entries:
            coords.extend(q.to_pair())
        return cls(coords)

    def to_tvector(self) -> "TVector":
        c = self.coords
        return TVector(tuple(Quaternion.from_pair(c[a], c[a + 1]) for a in range(0, self.dim, 2)))


class FVector(SymplecticVector):
    """Vector of F = H ⊕ E, the defining representation of Sp(n+1)."""

    space = "F"
    __slots__ = ()

    @property
    def n(self) -> int:
        return self.dim // 2 - 1

    @classmethod
    def from_parts(cls, h: HVector, e: EVector) -> "FVector":
        return cls(h.coords + e.coords)

    @classmethod
    def from_h(cls, h: HVector, n: int) -> "FVector":
        return cls.from_parts(h, EVector.zero(2 * n))

    @classmethod
    def from_e(cls, e: EVector) -> "FVector":
        return cls.from_parts(HVector.zero(2), e)

    @property
    def h_part(self) -> HVector:
        return HVector(self.coords[:2])

    @property
    def e_part(self) -> EVector:
        return EVector(self.coords[2:])

    @classmethod
    def from_quaternion_row(cls, row: Sequence[Quaternion]) -> "FVector":
        """Row (h, v_1, …, v_n) of ℍⁿ⁺¹ with h in the H chart."""
        return cls.from_parts(HVector.from_quaternion(row[0]), EVector.from_tvector(TVector(tuple(row[1:]))))

    def to_quaternion_row(self) -> Tuple[Quaternion, ...]:
        return (self.h_part.to_quaternion(),) + self.e_part.to_tvector().entries


P_H = HVector((1, 0))
Q_H = HVector((0, 1))
ONE_H = HVector.from_quaternion(ONE_Q)
I_H = HVector.from_quaternion(I_Q)
J_H = HVector.from_quaternion(J_Q)
K_H = HVector.from_quaternion(K_Q)
H_UNITS: Tuple[HVector, ...] = (ONE_H, I_H, J_H, K_H)


def sym2E_action(e1: V, e2: V, e: V) -> V:
    """Action of e1·e2 ∈ Sym²V ≅ sp(V): e ↦ σ(e1, e)e2 + σ(e2, e)e1."""
    return e2.scale(e1.sigma(e)) + e1.scale(e2.sigma(e))


def validate_canonical_base(p: HVector, q: HVector) -> None:
    """
    Raises:
        NonCanonicalBaseError: unless σ(p, q) = 1 and Jp = q
    """
    if p.sigma(q) != 1:
        raise NonCanonicalBaseError(f"σ(p, q) = {p.sigma(q)}, expected 1")
    if p.J() != q:
        raise NonCanonicalBaseError("Jp ≠ q")


# ═══════════════════════════════════════════════════════════════════════════════
# THE REAL MODULE T = ℍⁿ
# ═══════════════════════════════════════════════════════════════════════════════

class TVector:
    """A row vector of n quaternions; ℍ acts from the left."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Quaternion]):
        self.entries: Tuple[Quaternion, ...] = tuple(entries)
        if not self.entries:
            raise SpaceMismatchError("T needs n ≥ 1")

    @classmethod
    def zero(cls, n: int) -> "TVector":
        return cls((Quaternion(),) * n)

    @classmethod
    def unit(cls, n: int, a: int, q: Quaternion = ONE_Q) -> "TVector":
        return cls(tuple(q if b == a else Quaternion() for b in range(n)))

    @classmethod
    def real_basis(cls, n: int) -> List["TVector"]:
        """Orthonormal ℝ-basis δ_1, iδ_1, jδ_1, kδ_1, δ_2, …"""
        return [cls.unit(n, a, u) for a in range(n) for u in QUATERNION_UNITS]

    @staticmethod
    def real_basis_labels(n: int) -> Tuple[str, ...]:
        return tuple(f"{u}δ{a + 1}" if u != "1" else f"δ{a + 1}" for a in range(n) for u in _UNIT_NAMES)

    @classmethod
    def from_real_coords(cls, n: int, coords: Sequence[ScalarLike]) -> "TVector":
        return cls(tuple(Quaternion(*coords[4 * a:4 * a + 4]) for a in range(n)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def real_coords(self) -> Tuple[Ext2Scalar, ...]:
        return tuple(c for q in self.entries for c in q.coefficients)

    def _check(self, other: "TVector") -> None:
        if other.n != self.n:
            raise SpaceMismatchError(f"T({self.n}) vs T({other.n})")

    def __add__(self, other: "TVector") -> "TVector":
        self._check(other)
        return TVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "TVector") -> "TVector":
        self._check(other)
        return TVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "TVector":
        return TVector(tuple(-a for a in self.entries))

    def scale(self, r: ScalarLike) -> "TVector":
        return TVector(tuple(a.scale(r) for a in self.entries))

    def left_mul(self, q: Quaternion) -> "TVector":
        return TVector(tuple(q * a for a in self.entries))

    def right_mul(self, q: Quaternion) -> "TVector":
        return TVector(tuple(a * q for a in self.entries))

    def times_matrix(self, m: QuaternionMatrix) -> "TVector":
        """Row vector times an n×n quaternion matrix."""
        if len(m) != self.n:
            raise SpaceMismatchError("matrix size does not match T")
        return TVector(tuple(
            sum((self.entries[a] * m[a][b] for a in range(self.n)), Quaternion())
            for b in range(self.n)
        ))

    def inner(self, other: "TVector") -> Ext2Scalar:
        """Real inner product Re Σ v_a w̄_a."""
        self._check(other)
        return sum((x * y for x, y in zip(self.real_coords(), other.real_coords())), ZERO)

    @property
    def is_zero(self) -> bool:
        return all(q.is_zero for q in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"TVector({', '.join(repr(q) for q in self.entries)})"


def inner_T(t1: TVector, t2: TVector) -> Ext2Scalar:
    return t1.inner(t2)


def sigma_T(t1: TVector, t2: TVector) -> Ext2Scalar:
    """σ_T(t1, t2) = ⟨j t1, t2⟩ + i⟨k t1, t2⟩."""
    return t1.left_mul(J_Q).inner(t2) + I * t1.left_mul(K_Q).inner(t2)


class CTVector:
    """Element re + i·im of the complexification ℂ ⊗_ℝ T."""

    __slots__ = ("re", "im")

    def __init__(self, re: TVector, im: TVector):
        if re.n != im.n:
            raise SpaceMismatchError("real and imaginary parts differ in n")
        self.re = re
        self.im = im

    @classmethod
    def zero(cls, n: int) -> "CTVector":
        return cls(TVector.zero(n), TVector.zero(n))

    def __add__(self, other: "CTVector") -> "CTVector":
        return CTVector(self.re + other.re, self.im + other.im)

    def scale(self, c: ScalarLike) -> "CTVector":
        c = Ext2Scalar.coerce(c)
        alpha, beta = c.real_part(), c.imag_part()
        return CTVector(self.re.scale(alpha) - self.im.scale(beta), self.im.scale(alpha) + self.re.scale(beta))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CTVector):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    __hash__ = None

    def __repr__(self) -> str:
        return f"CTVector(re={self.re!r}, im={self.im!r})"


# ═══════════════════════════════════════════════════════════════════════════════
# TENSOR PRODUCTS  V ⊗_ℂ W
# ═══════════════════════════════════════════════════════════════════════════════

class TensorProduct:
    """
    Element of V ⊗_ℂ W stored as coefficients over pairs of basis vectors.

    Used for H ⊗ E (tangent vectors) and for ℂ² ⊗ F on the cone.
    """

    __slots__ = ("left_cls", "left_dim", "right_cls", "right_dim", "coeffs")

    def __init__(
        self,
        left_cls: Type[SymplecticVector],
        left_dim: int,
        right_cls: Type[SymplecticVector],
        right_dim: int,
        coeffs: Mapping[Tuple[int, int], ScalarLike],
    ):
        self.left_cls = left_cls
        self.left_dim = left_dim
        self.right_cls = right_cls
        self.right_dim = right_dim
        self.coeffs: Dict[Tuple[int, int], Ext2Scalar] = {
            k: Ext2Scalar.coerce(v) for k, v in coeffs.items() if v
        }

    @classmethod
    def pure(cls, left: SymplecticVector, right: SymplecticVector) -> "TensorProduct":
        coeffs = {}
        for a, x in enumerate(left.coords):
            if not x:
                continue
            for b, y in enumerate(right.coords):
                if y:
                    coeffs[(a, b)] = x * y
        return cls(type(left), left.dim, type(right), right.dim, coeffs)

    @classmethod
    def basis_element(cls, left_cls, left_dim, right_cls, right_dim, a: int, b: int) -> "TensorProduct":
        return cls(left_cls, left_dim, right_cls, right_dim, {(a, b): ONE})

    def _like(self, coeffs) -> "TensorProduct":
        return TensorProduct(self.left_cls, self.left_dim, self.right_cls, self.right_dim, coeffs)

    def _check(self, other: "TensorProduct") -> None:
        if (self.left_cls, self.left_dim, self.right_cls, self.right_dim) != (
            other.left_cls, other.left_dim, other.right_cls, other.right_dim
        ):
            raise SpaceMismatchError("tensors live in different products")

    def terms(self) -> Iterator[Tuple[int, int, Ext2Scalar]]:
        for (a, b) in sorted(self.coeffs):
            yield a, b, self.coeffs[(a, b)]

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "TensorProduct") -> "TensorProduct":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return self._like(out)

    def __sub__(self, other: "TensorProduct") -> "TensorProduct":
        return self + (-other)

    def __neg__(self) -> "TensorProduct":
        return self._like({k: -v for k, v in self.coeffs.items()})

    def scale(self, c: ScalarLike) -> "TensorProduct":
        c = Ext2Scalar.coerce(c)
        return self._like({k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, c) -> "TensorProduct":
        return self.scale(c)

    def bilinear(self, other: "TensorProduct") -> Ext2Scalar:
        """(σ_V ⊗ σ_W)(self, other), complex bilinear."""
        self._check(other)
        total = ZERO
        for (a, b), x in self.coeffs.items():
            for (c, d), y in other.coeffs.items():
                s = basis_sigma(a, c) * basis_sigma(b, d)
                if s:
                    total = total + x * y * s
        return total

    def conj_JJ(self) -> "TensorProduct":
        """Real structure J ⊗ J."""
        out: Dict[Tuple[int, int], Ext2Scalar] = {}
        for (a, b), x in self.coeffs.items():
            ja, sa = (a + 1, 1) if a % 2 == 0 else (a - 1, -1)
            jb, sb = (b + 1, 1) if b % 2 == 0 else (b - 1, -1)
            out[(ja, jb)] = out.get((ja, jb), ZERO) + x.conjugate() * (sa * sb)
        return self._like(out)

    def map(
        self,
        left_map: Callable[[SymplecticVector], SymplecticVector],
        right_map: Callable[[SymplecticVector], SymplecticVector],
    ) -> "TensorProduct":
        """Apply ℂ-linear maps factorwise, extended by linearity."""
        result = None
        for a, b, x in self.terms():
            left = left_map(self.left_cls.basis(self.left_dim, a))
            right = right_map(self.right_cls.basis(self.right_dim, b))
            term = TensorProduct.pure(left, right).scale(x)
            result = term if result is None else result + term
        return result if result is not None else self._like({})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorProduct):
            return NotImplemented
        return (self.left_cls, self.left_dim, self.right_cls, self.right_dim, self.coeffs) == (
            other.left_cls, other.left_dim, other.right_cls, other.right_dim, other.coeffs
        )

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"({a},{b}):{x}" for a, b, x in self.terms())
        return f"TensorProduct[{self.left_cls.space}⊗{self.right_cls.space}]({body})"


# ═══════════════════════════════════════════════════════════════════════════════
# Φ : ℂ ⊗ T ≅ H ⊗ E
# ═══════════════════════════════════════════════════════════════════════════════

def _phi_with(p: HVector, q: HVector, x: ScalarLike, t: TVector) -> TensorProduct:
    e = EVector.from_tvector(t)
    return (TensorProduct.pure(p, e) + TensorProduct.pure(q, e.J())).scale(INV_SQRT2 * Ext2Scalar.coerce(x))


def phi(x: ScalarLike, t: TVector) -> TensorProduct:
    """
    Φ(x ⊗ t) = (1/√2)(x p ⊗ Ψt + x q ⊗ JΨt).

    Args:
        x: complex coefficient
        t: real tangent vector

    Returns:
        TensorProduct in H ⊗ E
    """
    return _phi_with(P_H, Q_H, x, t)


def phi_family(p: HVector, q: HVector, x: ScalarLike, t: TVector) -> TensorProduct:
    """
    Φ built on an arbitrary base (p, q) of H.

    Raises:
        NonCanonicalBaseError: unless σ(p, q) = 1 and Jp = q
    """
    validate_canonical_base(p, q)
    return _phi_with(p, q, x, t)


def phi_complex(v: CTVector) -> TensorProduct:
    """ℂ-linear extension: Φ(1 ⊗ re + i ⊗ im)."""
    return phi(ONE, v.re) + phi(I, v.im)


def phi_inv(h: Quaternion, v) -> CTVector:
    """
    Φ⁻¹(h ⊗ v) = (1/√2)(1 ⊗ h̄ j v + i ⊗ h̄ k v), h read through the H chart.

    Args:
        h: quaternion (element of H)
        v: EVector or TVector
    """
    t = v.to_tvector() if isinstance(v, EVector) else v
    hb = h.conjugate()
    return CTVector(t.left_mul(hb * J_Q).scale(INV_SQRT2), t.left_mul(hb * K_Q).scale(INV_SQRT2))


def phi_inv_tensor(x: TensorProduct) -> CTVector:
    """Φ⁻¹ on an arbitrary element of H ⊗ E."""
    if x.left_cls is not HVector or x.right_cls is not EVector:
        raise SpaceMismatchError("phi_inv_tensor expects H ⊗ E")
    n = x.right_dim // 2
    total = CTVector.zero(n)
    for a, b, c in x.terms():
        h = HVector.basis(2, a).to_quaternion()
        e = EVector.basis(x.right_dim, b)
        total = total + phi_inv(h, e).scale(c)
    return total


# ═══════════════════════════════════════════════════════════════════════════════
# GROUP ACTIONS
# ═══════════════════════════════════════════════════════════════════════════════

def qmat_conj_transpose(m: QuaternionMatrix) -> QuaternionMatrix:
    n = len(m)
    return tuple(tuple(m[b][a].conjugate() for b in range(n)) for a in range(n))


def qmat_mul(a: QuaternionMatrix, b: QuaternionMatrix) -> QuaternionMatrix:
    n = len(a)
    return tuple(
        tuple(sum((a[r][k] * b[k][c] for k in range(n)), Quaternion()) for c in range(n))
        for r in range(n)
    )


def qmat_identity(n: int) -> QuaternionMatrix:
    return tuple(tuple(ONE_Q if r == c else Quaternion() for c in range(n)) for r in range(n))


def validate_group_element(z: Quaternion, a: QuaternionMatrix) -> None:
    """
    Raises:
        GroupElementError: unless |z| = 1 and A^H A = Id
    """
    if z.norm_sq() != 1:
        raise GroupElementError(f"|z|² = {z.norm_sq()}, expected 1")
    if qmat_mul(qmat_conj_transpose(a), a) != qmat_identity(len(a)):
        raise GroupElementError("A is not in Sp(n): A^H A ≠ Id")


def act_T(z: Quaternion, a: QuaternionMatrix, t: TVector) -> TVector:
    return t.left_mul(z).times_matrix(qmat_conj_transpose(a))


def act_H(z: Quaternion, h: HVector) -> HVector:
    return HVector.from_quaternion(h.to_quaternion() * z.conjugate())


def act_E(a: QuaternionMatrix, e: EVector) -> EVector:
    return EVector.from_tvector(e.to_tvector().times_matrix(qmat_conj_transpose(a)))


def act_group(z: Quaternion, a: QuaternionMatrix, t: TVector) -> TVector:
    """
    Action of [z, A] ∈ Sp(1)·Sp(n) on T: t ↦ z t A^H.

    Raises:
        GroupElementError: if z or A is not a group element
    """
    validate_group_element(z, a)
    return act_T(z, a, t)


def act_tensor(z: Quaternion, a: QuaternionMatrix, x: TensorProduct) -> TensorProduct:
    """Action of [z, A] on H ⊗ E factorwise."""
    validate_group_element(z, a)
    return x.map(lambda h: act_H(z, h), lambda e: act_E(a, e))


# ═══════════════════════════════════════════════════════════════════════════════
# LABELLED BASES AND OPERATORS
# ═══════════════════════════════════════════════════════════════════════════════

def h_basis() -> LabeledBasis:
    return LabeledBasis("H", ("p", "q"))


def e_basis(n: int) -> LabeledBasis:
    return LabeledBasis(f"E({n})", tuple(lbl for a in range(n) for lbl in (f"δ{a + 1}", f"jδ{a + 1}")))


def he_basis(n: int) -> LabeledBasis:
    return LabeledBasis(
        f"H⊗E({n})",
        tuple(f"{h}⊗{e}" for h in h_basis().labels for e in e_basis(n).labels),
    )


def f_real_basis(n: int) -> LabeledBasis:
    labels = tuple(f"h.{u}" for u in _UNIT_NAMES) + tuple(
        f"v{a + 1}.{u}" for a in range(n) for u in _UNIT_NAMES
    )
    return LabeledBasis(f"F_real({n})", labels)


def vector_operator(
    basis: LabeledBasis,
    cls: Type[V],
    fn: Callable[[V], V],
) -> OperatorMatrix:
    """Matrix of a ℂ-linear endomorphism given on basis vectors."""
    columns = []
    for j in range(basis.dim):
        image = fn(cls.basis(basis.dim, j))
        columns.append({i: c for i, c in enumerate(image.coords) if c})
    return OperatorMatrix.from_columns(basis, basis, columns)


def tensor_operator(n: int, on_h: OperatorMatrix, on_e: OperatorMatrix) -> OperatorMatrix:
    """Kronecker product on_h ⊗ on_e acting on H ⊗ E."""
    basis = he_basis(n)
    dim_e = 2 * n
    rows: Dict[int, Dict[int, Ext2Scalar]] = {}
    for i1, j1, a in on_h.entries():
        for i2, j2, b in on_e.entries():
            rows.setdefault(i1 * dim_e + i2, {})[j1 * dim_e + j2] = a * b
    return OperatorMatrix(basis, basis, rows)


def tensor_as_vector(x: TensorProduct) -> Dict[int, Ext2Scalar]:
    """Coordinates of an H ⊗ E tensor in the he_basis ordering."""
    return {a * x.right_dim + b: c for a, b, c in x.terms()}


# ═══════════════════════════════════════════════════════════════════════════════
# CARTAN DECOMPOSITION  sp(n+1) = sp(1) ⊕ sp(n) ⊕ ℍⁿ
# ═══════════════════════════════════════════════════════════════════════════════

def quat_inner(a: Quaternion, b: Quaternion) -> Ext2Scalar:
    """Euclidean product Re(a b̄)."""
    return sum((x * y for x, y in zip(a.coefficients, b.coefficients)), ZERO)


def _row_real_coords(row: Sequence[Quaternion]) -> Dict[int, Ext2Scalar]:
    return {4 * r + u: c for r, q in enumerate(row) for u, c in enumerate(q.coefficients) if c}


def _unit_row(n: int, index: int) -> Tuple[Quaternion, ...]:
    slot, u = divmod(index, 4)
    return tuple(QUATERNION_UNITS[u] if r == slot else Quaternion() for r in range(n + 1))


class CartanElement:
    """
    Element (z, X, t) of sp(1) ⊕ sp(n) ⊕ ℍⁿ acting on rows w ∈ ℍⁿ⁺¹ by w ↦ w·Y,
    Y = [[z̄, −t], [t^H, X^H]].

    Raises:
        CartanDecompositionError: if z is not imaginary or X is not skew-Hermitian
    """

    __slots__ = ("sp1", "spn", "hn")

    def __init__(self, sp1: Quaternion, spn: QuaternionMatrix, hn: TVector):
        if not sp1.is_imaginary:
            raise CartanDecompositionError("sp(1) part must be an imaginary quaternion")
        if qmat_conj_transpose(spn) != tuple(tuple(-q for q in row) for row in spn):
            raise CartanDecompositionError("sp(n) part must be skew-Hermitian")
        if hn.n != len(spn):
            raise SpaceMismatchError("sp(n) and ℍⁿ parts disagree on n")
        self.sp1 = sp1
        self.spn = tuple(tuple(row) for row in spn)
        self.hn = hn

    @classmethod
    def zero(cls, n: int) -> "CartanElement":
        return cls(Quaternion(), tuple(tuple(Quaternion() for _ in range(n)) for _ in range(n)), TVector.zero(n))

    @property
    def n(self) -> int:
        return self.hn.n

    def right_matrix(self) -> QuaternionMatrix:
        n = self.n
        t = self.hn.entries
        xh = qmat_conj_transpose(self.spn)
        top = (self.sp1.conjugate(),) + tuple(-q for q in t)
        rows = [top]
        for a in range(n):
            rows.append((t[a].conjugate(),) + xh[a])
        return tuple(rows)

    def apply(self, row: Sequence[Quaternion]) -> Tuple[Quaternion, ...]:
        y = self.right_matrix()
        size = self.n + 1
        return tuple(sum((row[r] * y[r][c] for r in range(size)), Quaternion()) for c in range(size))

    def to_real_matrix(self) -> OperatorMatrix:
        basis = f_real_basis(self.n)
        return OperatorMatrix.from_columns(
            basis, basis,
            [_row_real_coords(self.apply(_unit_row(self.n, j))) for j in range(basis.dim)],
        )

    @classmethod
    def from_real_matrix(cls, m: OperatorMatrix, n: int) -> "CartanElement":
        """
        Read off (z, X, t) from a real operator on ℍⁿ⁺¹.

        Raises:
            CartanDecompositionError: if the operator is not of that form
        """
        if m.domain != f_real_basis(n) or m.codomain != f_real_basis(n):
            raise SpaceMismatchError("operator must act on F_real")

        def image(slot: int) -> Tuple[Quaternion, ...]:
            col = m.column(4 * slot)
            return tuple(Quaternion(*(col.get(4 * r + u, ZERO) for u in range(4))) for r in range(n + 1))

        first = image(0)
        z = first[0].conjugate()
        t = TVector(tuple(-q for q in first[1:]))
        xh_rows = [image(a + 1)[1:] for a in range(n)]
        x = qmat_conj_transpose(tuple(tuple(r) for r in xh_rows))
        try:
            element = cls(z, x, t)
        except CartanDecompositionError as exc:
            raise CartanDecompositionError(f"operator is not in sp(n+1): {exc}") from exc
        if element.to_real_matrix() != m:
            raise CartanDecompositionError("operator is not right multiplication by an sp(n+1) matrix")
        return element

    def sp1_on_H(self) -> OperatorMatrix:
        """Infinitesimal Sp(1) action on H: h ↦ h·z̄ = −h z."""
        zb = self.sp1.conjugate()
        return vector_operator(h_basis(), HVector, lambda h: HVector.from_quaternion(h.to_quaternion() * zb))

    def spn_on_E(self) -> OperatorMatrix:
        """Infinitesimal Sp(n) action on E: v ↦ v·X^H."""
        xh = qmat_conj_transpose(self.spn)
        return vector_operator(e_basis(self.n), EVector, lambda e: EVector.from_tvector(e.to_tvector().times_matrix(xh)))

    @property
    def is_isotropy(self) -> bool:
        """True when the ℍⁿ part vanishes."""
        return self.hn.is_zero

    @property
    def is_translation(self) -> bool:
        """True when only the ℍⁿ part is nonzero."""
        return self.sp1.is_zero and all(q.is_zero for row in self.spn for q in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CartanElement):
            return NotImplemented
        return (self.sp1, self.spn, self.hn) == (other.sp1, other.spn, other.hn)

    __hash__ = None

    def __repr__(self) -> str:
        return f"CartanElement(sp1={self.sp1!r}, hn={self.hn!r})"


def cartan_bracket_elements(a: CartanElement, b: CartanElement) -> CartanElement:
    """Operator commutator [a, b] = ab − ba on ℍⁿ⁺¹, decomposed again."""
    m = a.to_real_matrix().commutator(b.to_real_matrix())
    return CartanElement.from_real_matrix(m, a.n)
