"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          CURVATURE ALGEBRA                                   ║
║                                                                              ║
║  Pointwise curvature operators on H ⊗ E, the Sym²H ≅ sp(1) dictionary,       ║
║  wedge operators with their bracket, and the Cartan-decomposition            ║
║  computation behind the curvature of ℍPⁿ.                                    ║
╚══════════════════════════════════════════════════════════════════════════════╝

ARCHITECTURE
============
    TensorProduct X, Y (H ⊗ E)
        │
        ├── R_H(X, Y) = σ_E ⊗ Sym²H action          ┐
        ├── R_E(X, Y) = σ_H ⊗ Sym²E action          ├─► assemble_curvature(κ, 𝔑)
        └── R_hyper(𝔑, X, Y)                        ┘

    WedgeSum Σ c·a∧b,  (a∧b)x = ⟨a,x⟩b − ⟨b,x⟩a
        │ cartan_bracket
        ▼
    omega(t) = Σ_z (zt)∧𝐙 ──► hyper_hyper_bracket(t1, t2) ──► CartanElement
                                                      │
                      verify_appendix_B: sp(1) part vs R^H, sp(n) part vs R^E
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, permutations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from src.algebra.errors import InconsistentSystemError, ParameterError, SpaceMismatchError, SymmetryError
from src.algebra.linalg import LabeledBasis, OperatorMatrix, describe_difference, solve_linear
from src.algebra.linspaces import (
    EVector,
    FVector,
    H_UNITS,
    HVector,
    CartanElement,
    TensorProduct,
    TVector,
    basis_sigma,
    e_basis,
    f_real_basis,
    h_basis,
    he_basis,
    phi,
    quat_inner,
    sym2E_action,
    tensor_as_vector,
    tensor_operator,
    vector_operator,
)
from src.algebra.multilinear import SymTensor, sym2_action, sym_product
from src.algebra.scalars import (
    HALF,
    I,
    IMAGINARY_UNITS,
    ONE_Q,
    QUATERNION_UNITS,
    ZERO,
    Ext2Scalar,
    Quaternion,
    ScalarLike,
)
from src.algebra.verdict import Verdict

logger = structlog.get_logger(__name__)

FourTensor = Dict[Tuple[int, int, int, int], Ext2Scalar]
_UNIT_NAMES = ("1", "i", "j", "k")


# ═══════════════════════════════════════════════════════════════════════════════
# CURVATURE OPERATORS ON H ⊗ E
# ═══════════════════════════════════════════════════════════════════════════════

class CurvatureKind(str, Enum):
    """Which piece of the curvature an operator represents."""
    R_H = "R_H"
    R_E = "R_E"
    R_HYPER = "R_hyper"
    TOTAL = "total"


def _check_he(x: TensorProduct) -> int:
    if x.left_cls is not HVector or x.right_cls is not EVector:
        raise SpaceMismatchError("curvature operators take tangent vectors in H ⊗ E")
    return x.right_dim // 2


def R_H_factor(x: TensorProduct, y: TensorProduct) -> OperatorMatrix:
    """H-factor of R^H_{X,Y}: Σ σ_E(e1, e2)·(h1h2 acting on H)."""
    _check_he(x)
    _check_he(y)
    total = OperatorMatrix.zero(h_basis(), h_basis())
    for a, b, cx in x.terms():
        for c, d, cy in y.terms():
            s = basis_sigma(b, d)
            if not s:
                continue
            ha, hc = HVector.basis(2, a), HVector.basis(2, c)
            op = vector_operator(h_basis(), HVector, lambda h: sym2E_action(ha, hc, h))
            total = total + op.scale(cx * cy * s)
    return total


def R_E_factor(x: TensorProduct, y: TensorProduct) -> OperatorMatrix:
    """E-factor of R^E_{X,Y}: Σ σ_H(h1, h2)·(e1e2 acting on E)."""
    n = _check_he(x)
    _check_he(y)
    basis = e_basis(n)
    total = OperatorMatrix.zero(basis, basis)
    for a, b, cx in x.terms():
        for c, d, cy in y.terms():
            s = basis_sigma(a, c)
            if not s:
                continue
            eb, ed = EVector.basis(2 * n, b), EVector.basis(2 * n, d)
            op = vector_operator(basis, EVector, lambda e: sym2E_action(eb, ed, e))
            total = total + op.scale(cx * cy * s)
    return total


def R_H(x: TensorProduct, y: TensorProduct) -> OperatorMatrix:
    """R^H_{X,Y} = R_H_factor ⊗ Id_E on H ⊗ E."""
    n = _check_he(x)
    return tensor_operator(n, R_H_factor(x, y), OperatorMatrix.identity(e_basis(n)))


def R_E(x: TensorProduct, y: TensorProduct) -> OperatorMatrix:
    """R^E_{X,Y} = Id_H ⊗ R_E_factor on H ⊗ E."""
    n = _check_he(x)
    return tensor_operator(n, OperatorMatrix.identity(h_basis()), R_E_factor(x, y))


def validate_frak_r(frak_r: FourTensor, n: int) -> None:
    """
    Raises:
        SymmetryError: unless 𝔑 is totally symmetric with indices < 2n
    """
    dim = 2 * n
    for key, v in frak_r.items():
        if len(key) != 4 or any(not 0 <= i < dim for i in key):
            raise SymmetryError(f"index {key} outside Sym⁴E* for n = {n}")
        for perm in set(permutations(key)):
            if frak_r.get(perm, ZERO) != v:
                raise SymmetryError(f"𝔑{key} = {v} but 𝔑{perm} = {frak_r.get(perm, ZERO)}")


def symmetrize4(entries: Dict[Tuple[int, int, int, int], ScalarLike]) -> FourTensor:
    """Totally symmetric tensor whose value on each sorted key is the given entry."""
    out: FourTensor = {}
    for key, v in entries.items():
        for perm in set(permutations(tuple(sorted(key)))):
            out[perm] = Ext2Scalar.coerce(v)
    return out


def hyper_endomorphism(frak_r: FourTensor, n: int, b: int, d: int) -> OperatorMatrix:
    """
    Endomorphism B of E with σ(B y, x) = 𝔑(e_b, e_d, x, y).
    """
    basis = e_basis(n)
    columns = []
    for y in range(2 * n):
        col: Dict[int, Ext2Scalar] = {}
        for a in range(n):
            top = frak_r.get((b, d, 2 * a + 1, y), ZERO)
            bottom = frak_r.get((b, d, 2 * a, y), ZERO)
            if top:
                col[2 * a] = top
            if bottom:
                col[2 * a + 1] = -bottom
        columns.append(col)
    return OperatorMatrix.from_columns(basis, basis, columns)


def R_hyper(frak_r: FourTensor, x: TensorProduct, y: TensorProduct) -> OperatorMatrix:
    """
    R^hyper_{X,Y} = σ_H(h1, h2)·Id_H ⊗ 𝔑(e1, e2, ·, ·) on H ⊗ E.

    Raises:
        SymmetryError: if 𝔑 is not totally symmetric
    """
    n = _check_he(x)
    _check_he(y)
    validate_frak_r(frak_r, n)
    basis = e_basis(n)
    factor = OperatorMatrix.zero(basis, basis)
    if frak_r:
        for a, b, cx in x.terms():
            for c, d, cy in y.terms():
                s = basis_sigma(a, c)
                if s:
                    factor = factor + hyper_endomorphism(frak_r, n, b, d).scale(cx * cy * s)
    return tensor_operator(n, OperatorMatrix.identity(h_basis()), factor)


@dataclass
class CurvatureOperator:
    """
    R = −κ/(8n(n+2))·(R^H + R^E) + R^hyper as a bilinear operator-valued form.
    """
    n: int
    kappa: Fraction
    frak_r: FourTensor = field(default_factory=dict)
    kind: CurvatureKind = CurvatureKind.TOTAL

    def __post_init__(self):
        validate_frak_r(self.frak_r, self.n)

    @property
    def coefficient(self) -> Fraction:
        return -Fraction(self.kappa) / (8 * self.n * (self.n + 2))

    def value(self, x: TensorProduct, y: TensorProduct) -> OperatorMatrix:
        if self.kind is CurvatureKind.R_H:
            return R_H(x, y)
        if self.kind is CurvatureKind.R_E:
            return R_E(x, y)
        if self.kind is CurvatureKind.R_HYPER:
            return R_hyper(self.frak_r, x, y)
        total = (R_H(x, y) + R_E(x, y)).scale(self.coefficient)
        if self.frak_r:
            total = total + R_hyper(self.frak_r, x, y)
        return total


def rational_kappa(kappa: ScalarLike) -> Fraction:
    """
    Raises:
        ParameterError: if κ has a √2 or imaginary part
    """
    value = Ext2Scalar.coerce(kappa)
    if not value.is_rational:
        raise ParameterError(f"κ must be rational, got {value}")
    return value.re_rat


def assemble_curvature(kappa: ScalarLike, frak_r: Optional[FourTensor], n: int) -> CurvatureOperator:
    """
    Raises:
        ParameterError: if κ is not rational
        SymmetryError: if 𝔑 is not totally symmetric
    """
    return CurvatureOperator(n, rational_kappa(kappa), dict(frak_r or {}))


def verify_bianchi(curvature: CurvatureOperator) -> Verdict:
    """First Bianchi identity Σ_cyc R_{X,Y}Z = 0 on real basis tangent vectors."""
    n = curvature.n
    tangents = [phi(1, t) for t in TVector.real_basis(n)]
    labels = TVector.real_basis_labels(n)
    cache: Dict[Tuple[int, int], OperatorMatrix] = {}

    def r(i: int, j: int) -> OperatorMatrix:
        if (i, j) not in cache:
            cache[(i, j)] = curvature.value(tangents[i], tangents[j])
        return cache[(i, j)]

    triples = 0
    for i, j, k in combinations(range(len(tangents)), 3):
        triples += 1
        total: Dict[int, Ext2Scalar] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for idx, v in r(a, b).apply(tensor_as_vector(tangents[c])).items():
                total[idx] = total.get(idx, ZERO) + v
        residue = {idx: v for idx, v in total.items() if v}
        if residue:
            idx = min(residue)
            return Verdict(
                False,
                f"({labels[i]}, {labels[j]}, {labels[k]}) component {he_basis(n).labels[idx]}: {residue[idx]}",
                {"triples": triples},
            )
    return Verdict(True, None, {"triples": triples, "hyper_part": bool(curvature.frak_r)})


# ═══════════════════════════════════════════════════════════════════════════════
# Sym²H ≅ sp(1)
# ═══════════════════════════════════════════════════════════════════════════════

def _h_sym(q: Quaternion) -> SymTensor:
    return SymTensor.from_vector(HVector.from_quaternion(q))


def sym2H_iso(z: Quaternion) -> SymTensor:
    """
    sp(1) → Sym²H: i ↦ i(1·j), j ↦ ½(j² + 1²), k ↦ (i/2)(j² − 1²),
    extended ℝ-linearly.

    Raises:
        ValueError: if z is not imaginary
    """
    if not z.is_imaginary:
        raise ValueError("sym2H_iso is defined on imaginary quaternions")
    one, j = _h_sym(ONE_Q), _h_sym(Quaternion(0, 0, 1))
    jj, oo = sym_product(j, j), sym_product(one, one)
    images = (
        sym_product(one, j).scale(I),
        (jj + oo).scale(HALF),
        (jj - oo).scale(I * HALF),
    )
    total = SymTensor.zero(2)
    for coeff, image in zip(z.coefficients[1:], images):
        if coeff:
            total = total + image.scale(coeff)
    return total


def sym2_endomorphism(s: SymTensor) -> OperatorMatrix:
    """Matrix of s ∈ Sym²H acting on H."""
    return vector_operator(h_basis(), HVector, lambda h: sym2_action(s, h))


def sp1_action(z: Quaternion) -> OperatorMatrix:
    """Infinitesimal Sp(1) action on H: h ↦ −h z."""
    return vector_operator(h_basis(), HVector, lambda h: HVector.from_quaternion(-(h.to_quaternion() * z)))


# Infinitesimal action of i, j, k on 𝟙, 𝐈, 𝐉, 𝐊 as (sign, target unit index).
SP1_DICTIONARY: Dict[str, Tuple[Tuple[int, int], ...]] = {
    "i": ((-1, 1), (1, 0), (1, 3), (-1, 2)),
    "j": ((-1, 2), (-1, 3), (1, 0), (1, 1)),
    "k": ((-1, 3), (1, 2), (-1, 1), (1, 0)),
}


def verify_sp1_dictionary() -> Verdict:
    """The 𝟙𝐈𝐉𝐊 table against the action of sym2H_iso(z) on H."""
    rows = []
    witness = None
    for name, z in zip(("i", "j", "k"), IMAGINARY_UNITS):
        op = sym2_endomorphism(sym2H_iso(z))
        for u, (sign, target) in enumerate(SP1_DICTIONARY[name]):
            image = op.apply(dict(enumerate(H_UNITS[u].coords)))
            expected = H_UNITS[target].scale(sign)
            got = HVector(tuple(image.get(i, ZERO) for i in range(2)))
            ok = got == expected
            rows.append({"z": name, "unit": _UNIT_NAMES[u], "image": ("-" if sign < 0 else "") + _UNIT_NAMES[target], "match": ok})
            if not ok and witness is None:
                witness = f"z={name} on {_UNIT_NAMES[u]}: {got} != {expected}"
    return Verdict(witness is None, witness, {"table": rows})


def verify_sym2H_brackets() -> Verdict:
    """[iso(a), iso(b)] acting on H equals iso([a, b]) and iso(z) acts as −(·)z."""
    for a in IMAGINARY_UNITS:
        ea = sym2_endomorphism(sym2H_iso(a))
        witness = describe_difference(ea, sp1_action(a))
        if witness:
            return Verdict(False, f"iso({a!r}) {witness}")
        for b in IMAGINARY_UNITS:
            eb = sym2_endomorphism(sym2H_iso(b))
            bracket = a * b - b * a
            witness = describe_difference(ea.commutator(eb), sym2_endomorphism(sym2H_iso(bracket)))
            if witness:
                return Verdict(False, f"[{a!r}, {b!r}] {witness}")
    return Verdict(True, None, {"pairs": 9})


def verify_curv_dictionary(n: int) -> Verdict:
    """R^H_{Φ(1⊗v1), Φ(1⊗v2)} acts on H as iso(−Σ_z ⟨v1, z v2⟩ z) for all basis pairs."""
    basis = TVector.real_basis(n)
    labels = TVector.real_basis_labels(n)
    pairs = 0
    for i, v1 in enumerate(basis):
        for j, v2 in enumerate(basis):
            pairs += 1
            coeffs = [-v1.inner(v2.left_mul(z)) for z in IMAGINARY_UNITS]
            z = Quaternion(0, *coeffs)
            witness = describe_difference(R_H_factor(phi(1, v1), phi(1, v2)), sym2_endomorphism(sym2H_iso(z)))
            if witness:
                return Verdict(False, f"({labels[i]}, {labels[j]}) {witness}", {"pairs": pairs})
    return Verdict(True, None, {"pairs": pairs})


# ═══════════════════════════════════════════════════════════════════════════════
# WEDGE OPERATORS AND THE CARTAN BRACKET
# ═══════════════════════════════════════════════════════════════════════════════

Vector = Tuple[Ext2Scalar, ...]
Inner = Callable[[Any, Any], Ext2Scalar]


def dot(a: Sequence[Ext2Scalar], b: Sequence[Ext2Scalar]) -> Ext2Scalar:
    if len(a) != len(b):
        raise SpaceMismatchError(f"vectors of length {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), ZERO)


@dataclass
class WedgeSum:
    """Σ c·(a∧b) with (a∧b)x = ⟨a,x⟩b − ⟨b,x⟩a."""
    terms: List[Tuple[Ext2Scalar, Any, Any]] = field(default_factory=list)

    @classmethod
    def single(cls, a, b, c: ScalarLike = 1) -> "WedgeSum":
        return cls([(Ext2Scalar.coerce(c), a, b)])

    def __add__(self, other: "WedgeSum") -> "WedgeSum":
        return WedgeSum(self.terms + other.terms)

    def __sub__(self, other: "WedgeSum") -> "WedgeSum":
        return self + other.scale(-1)

    def scale(self, c: ScalarLike) -> "WedgeSum":
        c = Ext2Scalar.coerce(c)
        return WedgeSum([(c * k, a, b) for k, a, b in self.terms])

    def apply(self, x: Vector, inner: Inner = dot) -> Vector:
        out = [ZERO] * len(x)
        for c, a, b in self.terms:
            ax, bx = inner(a, x), inner(b, x)
            for i in range(len(x)):
                out[i] = out[i] + c * (ax * b[i] - bx * a[i])
        return tuple(out)

    def matrix(self, basis: LabeledBasis) -> OperatorMatrix:
        """Real matrix Σ c(b aᵀ − a bᵀ) on the given coordinate basis."""
        rows: Dict[int, Dict[int, Ext2Scalar]] = {}
        for c, a, b in self.terms:
            for i in range(basis.dim):
                for j in range(basis.dim):
                    v = c * (b[i] * a[j] - a[i] * b[j])
                    if v:
                        row = rows.setdefault(i, {})
                        row[j] = row.get(j, ZERO) + v
        return OperatorMatrix(basis, basis, rows)


def cartan_bracket(w1: WedgeSum, w2: WedgeSum, inner: Inner = dot) -> WedgeSum:
    """
    [a∧b, c∧d] = ⟨a,c⟩ b∧d − ⟨a,d⟩ b∧c − ⟨b,c⟩ a∧d + ⟨b,d⟩ a∧c, extended bilinearly.
    """
    out: List[Tuple[Ext2Scalar, Any, Any]] = []
    for k1, a, b in w1.terms:
        for k2, c, d in w2.terms:
            k = k1 * k2
            for coeff, x, y in (
                (inner(a, c), b, d),
                (-inner(a, d), b, c),
                (-inner(b, c), a, d),
                (inner(b, d), a, c),
            ):
                if coeff:
                    out.append((k * coeff, x, y))
    return WedgeSum(out)


def sp1_wedge_identity() -> Verdict:
    """
    −q z = ½ ad(z) q + (z∧1) q for z ∈ {i, j, k}, q ∈ {1, i, j, k}, with
    ⟨a, b⟩ = Re(a b̄).
    """
    rows = []
    witness = None
    for zn, z in zip(("i", "j", "k"), IMAGINARY_UNITS):
        for qn, q in zip(_UNIT_NAMES, QUATERNION_UNITS):
            lhs = -(q * z)
            wedge_part = ONE_Q.scale(quat_inner(z, q)) - z.scale(quat_inner(ONE_Q, q))
            rhs = (z * q - q * z).scale(HALF) + wedge_part
            ok = lhs == rhs
            rows.append({"z": zn, "q": qn, "lhs": repr(lhs), "rhs": repr(rhs), "match": ok})
            if not ok and witness is None:
                witness = f"z={zn} q={qn}: {lhs!r} != {rhs!r}"
    return Verdict(witness is None, witness, {"cases": len(rows), "table": rows})


def cayley_orthogonal(dim: int, rng: np.random.Generator, spread: int = 3) -> List[Vector]:
    """
    Columns of the rational orthogonal matrix (I − S)(I + S)⁻¹ for a random
    integer skew-symmetric S.
    """
    s = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            v = Fraction(int(rng.integers(-spread, spread + 1)))
            s[i][j], s[j][i] = v, -v
    plus = [{j: (Fraction(1) if i == j else Fraction(0)) + s[i][j] for j in range(dim)} for i in range(dim)]
    minus = [[(Fraction(1) if i == j else Fraction(0)) - s[i][j] for j in range(dim)] for i in range(dim)]
    columns: List[Vector] = []
    for k in range(dim):
        # solve (I + S) x = column k of (I − S)
        x = solve_linear(plus, [minus[i][k] for i in range(dim)], dim)
        columns.append(tuple(Ext2Scalar(x.get(i, Fraction(0))) for i in range(dim)))
    for a in range(dim):
        for b in range(dim):
            if dot(columns[a], columns[b]) != (1 if a == b else 0):
                raise InconsistentSystemError("Cayley transform did not produce an orthogonal matrix")
    return columns


def verify_cartan_bracket_oracle(tuples: int, seed: int) -> Verdict:
    """cartan_bracket agrees with the matrix commutator on random orthonormal tuples."""
    rng = np.random.default_rng(seed)
    for case in range(tuples):
        dim = int(rng.integers(4, 8))
        cols = cayley_orthogonal(dim, rng)
        picks = [int(v) for v in rng.choice(dim, size=4, replace=False)]
        a, b, c, d = (cols[p] for p in picks)
        basis = LabeledBasis(f"R^{dim}", tuple(f"x{i}" for i in range(dim)))
        w1, w2 = WedgeSum.single(a, b), WedgeSum.single(c, d)
        commutator = w1.matrix(basis).commutator(w2.matrix(basis))
        bracket = cartan_bracket(w1, w2).matrix(basis)
        witness = describe_difference(bracket, commutator)
        if witness:
            return Verdict(False, f"tuple {case} (dim {dim}) {witness}", {"tuples": case + 1, "seed": seed})
    return Verdict(True, None, {"tuples": tuples, "seed": seed})


# ═══════════════════════════════════════════════════════════════════════════════
# THE CARTAN DECOMPOSITION OF sp(n+1) AND ℍPⁿ
# ═══════════════════════════════════════════════════════════════════════════════

def f_real_coords(f: FVector) -> Vector:
    """Coordinates of f ∈ F ≅ ℍⁿ⁺¹ in the f_real_basis."""
    return tuple(c for q in f.to_quaternion_row() for c in q.coefficients)


def _row_vector(n: int, slot: int, q: Quaternion) -> Vector:
    out = [ZERO] * (4 * n + 4)
    for u, c in enumerate(q.coefficients):
        out[4 * slot + u] = c
    return tuple(out)


def _tangent_vector(t: TVector) -> Vector:
    return tuple([ZERO] * 4) + t.real_coords()


def omega(t: TVector) -> WedgeSum:
    """ω(t) = Σ_z (zt)∧𝐙 on ℍⁿ⁺¹."""
    return WedgeSum([
        (Ext2Scalar(1), _tangent_vector(t.left_mul(z)), _row_vector(t.n, 0, z))
        for z in QUATERNION_UNITS
    ])


def _ratio(n: int, kappa: Optional[ScalarLike]) -> Fraction:
    kappa = Fraction(16 * n * (n + 2)) if kappa is None else rational_kappa(kappa)
    return kappa / (16 * n * (n + 2))


def _hyper_hyper_wedge(t1: TVector, t2: TVector, kappa: Optional[ScalarLike]) -> WedgeSum:
    c = _ratio(t1.n, kappa)
    w1, w2 = omega(t1), omega(t2)
    return (cartan_bracket(w1, w2) - cartan_bracket(w2, w1)).scale(c * HALF)


def hyper_hyper_bracket(t1: TVector, t2: TVector, kappa: Optional[ScalarLike] = None) -> CartanElement:
    """
    ½[ω∧ω](t1, t2) = ½([ω(t1), ω(t2)] − [ω(t2), ω(t1)]), ω scaled by √(κ/16n(n+2)),
    split into its sp(1) ⊕ sp(n) parts.

    Raises:
        ParameterError: if κ is not rational
        CartanDecompositionError: if the bracket has an ℍⁿ part
    """
    n = t1.n
    return CartanElement.from_real_matrix(_hyper_hyper_wedge(t1, t2, kappa).matrix(f_real_basis(n)), n)


def rh_display(t1: TVector, t2: TVector, kappa: Optional[ScalarLike] = None) -> WedgeSum:
    """κ/(16n(n+2))·Σ ⟨θ∧zθ⟩(t1, t2)·(𝟙∧𝐙 − 𝐙'∧𝐙'') over z = i, j, k."""
    n = t1.n
    c = _ratio(n, kappa)
    u = [_row_vector(n, 0, q) for q in QUATERNION_UNITS]
    pairs = ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    total = WedgeSum()
    for z, (zi, zj, zk) in zip(IMAGINARY_UNITS, pairs):
        form = t1.inner(t2.left_mul(z)) - t2.inner(t1.left_mul(z))
        if form:
            total = total + (WedgeSum.single(u[0], u[zi]) - WedgeSum.single(u[zj], u[zk])).scale(c * form)
    return total


def re_display(t1: TVector, t2: TVector, kappa: Optional[ScalarLike] = None) -> WedgeSum:
    """κ/(32n(n+2))·Σ_z (zθ∧zθ)(t1, t2) = κ/(16n(n+2))·Σ_z (zt1)∧(zt2)."""
    c = _ratio(t1.n, kappa)
    total = WedgeSum()
    for z in QUATERNION_UNITS:
        a, b = _tangent_vector(t1.left_mul(z)), _tangent_vector(t2.left_mul(z))
        total = total + (WedgeSum.single(a, b) - WedgeSum.single(b, a)).scale(c * HALF)
    return total


def verify_cartan_grading(n: int) -> Verdict:
    """[sp(1)⊕sp(n), ℍⁿ] ⊆ ℍⁿ and [ℍⁿ, ℍⁿ] ⊆ sp(1)⊕sp(n) on generators."""
    zero_x = CartanElement.zero(n).spn
    isotropy = [CartanElement(z, zero_x, TVector.zero(n)) for z in IMAGINARY_UNITS]
    for a in range(n):
        for q in IMAGINARY_UNITS:
            x = [[Quaternion() for _ in range(n)] for _ in range(n)]
            x[a][a] = q
            isotropy.append(CartanElement(Quaternion(), tuple(tuple(r) for r in x), TVector.zero(n)))
    translations = [CartanElement(Quaternion(), zero_x, t) for t in TVector.real_basis(n)]
    m_basis = f_real_basis(n)
    for k in isotropy:
        for p in translations:
            br = CartanElement.from_real_matrix(k.to_real_matrix().commutator(p.to_real_matrix()), n)
            if not br.is_translation:
                return Verdict(False, f"[isotropy, ℍⁿ] left ℍⁿ: {br!r}")
    for p1, p2 in combinations(translations, 2):
        br = CartanElement.from_real_matrix(p1.to_real_matrix().commutator(p2.to_real_matrix()), n)
        if not br.is_isotropy:
            return Verdict(False, f"[ℍⁿ, ℍⁿ] has an ℍⁿ part: {br!r}")
    return Verdict(True, None, {"isotropy_generators": len(isotropy), "translations": len(translations), "dim": m_basis.dim})


@dataclass
class AppendixBReport:
    """Per-claim verdicts of the ℍPⁿ curvature computation."""
    sp1_claim: Verdict
    spn_claim: Verdict
    rh_display: Verdict
    re_display: Verdict
    flat_consistency: Verdict


def verify_appendix_B(n: int, kappa: Optional[ScalarLike] = None) -> AppendixBReport:
    """
    For all pairs of real basis tangent vectors compare the Cartan parts of
    ½[ω∧ω](t1, t2) with κ/(8n(n+2))·R^H and κ/(8n(n+2))·R^E, the explicit
    displays, and the assembled curvature with 𝔑 = 0.
    """
    ratio = _ratio(n, kappa)
    kappa_value = ratio * 16 * n * (n + 2)
    coefficient = kappa_value / (8 * n * (n + 2))
    curvature = assemble_curvature(kappa_value, None, n)
    basis = TVector.real_basis(n)
    labels = TVector.real_basis_labels(n)
    m_basis = f_real_basis(n)
    h_rows = list(range(4))
    e_rows = list(range(4, m_basis.dim))
    h_sub = LabeledBasis(f"F_real({n})|H", m_basis.labels[:4])
    e_sub = LabeledBasis(f"F_real({n})|E", m_basis.labels[4:])
    witnesses: Dict[str, Optional[str]] = {k: None for k in ("sp1", "spn", "rh", "re", "flat")}
    pairs = 0

    for i, j in combinations(range(len(basis)), 2):
        t1, t2 = basis[i], basis[j]
        tag = f"({labels[i]}, {labels[j]})"
        pairs += 1
        element = hyper_hyper_bracket(t1, t2, kappa_value)
        bracket = element.to_real_matrix()
        x, y = phi(1, t1), phi(1, t2)
        rh_factor = R_H_factor(x, y)
        re_factor = R_E_factor(x, y)

        if witnesses["sp1"] is None:
            w = describe_difference(element.sp1_on_H(), rh_factor.scale(coefficient))
            if w is None:
                coeffs = [-t1.inner(t2.left_mul(z)) for z in IMAGINARY_UNITS]
                w = describe_difference(rh_factor, sym2_endomorphism(sym2H_iso(Quaternion(0, *coeffs))))
                w = None if w is None else f"curvature dictionary {w}"
            witnesses["sp1"] = None if w is None else f"{tag} {w}"
        if witnesses["spn"] is None:
            w = describe_difference(element.spn_on_E(), re_factor.scale(coefficient))
            witnesses["spn"] = None if w is None else f"{tag} {w}"
        if witnesses["rh"] is None:
            w = describe_difference(
                bracket.select(h_rows, h_rows, h_sub, h_sub),
                rh_display(t1, t2, kappa_value).matrix(m_basis).select(h_rows, h_rows, h_sub, h_sub),
            )
            witnesses["rh"] = None if w is None else f"{tag} {w}"
        if witnesses["re"] is None:
            w = describe_difference(
                bracket.select(e_rows, e_rows, e_sub, e_sub),
                re_display(t1, t2, kappa_value).matrix(m_basis).select(e_rows, e_rows, e_sub, e_sub),
            )
            witnesses["re"] = None if w is None else f"{tag} {w}"
        if witnesses["flat"] is None:
            bracket_on_he = tensor_operator(n, element.sp1_on_H(), OperatorMatrix.identity(e_basis(n))) + tensor_operator(
                n, OperatorMatrix.identity(h_basis()), element.spn_on_E()
            )
            total = curvature.value(x, y) + bracket_on_he
            w = None if total.is_zero else describe_difference(total, OperatorMatrix.zero(total.domain, total.codomain))
            witnesses["flat"] = None if w is None else f"{tag} {w}"

    details = {"pairs": pairs, "coefficient": str(coefficient)}
    logger.info("appendix_b_evaluated", n=n, pairs=pairs, **{k: v is None for k, v in witnesses.items()})
    return AppendixBReport(
        sp1_claim=Verdict(witnesses["sp1"] is None, witnesses["sp1"], dict(details)),
        spn_claim=Verdict(witnesses["spn"] is None, witnesses["spn"], dict(details)),
        rh_display=Verdict(witnesses["rh"] is None, witnesses["rh"], dict(details)),
        re_display=Verdict(witnesses["re"] is None, witnesses["re"], dict(details)),
        flat_consistency=Verdict(witnesses["flat"] is None, witnesses["flat"], dict(details)),
    )
