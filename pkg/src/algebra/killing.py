"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                     QUATERNIONIC KILLING SPINORS                             ║
║                                                                              ║
║  The Killing triple (φ₀, h⊗φ₁, φ₋), its embedding into ΛⁿF, the derivation  ║
║  action of Sym²F, the coefficient operator A_{h⊗e}, and the verifiers that  ║
║  tie the spinor module on the cone back to Killing spinors.                  ║
╚══════════════════════════════════════════════════════════════════════════════╝

ARCHITECTURE
============
    KillingSection ──iota──► Λⁿ∘F         star(f1, f2, ω): derivation of Sym²F
          ▲                                       │
          │ (1/√2)·A_{h⊗e}                        ▼
    killing_matrix(h, e) = μ-+ + μ+- + (3/2)μ++ − μ--    star_operator on Σ̂

    coefficient_system(params, form) ──► 3×3 float pattern, scaling by D
    verify_decomp / verify_spin_star_identity / verify_thetastar /
    verify_scaling_equivalence  ──► Verdict
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import structlog

from src.algebra.errors import NonPrimitiveError, ParameterError, SpaceMismatchError
from src.algebra.linalg import OperatorMatrix, describe_difference
from src.algebra.linspaces import EVector, FVector, HVector, P_H, Q_H, TensorProduct, TVector
from src.algebra.multilinear import (
    MultiVector,
    SymTensor,
    canonical_bivector_in_F,
    contract_dual,
    is_primitive,
    wedge,
)
from src.algebra.scalars import INV_SQRT2, QUATERNION_UNITS, ZERO, Ext2Scalar
from src.algebra.spinors import (
    GradedSpace,
    cone_phi,
    f_unit,
    graded_operator,
    killing_space,
    mu_components,
    spin_action,
    spinor_space,
)
from src.algebra.verdict import Verdict

logger = structlog.get_logger(__name__)


# ═══════════════════════════════════════════════════════════════════════════════
# KILLING SECTIONS AND THE EMBEDDING ι
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass
class KillingSection:
    """
    φ₀ ⊕ (p⊗φ₁ᵖ + q⊗φ₁ᵠ) ⊕ φ₋ with primitive E-multivectors.

    Raises:
        NonPrimitiveError: if a component is not primitive
    """
    n: int
    phi0: MultiVector
    phi1_p: MultiVector
    phi1_q: MultiVector
    phi_minus: MultiVector

    def __post_init__(self):
        expected = ((self.phi0, self.n), (self.phi1_p, self.n - 1), (self.phi1_q, self.n - 1), (self.phi_minus, self.n - 2))
        for mv, degree in expected:
            if mv.space != "E" or mv.dim != 2 * self.n or mv.degree != degree:
                raise SpaceMismatchError(f"component must lie in Λ^{degree}E({2 * self.n})")
            if not is_primitive(mv):
                raise NonPrimitiveError(f"component of degree {degree} is not primitive")

    @classmethod
    def from_vector(cls, n: int, coords: Dict[int, Ext2Scalar]) -> "KillingSection":
        space = killing_space(n)
        parts: Dict[Tuple[int, int], List[List[Ext2Scalar]]] = {}
        for r, s, offset, pdim in space.layout:
            parts[(r, s)] = [
                [coords.get(offset + k * pdim + j, ZERO) for j in range(pdim)] for k in range(r + 1)
            ]
        return cls(
            n,
            space.primitive(n).combine(parts[(0, n)][0]),
            space.primitive(n - 1).combine(parts[(1, n - 1)][0]),
            space.primitive(n - 1).combine(parts[(1, n - 1)][1]),
            space.primitive(n - 2).combine(parts[(0, n - 2)][0]),
        )

    def to_vector(self) -> Dict[int, Ext2Scalar]:
        space = killing_space(self.n)
        out: Dict[int, Ext2Scalar] = {}
        pieces = (
            (0, self.n, SymTensor.monomial(0, 0), self.phi0),
            (1, self.n - 1, SymTensor.monomial(1, 0), self.phi1_p),
            (1, self.n - 1, SymTensor.monomial(1, 1), self.phi1_q),
            (0, self.n - 2, SymTensor.monomial(0, 0), self.phi_minus),
        )
        for r, s, sym, mv in pieces:
            for i, v in space.vector(r, s, sym, mv).items():
                out[i] = out.get(i, ZERO) + v
        return {i: v for i, v in out.items() if v}


def _f_vector(v) -> MultiVector:
    return MultiVector.from_vector(v)


def iota(section: KillingSection) -> MultiVector:
    """
    ι(φ₀ ⊕ h⊗φ₁ ⊕ φ₋) = φ₀ + h∧φ₁ + (L_H − (1/(n−s+2))L_E)∧φ₋ ∈ Λˢ∘F,
    where s = deg φ₋ + 2 = n, so the L_E factor is 1/2.
    """
    n = section.n
    p_f = FVector.from_h(P_H, n)
    q_f = FVector.from_h(Q_H, n)
    total = section.phi0.embed_in_F(n)
    total = total + wedge(_f_vector(p_f), section.phi1_p.embed_in_F(n))
    total = total + wedge(_f_vector(q_f), section.phi1_q.embed_in_F(n))
    s = section.phi_minus.degree + 2
    factor = Fraction(1, n - s + 2)
    bivector = canonical_bivector_in_F("H", n) - canonical_bivector_in_F("E", n).scale(factor)
    return total + wedge(bivector, section.phi_minus.embed_in_F(n))


# ═══════════════════════════════════════════════════════════════════════════════
# Sym²F ACTING BY DERIVATIONS
# ═══════════════════════════════════════════════════════════════════════════════

def star(f1: FVector, f2: FVector, omega: MultiVector) -> MultiVector:
    """(f1·f2)⋆ω = f2∧(f1^#⌟ω) + f1∧(f2^#⌟ω); zero on scalars."""
    if omega.degree == 0:
        return MultiVector.zero(omega.space, omega.dim, 0)
    return wedge(_f_vector(f2), contract_dual(f1, omega)) + wedge(_f_vector(f1), contract_dual(f2, omega))


def sym2_bracket(f1: FVector, f2: FVector, f3: FVector, f4: FVector) -> List[Tuple[Ext2Scalar, FVector, FVector]]:
    """
    [f1f2, f3f4] in Sym²F ≅ sp(F) as terms (c, x, y) of Σ c·xy:
    σ(f1,f3) f2f4 + σ(f2,f3) f1f4 + σ(f1,f4) f3f2 + σ(f2,f4) f3f1.
    """
    terms = []
    for c, x, y in (
        (f1.sigma(f3), f2, f4),
        (f2.sigma(f3), f1, f4),
        (f1.sigma(f4), f3, f2),
        (f2.sigma(f4), f3, f1),
    ):
        if c:
            terms.append((c, x, y))
    return terms


def star_operator(
    terms: Iterable[Tuple[Ext2Scalar, FVector, FVector]],
    space: GradedSpace,
) -> OperatorMatrix:
    """Id ⊗ (Σ c·f1f2)⋆ on a graded module over F."""
    terms = list(terms)

    def action(sym: SymTensor, eta: MultiVector):
        total = MultiVector.zero(eta.space, eta.dim, eta.degree)
        for c, f1, f2 in terms:
            total = total + star(f1, f2, eta).scale(c)
        return [(sym, total)]

    return graded_operator(space, space, action)


# ═══════════════════════════════════════════════════════════════════════════════
# THE COEFFICIENT OPERATOR A_{h⊗e}
# ═══════════════════════════════════════════════════════════════════════════════

@lru_cache(maxsize=None)
def _killing_matrix_basis(n: int, a: int, b: int) -> OperatorMatrix:
    space = killing_space(n)
    parts = mu_components(HVector.basis(2, a), EVector.basis(2 * n, b), space)
    return parts["mu-+"] + parts["mu+-"] + parts["mu++"].scale(Fraction(3, 2)) - parts["mu--"]


def killing_matrix(h: HVector, e: EVector) -> OperatorMatrix:
    """
    A_{h⊗e} = μ-+ + μ+- + (3/2)μ++ − μ-- on Λⁿ∘E ⊕ H⊗Λⁿ⁻¹∘E ⊕ Λⁿ⁻²∘E.
    """
    n = e.n
    space = killing_space(n)
    total = OperatorMatrix.zero(space.basis, space.basis)
    for a, x in enumerate(h.coords):
        if not x:
            continue
        for b, y in enumerate(e.coords):
            if y:
                total = total + _killing_matrix_basis(n, a, b).scale(x * y)
    return total


def block(op: OperatorMatrix, space: GradedSpace, i: int, j: int) -> OperatorMatrix:
    """Block (i, j): summand j → summand i, re-indexed onto the summand bases."""
    rows_rs, cols_rs = space.summands[i], space.summands[j]
    row_space = space.sub([rows_rs], f"{space.variant}#{i}")
    col_space = space.sub([cols_rs], f"{space.variant}#{j}")
    return op.select(
        space.summand_indices(*rows_rs),
        space.summand_indices(*cols_rs),
        col_space.basis,
        row_space.basis,
    )


# ═══════════════════════════════════════════════════════════════════════════════
# PARAMETERS AND COEFFICIENT SYSTEMS
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class KillingParams:
    """
    Curvature normalization κ and eigenvalue λ² for quaternionic dimension n.

    Raises:
        ParameterError: if n < 2, κ ≤ 0 or λ² ≤ 0
    """
    n: int
    kappa: Fraction
    lambda_sq: Fraction

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"n must be ≥ 2, got {self.n}")
        if self.kappa <= 0:
            raise ParameterError(f"κ must be positive, got {self.kappa}")
        if self.lambda_sq <= 0:
            raise ParameterError(f"λ² must be positive, got {self.lambda_sq}")

    @staticmethod
    def expected_lambda_sq(n: int, kappa: Fraction) -> Fraction:
        return Fraction(kappa) / 4 * Fraction(n + 3, n + 2)

    @classmethod
    def canonical(cls, n: int, kappa: Optional[Fraction] = None) -> "KillingParams":
        kappa = Fraction(16 * n * (n + 2)) if kappa is None else Fraction(kappa)
        return cls(n, kappa, cls.expected_lambda_sq(n, kappa))

    @property
    def is_consistent(self) -> bool:
        return self.lambda_sq == self.expected_lambda_sq(self.n, self.kappa)

    @property
    def lam(self) -> float:
        return float(np.sqrt(float(self.lambda_sq)))

    @property
    def scale(self) -> float:
        """√(κ/16n(n+2))."""
        return float(np.sqrt(float(self.kappa) / (16 * self.n * (self.n + 2))))

    def scaling_diagonal(self) -> np.ndarray:
        n = self.n
        return np.array([np.sqrt((n + 3) / (4 * n)), 1.0, -np.sqrt(4 * n / (n + 3))])

    def constants(self) -> Dict[str, float]:
        n, lam = self.n, self.lam
        d = self.scaling_diagonal()
        return {
            "lambda_sq": float(self.lambda_sq),
            "lambda": lam,
            "scale": self.scale,
            "d0": float(d[0]),
            "d2": float(d[2]),
            "psi_minus_constant": (n + 3) / (4 * lam * (n + 4)),
        }


BLOCK_PATTERN: Dict[Tuple[int, int], str] = {
    (0, 1): "mu-+",
    (1, 0): "mu+-",
    (1, 2): "mu++",
    (2, 1): "mu--",
}


@dataclass
class CoefficientSystem:
    """3×3 coefficient matrix in front of the μ components, block (i, j) from summand j to i."""
    form: str
    n: int
    pattern: Dict[Tuple[int, int], str]
    matrix: np.ndarray = field(repr=False)


def coefficient_system(params: KillingParams, form: str = "original", sign: int = 1) -> CoefficientSystem:
    """
    The Killing system as a coefficient pattern.

    Args:
        params: κ, λ²
        form: "original" (λ-dependent) or "scaled" (−√(κ/16n(n+2)) times A's pattern)
        sign: choice of square root for λ
    """
    n = params.n
    m = np.zeros((3, 3))
    if form == "original":
        lam = sign * params.lam
        m[0, 1] = -lam / (n + 3)
        m[1, 0] = -lam / (4 * n)
        m[1, 2] = 3 * lam / (2 * (n + 3))
        m[2, 1] = -lam / (4 * n)
    elif form == "scaled":
        s = sign * params.scale
        m[0, 1] = -s
        m[1, 0] = -s
        m[1, 2] = -1.5 * s
        m[2, 1] = s
    else:
        raise ValueError(f"unknown form {form!r}")
    return CoefficientSystem(form, n, dict(BLOCK_PATTERN), m)


def verify_scaling_equivalence(params: KillingParams, tol: float = 1e-12) -> Verdict:
    """
    D·C·D⁻¹ = S for the original system C and the scaled system S, plus the
    sign symmetry diag(1,−1,1)·C(λ)·diag(1,−1,1) = C(−λ).
    """
    original = coefficient_system(params, "original")
    scaled = coefficient_system(params, "scaled")
    d = np.diag(params.scaling_diagonal())
    conjugated = d @ original.matrix @ np.linalg.inv(d)
    residual = np.abs(conjugated - scaled.matrix)
    max_residual = float(residual.max())

    flip = np.diag([1.0, -1.0, 1.0])
    negated = coefficient_system(params, "original", sign=-1)
    sign_ok = bool(np.allclose(flip @ original.matrix @ flip, negated.matrix, rtol=0.0, atol=tol))

    details = dict(params.constants())
    details.update({"max_residual": max_residual, "sign_symmetry": sign_ok, "consistent_lambda_sq": params.is_consistent})
    witness = None
    if max_residual > tol:
        i, j = np.unravel_index(int(np.argmax(residual)), residual.shape)
        witness = f"(block{i}, block{j}): {conjugated[i, j]:.17g} != {scaled.matrix[i, j]:.17g}"
    elif not sign_ok:
        witness = "sign symmetry diag(1,-1,1) fails"
    holds = witness is None and original.pattern == scaled.pattern
    logger.info("scaling_equivalence_checked", n=params.n, max_residual=max_residual, holds=holds)
    return Verdict(holds, witness, details)


# ═══════════════════════════════════════════════════════════════════════════════
# VERIFIERS
# ═══════════════════════════════════════════════════════════════════════════════

def verify_decomp(n: int) -> Verdict:
    """
    ι lands in primitive forms and (h⊗e)⋆ι(φ) = ι((1/√2)A_{h⊗e}φ) for all basis
    h ∈ {p, q}, e ∈ E and φ in the Killing space.
    """
    space = killing_space(n)
    sections = [KillingSection.from_vector(n, {i: Ext2Scalar(1)}) for i in range(space.dim)]
    images = [iota(s) for s in sections]
    for i, img in enumerate(images):
        if not is_primitive(img):
            return Verdict(False, f"ι({space.basis.labels[i]}) is not primitive", {"cases": i})
    cases = 0
    for a in range(2):
        h = HVector.basis(2, a)
        h_f = FVector.from_h(h, n)
        for b in range(2 * n):
            e = EVector.basis(2 * n, b)
            e_f = FVector.from_e(e)
            a_op = killing_matrix(h, e).scale(INV_SQRT2)
            for i in range(space.dim):
                cases += 1
                lhs = star(h_f, e_f, images[i])
                rhs = iota(KillingSection.from_vector(n, a_op.column(i)))
                if lhs != rhs:
                    diff = lhs - rhs
                    key, value = next(diff.items())
                    return Verdict(
                        False,
                        f"h={'pq'[a]} e={b} φ={space.basis.labels[i]} monomial {list(key)}: difference {value}",
                        {"cases": cases},
                    )
    return Verdict(True, None, {"cases": cases, "killing_dim": space.dim})


def verify_spin_star_identity(n: int) -> Verdict:
    """
    spin(p⊗f1, q⊗f2) − spin(q⊗f1, p⊗f2) = Id ⊗ (f1·f2)⋆ on Σ̂ for all basis pairs.
    """
    space = spinor_space(n, "cone")
    dim_f = 2 * n + 2
    cases = 0
    for a in range(dim_f):
        f1 = FVector.basis(dim_f, a)
        for b in range(dim_f):
            f2 = FVector.basis(dim_f, b)
            cases += 1
            lhs = spin_action(TensorProduct.pure(P_H, f1), TensorProduct.pure(Q_H, f2), space) - spin_action(
                TensorProduct.pure(Q_H, f1), TensorProduct.pure(P_H, f2), space
            )
            rhs = star_operator([(Ext2Scalar(1), f1, f2)], space)
            witness = describe_difference(lhs, rhs)
            if witness:
                return Verdict(False, f"f1={a} f2={b} {witness}", {"cases": cases})
    return Verdict(True, None, {"cases": cases, "spinor_dim": space.dim})


def _tangent_in_F(t: TVector) -> FVector:
    return FVector.from_e(EVector.from_tvector(t))


def thetastar_sides(t: TVector) -> Tuple[OperatorMatrix, OperatorMatrix]:
    """
    (Σ_z spin(Φ_F(zt), Φ_F(𝐙)),  Id ⊗ √2Φ(t)⋆) on Σ̂.
    """
    n = t.n
    space = spinor_space(n, "cone")
    lhs = OperatorMatrix.zero(space.basis, space.basis)
    for z in QUATERNION_UNITS:
        lhs = lhs + spin_action(cone_phi(_tangent_in_F(t.left_mul(z))), cone_phi(f_unit(z, n)), space)
    e = EVector.from_tvector(t)
    rhs = star_operator(
        [
            (Ext2Scalar(1), FVector.from_h(P_H, n), FVector.from_e(e)),
            (Ext2Scalar(1), FVector.from_h(Q_H, n), FVector.from_e(e.J())),
        ],
        space,
    )
    return lhs, rhs


def verify_thetastar(n: int, all_summands: bool = False) -> Verdict:
    """
    Compare the two sides of the thetastar identity for every real basis tangent
    vector, on Σ₁ (columns of the r = 1 summand) or on all of Σ̂.
    """
    space = spinor_space(n, "cone")
    if all_summands:
        cols = list(range(space.dim))
        col_space = space
    else:
        cols = space.summand_indices(1, n)
        col_space = space.sub([(1, n)], "cone-sigma1")
    rows = list(range(space.dim))
    labels = TVector.real_basis_labels(n)
    for t, label in zip(TVector.real_basis(n), labels):
        lhs, rhs = thetastar_sides(t)
        lhs_r = lhs.select(rows, cols, col_space.basis, space.basis)
        rhs_r = rhs.select(rows, cols, col_space.basis, space.basis)
        witness = describe_difference(lhs_r, rhs_r)
        if witness:
            return Verdict(False, f"t={label} {witness}", {"columns": len(cols)})
    return Verdict(True, None, {"columns": len(cols), "tangent_vectors": len(labels)})
