"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          SPINOR MODULES                                      ║
║                                                                              ║
║  Graded spaces ⊕ SymʳH ⊗ Λˢ∘V, Clifford multiplication μ and its four       ║
║  components, the cone Clifford map, the spin representation of so(F).        ║
╚══════════════════════════════════════════════════════════════════════════════╝

ARCHITECTURE
============
    GradedSpace(variant, n, V, summands)
        basis order: summand → Sym monomial (p-power descending) → primitive index
                │
                ▼
    graded_operator(domain, codomain, action)        action: (SymTensor, MultiVector)
        images landing in summands outside the          → [(SymTensor, MultiVector), ...]
        codomain are dropped
                │
        ┌───────┴──────────┬────────────────────┐
        ▼                  ▼                    ▼
    mu(h, e)         mu_components        spin_action(a, b)
    √2(h·⊗e^#⌟ +     μ+- μ-+ μ++ μ--      ½(μ(a)μ(b) + g(a,b))
       h^#⌟∘⊗e∧∘)

Variants: "base" Σ = ⊕_r Symʳ ⊗ Λⁿ⁻ʳ∘E (dim 2²ⁿ), "cone" Σ̂ = ⊕_r Symʳ ⊗ Λⁿ⁺¹⁻ʳ∘F
(dim 2²ⁿ⁺²), "killing" the three summands carrying a Killing triple.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import structlog

from src.algebra.errors import ParameterError, SpaceMismatchError
from src.algebra.linalg import LabeledBasis, OperatorMatrix, describe_difference
from src.algebra.linspaces import (
    EVector,
    FVector,
    HVector,
    ONE_H,
    P_H,
    Q_H,
    SymplecticVector,
    TensorProduct,
    TVector,
    phi,
)
from src.algebra.multilinear import (
    MultiVector,
    PrimitiveBasis,
    SymTensor,
    contract_dual,
    primitive_basis,
    space_dim,
    sym_contract_circ,
    sym_mul,
    wedge,
    wedge_circ,
)
from src.algebra.scalars import HALF, INV_SQRT2, QUATERNION_UNITS, SQRT2, ZERO, Ext2Scalar, Quaternion
from src.utils.observability import BASIS_BUILD_DURATION, timed

logger = structlog.get_logger(__name__)

Piece = Tuple[SymTensor, MultiVector]
Action = Callable[[SymTensor, MultiVector], Iterable[Piece]]


# ═══════════════════════════════════════════════════════════════════════════════
# GRADED SPACES
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class GradedSpace:
    """
    Direct sum of SymʳH ⊗ Λˢ∘V over the listed (r, s) summands.

    Attributes:
        variant: "base", "cone", "killing" or a derived name
        n: quaternionic dimension of E
        vspace: "E" or "F"
        summands: ordered (r, s) pairs
    """
    variant: str
    n: int
    vspace: str
    summands: Tuple[Tuple[int, int], ...]

    @property
    def vdim(self) -> int:
        return space_dim(self.vspace, self.n)

    def primitive(self, s: int) -> PrimitiveBasis:
        return primitive_basis(self.vspace, self.vdim, s)

    @cached_property
    def layout(self) -> Tuple[Tuple[int, int, int, int], ...]:
        """(r, s, offset, primitive dimension) per summand."""
        rows = []
        offset = 0
        for r, s in self.summands:
            pdim = self.primitive(s).dimension if s >= 0 else 0
            rows.append((r, s, offset, pdim))
            offset += (r + 1) * pdim
        return tuple(rows)

    @cached_property
    def _positions(self) -> Dict[Tuple[int, int], Tuple[int, int]]:
        return {(r, s): (offset, pdim) for r, s, offset, pdim in self.layout}

    @property
    def dim(self) -> int:
        if not self.layout:
            return 0
        r, _, offset, pdim = self.layout[-1]
        return offset + (r + 1) * pdim

    def summand_dims(self) -> List[int]:
        return [(r + 1) * pdim for r, _, _, pdim in self.layout]

    def contains(self, r: int, s: int) -> bool:
        return (r, s) in self._positions

    def index(self, r: int, s: int, k: int, j: int) -> int:
        offset, pdim = self._positions[(r, s)]
        return offset + k * pdim + j

    def locate(self, i: int) -> Tuple[int, int, int, int]:
        """Inverse of index: (r, s, k, j)."""
        for r, s, offset, pdim in self.layout:
            size = (r + 1) * pdim
            if offset <= i < offset + size:
                k, j = divmod(i - offset, pdim)
                return r, s, k, j
        raise IndexError(f"index {i} outside {self.variant} space of dimension {self.dim}")

    def summand_indices(self, r: int, s: int) -> List[int]:
        offset, pdim = self._positions[(r, s)]
        return list(range(offset, offset + (r + 1) * pdim))

    @cached_property
    def basis(self) -> LabeledBasis:
        labels = []
        for r, s, _, pdim in self.layout:
            for k in range(r + 1):
                for j in range(pdim):
                    labels.append(f"r{r}:p{r - k}q{k}:{self.vspace}{s}.{j}")
        name = f"{self.variant}({self.n})[{','.join(f'{r}/{s}' for r, s in self.summands)}]"
        return LabeledBasis(name, tuple(labels))

    def sub(self, summands: Sequence[Tuple[int, int]], variant: str) -> "GradedSpace":
        return GradedSpace(variant, self.n, self.vspace, tuple(summands))

    def vector(self, r: int, s: int, sym: SymTensor, eta: MultiVector) -> Dict[int, Ext2Scalar]:
        """Coordinates of sym ⊗ η placed in summand (r, s)."""
        coords = self.primitive(s).coordinates(eta)
        out: Dict[int, Ext2Scalar] = {}
        for k, a in enumerate(sym.coeffs):
            if not a:
                continue
            for j, b in enumerate(coords):
                if b:
                    out[self.index(r, s, k, j)] = a * b
        return out


def _check_n(n: int) -> None:
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")


@lru_cache(maxsize=None)
def spinor_space(n: int, variant: str = "base") -> GradedSpace:
    """
    Σ (variant "base") or the cone module Σ̂ (variant "cone").

    Example:
        >>> spinor_space(2).summand_dims()
        [5, 8, 3]
    """
    _check_n(n)
    if variant == "base":
        return GradedSpace("base", n, "E", tuple((r, n - r) for r in range(n + 1)))
    if variant == "cone":
        return GradedSpace("cone", n, "F", tuple((r, n + 1 - r) for r in range(n + 2)))
    raise ValueError(f"unknown spinor variant {variant!r}")


@lru_cache(maxsize=None)
def killing_space(n: int) -> GradedSpace:
    """Λⁿ∘E ⊕ H ⊗ Λⁿ⁻¹∘E ⊕ Λⁿ⁻²∘E."""
    _check_n(n)
    if n < 2:
        raise ParameterError("the Killing triple needs n ≥ 2")
    return GradedSpace("killing", n, "E", ((0, n), (1, n - 1), (0, n - 2)))


@dataclass(frozen=True)
class HalfSpinSplit:
    """Σ = Σ⁺ ⊕ Σ⁻ by parity of r; ``parity_supported`` is False for odd n."""
    plus: GradedSpace
    minus: GradedSpace
    parity_supported: bool


def half_spin_split(space: GradedSpace) -> HalfSpinSplit:
    """Σ⁺ = odd r, Σ⁻ = even r."""
    plus = space.sub([rs for rs in space.summands if rs[0] % 2 == 1], f"{space.variant}+")
    minus = space.sub([rs for rs in space.summands if rs[0] % 2 == 0], f"{space.variant}-")
    return HalfSpinSplit(plus, minus, parity_supported=space.n % 2 == 0)


def exchange_violation(op: OperatorMatrix, space: GradedSpace) -> Optional[str]:
    """Witness of an entry that keeps the r-parity, or None if op swaps Σ⁺ and Σ⁻."""
    for i, j, v in op.entries():
        if space.locate(i)[0] % 2 == space.locate(j)[0] % 2:
            return f"({space.basis.labels[i]}, {space.basis.labels[j]}): {v}"
    return None


# ═══════════════════════════════════════════════════════════════════════════════
# OPERATOR CONSTRUCTION
# ═══════════════════════════════════════════════════════════════════════════════

def graded_operator(domain: GradedSpace, codomain: GradedSpace, action: Action) -> OperatorMatrix:
    """
    Matrix of the map sending each basis vector sym ⊗ η to Σ action pieces.

    Pieces whose (Sym degree, Λ degree) is not a codomain summand are dropped.
    """
    if (domain.n, domain.vspace) != (codomain.n, codomain.vspace):
        raise SpaceMismatchError(f"{domain.basis.name} and {codomain.basis.name} are built on different spaces")
    columns: List[Dict[int, Ext2Scalar]] = []
    for r, s, _, pdim in domain.layout:
        pbasis = domain.primitive(s)
        for k in range(r + 1):
            sym = SymTensor.monomial(r, k)
            for j in range(pdim):
                column: Dict[int, Ext2Scalar] = {}
                for sym_out, eta_out in action(sym, pbasis.vectors[j]):
                    if sym_out.is_zero or eta_out.is_zero:
                        continue
                    if not codomain.contains(sym_out.degree, eta_out.degree):
                        continue
                    for i, v in codomain.vector(sym_out.degree, eta_out.degree, sym_out, eta_out).items():
                        column[i] = column.get(i, ZERO) + v
                columns.append(column)
    return OperatorMatrix.from_columns(domain.basis, codomain.basis, columns)


def _check_factors(h: HVector, e: SymplecticVector, space: GradedSpace) -> None:
    if e.space != space.vspace or e.dim != space.vdim:
        raise SpaceMismatchError(f"{e.space}({e.dim}) does not act on {space.basis.name}")


MU_COMPONENTS = ("mu+-", "mu-+", "mu++", "mu--")


def _component_pieces(name: str, h: HVector, e: SymplecticVector) -> Action:
    sym_up = name[2] == "+"
    wedge_up = name[3] == "+"

    def action(sym: SymTensor, eta: MultiVector) -> List[Piece]:
        if sym_up:
            sym_out = sym_mul(h, sym)
        elif sym.degree == 0:
            return []
        else:
            sym_out = sym_contract_circ(h, sym)
        eta_out = wedge_circ(e, eta) if wedge_up else contract_dual(e, eta, strict=False)
        return [(sym_out, eta_out)]

    return action


def mu_components(
    h: HVector,
    e: SymplecticVector,
    domain: GradedSpace,
    codomain: Optional[GradedSpace] = None,
) -> Dict[str, OperatorMatrix]:
    """
    The four pieces √2·(h· or h^#⌟∘) ⊗ (e∧∘ or e^#⌟) of Clifford multiplication.

    Keys follow (Sym degree change, Λ degree change): "mu+-" = √2 h·⊗e^#⌟,
    "mu-+" = √2 h^#⌟∘⊗e∧∘, "mu++" = √2 h·⊗e∧∘, "mu--" = √2 h^#⌟∘⊗e^#⌟.
    """
    codomain = codomain or domain
    _check_factors(h, e, domain)
    return {
        name: graded_operator(domain, codomain, _component_pieces(name, h, e)).scale(SQRT2)
        for name in MU_COMPONENTS
    }


def mu(h: HVector, e: SymplecticVector, space: GradedSpace) -> OperatorMatrix:
    """
    Clifford multiplication μ(h⊗e) = √2(h·⊗e^#⌟ + h^#⌟∘⊗e∧∘) on a spinor module.

    Raises:
        SpaceMismatchError: if e does not belong to the module's vector space
    """
    _check_factors(h, e, space)
    lower = _component_pieces("mu+-", h, e)
    raise_ = _component_pieces("mu-+", h, e)

    def action(sym: SymTensor, eta: MultiVector) -> List[Piece]:
        return list(lower(sym, eta)) + list(raise_(sym, eta))

    return graded_operator(space, space, action).scale(SQRT2)


@lru_cache(maxsize=None)
@timed(BASIS_BUILD_DURATION, {"kind": "mu"})
def _mu_basis(space: GradedSpace, a: int, b: int) -> OperatorMatrix:
    vec_cls = EVector if space.vspace == "E" else FVector
    return mu(HVector.basis(2, a), vec_cls.basis(space.vdim, b), space)


def mu_of(x: TensorProduct, space: GradedSpace) -> OperatorMatrix:
    """μ extended ℂ-linearly to arbitrary tensors of H ⊗ V."""
    if x.left_dim != 2 or x.right_dim != space.vdim:
        raise SpaceMismatchError("tensor does not match the spinor module")
    total = OperatorMatrix.zero(space.basis, space.basis)
    for a, b, c in x.terms():
        total = total + _mu_basis(space, a, b).scale(c)
    return total


# ═══════════════════════════════════════════════════════════════════════════════
# REAL CLIFFORD MULTIPLICATION
# ═══════════════════════════════════════════════════════════════════════════════

def clifford_real(t: TVector) -> OperatorMatrix:
    """Clifford multiplication by a real tangent vector on Σ: μ(Φ(1⊗t))."""
    return mu_of(phi(1, t), spinor_space(t.n, "base"))


def cone_phi(f: FVector) -> TensorProduct:
    """Φ_F(f) = (1/√2)(P⊗f + Q⊗Jf) ∈ ℂ² ⊗ F."""
    return (TensorProduct.pure(P_H, f) + TensorProduct.pure(Q_H, f.J())).scale(INV_SQRT2)


def clifford_cone(f: FVector) -> OperatorMatrix:
    """Clifford multiplication by a real vector of F on Σ̂."""
    return mu_of(cone_phi(f), spinor_space(f.n, "cone"))


def f_unit(q: Quaternion, n: int) -> FVector:
    """The quaternion q placed in the H summand of F."""
    return FVector.from_h(HVector.from_quaternion(q), n)


def f_real_vectors(n: int) -> List[FVector]:
    """Orthonormal ℝ-basis of F ≅ ℍⁿ⁺¹ in f_real_basis order."""
    out = []
    for slot in range(n + 1):
        for u in QUATERNION_UNITS:
            row = tuple(u if r == slot else Quaternion() for r in range(n + 1))
            out.append(FVector.from_quaternion_row(row))
    return out


def spin_action(a: TensorProduct, b: TensorProduct, space: GradedSpace) -> OperatorMatrix:
    """
    Spin representation of a∧b ∈ Λ²(ℂ²⊗F): ½(μ(a)μ(b) + g(a, b)·Id), g = σ⊗σ.
    """
    product = mu_of(a, space) @ mu_of(b, space)
    return (product + OperatorMatrix.identity(space.basis).scale(a.bilinear(b))).scale(HALF)


def clifford_S(f: FVector) -> OperatorMatrix:
    """
    Clifford multiplication of the link: ψ ↦ f·𝟙·ψ.

    Raises:
        ParameterError: unless f is orthogonal to 𝟙
    """
    one = FVector.from_h(ONE_H, f.n)
    if f.euclidean(one):
        raise ParameterError("clifford_S needs f ⊥ 𝟙")
    return clifford_cone(f) @ clifford_cone(one)


@dataclass
class CliffordConstant:
    """Outcome of the anticommutator scan {v_a·, v_b·} = 2c⟨v_a, v_b⟩."""
    constant: Optional[Ext2Scalar]
    pairs_checked: int
    witness: Optional[str] = None


# Measured at n = 2: {X·, Y·} = 2c⟨X, Y⟩ with c = −1 for clifford_real and clifford_cone.
CLIFFORD_CONSTANT = Ext2Scalar(-1)


def clifford_constant(
    operators: Sequence[OperatorMatrix],
    gram: Callable[[int, int], Ext2Scalar],
) -> CliffordConstant:
    """
    Find the single constant c with {A_a, A_b} = 2c·gram(a, b)·Id on all pairs.

    Args:
        operators: Clifford multiplications by an orthonormal family
        gram: inner products of that family
    """
    constant: Optional[Ext2Scalar] = None
    pairs = 0
    for a in range(len(operators)):
        for b in range(a, len(operators)):
            pairs += 1
            anti = operators[a].anticommutator(operators[b])
            g = gram(a, b)
            value = anti.scalar_value()
            if value is None:
                return CliffordConstant(None, pairs, f"pair ({a}, {b}): anticommutator is not scalar")
            if not g:
                if value:
                    return CliffordConstant(None, pairs, f"pair ({a}, {b}): orthogonal but {{·,·}} = {value}")
                continue
            c = value / (2 * g)
            if constant is None:
                constant = c
            elif c != constant:
                return CliffordConstant(None, pairs, f"pair ({a}, {b}): constant {c} != {constant}")
    return CliffordConstant(constant, pairs)


# ═══════════════════════════════════════════════════════════════════════════════
# INDUCED ACTIONS
# ═══════════════════════════════════════════════════════════════════════════════

def _apply_to_multivector(images: Sequence[SymplecticVector], eta: MultiVector) -> MultiVector:
    total = MultiVector.zero(eta.space, eta.dim, eta.degree)
    for key, c in eta.terms.items():
        term = MultiVector.scalar(eta.space, eta.dim, c)
        for idx in key:
            term = wedge(term, MultiVector.from_vector(images[idx]))
        total = total + term
    return total


def induced_action(space: GradedSpace, vector_map: Callable[[SymplecticVector], SymplecticVector]) -> OperatorMatrix:
    """Λ(g) on the exterior factor of a graded space, identity on Sym."""
    vec_cls = EVector if space.vspace == "E" else FVector
    images = [vector_map(vec_cls.basis(space.vdim, i)) for i in range(space.vdim)]

    def action(sym: SymTensor, eta: MultiVector) -> List[Piece]:
        return [(sym, _apply_to_multivector(images, eta))]

    return graded_operator(space, space, action)


def same_operator(lhs: OperatorMatrix, rhs: OperatorMatrix) -> Optional[str]:
    """None when equal, otherwise a triplet witness."""
    return describe_difference(lhs, rhs)
