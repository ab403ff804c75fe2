"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          MULTILINEAR ALGEBRA                                 ║
║                                                                              ║
║  Exterior powers ΛˢV with wedge and σ-contractions, the primitive            ║
║  subspaces Λˢ∘V as kernels of σ⌟, the canonical bivector, and the           ║
║  symmetric powers SymʳH as polynomials in p and q.                           ║
╚══════════════════════════════════════════════════════════════════════════════╝

ARCHITECTURE
============
    SymplecticVector ──► MultiVector.from_vector
                              │
                 wedge / contract_dual / sigma_contract
                              │
            ┌─────────────────┼───────────────────┐
            ▼                 ▼                   ▼
    primitive_basis     canonical_bivector     wedge_circ
    (kernel via rref,   (solved from the       e∧η − L∧(e^#⌟η)/(m−s+1)
     lru_cache)          commutator rule)

    HVector ──► SymTensor   sym_mul / sym_contract / sym_contract_circ

Spaces are tagged "H" (dim 2), "E" (dim 2n) and "F" (dim 2n+2, labels p, q
first). Monomials are strictly increasing index tuples.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

import structlog

from src.algebra.errors import DegreeError, NonPrimitiveError, SpaceMismatchError
from src.algebra.linalg import kernel_basis, solve_linear
from src.algebra.linspaces import HVector, SymplecticVector, basis_sigma
from src.algebra.scalars import ZERO, Ext2Scalar, ScalarLike
from src.utils.observability import BASIS_BUILDS, BASIS_BUILD_DURATION, timed

logger = structlog.get_logger(__name__)

Monomial = Tuple[int, ...]
SPACES = ("H", "E", "F")


def space_dim(space: str, n: int) -> int:
    """Complex dimension of H, E or F for quaternionic parameter n."""
    if space == "H":
        return 2
    if space == "E":
        return 2 * n
    if space == "F":
        return 2 * n + 2
    raise SpaceMismatchError(f"unknown space {space!r}")


# ═══════════════════════════════════════════════════════════════════════════════
# MULTIVECTORS
# ═══════════════════════════════════════════════════════════════════════════════

class MultiVector:
    """
    Homogeneous element of ΛˢV over ℚ(i)[√2].

    Attributes:
        space: "H", "E" or "F"
        dim: complex dimension of V
        degree: s
        terms: {strictly increasing index tuple: coefficient}, zeros pruned
    """

    __slots__ = ("space", "dim", "degree", "terms")

    def __init__(self, space: str, dim: int, degree: int, terms: Optional[Mapping[Monomial, ScalarLike]] = None):
        if space not in SPACES:
            raise SpaceMismatchError(f"unknown space {space!r}")
        if degree < 0:
            raise DegreeError("negative degree")
        self.space = space
        self.dim = dim
        self.degree = degree
        clean: Dict[Monomial, Ext2Scalar] = {}
        for key, v in (terms or {}).items():
            if len(key) != degree or any(b <= a for a, b in zip(key, key[1:])) or (key and key[-1] >= dim):
                raise DegreeError(f"invalid monomial {key} for Λ^{degree} of dimension {dim}")
            if v:
                clean[key] = Ext2Scalar.coerce(v)
        self.terms = clean

    @classmethod
    def _from_clean(cls, space: str, dim: int, degree: int, terms: Dict[Monomial, Ext2Scalar]) -> "MultiVector":
        obj = cls.__new__(cls)
        obj.space = space
        obj.dim = dim
        obj.degree = degree
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, space: str, dim: int, c: ScalarLike = 1) -> "MultiVector":
        return cls(space, dim, 0, {(): c})

    @classmethod
    def zero(cls, space: str, dim: int, degree: int) -> "MultiVector":
        return cls._from_clean(space, dim, degree, {})

    @classmethod
    def monomial(cls, space: str, dim: int, key: Monomial, c: ScalarLike = 1) -> "MultiVector":
        return cls(space, dim, len(key), {tuple(key): c})

    @classmethod
    def from_vector(cls, v: SymplecticVector) -> "MultiVector":
        return cls._from_clean(v.space, v.dim, 1, {(i,): c for i, c in enumerate(v.coords) if c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[Tuple[Monomial, Ext2Scalar]]:
        for key in sorted(self.terms):
            yield key, self.terms[key]

    def _check(self, other: "MultiVector", same_degree: bool = True) -> None:
        if (self.space, self.dim) != (other.space, other.dim):
            raise SpaceMismatchError(f"Λ{self.space}({self.dim}) vs Λ{other.space}({other.dim})")
        if same_degree and self.degree != other.degree:
            raise DegreeError(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other: "MultiVector") -> "MultiVector":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, ZERO) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return MultiVector._from_clean(self.space, self.dim, self.degree, out)

    def __sub__(self, other: "MultiVector") -> "MultiVector":
        return self + (-other)

    def __neg__(self) -> "MultiVector":
        return MultiVector._from_clean(self.space, self.dim, self.degree, {k: -v for k, v in self.terms.items()})

    def scale(self, c: ScalarLike) -> "MultiVector":
        c = Ext2Scalar.coerce(c)
        if not c:
            return MultiVector.zero(self.space, self.dim, self.degree)
        return MultiVector._from_clean(self.space, self.dim, self.degree, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c) -> "MultiVector":
        return self.scale(c)

    def embed_in_F(self, n: int) -> "MultiVector":
        """Include ΛH or ΛE into ΛF (H on labels 0, 1; E shifted by 2)."""
        if self.space == "F":
            return self
        shift = 0 if self.space == "H" else 2
        terms = {tuple(i + shift for i in k): v for k, v in self.terms.items()}
        return MultiVector._from_clean("F", space_dim("F", n), self.degree, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        return (self.space, self.dim, self.degree, self.terms) == (other.space, other.dim, other.degree, other.terms)

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"({v})e{list(k)}" for k, v in self.items()) or "0"
        return f"MultiVector[Λ^{self.degree}{self.space}]({body})"


def _merge(left: Monomial, right: Monomial) -> Optional[Tuple[int, Monomial]]:
    if set(left) & set(right):
        return None
    inversions = sum(1 for i in left for j in right if j < i)
    return (-1 if inversions % 2 else 1), tuple(sorted(left + right))


def wedge(alpha: MultiVector, beta: MultiVector) -> MultiVector:
    """Exterior product α ∧ β."""
    alpha._check(beta, same_degree=False)
    out: Dict[Monomial, Ext2Scalar] = {}
    for k1, v1 in alpha.terms.items():
        for k2, v2 in beta.terms.items():
            merged = _merge(k1, k2)
            if merged is None:
                continue
            sign, key = merged
            term = v1 * v2 if sign > 0 else -(v1 * v2)
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    out = {k: v for k, v in out.items() if v}
    return MultiVector._from_clean(alpha.space, alpha.dim, alpha.degree + beta.degree, out)


def _contract_with(sig: Mapping[int, Ext2Scalar], eta: MultiVector) -> MultiVector:
    """Anti-derivation extending e_c ↦ sig[c]."""
    out: Dict[Monomial, Ext2Scalar] = {}
    for key, v in eta.terms.items():
        for pos, idx in enumerate(key):
            s = sig.get(idx)
            if not s:
                continue
            rest = key[:pos] + key[pos + 1:]
            term = v * s if pos % 2 == 0 else -(v * s)
            prev = out.get(rest)
            out[rest] = term if prev is None else prev + term
    out = {k: v for k, v in out.items() if v}
    return MultiVector._from_clean(eta.space, eta.dim, eta.degree - 1, out)


def contract_index(b: int, eta: MultiVector) -> MultiVector:
    """ι_b = e_b^#⌟ for the b-th basis vector."""
    if eta.degree == 0:
        raise DegreeError("cannot contract a scalar")
    partner = b + 1 if b % 2 == 0 else b - 1
    return _contract_with({partner: Ext2Scalar.coerce(basis_sigma(b, partner))}, eta)


def contract_dual(e: SymplecticVector, eta: MultiVector, strict: bool = True) -> MultiVector:
    """
    e^#⌟η with e^# = σ(e, ·), extended as an anti-derivation.

    Args:
        e: vector of the same space as η
        eta: multivector
        strict: raise on degree 0 instead of returning zero

    Raises:
        DegreeError: η is a scalar and strict is set
        SpaceMismatchError: e and η live in different spaces
    """
    if (e.space, e.dim) != (eta.space, eta.dim):
        raise SpaceMismatchError(f"{e.space}({e.dim}) cannot contract Λ{eta.space}({eta.dim})")
    if eta.degree == 0:
        if strict:
            raise DegreeError("contraction of a degree-0 multivector")
        return MultiVector.zero(eta.space, eta.dim, 0)
    c = e.coords
    sig: Dict[int, Ext2Scalar] = {}
    for a in range(0, e.dim, 2):
        if c[a + 1]:
            sig[a] = -c[a + 1]
        if c[a]:
            sig[a + 1] = c[a]
    return _contract_with(sig, eta)


def sigma_contract(eta: MultiVector) -> MultiVector:
    """
    σ⌟η = Σ_a ι_{2a+1} ι_{2a} η, lowering the degree by two.

    Raises:
        DegreeError: if deg η < 2
    """
    if eta.degree < 2:
        raise DegreeError(f"σ⌟ needs degree ≥ 2, got {eta.degree}")
    total = MultiVector.zero(eta.space, eta.dim, eta.degree - 2)
    for a in range(0, eta.dim, 2):
        first = contract_index(a, eta)
        if first.is_zero:
            continue
        total = total + contract_index(a + 1, first)
    return total


def is_primitive(eta: MultiVector) -> bool:
    return eta.degree < 2 or sigma_contract(eta).is_zero


# ═══════════════════════════════════════════════════════════════════════════════
# PRIMITIVE BASES
# ═══════════════════════════════════════════════════════════════════════════════

def expected_primitive_dim(dim: int, s: int) -> int:
    """C(dim, s) − C(dim, s−2), clipped at zero."""
    lower = comb(dim, s - 2) if s >= 2 else 0
    return max(0, comb(dim, s) - lower)


class PrimitiveBasis:
    """
    Basis of Λˢ∘V = ker σ⌟ in deterministic order.

    The k-th vector has coefficient 1 on ``free_monomials[k]`` and 0 on every
    other free monomial, so coordinates are read off those monomials.
    """

    __slots__ = ("space", "dim", "degree", "vectors", "free_monomials")

    def __init__(self, space: str, dim: int, degree: int, vectors: Tuple[MultiVector, ...], free_monomials: Tuple[Monomial, ...]):
        self.space = space
        self.dim = dim
        self.degree = degree
        self.vectors = vectors
        self.free_monomials = free_monomials

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def combine(self, coords) -> MultiVector:
        total = MultiVector.zero(self.space, self.dim, self.degree)
        for c, v in zip(coords, self.vectors):
            if c:
                total = total + v.scale(c)
        return total

    def coordinates(self, eta: MultiVector, strict: bool = True) -> Tuple[Ext2Scalar, ...]:
        """
        Coordinates of a primitive multivector.

        Raises:
            NonPrimitiveError: if strict and η is not in the span
        """
        if (eta.space, eta.dim, eta.degree) != (self.space, self.dim, self.degree):
            raise SpaceMismatchError(
                f"Λ^{eta.degree}{eta.space}({eta.dim}) is not Λ^{self.degree}∘{self.space}({self.dim})"
            )
        coords = tuple(eta.terms.get(m, ZERO) for m in self.free_monomials)
        if strict and self.combine(coords) != eta:
            raise NonPrimitiveError(f"multivector of degree {eta.degree} is not primitive")
        return coords

    def __repr__(self) -> str:
        return f"PrimitiveBasis(Λ^{self.degree}∘{self.space}({self.dim}), dim={self.dimension})"


def _as_fraction(x: Ext2Scalar) -> Fraction:
    if not x.is_rational:
        raise ValueError(f"expected a rational coefficient, got {x}")
    return x.re_rat


def contraction_rows(space: str, dim: int, s: int) -> Tuple[List[Dict[int, Fraction]], List[Monomial]]:
    """Sparse rows of σ⌟ : ΛˢV → Λˢ⁻²V over ℚ, columns in lexicographic order."""
    source = list(combinations(range(dim), s))
    target = {m: i for i, m in enumerate(combinations(range(dim), s - 2))}
    rows: List[Dict[int, Fraction]] = [{} for _ in target]
    for col, mono in enumerate(source):
        image = sigma_contract(MultiVector.monomial(space, dim, mono))
        for key, v in image.terms.items():
            rows[target[key]][col] = _as_fraction(v)
    return rows, source


@lru_cache(maxsize=None)
@timed(BASIS_BUILD_DURATION, {"kind": "primitive"})
def primitive_basis(space: str, dim: int, s: int) -> PrimitiveBasis:
    """Exact basis of the kernel of σ⌟ on ΛˢV, computed once per (space, dim, s)."""
    if s < 2:
        monos = tuple(combinations(range(dim), s))
        vectors = tuple(MultiVector.monomial(space, dim, m) for m in monos)
        basis = PrimitiveBasis(space, dim, s, vectors, monos)
    else:
        rows, source = contraction_rows(space, dim, s)
        kernel, free = kernel_basis(rows, len(source))
        vectors = tuple(
            MultiVector._from_clean(space, dim, s, {source[c]: Ext2Scalar(v) for c, v in vec.items()})
            for vec in kernel
        )
        basis = PrimitiveBasis(space, dim, s, vectors, tuple(source[f] for f in free))
    BASIS_BUILDS.labels(space=space, degree=str(s)).inc()
    logger.debug("primitive_basis_built", space=space, dim=dim, degree=s, dimension=basis.dimension)
    return basis


# ═══════════════════════════════════════════════════════════════════════════════
# CANONICAL BIVECTOR
# ═══════════════════════════════════════════════════════════════════════════════

@lru_cache(maxsize=None)
@timed(BASIS_BUILD_DURATION, {"kind": "bivector"})
def canonical_bivector(space: str, dim: int) -> MultiVector:
    """
    The bivector L with [σ⌟, L∧] = (m − d)·Id on Λᵈ, m = dim/2.

    Solved exactly from the conditions in degrees 0 and 1; the solution is
    unique and agrees with Σ_a e_{2a} ∧ e_{2a+1}.

    Raises:
        InconsistentSystemError: if the conditions have no unique solution
    """
    m = dim // 2
    unknowns = list(combinations(range(dim), 2))
    equations: Dict[Tuple[int, Monomial], Dict[int, Fraction]] = {}
    rhs: Dict[Tuple[int, Monomial], Fraction] = {(-1, ()): Fraction(m)}
    for c in range(dim):
        rhs[(c, (c,))] = Fraction(m - 1)

    for u, pair in enumerate(unknowns):
        b = MultiVector.monomial(space, dim, pair)
        for key, v in sigma_contract(b).terms.items():
            equations.setdefault((-1, key), {})[u] = _as_fraction(v)
        for c in range(dim):
            lifted = wedge(b, MultiVector.monomial(space, dim, (c,)))
            if lifted.degree > dim:
                continue
            for key, v in sigma_contract(lifted).terms.items():
                equations.setdefault((c, key), {})[u] = _as_fraction(v)

    keys = sorted(set(equations) | set(rhs))
    solution = solve_linear(
        [equations.get(k, {}) for k in keys],
        [rhs.get(k, Fraction(0)) for k in keys],
        len(unknowns),
    )
    result = MultiVector(space, dim, 2, {unknowns[u]: Ext2Scalar(v) for u, v in solution.items()})
    logger.debug("canonical_bivector_solved", space=space, dim=dim, terms=len(result.terms))
    return result


def canonical_bivector_in_F(part: str, n: int) -> MultiVector:
    """L_H or L_E included into Λ²F."""
    return canonical_bivector(part, space_dim(part, n)).embed_in_F(n)


def wedge_circ(e: SymplecticVector, eta: MultiVector) -> MultiVector:
    """
    Projected wedge e ∧∘ η = e∧η − (1/(m−s+1)) L∧(e^#⌟η), m = dim/2, s = deg η.

    Raises:
        NonPrimitiveError: if η is not primitive
    """
    if not is_primitive(eta):
        raise NonPrimitiveError("wedge_circ needs a primitive argument")
    ev = MultiVector.from_vector(e)
    ev._check(eta, same_degree=False)
    raw = wedge(ev, eta)
    if eta.degree == 0 or eta.is_zero:
        return raw
    m = eta.dim // 2
    factor = Fraction(1, m - eta.degree + 1)
    correction = wedge(canonical_bivector(eta.space, eta.dim), contract_dual(e, eta))
    return raw - correction.scale(factor)


# ═══════════════════════════════════════════════════════════════════════════════
# SYMMETRIC POWERS  SymʳH
# ═══════════════════════════════════════════════════════════════════════════════

class SymTensor:
    """
    Element of SymʳH as Σ_k c_k p^{r−k} q^k.

    Example:
        >>> sym_contract_circ(P_H, SymTensor.monomial(2, 1)) == SymTensor.from_vector(P_H).scale(HALF)
        True
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        coeffs = tuple(Ext2Scalar.coerce(c) for c in coeffs)
        if degree < 0 or len(coeffs) != degree + 1:
            raise DegreeError(f"Sym^{degree} needs {degree + 1} coefficients")
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def monomial(cls, r: int, k: int, c: ScalarLike = 1) -> "SymTensor":
        """c·p^{r−k} q^k."""
        return cls(r, tuple(Ext2Scalar.coerce(c) if i == k else ZERO for i in range(r + 1)))

    @classmethod
    def zero(cls, r: int) -> "SymTensor":
        return cls(r, (ZERO,) * (r + 1))

    @classmethod
    def from_vector(cls, h: HVector) -> "SymTensor":
        return cls(1, h.coords)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def _check(self, other: "SymTensor") -> None:
        if self.degree != other.degree:
            raise DegreeError(f"Sym^{self.degree} vs Sym^{other.degree}")

    def __add__(self, other: "SymTensor") -> "SymTensor":
        self._check(other)
        return SymTensor(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        self._check(other)
        return SymTensor(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "SymTensor":
        return SymTensor(self.degree, tuple(-a for a in self.coeffs))

    def scale(self, c: ScalarLike) -> "SymTensor":
        c = Ext2Scalar.coerce(c)
        return SymTensor(self.degree, tuple(c * a for a in self.coeffs))

    def __rmul__(self, c) -> "SymTensor":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, self.coeffs))

    def __repr__(self) -> str:
        r = self.degree
        body = " + ".join(f"({c})p^{r - k}q^{k}" for k, c in enumerate(self.coeffs) if c) or "0"
        return f"SymTensor[{r}]({body})"


def sym_product(s: SymTensor, t: SymTensor) -> SymTensor:
    """Polynomial product Sym^r ⊗ Sym^r' → Sym^{r+r'}."""
    out = [ZERO] * (s.degree + t.degree + 1)
    for k1, a in enumerate(s.coeffs):
        if not a:
            continue
        for k2, b in enumerate(t.coeffs):
            if b:
                out[k1 + k2] = out[k1 + k2] + a * b
    return SymTensor(s.degree + t.degree, out)


def sym_mul(h: HVector, s: SymTensor) -> SymTensor:
    """h · s ∈ Sym^{r+1}H."""
    return sym_product(SymTensor.from_vector(h), s)


def sym_contract(h: HVector, s: SymTensor) -> SymTensor:
    """
    h^#⌟s, the derivation with h^#⌟p = σ(h, p) and h^#⌟q = σ(h, q).

    Raises:
        DegreeError: on Sym⁰
    """
    r = s.degree
    if r == 0:
        raise DegreeError("contraction of Sym⁰")
    sp = h.sigma(HVector((1, 0)))
    sq = h.sigma(HVector((0, 1)))
    out = [ZERO] * r
    for k, c in enumerate(s.coeffs):
        if not c:
            continue
        if r - k:
            out[k] = out[k] + c * sp * (r - k)
        if k:
            out[k - 1] = out[k - 1] + c * sq * k
    return SymTensor(r - 1, out)


def sym_contract_circ(h: HVector, s: SymTensor) -> SymTensor:
    """Normalized contraction (1/r)·h^#⌟s."""
    return sym_contract(h, s).scale(Fraction(1, s.degree))


def sym2_action(s: SymTensor, h: HVector) -> HVector:
    """Action of s ∈ Sym²H ≅ sp(1) on H, with h1h2 · h = σ(h1, h)h2 + σ(h2, h)h1."""
    if s.degree != 2:
        raise DegreeError("Sym²H acts on H; got degree {}".format(s.degree))
    p, q = HVector((1, 0)), HVector((0, 1))
    c0, c1, c2 = s.coeffs
    return (
        p.scale(2 * p.sigma(h) * c0)
        + (q.scale(p.sigma(h)) + p.scale(q.sigma(h))).scale(c1)
        + q.scale(2 * q.sigma(h) * c2)
    )
