"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                       EXACT SPARSE LINEAR ALGEBRA                            ║
║                                                                              ║
║  Sparse operator matrices between labelled bases, Gauss-Jordan elimination  ║
║  over any exact field, and an independent sympy rank oracle.                ║
╚══════════════════════════════════════════════════════════════════════════════╝

ARCHITECTURE
============
    ┌──────────────┐     columns      ┌─────────────────┐
    │ LabeledBasis │ ───────────────► │ OperatorMatrix  │  row-major dict-of-dicts
    │ name, labels │                  │ domain→codomain │  @ + - commutator ...
    └──────────────┘                  └─────────────────┘

    rref(rows) ──► kernel_basis(rows)      Fraction or Ext2Scalar entries
               └─► solve_linear(rows, rhs)

    sympy_rank(rows)                        SDM over QQ, separate code path
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, TypeVar

import numpy as np
from sympy import QQ
from sympy.polys.matrices.sdm import SDM

from src.algebra.errors import InconsistentSystemError, SpaceMismatchError
from src.algebra.scalars import ONE, ZERO, Ext2Scalar, ScalarLike

F = TypeVar("F")
SparseRow = Dict[int, F]
SparseVector = Dict[int, Ext2Scalar]


@dataclass(frozen=True)
class LabeledBasis:
    """An ordered basis, identified by a name and one label per vector."""
    name: str
    labels: Tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"LabeledBasis({self.name!r}, dim={self.dim})"


# ═══════════════════════════════════════════════════════════════════════════════
# OPERATOR MATRICES
# ═══════════════════════════════════════════════════════════════════════════════

class OperatorMatrix:
    """
    Exact sparse matrix of a linear map ``domain → codomain``.

    Entries are stored row-major, zero entries are never stored. Composition
    ``A @ B`` means A∘B and requires ``B.codomain == A.domain``.
    """

    __slots__ = ("domain", "codomain", "_rows")

    def __init__(
        self,
        domain: LabeledBasis,
        codomain: LabeledBasis,
        rows: Optional[Mapping[int, Mapping[int, ScalarLike]]] = None,
    ):
        self.domain = domain
        self.codomain = codomain
        self._rows: Dict[int, Dict[int, Ext2Scalar]] = {}
        for i, row in (rows or {}).items():
            clean = {j: Ext2Scalar.coerce(v) for j, v in row.items() if v}
            if clean:
                self._rows[i] = clean

    @classmethod
    def _from_clean(cls, domain, codomain, rows) -> "OperatorMatrix":
        obj = cls.__new__(cls)
        obj.domain = domain
        obj.codomain = codomain
        obj._rows = rows
        return obj

    @classmethod
    def from_columns(
        cls,
        domain: LabeledBasis,
        codomain: LabeledBasis,
        columns: Sequence[Mapping[int, ScalarLike]],
    ) -> "OperatorMatrix":
        """Build the matrix whose j-th column is the image of the j-th domain vector."""
        if len(columns) != domain.dim:
            raise SpaceMismatchError(f"{len(columns)} columns for a domain of dimension {domain.dim}")
        rows: Dict[int, Dict[int, Ext2Scalar]] = {}
        for j, column in enumerate(columns):
            for i, v in column.items():
                if v:
                    rows.setdefault(i, {})[j] = Ext2Scalar.coerce(v)
        return cls._from_clean(domain, codomain, rows)

    @classmethod
    def identity(cls, basis: LabeledBasis) -> "OperatorMatrix":
        return cls._from_clean(basis, basis, {i: {i: ONE} for i in range(basis.dim)})

    @classmethod
    def zero(cls, domain: LabeledBasis, codomain: LabeledBasis) -> "OperatorMatrix":
        return cls._from_clean(domain, codomain, {})

    # ───────────────────────────────────────────────────────────────────────────
    # Access
    # ───────────────────────────────────────────────────────────────────────────

    @property
    def shape(self) -> Tuple[int, int]:
        return self.codomain.dim, self.domain.dim

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    @property
    def is_zero(self) -> bool:
        return not self._rows

    def entry(self, i: int, j: int) -> Ext2Scalar:
        return self._rows.get(i, {}).get(j, ZERO)

    def entries(self) -> Iterator[Tuple[int, int, Ext2Scalar]]:
        """Nonzero entries as (row, col, value), sorted."""
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def column(self, j: int) -> SparseVector:
        return {i: row[j] for i, row in self._rows.items() if j in row}

    def apply(self, vector: Mapping[int, ScalarLike]) -> SparseVector:
        out: SparseVector = {}
        for i, row in self._rows.items():
            acc = ZERO
            for j, a in row.items():
                v = vector.get(j)
                if v:
                    acc = acc + a * v
            if acc:
                out[i] = acc
        return out

    def to_numpy(self) -> np.ndarray:
        arr = np.zeros(self.shape, dtype=np.complex128)
        for i, j, v in self.entries():
            arr[i, j] = v.to_float()
        return arr

    # ───────────────────────────────────────────────────────────────────────────
    # Algebra
    # ───────────────────────────────────────────────────────────────────────────

    def _check_same_spaces(self, other: "OperatorMatrix") -> None:
        if self.domain != other.domain or self.codomain != other.codomain:
            raise SpaceMismatchError(
                f"operators {self.domain.name}→{self.codomain.name} and "
                f"{other.domain.name}→{other.codomain.name} are not comparable"
            )

    def _combine(self, other: "OperatorMatrix", sign: int) -> "OperatorMatrix":
        self._check_same_spaces(other)
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, orow in other._rows.items():
            row = rows.setdefault(i, {})
            for j, v in orow.items():
                nv = row.get(j, ZERO) + v if sign > 0 else row.get(j, ZERO) - v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
            if not row:
                del rows[i]
        return OperatorMatrix._from_clean(self.domain, self.codomain, rows)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self._combine(other, +1)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self) -> "OperatorMatrix":
        return self.scale(-1)

    def scale(self, c: ScalarLike) -> "OperatorMatrix":
        c = Ext2Scalar.coerce(c)
        if not c:
            return OperatorMatrix.zero(self.domain, self.codomain)
        rows = {i: {j: c * v for j, v in r.items()} for i, r in self._rows.items()}
        return OperatorMatrix._from_clean(self.domain, self.codomain, rows)

    def __mul__(self, c) -> "OperatorMatrix":
        if isinstance(c, (int, Fraction, Ext2Scalar)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if other.codomain != self.domain:
            raise SpaceMismatchError(
                f"cannot compose {self.domain.name}→{self.codomain.name} after "
                f"{other.domain.name}→{other.codomain.name}"
            )
        rows: Dict[int, Dict[int, Ext2Scalar]] = {}
        for i, row in self._rows.items():
            acc: Dict[int, Ext2Scalar] = {}
            for k, a in row.items():
                orow = other._rows.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    prev = acc.get(j)
                    acc[j] = a * b if prev is None else prev + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return OperatorMatrix._from_clean(other.domain, self.codomain, rows)

    def commutator(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self @ other - other @ self

    def anticommutator(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self @ other + other @ self

    def select(
        self,
        row_indices: Sequence[int],
        col_indices: Sequence[int],
        domain: LabeledBasis,
        codomain: LabeledBasis,
    ) -> "OperatorMatrix":
        """Sub-matrix on the given rows/columns, re-indexed onto new bases."""
        col_pos = {j: k for k, j in enumerate(col_indices)}
        rows: Dict[int, Dict[int, Ext2Scalar]] = {}
        for new_i, i in enumerate(row_indices):
            row = self._rows.get(i)
            if not row:
                continue
            picked = {col_pos[j]: v for j, v in row.items() if j in col_pos}
            if picked:
                rows[new_i] = picked
        return OperatorMatrix._from_clean(domain, codomain, rows)

    def scalar_value(self) -> Optional[Ext2Scalar]:
        """Return c when the operator equals c·Id, otherwise None."""
        if self.domain != self.codomain:
            return None
        if not self._rows:
            return ZERO
        c = self._rows.get(0, {}).get(0)
        if c is None:
            return None
        for i in range(self.domain.dim):
            row = self._rows.get(i)
            if row is None or len(row) != 1 or row.get(i) != c:
                return None
        return c

    def first_difference(self, other: "OperatorMatrix") -> Optional[Tuple[int, int, Ext2Scalar, Ext2Scalar]]:
        """First (row, col, self_value, other_value) where the two matrices disagree."""
        self._check_same_spaces(other)
        keys = set()
        for i, row in self._rows.items():
            keys.update((i, j) for j in row)
        for i, row in other._rows.items():
            keys.update((i, j) for j in row)
        for i, j in sorted(keys):
            a, b = self.entry(i, j), other.entry(i, j)
            if a != b:
                return i, j, a, b
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.domain == other.domain and self.codomain == other.codomain and self._rows == other._rows

    __hash__ = None

    def __repr__(self) -> str:
        return f"OperatorMatrix({self.domain.name}→{self.codomain.name}, nnz={self.nnz})"


def describe_difference(lhs: OperatorMatrix, rhs: OperatorMatrix) -> Optional[str]:
    """Sparse-triplet witness for the first mismatching entry, or None."""
    diff = lhs.first_difference(rhs)
    if diff is None:
        return None
    i, j, a, b = diff
    return f"({lhs.codomain.labels[i]}, {lhs.domain.labels[j]}): {a} != {b}"


# ═══════════════════════════════════════════════════════════════════════════════
# EXACT ELIMINATION
# ═══════════════════════════════════════════════════════════════════════════════

def rref(rows: Sequence[Mapping[int, F]], ncols: int) -> Tuple[List[Dict[int, F]], List[int]]:
    """
    Reduced row echelon form of a sparse matrix over an exact field.

    Args:
        rows: Sparse rows ``{col: value}``; values need +, -, *, / and truthiness
        ncols: Number of columns

    Returns:
        (nonzero reduced rows, pivot columns), pivots ascending
    """
    work: List[Dict[int, F]] = [{j: v for j, v in r.items() if v} for r in rows]
    work = [r for r in work if r]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        sel = next((k for k in range(rank, len(work)) if work[k].get(col)), None)
        if sel is None:
            continue
        work[rank], work[sel] = work[sel], work[rank]
        piv = work[rank][col]
        prow = {j: v / piv for j, v in work[rank].items()}
        work[rank] = prow
        for k in range(len(work)):
            if k == rank:
                continue
            f = work[k].get(col)
            if not f:
                continue
            target = work[k]
            for j, v in prow.items():
                prev = target.get(j)
                nv = -(f * v) if prev is None else prev - f * v
                if nv:
                    target[j] = nv
                else:
                    target.pop(j, None)
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def kernel_basis(
    rows: Sequence[Mapping[int, F]],
    ncols: int,
    one: F = Fraction(1),
) -> Tuple[List[Dict[int, F]], List[int]]:
    """
    Basis of the null space, one vector per free column.

    Returns:
        (kernel vectors, free columns); vector k has ``one`` at free column k
        and zero at every other free column.
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis: List[Dict[int, F]] = []
    for f in free:
        vec: Dict[int, F] = {f: one}
        for prow, p in zip(reduced, pivots):
            v = prow.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis, free


def solve_linear(
    rows: Sequence[Mapping[int, F]],
    rhs: Sequence[F],
    ncols: int,
    require_unique: bool = True,
) -> Dict[int, F]:
    """
    Solve ``rows · x = rhs`` exactly.

    Raises:
        InconsistentSystemError: no solution, or several when ``require_unique``
    """
    augmented = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = b
        augmented.append(row)
    reduced, pivots = rref(augmented, ncols + 1)
    if pivots and pivots[-1] == ncols:
        raise InconsistentSystemError("linear system has no solution")
    if require_unique and len(pivots) != ncols:
        raise InconsistentSystemError(f"solution space has dimension {ncols - len(pivots)}")
    return {p: prow[ncols] for prow, p in zip(reduced, pivots) if prow.get(ncols)}


def sympy_rank(rows: Mapping[int, Mapping[int, Fraction]], shape: Tuple[int, int]) -> int:
    """Rank over ℚ computed by sympy's sparse domain matrices."""
    elems = {
        i: {j: QQ(v.numerator, v.denominator) for j, v in row.items() if v}
        for i, row in rows.items()
    }
    elems = {i: r for i, r in elems.items() if r}
    _, pivots = SDM(elems, shape, QQ).rref()
    return len(pivots)


def apply_columnwise(
    domain: LabeledBasis,
    codomain: LabeledBasis,
    image: Callable[[int], Mapping[int, ScalarLike]],
) -> OperatorMatrix:
    """Matrix of the linear map sending domain vector j to ``image(j)``."""
    return OperatorMatrix.from_columns(domain, codomain, [image(j) for j in range(domain.dim)])
