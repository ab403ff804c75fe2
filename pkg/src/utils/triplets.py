"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          SPARSE TRIPLETS                                     ║
║                                                                              ║
║  Formats OperatorMatrix entries as (row-label, col-label, scalar) lines and  ║
║  reads them back, for dumps and cross-checks against other tools.            ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from src.algebra.linalg import OperatorMatrix
from src.algebra.scalars import Ext2Scalar

_NUM = r"[+-]?\d+(?:/\d+)?"
_SCALAR = re.compile(rf"^({_NUM})({_NUM})√2({_NUM})i({_NUM})i√2$")

Triplet = Tuple[str, str, Ext2Scalar]


def format_scalar(value: Ext2Scalar) -> str:
    """Canonical "a+b√2+ci+di√2" text of an exact scalar."""
    return str(value)


def parse_scalar(text: str) -> Ext2Scalar:
    """
    Inverse of format_scalar.

    Raises:
        ValueError: if the text is not in canonical form

    Example:
        >>> parse_scalar("1/2+0√2+0i+0i√2") == Ext2Scalar(Fraction(1, 2))
        True
    """
    match = _SCALAR.match(text.strip())
    if not match:
        raise ValueError(f"not a scalar in a+b√2+ci+di√2 form: {text!r}")
    return Ext2Scalar(*(Fraction(g) for g in match.groups()))


def operator_triplets(op: OperatorMatrix) -> List[Triplet]:
    """Nonzero entries in row-major order with basis labels."""
    rows, cols = op.codomain.labels, op.domain.labels
    return [(rows[i], cols[j], v) for i, j, v in op.entries()]


def format_triplets(op: OperatorMatrix, header: bool = True) -> str:
    """
    Tab-separated dump of an operator, one nonzero entry per line.

    Example output:
        # H⊗E(2) -> H⊗E(2) nnz=4
        p⊗δ1	q⊗jδ1	1+0√2+0i+0i√2
    """
    lines = []
    if header:
        lines.append(f"# {op.domain.name} -> {op.codomain.name} nnz={op.nnz}")
    for row, col, v in operator_triplets(op):
        lines.append(f"{row}\t{col}\t{format_scalar(v)}")
    return "\n".join(lines) + "\n"


def parse_triplets(text: str) -> Dict[Tuple[str, str], Ext2Scalar]:
    """
    Read a dump back into {(row-label, col-label): scalar}; comment lines are skipped.

    Raises:
        ValueError: on malformed lines or repeated entries
    """
    out: Dict[Tuple[str, str], Ext2Scalar] = {}
    for lineno, line in enumerate(_content_lines(text.splitlines()), start=1):
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 tab-separated fields, got {len(parts)}")
        key = (parts[0], parts[1])
        if key in out:
            raise ValueError(f"line {lineno}: duplicate entry {key}")
        out[key] = parse_scalar(parts[2])
    return out


def _content_lines(lines: Iterable[str]) -> Iterable[str]:
    for line in lines:
        if line.strip() and not line.startswith("#"):
            yield line
