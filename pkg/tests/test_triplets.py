"""
Test suite for sparse-triplet dumps.

Covers:
- Canonical scalar text and its parser
- Dumping an operator and reading it back
- Malformed input
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest

from src.algebra.linspaces import P_H, EVector
from src.algebra.scalars import HALF, I, SQRT2, Ext2Scalar
from src.algebra.spinors import mu, spinor_space
from src.utils.triplets import format_scalar, format_triplets, operator_triplets, parse_scalar, parse_triplets


class TestScalarText:
    """a+b√2+ci+di√2."""

    @pytest.mark.parametrize("value", [HALF, SQRT2, -I, Ext2Scalar(-1, 2, Fraction(-1, 3), 7)])
    def test_parse_inverts_format(self, value):
        assert parse_scalar(format_scalar(value)) == value

    def test_parse_tolerates_whitespace(self):
        assert parse_scalar("  0+1√2+0i+0i√2\n") == SQRT2

    @pytest.mark.parametrize("text", ["", "1/2", "1+2√2+3i", "a+0√2+0i+0i√2", "1.5+0√2+0i+0i√2"])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            parse_scalar(text)


class TestTriplets:
    """Operator dumps."""

    @pytest.fixture
    def op(self):
        return mu(P_H, EVector.basis(4, 1), spinor_space(2))

    def test_header(self, op):
        first = format_triplets(op).splitlines()[0]
        assert first == f"# {op.domain.name} -> {op.codomain.name} nnz={op.nnz}"

    def test_one_line_per_entry(self, op):
        text = format_triplets(op, header=False)
        assert len(text.splitlines()) == op.nnz
        assert all(line.count("\t") == 2 for line in text.splitlines())

    def test_read_back(self, op):
        expected = {(row, col): v for row, col, v in operator_triplets(op)}
        assert parse_triplets(format_triplets(op)) == expected

    def test_wrong_field_count(self):
        with pytest.raises(ValueError, match="line 1"):
            parse_triplets("a\tb\n")

    def test_duplicate_entry(self):
        line = "a\tb\t1+0√2+0i+0i√2\n"
        with pytest.raises(ValueError, match="duplicate"):
            parse_triplets(line + line)

    def test_comments_and_blank_lines_skipped(self):
        assert parse_triplets("# header\n\n") == {}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
