"""
Test suite for exterior and symmetric powers.

Tests:
- Wedge signs and σ-contractions
- Primitive subspaces and their dimensions
- The canonical bivector
- The projected wedge
- SymʳH products and contractions
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.algebra.errors import DegreeError, NonPrimitiveError, SpaceMismatchError
from src.algebra.linspaces import P_H, Q_H, EVector, HVector
from src.algebra.multilinear import (
    MultiVector,
    SymTensor,
    canonical_bivector,
    contract_dual,
    expected_primitive_dim,
    is_primitive,
    primitive_basis,
    sigma_contract,
    space_dim,
    sym2_action,
    sym_contract,
    sym_contract_circ,
    sym_mul,
    sym_product,
    wedge,
    wedge_circ,
)
from src.algebra.scalars import HALF, I, Ext2Scalar


def e_mono(*key, dim=4, c=1):
    return MultiVector.monomial("E", dim, key, c)


class TestWedge:
    """Signs and degrees of α ∧ β."""

    def test_anticommutes_on_vectors(self):
        assert wedge(e_mono(1), e_mono(0)) == -e_mono(0, 1)

    def test_repeated_factor_vanishes(self):
        assert wedge(e_mono(2), e_mono(2)).is_zero

    def test_associative(self):
        a, b, c = e_mono(3), e_mono(0), e_mono(1)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
        assert wedge(wedge(a, b), c) == e_mono(0, 1, 3)

    def test_degree_adds(self):
        assert wedge(e_mono(0, 1), e_mono(2)).degree == 3

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatchError):
            wedge(e_mono(0), MultiVector.monomial("F", 6, (0,)))

    def test_invalid_monomial(self):
        with pytest.raises(DegreeError):
            MultiVector("E", 4, 2, {(1, 0): 1})

    def test_embed_in_F(self):
        assert e_mono(0, 3).embed_in_F(2) == MultiVector.monomial("F", 6, (2, 5))
        assert space_dim("F", 2) == 6


class TestContractions:
    """e^#⌟ and σ⌟."""

    def test_contract_dual_is_sigma(self):
        e0 = EVector.basis(4, 0)
        assert contract_dual(e0, e_mono(1)) == MultiVector.scalar("E", 4, 1)
        assert contract_dual(e0, e_mono(0)).is_zero

    def test_contract_dual_degree_zero(self):
        scalar = MultiVector.scalar("E", 4)
        with pytest.raises(DegreeError):
            contract_dual(EVector.basis(4, 0), scalar)
        assert contract_dual(EVector.basis(4, 0), scalar, strict=False).is_zero

    def test_sigma_contract_of_pair(self):
        assert sigma_contract(e_mono(0, 1)) == MultiVector.scalar("E", 4, 1)
        assert sigma_contract(e_mono(0, 2)).is_zero

    def test_sigma_contract_needs_degree_two(self):
        with pytest.raises(DegreeError):
            sigma_contract(e_mono(0))

    def test_sigma_contract_is_linear(self):
        eta = e_mono(0, 1, c=I) + e_mono(2, 3, c=3)
        assert sigma_contract(eta) == MultiVector.scalar("E", 4, Ext2Scalar(3, 0, 1))


class TestPrimitive:
    """Λˢ∘V = ker σ⌟."""

    @pytest.mark.parametrize("dim", [4, 6])
    def test_dimensions_match_formula(self, dim):
        for s in range(dim + 1):
            assert primitive_basis("E", dim, s).dimension == expected_primitive_dim(dim, s)

    def test_n2_dimensions(self):
        assert [primitive_basis("E", 4, s).dimension for s in range(5)] == [1, 4, 5, 0, 0]

    def test_basis_vectors_are_primitive(self):
        for v in primitive_basis("F", 6, 2).vectors:
            assert is_primitive(v)

    def test_coordinates_roundtrip(self):
        basis = primitive_basis("E", 6, 2)
        eta = basis.vectors[0].scale(2) + basis.vectors[3].scale(I)
        coords = basis.coordinates(eta)
        assert basis.combine(coords) == eta

    def test_non_primitive_coordinates(self):
        basis = primitive_basis("E", 4, 2)
        with pytest.raises(NonPrimitiveError):
            basis.coordinates(canonical_bivector("E", 4))

    def test_basis_is_cached(self):
        assert primitive_basis("E", 4, 2) is primitive_basis("E", 4, 2)


class TestCanonicalBivector:
    """L with [σ⌟, L∧] = (m − d)·Id."""

    @pytest.mark.parametrize("dim", [2, 4, 6])
    def test_matches_sum_of_pairs(self, dim):
        expected = MultiVector.zero("E", dim, 2)
        for a in range(0, dim, 2):
            expected = expected + e_mono(a, a + 1, dim=dim)
        assert canonical_bivector("E", dim) == expected

    def test_contraction_is_m(self):
        assert sigma_contract(canonical_bivector("E", 6)) == MultiVector.scalar("E", 6, 3)

    def test_commutator_rule_on_vectors(self):
        L = canonical_bivector("E", 6)
        x = e_mono(4, dim=6)
        assert sigma_contract(wedge(L, x)) == x.scale(2)


class TestWedgeCirc:
    """e ∧∘ η stays primitive."""

    def test_result_is_primitive(self):
        for b in range(4):
            e = EVector.basis(4, b)
            for eta in primitive_basis("E", 4, 1).vectors:
                assert is_primitive(wedge_circ(e, eta))

    def test_agrees_with_wedge_when_sigma_vanishes(self):
        e = EVector.basis(4, 0)
        assert wedge_circ(e, e_mono(2)) == e_mono(0, 2)

    def test_rejects_non_primitive(self):
        with pytest.raises(NonPrimitiveError):
            wedge_circ(EVector.basis(4, 0), canonical_bivector("E", 4))


class TestSymTensor:
    """SymʳH as polynomials in p and q."""

    def test_product(self):
        s = SymTensor(1, (1, 1))
        t = SymTensor(1, (1, -1))
        assert sym_product(s, t) == SymTensor(2, (1, 0, -1))

    def test_mul_by_vector(self):
        assert sym_mul(Q_H, SymTensor.monomial(1, 0)) == SymTensor.monomial(2, 1)

    def test_contract_is_derivation(self):
        assert sym_contract(P_H, SymTensor.monomial(2, 1)) == SymTensor.from_vector(P_H)
        assert sym_contract(Q_H, SymTensor.monomial(2, 0)) == SymTensor.from_vector(P_H).scale(-2)

    def test_contract_circ(self):
        assert sym_contract_circ(P_H, SymTensor.monomial(2, 1)) == SymTensor.from_vector(P_H).scale(HALF)

    def test_contract_of_constant(self):
        with pytest.raises(DegreeError):
            sym_contract(P_H, SymTensor(0, (1,)))

    def test_wrong_coefficient_count(self):
        with pytest.raises(DegreeError):
            SymTensor(2, (1, 0))

    def test_sym2_action(self):
        p_sq = SymTensor.monomial(2, 0)
        assert sym2_action(p_sq, Q_H) == P_H.scale(2)
        assert sym2_action(p_sq, P_H) == HVector((0, 0))

    def test_sym2_action_needs_degree_two(self):
        with pytest.raises(DegreeError):
            sym2_action(SymTensor.monomial(1, 0), P_H)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
