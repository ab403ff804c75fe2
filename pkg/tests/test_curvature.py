"""
Test suite for the curvature algebra.

Tests:
- 𝔑 symmetry validation and the assembled curvature
- The Sym²H ≅ sp(1) dictionary
- Wedge operators and the Cartan bracket
- Grading of the Cartan decomposition
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest

from src.algebra.curvature import (
    SP1_DICTIONARY,
    CurvatureKind,
    WedgeSum,
    assemble_curvature,
    cartan_bracket,
    dot,
    hyper_hyper_bracket,
    omega,
    R_H_factor,
    re_display,
    rh_display,
    sp1_action,
    sp1_wedge_identity,
    sym2_endomorphism,
    sym2H_iso,
    symmetrize4,
    validate_frak_r,
    verify_appendix_B,
    verify_bianchi,
    verify_cartan_bracket_oracle,
    verify_cartan_grading,
    verify_curv_dictionary,
    verify_sp1_dictionary,
    verify_sym2H_brackets,
)
from src.algebra.errors import ParameterError, SpaceMismatchError, SymmetryError
from src.algebra.linalg import LabeledBasis
from src.algebra.linspaces import P_H, CartanElement, FVector, TensorProduct, TVector, f_real_basis, phi
from src.algebra.multilinear import SymTensor
from src.algebra.scalars import I, I_Q, J_Q, K_Q, ONE_Q, SQRT2, Ext2Scalar


def unit(dim, i):
    return tuple(Ext2Scalar(1 if k == i else 0) for k in range(dim))


class TestCurvatureOperator:
    """R = −κ/(8n(n+2))·(R^H + R^E) + R^hyper."""

    def test_coefficient(self):
        curvature = assemble_curvature(128, None, 2)
        assert curvature.coefficient == Fraction(-2)
        assert curvature.kind is CurvatureKind.TOTAL

    def test_symmetrize4(self):
        tensor = symmetrize4({(0, 1, 1, 0): 2})
        assert len(tensor) == 6
        assert tensor[(1, 0, 1, 0)] == 2
        validate_frak_r(tensor, 1)

    def test_rejects_asymmetric(self):
        with pytest.raises(SymmetryError):
            validate_frak_r({(0, 0, 0, 1): Ext2Scalar(1)}, 2)
        with pytest.raises(SymmetryError):
            assemble_curvature(128, {(0, 0, 0, 1): Ext2Scalar(1)}, 2)

    def test_rejects_out_of_range_index(self):
        with pytest.raises(SymmetryError):
            validate_frak_r(symmetrize4({(0, 0, 0, 4): 1}), 2)

    def test_rational_kappa_as_scalar(self):
        assert assemble_curvature(Ext2Scalar(128), None, 2).coefficient == Fraction(-2)

    @pytest.mark.parametrize("kappa", [Ext2Scalar(1) + SQRT2, I, Ext2Scalar(128, 0, 1)])
    def test_rejects_irrational_kappa(self, kappa):
        with pytest.raises(ParameterError):
            assemble_curvature(kappa, None, 2)

    def test_bianchi_of_zero_curvature(self):
        verdict = verify_bianchi(assemble_curvature(0, None, 2))
        assert verdict.holds
        assert verdict.details == {"triples": 56, "hyper_part": False}

    def test_needs_h_tensor_e(self):
        x = TensorProduct.pure(P_H, FVector.basis(6, 0))
        with pytest.raises(SpaceMismatchError):
            R_H_factor(x, x)


class TestSp1Dictionary:
    """Sym²H acting on H as −(·)z."""

    def test_iso_rejects_real_quaternion(self):
        with pytest.raises(ValueError):
            sym2H_iso(ONE_Q)

    def test_iso_of_i(self):
        assert sym2H_iso(I_Q) == SymTensor(2, (0, -I, 0))

    @pytest.mark.parametrize("z", [I_Q, J_Q, K_Q])
    def test_iso_acts_by_right_multiplication(self, z):
        assert sym2_endomorphism(sym2H_iso(z)) == sp1_action(z)

    def test_table(self):
        verdict = verify_sp1_dictionary()
        assert verdict.holds, verdict.witness
        assert len(verdict.details["table"]) == 12
        assert set(SP1_DICTIONARY) == {"i", "j", "k"}

    def test_brackets(self):
        verdict = verify_sym2H_brackets()
        assert verdict.holds, verdict.witness

    def test_curvature_dictionary(self):
        verdict = verify_curv_dictionary(2)
        assert verdict.holds, verdict.witness
        assert verdict.details["pairs"] == 64


class TestWedgeSum:
    """(a∧b)x = ⟨a,x⟩b − ⟨b,x⟩a."""

    @pytest.fixture
    def basis3(self):
        return LabeledBasis("R^3", ("x0", "x1", "x2"))

    def test_apply(self):
        w = WedgeSum.single(unit(2, 0), unit(2, 1))
        assert w.apply(unit(2, 0)) == unit(2, 1)
        assert w.apply(unit(2, 1)) == tuple(-c for c in unit(2, 0))

    def test_matrix_matches_apply(self, basis3):
        w = WedgeSum.single(unit(3, 0), unit(3, 2), 3)
        m = w.matrix(basis3)
        for j in range(3):
            image = w.apply(unit(3, j))
            for i in range(3):
                assert m.entry(i, j) == image[i]

    def test_antisymmetric(self, basis3):
        a, b = unit(3, 0), unit(3, 1)
        total = WedgeSum.single(a, b) + WedgeSum.single(b, a)
        assert total.matrix(basis3).is_zero

    def test_bracket_is_commutator(self, basis3):
        w1 = WedgeSum.single(unit(3, 0), unit(3, 1))
        w2 = WedgeSum.single(unit(3, 1), unit(3, 2))
        commutator = w1.matrix(basis3).commutator(w2.matrix(basis3))
        assert cartan_bracket(w1, w2).matrix(basis3) == commutator

    def test_bracket_oracle(self):
        verdict = verify_cartan_bracket_oracle(tuples=5, seed=7)
        assert verdict.holds, verdict.witness
        assert verdict.details == {"tuples": 5, "seed": 7}

    def test_dot_length_mismatch(self):
        with pytest.raises(SpaceMismatchError):
            dot(unit(2, 0), unit(3, 0))

    def test_sp1_wedge_identity(self):
        verdict = sp1_wedge_identity()
        assert verdict.holds, verdict.witness
        assert verdict.details["cases"] == 12


class TestCartanDecomposition:
    """sp(n+1) = sp(1) ⊕ sp(n) ⊕ ℍⁿ."""

    def test_grading(self):
        verdict = verify_cartan_grading(2)
        assert verdict.holds, verdict.witness
        assert verdict.details["translations"] == 8

    def test_omega_has_four_terms(self):
        w = omega(TVector.unit(2, 0))
        assert len(w.terms) == 4
        assert len(w.terms[0][1]) == f_real_basis(2).dim


class TestHyperHyperBracket:
    """½[ω∧ω](t1, t2) as an element of sp(1) ⊕ sp(n)."""

    @pytest.fixture
    def pair(self):
        basis = TVector.real_basis(2)
        return basis[0], basis[5]

    def test_lands_in_isotropy(self, pair):
        element = hyper_hyper_bracket(*pair)
        assert isinstance(element, CartanElement)
        assert element.is_isotropy

    def test_vanishes_on_equal_arguments(self):
        t = TVector.real_basis(2)[3]
        assert hyper_hyper_bracket(t, t) == CartanElement.zero(2)

    def test_sp1_part_is_scaled_R_H(self, pair):
        t1, t2 = pair
        element = hyper_hyper_bracket(t1, t2)
        assert element.sp1_on_H() == R_H_factor(phi(1, t1), phi(1, t2)).scale(2)

    def test_blocks_match_displays(self, pair):
        t1, t2 = pair
        m_basis = f_real_basis(2)
        h_rows, e_rows = list(range(4)), list(range(4, m_basis.dim))
        h_sub = LabeledBasis("F_real(2)|H", m_basis.labels[:4])
        e_sub = LabeledBasis("F_real(2)|E", m_basis.labels[4:])
        bracket = hyper_hyper_bracket(t1, t2).to_real_matrix()
        rh = rh_display(t1, t2).matrix(m_basis)
        re = re_display(t1, t2).matrix(m_basis)
        assert bracket.select(h_rows, h_rows, h_sub, h_sub) == rh.select(h_rows, h_rows, h_sub, h_sub)
        assert bracket.select(e_rows, e_rows, e_sub, e_sub) == re.select(e_rows, e_rows, e_sub, e_sub)

    def test_kappa_scales_linearly(self, pair):
        doubled = hyper_hyper_bracket(*pair, kappa=2 * 16 * 2 * 4)
        single = hyper_hyper_bracket(*pair)
        assert doubled.to_real_matrix() == single.to_real_matrix().scale(2)

    def test_rejects_irrational_kappa(self, pair):
        with pytest.raises(ParameterError):
            hyper_hyper_bracket(*pair, kappa=SQRT2)


class TestCurvatureClaims:
    """The ℍⁿ bracket against R^H, R^E and their displays at n = 2."""

    @pytest.fixture(scope="class")
    def report(self):
        return verify_appendix_B(2)

    def test_sp1_claim(self, report):
        assert report.sp1_claim.holds, report.sp1_claim.witness
        assert report.sp1_claim.details == {"pairs": 28, "coefficient": "2"}

    def test_rh_display(self, report):
        assert report.rh_display.holds, report.rh_display.witness

    def test_re_display(self, report):
        assert report.re_display.holds, report.re_display.witness

    def test_flat_consistency(self, report):
        assert report.flat_consistency.holds, report.flat_consistency.witness

    def test_spn_claim_has_verdict(self, report):
        claim = report.spn_claim
        assert claim.holds or claim.witness.startswith("(")

    def test_rejects_irrational_kappa(self):
        with pytest.raises(ParameterError):
            verify_appendix_B(2, Ext2Scalar(128) + SQRT2)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
