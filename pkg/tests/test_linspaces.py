"""
Test suite for the defining representations H, E, F, T and ℂ⊗T ≅ H⊗E.

Tests:
- Symplectic forms and quaternionic structures
- Coordinate charts between quaternions and complex coordinates
- Φ, its inverse, base changes and equivariance
- The Cartan decomposition of sp(n+1)
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.algebra.errors import (
    CartanDecompositionError,
    GroupElementError,
    NonCanonicalBaseError,
    SpaceMismatchError,
)
from src.algebra.linspaces import (
    I_H,
    J_H,
    ONE_H,
    P_H,
    Q_H,
    CartanElement,
    CTVector,
    EVector,
    FVector,
    HVector,
    TensorProduct,
    TVector,
    act_group,
    act_tensor,
    basis_sigma,
    cartan_bracket_elements,
    he_basis,
    inner_T,
    phi,
    phi_complex,
    phi_family,
    phi_inv,
    phi_inv_tensor,
    qmat_identity,
    sigma_T,
)
from src.algebra.scalars import I, I_Q, INV_SQRT2, J_Q, K_Q, ONE_Q, QUATERNION_UNITS, Ext2Scalar, Quaternion


class TestSymplecticVectors:
    """σ, J and the charts of H and E."""

    def test_basis_sigma(self):
        assert basis_sigma(0, 1) == 1
        assert basis_sigma(1, 0) == -1
        assert basis_sigma(0, 2) == 0
        assert basis_sigma(2, 3) == 1

    def test_sigma_of_base(self):
        assert P_H.sigma(Q_H) == 1
        assert Q_H.sigma(P_H) == -1

    def test_J_maps_p_to_q(self):
        assert P_H.J() == Q_H
        assert Q_H.J() == -P_H

    def test_J_squares_to_minus_one(self):
        e = EVector((1, Ext2Scalar(0, 0, 2), 3, Ext2Scalar(1, 1, 1)))
        assert e.J().J() == -e

    def test_J_is_antilinear(self):
        e = EVector.basis(4, 0)
        assert e.scale(I).J() == e.J().scale(-I)

    def test_quaternion_chart(self):
        assert ONE_H == -Q_H
        assert J_H == P_H
        assert I_H == HVector((0, -I))
        for u in QUATERNION_UNITS:
            assert HVector.from_quaternion(u).to_quaternion() == u

    def test_h_is_two_dimensional(self):
        with pytest.raises(SpaceMismatchError):
            HVector((1, 0, 0))

    def test_mixed_spaces_rejected(self):
        with pytest.raises(SpaceMismatchError):
            EVector.basis(4, 0).sigma(EVector.basis(6, 1))

    def test_tvector_chart_roundtrip(self):
        t = TVector((Quaternion(1, 2, 3, 4), Quaternion(0, -1, 0, 5)))
        assert EVector.from_tvector(t).to_tvector() == t

    def test_f_parts(self):
        f = FVector.from_parts(P_H, EVector.basis(4, 3))
        assert f.n == 2
        assert f.h_part == P_H
        assert f.e_part == EVector.basis(4, 3)
        row = f.to_quaternion_row()
        assert FVector.from_quaternion_row(row) == f

    def test_euclidean_is_positive(self):
        for f in (FVector.basis(6, k) for k in range(6)):
            assert f.euclidean(f) == 1


class TestTangentModule:
    """The real module T = ℍⁿ and its complex symplectic form."""

    def test_real_basis_is_orthonormal(self):
        basis = TVector.real_basis(2)
        for a, t1 in enumerate(basis):
            for b, t2 in enumerate(basis):
                assert inner_T(t1, t2) == (1 if a == b else 0)

    def test_labels(self):
        assert TVector.real_basis_labels(1) == ("δ1", "iδ1", "jδ1", "kδ1")

    def test_sigma_T_matches_E(self):
        basis = TVector.real_basis(2)
        for t1 in basis:
            for t2 in basis:
                assert sigma_T(t1, t2) == EVector.from_tvector(t1).sigma(EVector.from_tvector(t2))

    def test_sigma_T_is_complex_linear(self):
        t1, t2 = TVector.unit(2, 0, J_Q), TVector.unit(2, 0, K_Q)
        assert sigma_T(t1.left_mul(I_Q), t2) == I * sigma_T(t1, t2)

    def test_complexified_scaling(self):
        v = CTVector(TVector.unit(1, 0), TVector.zero(1))
        assert v.scale(I) == CTVector(TVector.zero(1), TVector.unit(1, 0))


class TestPhi:
    """ℂ⊗T ≅ H⊗E."""

    @pytest.fixture(params=[2, 3])
    def n(self, request):
        return request.param

    def test_delta_image(self):
        expected = (TensorProduct.pure(P_H, EVector.basis(4, 0)) + TensorProduct.pure(Q_H, EVector.basis(4, 1))).scale(INV_SQRT2)
        assert phi(1, TVector.unit(2, 0)) == expected

    def test_inverse_after_phi(self, n):
        zero = TVector.zero(n)
        for t in TVector.real_basis(n):
            assert phi_inv_tensor(phi(1, t)) == CTVector(t, zero)
            assert phi_inv_tensor(phi(I, t)) == CTVector(zero, t)

    def test_phi_after_inverse(self):
        e = EVector.basis(4, 0)
        assert phi_complex(phi_inv(J_Q, e)) == TensorProduct.pure(P_H, e)
        for u in QUATERNION_UNITS:
            for b in range(4):
                e = EVector.basis(4, b)
                assert phi_complex(phi_inv(u, e)) == TensorProduct.pure(HVector.from_quaternion(u), e)

    def test_isometry(self, n):
        basis = TVector.real_basis(n)
        for t1 in basis:
            for t2 in basis:
                assert phi(1, t1).bilinear(phi(1, t2)) == inner_T(t1, t2)

    def test_real_structure(self, n):
        for t in TVector.real_basis(n):
            image = phi(1, t)
            assert image.conj_JJ() == image

    def test_base_change(self):
        t = TVector.unit(2, 1, K_Q)
        assert phi_family(P_H, Q_H, 1, t) == phi(1, t)
        assert phi_family(-P_H, -Q_H, 1, t) == -phi(1, t)

    def test_non_canonical_base(self):
        with pytest.raises(NonCanonicalBaseError):
            phi_family(P_H, P_H, 1, TVector.unit(2, 0))
        with pytest.raises(NonCanonicalBaseError):
            phi_family(P_H, -Q_H, 1, TVector.unit(2, 0))

    def test_equivariance(self):
        z = Quaternion(INV_SQRT2, INV_SQRT2)
        a = qmat_identity(2)
        for t in TVector.real_basis(2):
            assert phi(1, act_group(z, a, t)) == act_tensor(z, a, phi(1, t))

    def test_group_element_validation(self):
        with pytest.raises(GroupElementError):
            act_group(Quaternion(2), qmat_identity(2), TVector.unit(2, 0))
        bad = ((Quaternion(2), Quaternion()), (Quaternion(), ONE_Q))
        with pytest.raises(GroupElementError):
            act_group(ONE_Q, bad, TVector.unit(2, 0))

    def test_he_basis(self):
        basis = he_basis(2)
        assert basis.dim == 8
        assert basis.labels[0] == "p⊗δ1"


class TestCartanElement:
    """sp(1) ⊕ sp(n) ⊕ ℍⁿ as real operators on ℍⁿ⁺¹."""

    @pytest.fixture
    def skew(self):
        return ((I_Q, Quaternion()), (Quaternion(), Quaternion()))

    def test_real_matrix_roundtrip(self, skew):
        x = CartanElement(J_Q, skew, TVector((Quaternion(1, 0, 2), K_Q)))
        assert CartanElement.from_real_matrix(x.to_real_matrix(), 2) == x

    def test_rejects_real_sp1_part(self, skew):
        with pytest.raises(CartanDecompositionError):
            CartanElement(ONE_Q, skew, TVector.zero(2))

    def test_rejects_non_skew_spn_part(self):
        with pytest.raises(CartanDecompositionError):
            CartanElement(I_Q, qmat_identity(2), TVector.zero(2))

    def test_translations_bracket_into_isotropy(self):
        zero = CartanElement.zero(2)
        a = CartanElement(Quaternion(), zero.spn, TVector.unit(2, 0))
        b = CartanElement(Quaternion(), zero.spn, TVector.unit(2, 1, J_Q))
        assert a.is_translation and b.is_translation
        assert cartan_bracket_elements(a, b).is_isotropy

    def test_isotropy_is_a_subalgebra(self, skew):
        a = CartanElement(I_Q, skew, TVector.zero(2))
        b = CartanElement(J_Q, CartanElement.zero(2).spn, TVector.zero(2))
        assert cartan_bracket_elements(a, b).is_isotropy


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
