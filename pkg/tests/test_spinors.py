"""
Test suite for the spinor modules and Clifford multiplication.

Tests:
- Summand layout of Σ, Σ̂ and the Killing triple
- The grading of μ and the half-spin exchange
- The Clifford constant
- Induced actions
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.algebra.errors import ParameterError, SpaceMismatchError
from src.algebra.linalg import OperatorMatrix
from src.algebra.linspaces import ONE_H, P_H, Q_H, EVector, FVector, TensorProduct, TVector, inner_T
from src.algebra.spinors import (
    CLIFFORD_CONSTANT,
    MU_COMPONENTS,
    clifford_constant,
    clifford_cone,
    clifford_real,
    clifford_S,
    exchange_violation,
    f_real_vectors,
    half_spin_split,
    induced_action,
    killing_space,
    mu,
    mu_components,
    mu_of,
    same_operator,
    spinor_space,
)


class TestGradedSpaces:
    """Σ = ⊕ SymʳH ⊗ Λⁿ⁻ʳ∘E and Σ̂ = ⊕ SymʳH ⊗ Λⁿ⁺¹⁻ʳ∘F."""

    def test_base_dims_n2(self):
        space = spinor_space(2)
        assert space.summand_dims() == [5, 8, 3]
        assert space.dim == 16

    def test_cone_dims_n2(self):
        space = spinor_space(2, "cone")
        assert space.summand_dims() == [14, 28, 18, 4]
        assert space.dim == 64

    def test_base_dim_n3(self):
        assert spinor_space(3).dim == 64

    def test_killing_space(self):
        assert killing_space(2).summands == ((0, 2), (1, 1), (0, 0))
        assert killing_space(2).summand_dims() == [5, 8, 1]

    def test_killing_space_needs_n2(self):
        with pytest.raises(ParameterError):
            killing_space(1)

    def test_invalid_parameters(self):
        with pytest.raises(ParameterError):
            spinor_space(0)
        with pytest.raises(ValueError):
            spinor_space(2, "twisted")

    def test_locate_inverts_index(self):
        space = spinor_space(2)
        for i in range(space.dim):
            r, s, k, j = space.locate(i)
            assert space.index(r, s, k, j) == i
        with pytest.raises(IndexError):
            space.locate(space.dim)

    def test_labels(self):
        labels = spinor_space(2).basis.labels
        assert len(labels) == 16
        assert labels[0] == "r0:p0q0:E2.0"


class TestMu:
    """Clifford multiplication μ(h⊗e)."""

    @pytest.fixture
    def space(self):
        return spinor_space(2)

    def test_components_sum_to_mu(self, space):
        for b in range(4):
            e = EVector.basis(4, b)
            parts = mu_components(P_H, e, space)
            assert parts["mu+-"] + parts["mu-+"] == mu(P_H, e, space)

    def test_out_of_range_components_vanish(self, space):
        parts = mu_components(Q_H, EVector.basis(4, 2), space)
        assert set(parts) == set(MU_COMPONENTS)
        assert parts["mu++"].is_zero
        assert parts["mu--"].is_zero

    def test_exchanges_half_spinors(self, space):
        for b in range(4):
            assert exchange_violation(mu(Q_H, EVector.basis(4, b), space), space) is None

    def test_mu_of_pure_tensor(self, space):
        e = EVector.basis(4, 3)
        assert mu_of(TensorProduct.pure(Q_H, e), space) == mu(Q_H, e, space)

    def test_space_mismatch(self, space):
        with pytest.raises(SpaceMismatchError):
            mu(P_H, EVector.basis(6, 0), space)

    def test_half_spin_split(self, space):
        split = half_spin_split(space)
        assert split.plus.summand_dims() == [8]
        assert split.minus.summand_dims() == [5, 3]
        assert split.parity_supported
        assert not half_spin_split(spinor_space(3)).parity_supported


class TestClifford:
    """{X·, Y·} = 2c⟨X, Y⟩ with c = −1."""

    def test_real_constant(self):
        basis = TVector.real_basis(2)
        result = clifford_constant(
            [clifford_real(t) for t in basis],
            lambda a, b: inner_T(basis[a], basis[b]),
        )
        assert result.witness is None
        assert result.constant == CLIFFORD_CONSTANT
        assert result.pairs_checked == 36

    def test_cone_square(self):
        f = f_real_vectors(2)[5]
        square = clifford_cone(f) @ clifford_cone(f)
        assert square == OperatorMatrix.identity(spinor_space(2, "cone").basis).scale(CLIFFORD_CONSTANT)

    def test_constant_detects_mismatch(self):
        basis = TVector.real_basis(2)[:2]
        ops = [clifford_real(t) for t in basis]
        result = clifford_constant(ops, lambda a, b: 2 if a == b == 1 else (1 if a == b else 0))
        assert result.constant is None
        assert "constant" in result.witness

    @pytest.mark.parametrize("index", [1, 2, 3, 5, 9])
    def test_link_square(self, index):
        f = f_real_vectors(2)[index]
        s = clifford_S(f)
        identity = OperatorMatrix.identity(spinor_space(2, "cone").basis)
        assert s @ s == identity.scale(-f.euclidean(f))

    def test_link_needs_orthogonal_vector(self):
        with pytest.raises(ParameterError):
            clifford_S(FVector.from_h(ONE_H, 2))


class TestInducedAction:
    """Λ(g) on the exterior factor."""

    def test_identity_map(self):
        space = spinor_space(2)
        op = induced_action(space, lambda v: v)
        assert same_operator(op, OperatorMatrix.identity(space.basis)) is None

    def test_minus_identity_acts_by_degree_sign(self):
        space = spinor_space(2)
        op = induced_action(space, lambda v: -v)
        for i in range(space.dim):
            s = space.locate(i)[1]
            assert op.entry(i, i) == (-1) ** s


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
