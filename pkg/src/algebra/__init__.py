"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          ALGEBRA MODULE INIT                                 ║
║                                                                              ║
║  Exact arithmetic over ℚ(i)[√2] and the representation theory built on it:  ║
║  defining representations, exterior and symmetric powers, spinor modules,    ║
║  the Killing system and curvature of quaternionic projective space.          ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""
from src.algebra.errors import AlgebraError
from src.algebra.linalg import LabeledBasis, OperatorMatrix
from src.algebra.linspaces import CTVector, EVector, FVector, HVector, TensorProduct, TVector, phi, phi_inv
from src.algebra.multilinear import MultiVector, SymTensor, canonical_bivector, primitive_basis, wedge
from src.algebra.scalars import Ext2Scalar, Quaternion
from src.algebra.spinors import GradedSpace, clifford_real, mu, spin_action, spinor_space
from src.algebra.verdict import Verdict

__all__ = [
    "AlgebraError",
    "LabeledBasis",
    "OperatorMatrix",
    "CTVector",
    "EVector",
    "FVector",
    "HVector",
    "TensorProduct",
    "TVector",
    "phi",
    "phi_inv",
    "MultiVector",
    "SymTensor",
    "canonical_bivector",
    "primitive_basis",
    "wedge",
    "Ext2Scalar",
    "Quaternion",
    "GradedSpace",
    "clifford_real",
    "mu",
    "spin_action",
    "spinor_space",
    "Verdict",
]
