"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                           ALGEBRA ERRORS                                     ║
║                                                                              ║
║  Exception hierarchy shared by every algebra module.                         ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""


class AlgebraError(Exception):
    """Base class for all errors raised by the algebra package."""
    pass


class ScalarDivisionError(AlgebraError, ZeroDivisionError):
    """Division by an exact zero scalar."""
    pass


class SpaceMismatchError(AlgebraError):
    """Operands live in different spaces (or have different dimensions)."""
    pass


class DegreeError(AlgebraError):
    """An operation was applied in a degree where it is undefined."""
    pass


class NonPrimitiveError(AlgebraError):
    """A multivector expected to be primitive is not in the kernel of σ⌟."""
    pass


class NonCanonicalBaseError(AlgebraError):
    """A pair (p, q) fails σ(p, q) = 1 or Jp = q."""
    pass


class GroupElementError(AlgebraError):
    """A supplied group element is not in Sp(1) or Sp(n)."""
    pass


class SymmetryError(AlgebraError):
    """A tensor that must be totally symmetric is not."""
    pass


class ParameterError(AlgebraError):
    """Invalid numeric parameters (e.g. λ = 0)."""
    pass


class CartanDecompositionError(AlgebraError):
    """A real operator does not have the block shape of an element of sp(n+1)."""
    pass


class InconsistentSystemError(AlgebraError):
    """An exact linear system has no solution or no unique solution."""
    pass
