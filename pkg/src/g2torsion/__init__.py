"""Generators of the m-torsion of genus-2 Jacobians over prime fields.

The m-torsion of Jac(C)(F_p), where m collects the prime powers of N whose
primes divide p - 1, is split into cyclic pieces by diagonalizing the
tame Tate pairing.
"""

from .errors import (G2TorsionError, GiveUpError, InvalidCurveError, NotInSubgroupError,
                     PreconditionError, SupportCollisionError, UnsupportedModelError)
from .jacobian import (IDENTITY, CurveParams, GroupContext, MumfordDivisor, add, element_order,
                       negate, random_element, scalar_mul, validate_curve)
from .structure import (diagonalize_sylow, m_torsion_generators, sylow_generators,
                        verify_direct_sum)
from .tate_pairing import tame_tate

__version__ = "0.1.0"

__all__ = [
    "CurveParams", "GroupContext", "MumfordDivisor", "IDENTITY", "validate_curve", "add",
    "negate", "scalar_mul", "element_order", "random_element", "tame_tate",
    "diagonalize_sylow", "verify_direct_sum", "sylow_generators", "m_torsion_generators",
    "G2TorsionError", "GiveUpError", "InvalidCurveError", "NotInSubgroupError",
    "PreconditionError", "SupportCollisionError", "UnsupportedModelError",
]
