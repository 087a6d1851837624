"""Extensions of the pair {1, 3} to Diophantine tuples in Z[sqrt(-2)].

The subpackages follow the argument: ``sequences`` and ``quad_ring`` for the
objects, ``pell`` and ``congruence_sieve`` for the simultaneous Pellian
equations, ``bounds``, ``linear_forms`` and ``reduction`` for the effective
bounds, ``intersect`` for the remaining finite cases.
"""

from .errors import DomainError, PrecisionError, ReductionError, UsageError
from .intervals import CertifiedReal, Enclosure
from .quad_ring import QuadInt, is_square_in_ring, verify_tuple
from .sequences import c, d, s, t
from .pell import PellProblem, fundamental_classes, fundamental_unit, solve_below
from .intersect import small_case, theorem_pipeline

__version__ = "0.1.0"

__all__ = [
    "DomainError", "PrecisionError", "ReductionError", "UsageError",
    "CertifiedReal", "Enclosure", "QuadInt", "is_square_in_ring", "verify_tuple",
    "c", "d", "s", "t", "PellProblem", "fundamental_classes", "fundamental_unit",
    "solve_below", "small_case", "theorem_pipeline",
]
