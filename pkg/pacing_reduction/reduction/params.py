"""
Reduction Parameters
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from pacing_reduction.core.game import ZERO, to_rational
from pacing_reduction.exceptions import ReductionParameterError

GAMMA_BOUND = Fraction(1, 3)

# sigma = gamma = tau for the weak reduction
WEAK_TOLERANCE = Fraction(1, 20)


class Variant(str, Enum):
    MAIN = "main"
    WEAK = "weak"


@dataclass(frozen=True)
class ReductionParams:
    """gamma in [0, 1/3); delta = 1/3 - gamma and kappa = 3 delta / 2 follow"""

    gamma: Fraction = ZERO

    def __post_init__(self):
        try:
            gamma = to_rational(self.gamma)
        except (TypeError, ValueError) as e:
            raise ReductionParameterError(str(e)) from e
        if not ZERO <= gamma < GAMMA_BOUND:
            raise ReductionParameterError(f"gamma must lie in [0, 1/3), got {gamma}")
        object.__setattr__(self, "gamma", gamma)

    @property
    def delta(self) -> Fraction:
        return GAMMA_BOUND - self.gamma

    @property
    def kappa(self) -> Fraction:
        """Multiplier encoding the value 0"""
        return Fraction(3, 2) * self.delta
