"""
Equilibrium Verification
Exact checks of the exact, gamma-approximate and (sigma, gamma, tau)-approximate
pacing equilibrium conditions.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from pacing_reduction.core.game import (
    ONE,
    ZERO,
    Allocation,
    MultiplierProfile,
    PacingGame,
    RationalLike,
    check_profile,
    format_rational,
    highest_bids,
    prices,
    spends,
    to_rational,
)
from pacing_reduction.exceptions import DimensionError


class ApproxMode(str, Enum):
    EXACT = "exact"
    GAMMA = "gamma"
    SIGMA_GAMMA_TAU = "sigma-gamma-tau"


DEFINITION_LABELS = {
    ApproxMode.EXACT: "exact",
    ApproxMode.GAMMA: "gamma-approximate",
    ApproxMode.SIGMA_GAMMA_TAU: "sigma-gamma-tau-approximate",
}


@dataclass(frozen=True)
class ApproxParams:
    """Which equilibrium notion to check, with its tolerances"""

    mode: ApproxMode = ApproxMode.EXACT
    gamma: Fraction = ZERO
    sigma: Fraction = ZERO
    tau: Fraction = ZERO

    def __post_init__(self):
        object.__setattr__(self, "mode", ApproxMode(self.mode))
        for name in ("gamma", "sigma", "tau"):
            value = to_rational(getattr(self, name))
            if not ZERO <= value < ONE:
                raise ValueError(f"{name} must lie in [0, 1), got {value}")
            object.__setattr__(self, name, value)
        if self.mode is ApproxMode.EXACT and (self.gamma or self.sigma or self.tau):
            raise ValueError("Exact mode requires gamma = sigma = tau = 0")
        if self.mode is ApproxMode.GAMMA and (self.sigma or self.tau):
            raise ValueError("Gamma mode requires sigma = tau = 0")

    @classmethod
    def exact(cls) -> "ApproxParams":
        return cls()

    @classmethod
    def approximate(cls, gamma: RationalLike) -> "ApproxParams":
        return cls(ApproxMode.GAMMA, gamma=to_rational(gamma))

    @classmethod
    def relaxed(cls, sigma: RationalLike, gamma: RationalLike, tau: RationalLike) -> "ApproxParams":
        return cls(
            ApproxMode.SIGMA_GAMMA_TAU,
            gamma=to_rational(gamma),
            sigma=to_rational(sigma),
            tau=to_rational(tau),
        )

    @property
    def definition(self) -> str:
        return DEFINITION_LABELS[self.mode]


# Condition tags used in verification reports
COND_A = "a"
COND_B = "b"
COND_C = "c"
COND_D = "d"
COND_RANGE = "range"
COND_MASS = "mass"


@dataclass(frozen=True)
class Violation:
    """One failed condition with the indices and quantities that witness it"""

    condition: str
    message: str
    buyer: Optional[int] = None
    good: Optional[int] = None
    node: Optional[int] = None
    witness: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class VerificationReport:
    violations: Tuple[Violation, ...] = ()
    warnings: Tuple[Violation, ...] = ()
    definition: str = ""

    @property
    def valid(self) -> bool:
        return not self.violations

    def conditions(self) -> List[str]:
        return [v.condition for v in self.violations]

    def summary(self) -> str:
        status = "valid" if self.valid else f"invalid ({len(self.violations)} violations)"
        lines = [f"[{self.definition}] {status}"]
        lines += [f"  ! ({v.condition}) {v.message}" for v in self.violations]
        lines += [f"  ~ ({w.condition}) {w.message}" for w in self.warnings]
        return "\n".join(lines)


@dataclass(frozen=True)
class Equilibrium:
    """A candidate pacing equilibrium and the notion it was found under"""

    alpha: MultiplierProfile
    x: Allocation
    params: ApproxParams = field(default_factory=ApproxParams)


def _check_dimensions(game: PacingGame, alpha: MultiplierProfile, x: Allocation):
    check_profile(game, alpha)
    for buyer, good in x.x:
        if not (0 <= buyer < game.n and 0 <= good < game.m):
            raise DimensionError(f"Allocation entry ({buyer}, {good}) outside a {game.n}x{game.m} game")


def verify(
    game: PacingGame,
    alpha: MultiplierProfile,
    x: Allocation,
    params: ApproxParams = ApproxParams(),
) -> VerificationReport:
    """Check every equilibrium condition exactly and report all failures"""
    _check_dimensions(game, alpha, x)
    violations: List[Violation] = []

    for buyer, a in enumerate(alpha):
        if not ZERO <= a <= ONE:
            violations.append(Violation(COND_RANGE, f"alpha of buyer {buyer} is {a}, outside [0, 1]",
                                        buyer=buyer, witness={"alpha": a}))
    for (buyer, good), q in x.entries():
        if not ZERO <= q <= ONE:
            violations.append(Violation(COND_RANGE, f"x[{buyer},{good}] = {q}, outside [0, 1]",
                                        buyer=buyer, good=good, witness={"x": q}))

    highs = highest_bids(game, alpha)
    price_vector = prices(game, alpha)
    masses = [ZERO] * game.m
    for (_, good), q in x.entries():
        masses[good] += q

    for good, mass in enumerate(masses):
        if mass > ONE:
            violations.append(Violation(COND_MASS, f"good {good} allocated {mass} > 1",
                                        good=good, witness={"mass": mass}))

    # (a) winners bid within (1 - sigma) of the top bid; equality with the max when sigma = 0
    threshold = ONE - params.sigma
    for (buyer, good), q in x.entries():
        if q <= 0:
            continue
        bid = alpha[buyer] * game.value(buyer, good)
        if bid < threshold * highs[good]:
            violations.append(Violation(
                COND_A,
                f"buyer {buyer} receives {q} of good {good} with bid {bid} below {threshold} * {highs[good]}",
                buyer=buyer, good=good,
                witness={"x": q, "bid": bid, "highest_bid": highs[good], "threshold": threshold},
            ))

    # (b) goods with a positive bid are fully allocated
    for good, mass in enumerate(masses):
        if highs[good] > 0 and mass != ONE:
            violations.append(Violation(
                COND_B, f"good {good} has highest bid {highs[good]} but allocated mass {mass}",
                good=good, witness={"highest_bid": highs[good], "mass": mass},
            ))

    spent = spends(game, x, price_vector)
    floor = ONE - params.gamma
    pacing_floor = ONE - params.tau
    for buyer, total in enumerate(spent):
        budget = game.budgets[buyer]
        # (c) budgets hold
        if total > budget:
            violations.append(Violation(
                COND_C, f"buyer {buyer} spends {total} over budget {budget}",
                buyer=buyer, witness={"spend": total, "budget": budget},
            ))
        # (d) no (or not too much) unnecessary pacing
        if total < floor * budget and alpha[buyer] < pacing_floor:
            violations.append(Violation(
                COND_D,
                f"buyer {buyer} spends {total} < {floor} * {budget} yet paces at {alpha[buyer]}",
                buyer=buyer,
                witness={"spend": total, "budget": budget, "alpha": alpha[buyer], "required_alpha": pacing_floor},
            ))

    return VerificationReport(tuple(violations), (), params.definition)


def verify_equilibrium(game: PacingGame, equilibrium: Equilibrium) -> VerificationReport:
    return verify(game, equilibrium.alpha, equilibrium.x, equilibrium.params)


def combine_reports(reports: Iterable[VerificationReport], definition: str) -> VerificationReport:
    violations: List[Violation] = []
    warnings: List[Violation] = []
    for report in reports:
        violations.extend(report.violations)
        warnings.extend(report.warnings)
    return VerificationReport(tuple(violations), tuple(warnings), definition)


def witness_strings(violation: Violation) -> Dict[str, str]:
    """Witness quantities rendered for display and documents"""
    return {
        key: (format_rational(value) if isinstance(value, Fraction) else str(value))
        for key, value in violation.witness.items()
    }
