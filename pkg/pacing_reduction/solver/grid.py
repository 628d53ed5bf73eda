"""
Grid Search
Exhaustive enumeration of multiplier profiles on a rational grid. Each profile
is completed by the exact feasibility solver and re-verified before it is
reported, so an empty result means "none found on the grid" and nothing more.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from math import prod
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from pacing_reduction.config import settings
from pacing_reduction.core.feasibility import allocation_feasible
from pacing_reduction.core.game import ONE, ZERO, MultiplierProfile, PacingGame, RationalLike, to_rational
from pacing_reduction.core.verification import ApproxParams, Equilibrium, verify
from pacing_reduction.exceptions import EnumerationLimitError, InvalidProfileError
from pacing_reduction.reduction.artifact import ReductionArtifact
from pacing_reduction.reduction.params import Variant
from pacing_reduction.utils.logger import system_logger

WEAK_GRID = (Fraction(1, 10), Fraction(19, 20), ONE)
# Tie point of every weak b-buyer with its auxiliary buyer, and the NPURIFY split
WEAK_REFINEMENT = (Fraction(1, 9), Fraction(2, 5))


def _normalise_grid(values: Iterable[RationalLike]) -> Tuple[Fraction, ...]:
    grid = sorted({to_rational(v) for v in values})
    bad = [g for g in grid if not ZERO <= g <= ONE]
    if bad:
        raise InvalidProfileError(f"Grid values outside [0, 1]: {[str(g) for g in bad]}")
    return tuple(grid)


@dataclass(frozen=True)
class SearchConfig:
    """Which profiles to enumerate.

    With ``generic_grid = D`` every buyer ranges over q/D for q = 0..D.
    Otherwise buyers range over ``b_grid``, except auxiliary buyers, which
    are pinned to 1 while ``c_fixed`` holds.
    """

    b_grid: Tuple[Fraction, ...] = ()
    c_fixed: bool = True
    generic_grid: Optional[int] = None
    limit: int = field(default_factory=lambda: settings.SEARCH_PROFILE_LIMIT)
    aux_buyers: FrozenSet[int] = frozenset()
    workers: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "b_grid", _normalise_grid(self.b_grid))
        object.__setattr__(self, "aux_buyers", frozenset(self.aux_buyers))
        if self.generic_grid is not None and self.generic_grid < 1:
            raise ValueError(f"Generic grid denominator must be at least 1, got {self.generic_grid}")
        if self.limit < 0:
            raise ValueError("Profile limit must be non-negative")

    def axes(self, game: PacingGame) -> List[Tuple[Fraction, ...]]:
        """Candidate multipliers per buyer"""
        if self.generic_grid is not None:
            uniform = tuple(Fraction(q, self.generic_grid) for q in range(self.generic_grid + 1))
            return [uniform] * game.n
        return [
            (ONE,) if self.c_fixed and buyer in self.aux_buyers else self.b_grid
            for buyer in range(game.n)
        ]

    def profile_count(self, game: PacingGame) -> int:
        return prod(len(axis) for axis in self.axes(game))


def structured_config(
    artifact: ReductionArtifact,
    refine: bool = False,
    b_grid: Optional[Sequence[RationalLike]] = None,
    limit: Optional[int] = None,
) -> SearchConfig:
    """Default search for a compiled game: b-buyers on {kappa, 1} (main) or {1/10, 19/20, 1} (weak)"""
    if artifact.variant is Variant.MAIN:
        params = artifact.params
        grid = list(b_grid) if b_grid is not None else [params.kappa, ONE]
        if refine:
            grid += [Fraction(1, 2) + params.delta / 2, (params.kappa + 1) / 2]
    else:
        grid = list(b_grid) if b_grid is not None else list(WEAK_GRID)
        if refine:
            grid += list(WEAK_REFINEMENT)
    return SearchConfig(
        b_grid=tuple(grid),
        aux_buyers=frozenset(artifact.aux_buyer.values()),
        limit=settings.SEARCH_PROFILE_LIMIT if limit is None else limit,
    )


def _evaluate_profile(game: PacingGame, params: ApproxParams, alpha: Tuple[Fraction, ...]) -> Optional[Equilibrium]:
    profile = MultiplierProfile(alpha)
    x = allocation_feasible(game, profile, params)
    if x is None:
        return None
    report = verify(game, profile, x, params)
    if not report.valid:
        system_logger.log_error("grid_search", f"Discarding unverified allocation for {alpha}: {report.summary()}")
        return None
    return Equilibrium(profile, x, params)


def grid_search(
    game: PacingGame,
    params: ApproxParams,
    config: SearchConfig,
) -> List[Equilibrium]:
    """Every grid profile that completes to a verified equilibrium, in grid order"""
    total = config.profile_count(game)
    if total > config.limit:
        raise EnumerationLimitError(f"Grid has {total} profiles, above the limit of {config.limit}")

    workers = config.workers if config.workers is not None else settings.SEARCH_WORKERS
    profiles = itertools.product(*config.axes(game))
    evaluate = partial(_evaluate_profile, game, params)

    if workers > 1 and total > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            chunk = max(1, total // (workers * 4))
            results = list(executor.map(evaluate, profiles, chunksize=chunk))
    else:
        results = [evaluate(alpha) for alpha in profiles]

    found = [eq for eq in results if eq is not None]
    system_logger.log_search(profiles=total, found=len(found), workers=max(1, workers))
    return found
