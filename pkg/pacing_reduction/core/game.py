"""
Second-Price Pacing Games
Buyers with budgets, goods sold in single-slot second-price auctions, and
the bids, prices and spends induced by a profile of pacing multipliers.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple, Union

from pacing_reduction.exceptions import (
    DimensionError,
    GameStructureError,
    IndexOutOfRangeError,
    InvalidProfileError,
)

Rational = Fraction
RationalLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: RationalLike) -> Fraction:
    """Convert ints, Fractions and "p/q" or decimal strings exactly"""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Refusing inexact value {value!r}; use an int, Fraction or 'p/q' string")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Not an exact rational: {value!r}") from e
    raise TypeError(f"Unsupported rational value: {value!r} ({type(value).__name__})")


def format_rational(value: Fraction) -> str:
    """Canonical "p/q" rendering"""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class PacingGame:
    """The tuple (n, m, v, B) with a sparse value map"""

    n: int
    m: int
    values: Mapping[Tuple[int, int], Fraction]
    budgets: Tuple[Fraction, ...]
    buyer_labels: Tuple[str, ...] = ()
    good_labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise GameStructureError(f"A game needs at least one buyer and one good (n={self.n}, m={self.m})")

        values: Dict[Tuple[int, int], Fraction] = {}
        for (buyer, good), raw in dict(self.values).items():
            if not (0 <= buyer < self.n and 0 <= good < self.m):
                raise GameStructureError(f"Value entry ({buyer}, {good}) outside a {self.n}x{self.m} game")
            value = to_rational(raw)
            if value < 0:
                raise GameStructureError(f"Negative value {value} for buyer {buyer} on good {good}")
            if value > 0:
                values[(buyer, good)] = value
        object.__setattr__(self, "values", dict(sorted(values.items())))

        budgets = tuple(to_rational(b) for b in self.budgets)
        if len(budgets) != self.n:
            raise GameStructureError(f"Expected {self.n} budgets, got {len(budgets)}")
        for buyer, budget in enumerate(budgets):
            if budget <= 0:
                raise GameStructureError(f"Budget of buyer {buyer} must be positive, got {budget}")
        object.__setattr__(self, "budgets", budgets)

        buyer_labels = tuple(self.buyer_labels) or tuple(f"buyer_{i}" for i in range(self.n))
        good_labels = tuple(self.good_labels) or tuple(f"good_{j}" for j in range(self.m))
        if len(buyer_labels) != self.n or len(set(buyer_labels)) != self.n:
            raise GameStructureError("Buyer labels must be unique and cover every buyer")
        if len(good_labels) != self.m or len(set(good_labels)) != self.m:
            raise GameStructureError("Good labels must be unique and cover every good")
        object.__setattr__(self, "buyer_labels", buyer_labels)
        object.__setattr__(self, "good_labels", good_labels)

        # Existence preconditions
        for buyer in range(self.n):
            if not self.goods_of(buyer):
                raise GameStructureError(f"Buyer {buyer_labels[buyer]} has no good with positive value")
        for good in range(self.m):
            if not self.bidders(good):
                raise GameStructureError(f"Good {good_labels[good]} has no buyer with positive value")

    @cached_property
    def _bidders(self) -> Tuple[Tuple[Tuple[int, Fraction], ...], ...]:
        per_good: List[List[Tuple[int, Fraction]]] = [[] for _ in range(self.m)]
        for (buyer, good), value in self.values.items():
            per_good[good].append((buyer, value))
        return tuple(tuple(entries) for entries in per_good)

    @cached_property
    def _goods(self) -> Tuple[Tuple[Tuple[int, Fraction], ...], ...]:
        per_buyer: List[List[Tuple[int, Fraction]]] = [[] for _ in range(self.n)]
        for (buyer, good), value in self.values.items():
            per_buyer[buyer].append((good, value))
        return tuple(tuple(entries) for entries in per_buyer)

    def value(self, buyer: int, good: int) -> Fraction:
        """v_ij, zero when absent from the sparse map"""
        return self.values.get((buyer, good), ZERO)

    def bidders(self, good: int) -> Tuple[Tuple[int, Fraction], ...]:
        """(buyer, value) pairs with positive value on the good"""
        self.check_good(good)
        return self._bidders[good]

    def goods_of(self, buyer: int) -> Tuple[Tuple[int, Fraction], ...]:
        """(good, value) pairs the buyer values positively"""
        self.check_buyer(buyer)
        return self._goods[buyer]

    def check_buyer(self, buyer: int):
        if not 0 <= buyer < self.n:
            raise IndexOutOfRangeError(f"Buyer index {buyer} out of range for {self.n} buyers")

    def check_good(self, good: int):
        if not 0 <= good < self.m:
            raise IndexOutOfRangeError(f"Good index {good} out of range for {self.m} goods")

    def buyer_index(self, label: str) -> int:
        try:
            return self.buyer_labels.index(label)
        except ValueError:
            raise IndexOutOfRangeError(f"Unknown buyer label {label!r}") from None


@dataclass(frozen=True)
class MultiplierProfile:
    """One pacing multiplier per buyer"""

    alpha: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(to_rational(a) for a in self.alpha))

    def __len__(self) -> int:
        return len(self.alpha)

    def __getitem__(self, buyer: int) -> Fraction:
        return self.alpha[buyer]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.alpha)

    @classmethod
    def uniform(cls, n: int, value: RationalLike = 1) -> "MultiplierProfile":
        return cls(tuple([to_rational(value)] * n))

    def replace(self, buyer: int, value: RationalLike) -> "MultiplierProfile":
        alpha = list(self.alpha)
        alpha[buyer] = to_rational(value)
        return MultiplierProfile(tuple(alpha))

    def out_of_range(self) -> List[int]:
        return [i for i, a in enumerate(self.alpha) if not ZERO <= a <= ONE]

    def validate(self):
        bad = self.out_of_range()
        if bad:
            raise InvalidProfileError(f"Multipliers outside [0, 1] for buyers {bad}")


@dataclass(frozen=True)
class Allocation:
    """Sparse fractional assignment x_ij; zero entries are dropped"""

    x: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        entries = {}
        for (buyer, good), raw in dict(self.x).items():
            value = to_rational(raw)
            if value != 0:
                entries[(buyer, good)] = value
        object.__setattr__(self, "x", dict(sorted(entries.items())))

    def get(self, buyer: int, good: int) -> Fraction:
        return self.x.get((buyer, good), ZERO)

    def entries(self) -> List[Tuple[Tuple[int, int], Fraction]]:
        return list(self.x.items())

    def mass(self, good: int) -> Fraction:
        """Total fraction of the good handed out"""
        return sum((q for (_, j), q in self.x.items() if j == good), ZERO)

    def validate(self, game: PacingGame):
        for (buyer, good), q in self.x.items():
            game.check_buyer(buyer)
            game.check_good(good)
            if not ZERO <= q <= ONE:
                raise InvalidProfileError(f"x[{buyer},{good}] = {q} outside [0, 1]")
        for good in range(game.m):
            if self.mass(good) > ONE:
                raise InvalidProfileError(f"Good {good} is over-allocated")


def check_profile(game: PacingGame, alpha: MultiplierProfile):
    if len(alpha) != game.n:
        raise DimensionError(f"Profile has {len(alpha)} multipliers for {game.n} buyers")


def bids(game: PacingGame, alpha: MultiplierProfile, good: int) -> List[Tuple[int, Fraction]]:
    """(buyer, alpha_i * v_ij) for every buyer with positive value on the good"""
    check_profile(game, alpha)
    return [(buyer, alpha[buyer] * value) for buyer, value in game.bidders(good)]


def highest_bid(game: PacingGame, alpha: MultiplierProfile, good: int) -> Fraction:
    """h_j(alpha); zero when every bid is zero"""
    return max((bid for _, bid in bids(game, alpha, good)), default=ZERO)


def second_price(game: PacingGame, alpha: MultiplierProfile, good: int) -> Fraction:
    """p_j(alpha): second-largest of all n bids, ties counted separately.

    Buyers without positive value bid zero, so a good with fewer than two
    positive bids is free; a one-buyer game prices every good at zero.
    """
    positive = sorted((bid for _, bid in bids(game, alpha, good) if bid > 0), reverse=True)
    if game.n < 2 or len(positive) < 2:
        return ZERO
    return positive[1]


def prices(game: PacingGame, alpha: MultiplierProfile) -> Tuple[Fraction, ...]:
    return tuple(second_price(game, alpha, good) for good in range(game.m))


def highest_bids(game: PacingGame, alpha: MultiplierProfile) -> Tuple[Fraction, ...]:
    return tuple(highest_bid(game, alpha, good) for good in range(game.m))


def spend(game: PacingGame, alpha: MultiplierProfile, x: Allocation, buyer: int) -> Fraction:
    """sum_j x_ij * p_j(alpha)"""
    game.check_buyer(buyer)
    check_profile(game, alpha)
    return sum(
        (q * second_price(game, alpha, good) for (i, good), q in x.entries() if i == buyer),
        ZERO,
    )


def spends(game: PacingGame, x: Allocation, price_vector: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Per-buyer spend against a precomputed price vector"""
    totals = [ZERO] * game.n
    for (buyer, good), q in x.entries():
        totals[buyer] += q * price_vector[good]
    return tuple(totals)
