"""
Allocation Feasibility
Given multipliers, the equilibrium conditions on x form a linear feasibility
system. It is solved exactly with a phase-one simplex over Fractions.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from pacing_reduction.core.game import (
    ONE,
    ZERO,
    Allocation,
    MultiplierProfile,
    PacingGame,
    check_profile,
    highest_bids,
    prices,
)
from pacing_reduction.core.verification import ApproxParams


class ExactSimplexTableau:
    """Phase-one tableau for A x = b, x >= 0, b >= 0 with Bland's rule.

    Artificial variables start in the basis, one per row. Their columns are
    never stored since artificials are not allowed to re-enter.
    """

    def __init__(self, rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
        self.m = len(rows)
        self.n = len(rows[0]) if rows else 0
        self.A: List[List[Fraction]] = [list(row) for row in rows]
        self.b: List[Fraction] = list(rhs)
        for i in range(self.m):
            if self.b[i] < 0:
                self.A[i] = [-a for a in self.A[i]]
                self.b[i] = -self.b[i]
        # Indices >= n denote artificials
        self.basis: List[int] = [self.n + i for i in range(self.m)]

    def _reduced_cost(self, j: int) -> Fraction:
        return sum((self.A[i][j] for i in range(self.m) if self.basis[i] >= self.n), ZERO)

    def pivot(self, i: int, j: int):
        piv = self.A[i][j]
        row = [a / piv for a in self.A[i]]
        self.A[i] = row
        self.b[i] /= piv
        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k][j]
            if f:
                self.A[k] = [a - f * r for a, r in zip(self.A[k], row)]
                self.b[k] -= f * self.b[i]
        self.basis[i] = j

    def bland_step(self) -> str:
        basic = set(self.basis)
        entering = next(
            (j for j in range(self.n) if j not in basic and self._reduced_cost(j) > 0),
            None,
        )
        if entering is None:
            return "optimal"
        candidates = [
            (self.b[i] / self.A[i][entering], self.basis[i], i)
            for i in range(self.m)
            if self.A[i][entering] > 0
        ]
        if not candidates:
            # Phase one is bounded below by zero
            raise RuntimeError("Unbounded phase-one tableau")
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return "go_on"

    def infeasibility(self) -> Fraction:
        """Sum of artificial variables at the current basis"""
        return sum((self.b[i] for i in range(self.m) if self.basis[i] >= self.n), ZERO)

    def solve(self) -> Optional[List[Fraction]]:
        """A basic feasible point, or None when the system has no solution"""
        while self.bland_step() != "optimal":
            pass
        if self.infeasibility() != 0:
            return None
        point = [ZERO] * self.n
        for i, var in enumerate(self.basis):
            if var < self.n:
                point[var] = self.b[i]
        return point


def solve_feasibility(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    if not rows:
        return []
    return ExactSimplexTableau(rows, rhs).solve()


def eligible_pairs(
    game: PacingGame,
    alpha: MultiplierProfile,
    params: ApproxParams,
    highs: Optional[Sequence[Fraction]] = None,
) -> Dict[int, List[int]]:
    """good -> buyers allowed to receive it; goods nobody bids on are omitted"""
    highs = highs if highs is not None else highest_bids(game, alpha)
    threshold = ONE - params.sigma
    eligible: Dict[int, List[int]] = {}
    for good in range(game.m):
        if highs[good] <= 0:
            continue
        eligible[good] = [
            buyer for buyer, value in game.bidders(good)
            if alpha[buyer] * value >= threshold * highs[good]
        ]
    return eligible


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _solve_component(
    goods: List[int],
    buyers: List[int],
    eligible: Dict[int, List[int]],
    price_vector: Sequence[Fraction],
    budgets: Sequence[Fraction],
    lower_bounds: Dict[int, Fraction],
) -> Optional[Dict[Tuple[int, int], Fraction]]:
    pairs = [(buyer, good) for good in goods for buyer in eligible[good]]
    pair_column = {pair: k for k, pair in enumerate(pairs)}
    slack_column = {buyer: len(pairs) + k for k, buyer in enumerate(buyers)}
    lower = [buyer for buyer in buyers if buyer in lower_bounds]
    surplus_column = {buyer: len(pairs) + len(buyers) + k for k, buyer in enumerate(lower)}
    width = len(pairs) + len(buyers) + len(lower)

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    # Full allocation of every positively-bid good among its eligible buyers
    for good in goods:
        row = [ZERO] * width
        for buyer in eligible[good]:
            row[pair_column[(buyer, good)]] = ONE
        rows.append(row)
        rhs.append(ONE)
    # Budgets: spend + slack = B
    for buyer in buyers:
        row = [ZERO] * width
        for (b, good), k in pair_column.items():
            if b == buyer:
                row[k] = price_vector[good]
        row[slack_column[buyer]] = ONE
        rows.append(row)
        rhs.append(budgets[buyer])
    # Paced buyers: spend - surplus = (1 - gamma) B
    for buyer in lower:
        row = [ZERO] * width
        for (b, good), k in pair_column.items():
            if b == buyer:
                row[k] = price_vector[good]
        row[surplus_column[buyer]] = -ONE
        rows.append(row)
        rhs.append(lower_bounds[buyer])

    point = solve_feasibility(rows, rhs)
    if point is None:
        return None
    return {pair: point[k] for pair, k in pair_column.items() if point[k] != 0}


def allocation_feasible(
    game: PacingGame,
    alpha: MultiplierProfile,
    params: ApproxParams = ApproxParams(),
) -> Optional[Allocation]:
    """An allocation completing alpha to an equilibrium, or None if none exists.

    The system separates along connected components of the buyer-good
    eligibility graph; each component is solved on its own.
    """
    check_profile(game, alpha)
    alpha.validate()

    highs = highest_bids(game, alpha)
    price_vector = prices(game, alpha)
    eligible = eligible_pairs(game, alpha, params, highs)

    floor = ONE - params.gamma
    pacing_floor = ONE - params.tau
    lower_bounds = {
        buyer: floor * game.budgets[buyer]
        for buyer in range(game.n)
        if alpha[buyer] < pacing_floor
    }

    # Buyers 0..n-1, goods n..n+m-1
    components = _UnionFind(game.n + game.m)
    has_pair = [False] * game.n
    for good, winners in eligible.items():
        for buyer in winners:
            components.union(buyer, game.n + good)
            has_pair[buyer] = True

    for buyer in lower_bounds:
        if not has_pair[buyer]:
            # Spends nothing, yet must spend a positive share of its budget
            return None

    grouped: Dict[int, Tuple[List[int], List[int]]] = {}
    for good in sorted(eligible):
        grouped.setdefault(components.find(game.n + good), ([], []))[0].append(good)
    for buyer in range(game.n):
        if has_pair[buyer]:
            grouped[components.find(buyer)][1].append(buyer)

    allocation: Dict[Tuple[int, int], Fraction] = {}
    for root in sorted(grouped):
        goods, buyers = grouped[root]
        solution = _solve_component(goods, buyers, eligible, price_vector, game.budgets, lower_bounds)
        if solution is None:
            return None
        allocation.update(solution)
    return Allocation(allocation)
