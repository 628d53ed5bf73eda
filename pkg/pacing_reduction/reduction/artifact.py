"""
Reduction Artifacts
A compiled pacing game together with the node -> buyer and gate -> goods
mapping needed to decode its equilibria.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from pacing_reduction.circuit.gates import Circuit, Gate
from pacing_reduction.circuit.structure import degree_valid
from pacing_reduction.core.game import PacingGame
from pacing_reduction.core.verification import ApproxParams
from pacing_reduction.reduction.params import WEAK_TOLERANCE, ReductionParams, Variant
from pacing_reduction.exceptions import VariantMismatchError

# Items per b-buyer under the degree rule: its gadget good plus three edge goods
SPARSITY_BOUND = 4


def node_buyer_label(node: int) -> str:
    return f"b_{node}"


def aux_buyer_label(node: int) -> str:
    return f"c_{node}"


def gadget_good_label(node: int) -> str:
    return f"g_{node}"


def edge_good_label(source: int, target: int) -> str:
    return f"g_({source},{target})"


@dataclass(frozen=True)
class GateGoods:
    """Goods of one gate's gadget, gadget goods first, then edge goods"""

    index: int
    gate: Gate
    goods: Tuple[int, ...]


@dataclass(frozen=True)
class ReductionMapping:
    variant: Variant
    circuit: Circuit
    node_buyer: Dict[int, int]
    aux_buyer: Dict[int, int]
    gate_goods: Tuple[GateGoods, ...]
    buyer_labels: Tuple[str, ...]
    good_labels: Tuple[str, ...]
    gamma: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "gate_goods", tuple(self.gate_goods))
        object.__setattr__(self, "buyer_labels", tuple(self.buyer_labels))
        object.__setattr__(self, "good_labels", tuple(self.good_labels))

    @property
    def params(self) -> ReductionParams:
        if self.variant is not Variant.MAIN:
            raise VariantMismatchError("Only main-variant artifacts carry gamma, delta and kappa")
        return ReductionParams(self.gamma)

    @property
    def buyer_count(self) -> int:
        return len(self.buyer_labels)

    def good_of(self, label: str) -> int:
        return self.good_labels.index(label)

    def buyer_of(self, label: str) -> int:
        return self.buyer_labels.index(label)

    def default_params(self) -> ApproxParams:
        """Equilibrium notion the reduction is built for"""
        if self.variant is Variant.WEAK:
            return ApproxParams.relaxed(WEAK_TOLERANCE, WEAK_TOLERANCE, WEAK_TOLERANCE)
        if self.gamma:
            return ApproxParams.approximate(self.gamma)
        return ApproxParams.exact()


@dataclass(frozen=True)
class ReductionArtifact:
    game: PacingGame
    mapping: ReductionMapping

    @property
    def variant(self) -> Variant:
        return self.mapping.variant

    @property
    def circuit(self) -> Circuit:
        return self.mapping.circuit

    @property
    def node_buyer(self) -> Dict[int, int]:
        return self.mapping.node_buyer

    @property
    def aux_buyer(self) -> Dict[int, int]:
        return self.mapping.aux_buyer

    @property
    def gate_goods(self) -> Tuple[GateGoods, ...]:
        return self.mapping.gate_goods

    @property
    def params(self) -> ReductionParams:
        return self.mapping.params

    def default_params(self) -> ApproxParams:
        return self.mapping.default_params()


ArtifactLike = Union[ReductionArtifact, ReductionMapping]


def mapping_of(target: ArtifactLike) -> ReductionMapping:
    return target.mapping if isinstance(target, ReductionArtifact) else target


@dataclass(frozen=True)
class SparsityReport:
    """Positive-value counts per buyer of a compiled game"""

    items_per_buyer: Dict[str, int] = field(default_factory=dict)
    max_node_items: int = 0
    max_aux_items: int = 0
    degree_valid: bool = True

    @property
    def within_bound(self) -> bool:
        return self.max_node_items <= SPARSITY_BOUND and self.max_aux_items == 1


def sparsity_report(artifact: ReductionArtifact) -> SparsityReport:
    game = artifact.game
    counts = {game.buyer_labels[buyer]: len(game.goods_of(buyer)) for buyer in range(game.n)}
    node_items = [len(game.goods_of(buyer)) for buyer in artifact.node_buyer.values()]
    aux_items = [len(game.goods_of(buyer)) for buyer in artifact.aux_buyer.values()]
    return SparsityReport(
        items_per_buyer=counts,
        max_node_items=max(node_items, default=0),
        max_aux_items=max(aux_items, default=0),
        degree_valid=degree_valid(artifact.circuit),
    )
