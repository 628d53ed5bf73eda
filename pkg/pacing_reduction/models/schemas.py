"""
Pydantic Schemas
Document models for games, circuits, reduction mappings, equilibrium lists
and verification reports
"""

from typing import Annotated, Any, Dict, List, Optional, Protocol, Tuple

from pydantic import BaseModel, BeforeValidator, Field, RootModel

from pacing_reduction.circuit.gates import Circuit, Gate, GateKind
from pacing_reduction.core.game import (
    Allocation,
    MultiplierProfile,
    PacingGame,
    format_rational,
    to_rational,
)
from pacing_reduction.core.verification import (
    ApproxMode,
    ApproxParams,
    Equilibrium,
    VerificationReport,
    Violation,
    witness_strings,
)
from pacing_reduction.exceptions import DimensionError, IndexOutOfRangeError
from pacing_reduction.reduction.artifact import GateGoods, ReductionMapping
from pacing_reduction.reduction.params import Variant


def _canonical_rational(value: Any) -> str:
    try:
        return format_rational(to_rational(value))
    except (TypeError, ValueError) as e:
        raise ValueError(str(e)) from e


# Exact rational carried as a canonical "p/q" string
RationalStr = Annotated[str, BeforeValidator(_canonical_rational)]


class ValueEntry(BaseModel):
    """One positive entry of the sparse value map"""
    buyer: int = Field(..., ge=0)
    good: int = Field(..., ge=0)
    value: RationalStr


class LabelsDocument(BaseModel):
    buyers: List[str]
    goods: List[str]


class GameDocument(BaseModel):
    """Game document schema"""
    n: int = Field(..., ge=1, description="Buyer count")
    m: int = Field(..., ge=1, description="Good count")
    budgets: List[RationalStr]
    values: List[ValueEntry]
    labels: Optional[LabelsDocument] = Field(None, description="Buyer and good labels when not the defaults")

    @classmethod
    def from_domain(cls, game: PacingGame) -> "GameDocument":
        custom = (
            game.buyer_labels != tuple(f"buyer_{i}" for i in range(game.n))
            or game.good_labels != tuple(f"good_{j}" for j in range(game.m))
        )
        return cls(
            n=game.n,
            m=game.m,
            budgets=list(game.budgets),
            values=[ValueEntry(buyer=i, good=j, value=v) for (i, j), v in game.values.items()],
            labels=LabelsDocument(buyers=list(game.buyer_labels), goods=list(game.good_labels)) if custom else None,
        )

    def to_domain(self) -> PacingGame:
        values = {}
        for entry in self.values:
            if (entry.buyer, entry.good) in values:
                raise ValueError(f"Duplicate value entry for buyer {entry.buyer}, good {entry.good}")
            values[(entry.buyer, entry.good)] = to_rational(entry.value)
        return PacingGame(
            n=self.n,
            m=self.m,
            values=values,
            budgets=tuple(to_rational(b) for b in self.budgets),
            buyer_labels=tuple(self.labels.buyers) if self.labels else (),
            good_labels=tuple(self.labels.goods) if self.labels else (),
        )


class GateDocument(BaseModel):
    kind: GateKind
    u: int
    v: int
    w: Optional[int] = None

    @classmethod
    def from_domain(cls, gate: Gate) -> "GateDocument":
        return cls(kind=gate.kind, u=gate.u, v=gate.v, w=gate.w)

    def to_domain(self) -> Gate:
        return Gate(self.kind, self.u, self.v, self.w if self.kind is not GateKind.NOT else None)


class CircuitDocument(BaseModel):
    """Circuit document schema"""
    nodes: int = Field(..., ge=1)
    gates: List[GateDocument]

    @classmethod
    def from_domain(cls, circuit: Circuit) -> "CircuitDocument":
        return cls(nodes=circuit.node_count, gates=[GateDocument.from_domain(g) for g in circuit.gates])

    def to_domain(self) -> Circuit:
        return Circuit(self.nodes, tuple(g.to_domain() for g in self.gates))


class GateGoodsDocument(BaseModel):
    gate: int
    kind: GateKind
    u: int
    v: int
    w: Optional[int] = None
    goods: List[str]


class MappingDocument(BaseModel):
    """Reduction mapping schema; the circuit is recoverable from nodes and gate_goods"""
    variant: Variant
    gamma: Optional[RationalStr] = None
    nodes: int = Field(..., ge=1)
    buyers: List[str]
    goods: List[str]
    node_buyer: Dict[str, str]
    aux_buyer: Dict[str, str]
    gate_goods: List[GateGoodsDocument]

    @classmethod
    def from_domain(cls, mapping: ReductionMapping) -> "MappingDocument":
        buyers, goods = mapping.buyer_labels, mapping.good_labels
        return cls(
            variant=mapping.variant,
            gamma=mapping.gamma,
            nodes=mapping.circuit.node_count,
            buyers=list(buyers),
            goods=list(goods),
            node_buyer={str(node): buyers[b] for node, b in sorted(mapping.node_buyer.items())},
            aux_buyer={str(node): buyers[c] for node, c in sorted(mapping.aux_buyer.items())},
            gate_goods=[
                GateGoodsDocument(
                    gate=entry.index,
                    kind=entry.gate.kind,
                    u=entry.gate.u,
                    v=entry.gate.v,
                    w=entry.gate.w,
                    goods=[goods[j] for j in entry.goods],
                )
                for entry in mapping.gate_goods
            ],
        )

    def to_domain(self) -> ReductionMapping:
        buyer_index = {label: i for i, label in enumerate(self.buyers)}
        good_index = {label: j for j, label in enumerate(self.goods)}
        ordered = sorted(self.gate_goods, key=lambda entry: entry.gate)
        gates = [GateDocument(kind=e.kind, u=e.u, v=e.v, w=e.w).to_domain() for e in ordered]
        circuit = Circuit(self.nodes, tuple(gates))
        node_keys = {int(node) for node in self.node_buyer}
        if node_keys != set(range(1, self.nodes + 1)):
            raise ValueError(f"node_buyer must cover nodes 1..{self.nodes}, got {sorted(node_keys)}")
        aux_keys = {int(node) for node in self.aux_buyer}
        outputs = {node for gate in gates for node in gate.outputs}
        if aux_keys != outputs:
            raise ValueError(f"aux_buyer must cover the gate outputs {sorted(outputs)}, got {sorted(aux_keys)}")
        try:
            return ReductionMapping(
                variant=self.variant,
                circuit=circuit,
                node_buyer={int(node): buyer_index[label] for node, label in self.node_buyer.items()},
                aux_buyer={int(node): buyer_index[label] for node, label in self.aux_buyer.items()},
                gate_goods=tuple(
                    GateGoods(e.gate, gate, tuple(good_index[label] for label in e.goods))
                    for e, gate in zip(ordered, gates)
                ),
                buyer_labels=tuple(self.buyers),
                good_labels=tuple(self.goods),
                gamma=to_rational(self.gamma) if self.gamma is not None else None,
            )
        except KeyError as e:
            raise ValueError(f"Mapping refers to unknown label {e.args[0]!r}") from None


class ParamsDocument(BaseModel):
    mode: ApproxMode = ApproxMode.EXACT
    gamma: RationalStr = "0/1"
    sigma: RationalStr = "0/1"
    tau: RationalStr = "0/1"

    @classmethod
    def from_domain(cls, params: ApproxParams) -> "ParamsDocument":
        return cls(mode=params.mode, gamma=params.gamma, sigma=params.sigma, tau=params.tau)

    def to_domain(self) -> ApproxParams:
        return ApproxParams(self.mode, gamma=to_rational(self.gamma), sigma=to_rational(self.sigma), tau=to_rational(self.tau))


class AllocationEntry(BaseModel):
    buyer: str
    good: str
    value: RationalStr


class Labelled(Protocol):
    """Anything naming buyers and goods: a PacingGame or a ReductionMapping"""

    buyer_labels: Tuple[str, ...]
    good_labels: Tuple[str, ...]


class EquilibriumEntry(BaseModel):
    """One equilibrium keyed by buyer and good labels"""
    alpha: Dict[str, RationalStr]
    x: List[AllocationEntry]
    params: ParamsDocument = Field(default_factory=ParamsDocument)
    verified: bool = True

    @classmethod
    def from_domain(cls, labels: Labelled, equilibrium: Equilibrium, verified: bool = True) -> "EquilibriumEntry":
        buyers, goods = labels.buyer_labels, labels.good_labels
        return cls(
            alpha={buyers[i]: a for i, a in enumerate(equilibrium.alpha)},
            x=[AllocationEntry(buyer=buyers[i], good=goods[j], value=q) for (i, j), q in equilibrium.x.entries()],
            params=ParamsDocument.from_domain(equilibrium.params),
            verified=verified,
        )

    def to_domain(self, labels: Labelled) -> Equilibrium:
        buyers, goods = labels.buyer_labels, labels.good_labels
        missing = [label for label in buyers if label not in self.alpha]
        if missing or len(self.alpha) != len(buyers):
            raise DimensionError(f"Profile does not match the game's buyers (missing {missing})")
        buyer_index = {label: i for i, label in enumerate(buyers)}
        good_index = {label: j for j, label in enumerate(goods)}
        x = {}
        for entry in self.x:
            if entry.buyer not in buyer_index or entry.good not in good_index:
                raise IndexOutOfRangeError(f"Unknown allocation pair ({entry.buyer}, {entry.good})")
            x[(buyer_index[entry.buyer], good_index[entry.good])] = to_rational(entry.value)
        alpha = MultiplierProfile(tuple(to_rational(self.alpha[label]) for label in buyers))
        return Equilibrium(alpha, Allocation(x), self.params.to_domain())


class EquilibriumListDocument(RootModel[List[EquilibriumEntry]]):
    """Equilibrium list schema"""

    @classmethod
    def from_domain(cls, labels: Labelled, equilibria: List[Equilibrium]) -> "EquilibriumListDocument":
        return cls([EquilibriumEntry.from_domain(labels, eq) for eq in equilibria])

    def to_domain(self, labels: Labelled) -> List[Equilibrium]:
        return [entry.to_domain(labels) for entry in self.root]


class ViolationDocument(BaseModel):
    condition: str
    message: str
    buyer: Optional[int] = None
    good: Optional[int] = None
    node: Optional[int] = None
    witness: Dict[str, str] = Field(default_factory=dict)

    @classmethod
    def from_domain(cls, violation: Violation) -> "ViolationDocument":
        return cls(
            condition=violation.condition,
            message=violation.message,
            buyer=violation.buyer,
            good=violation.good,
            node=violation.node,
            witness=witness_strings(violation),
        )


class ReportDocument(BaseModel):
    """Verification report schema"""
    definition: str
    valid: bool
    violations: List[ViolationDocument]
    warnings: List[ViolationDocument] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, report: VerificationReport) -> "ReportDocument":
        return cls(
            definition=report.definition,
            valid=report.valid,
            violations=[ViolationDocument.from_domain(v) for v in report.violations],
            warnings=[ViolationDocument.from_domain(w) for w in report.warnings],
        )
