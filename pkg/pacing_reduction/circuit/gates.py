"""
Pure-Circuit Gates
Nodes take values in {0, 1, Bot}; NOT, NOR, PURIFY and NPURIFY gates impose
implication constraints between their inputs and outputs.
"""

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, Iterator, Optional, Tuple, Union

from pacing_reduction.exceptions import CircuitStructureError


class Value(IntEnum):
    """Assignment values, ordered Zero < One < Bot for enumeration"""

    ZERO = 0
    ONE = 1
    BOT = 2

    @property
    def symbol(self) -> str:
        return ("0", "1", "⊥")[self]

    @property
    def is_pure(self) -> bool:
        return self is not Value.BOT

    def negate(self) -> "Value":
        if self is Value.BOT:
            return Value.BOT
        return Value.ONE if self is Value.ZERO else Value.ZERO

    @classmethod
    def parse(cls, symbol: str) -> "Value":
        token = symbol.strip().lower()
        if token == "0":
            return cls.ZERO
        if token == "1":
            return cls.ONE
        if token in ("⊥", "bot", "b", "_"):
            return cls.BOT
        raise ValueError(f"Unknown assignment symbol {symbol!r}")


class GateKind(str, Enum):
    NOT = "NOT"
    NOR = "NOR"
    PURIFY = "PURIFY"
    NPURIFY = "NPURIFY"


@dataclass(frozen=True)
class Gate:
    """(T, u, v, w); NOT reads u and writes v, w unused"""

    kind: GateKind
    u: int
    v: int
    w: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        if self.kind is not GateKind.NOT and self.w is None:
            raise CircuitStructureError(f"{self.kind.value} gate needs three nodes")
        nodes = [n for n in (self.u, self.v, self.w) if n is not None]
        if len(set(nodes)) != len(nodes):
            raise CircuitStructureError(f"Gate nodes must be distinct: {self}")

    @property
    def inputs(self) -> Tuple[int, ...]:
        if self.kind is GateKind.NOR:
            return (self.u, self.v)
        return (self.u,)

    @property
    def outputs(self) -> Tuple[int, ...]:
        if self.kind is GateKind.NOT:
            return (self.v,)
        if self.kind is GateKind.NOR:
            return (self.w,)
        return (self.v, self.w)

    @property
    def nodes(self) -> Tuple[int, ...]:
        return self.inputs + self.outputs

    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Interaction-graph edges (input, output) in gadget order"""
        return tuple((i, o) for o in self.outputs for i in self.inputs)

    def __str__(self) -> str:
        return f"{self.kind.value}({', '.join(map(str, self.inputs))} -> {', '.join(map(str, self.outputs))})"


@dataclass(frozen=True)
class Assignment:
    """Total map from nodes 1..n to {0, 1, Bot}"""

    values: Tuple[Value, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Value(v) for v in self.values))

    def __getitem__(self, node: int) -> Value:
        if not 1 <= node <= len(self.values):
            raise IndexError(f"Node {node} outside 1..{len(self.values)}")
        return self.values[node - 1]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Value]:
        return iter(self.values)

    def __str__(self) -> str:
        return "".join(v.symbol for v in self.values)

    @property
    def is_pure(self) -> bool:
        return all(v.is_pure for v in self.values)

    def restrict(self, node_count: int) -> "Assignment":
        return Assignment(self.values[:node_count])

    @classmethod
    def parse(cls, text: Union[str, Iterable[str]]) -> "Assignment":
        """Parse "10⊥" or an iterable of symbols"""
        symbols = [c for c in text if not str(c).isspace() and c != ","] if isinstance(text, str) else list(text)
        return cls(tuple(Value.parse(s) for s in symbols))


@dataclass(frozen=True)
class Circuit:
    """Nodes 1..node_count and the gates constraining them"""

    node_count: int
    gates: Tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.node_count < 1:
            raise CircuitStructureError("A circuit needs at least one node")
        for gate in self.gates:
            for node in gate.nodes:
                if not 1 <= node <= self.node_count:
                    raise CircuitStructureError(f"{gate} references node {node} outside 1..{self.node_count}")

    @property
    def kinds(self) -> frozenset:
        return frozenset(gate.kind for gate in self.gates)

    def interaction_edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(edge for gate in self.gates for edge in gate.edges())


def check_gate(gate: Gate, assignment: Assignment) -> bool:
    """True iff the gate's constraints hold under the assignment"""
    if gate.kind is GateKind.NOT:
        x_u, x_v = assignment[gate.u], assignment[gate.v]
        return not x_u.is_pure or x_v is x_u.negate()

    if gate.kind is GateKind.NOR:
        x_u, x_v, x_w = assignment[gate.u], assignment[gate.v], assignment[gate.w]
        if (x_u is Value.ONE or x_v is Value.ONE) and x_w is not Value.ZERO:
            return False
        if x_u is Value.ZERO and x_v is Value.ZERO and x_w is not Value.ONE:
            return False
        return True

    x_u, x_v, x_w = assignment[gate.u], assignment[gate.v], assignment[gate.w]
    if not (x_v.is_pure or x_w.is_pure):
        return False
    if not x_u.is_pure:
        return True
    target = x_u if gate.kind is GateKind.PURIFY else x_u.negate()
    return x_v is target and x_w is target


def check_circuit(circuit: Circuit, assignment: Assignment) -> bool:
    if len(assignment) != circuit.node_count:
        raise ValueError(f"Assignment covers {len(assignment)} of {circuit.node_count} nodes")
    return all(check_gate(gate, assignment) for gate in circuit.gates)
