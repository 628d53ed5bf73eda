"""
Exhaustive Satisfier
Depth-first enumeration of {0, 1, Bot}^n in lexicographic order, checking each
gate as soon as its last node is assigned.
"""

from typing import Dict, List, Optional

from pacing_reduction.circuit.gates import Assignment, Circuit, Gate, Value, check_gate
from pacing_reduction.circuit.structure import validate_structure
from pacing_reduction.config import settings
from pacing_reduction.exceptions import CircuitStructureError, InstanceTooLargeError

_ORDER = (Value.ZERO, Value.ONE, Value.BOT)


def brute_force_solve(circuit: Circuit, max_nodes: Optional[int] = None) -> List[Assignment]:
    """All satisfying assignments, Zero < One < Bot lexicographically"""
    limit = settings.BRUTE_FORCE_MAX_NODES if max_nodes is None else max_nodes
    if circuit.node_count > limit:
        raise InstanceTooLargeError(f"{circuit.node_count} nodes exceed the enumeration cap of {limit}")
    report = validate_structure(circuit)
    if not report.valid:
        raise CircuitStructureError("; ".join(v.message for v in report.violations))

    # Gates become checkable once their highest node is assigned
    ready: Dict[int, List[Gate]] = {}
    for gate in circuit.gates:
        ready.setdefault(max(gate.nodes), []).append(gate)

    n = circuit.node_count
    partial: List[Value] = [Value.BOT] * n
    solutions: List[Assignment] = []

    def extend(node: int):
        if node > n:
            solutions.append(Assignment(tuple(partial)))
            return
        for value in _ORDER:
            partial[node - 1] = value
            # Unassigned slots never reach check_gate: only gates whose nodes are all <= node
            view = Assignment(tuple(partial))
            if all(check_gate(gate, view) for gate in ready.get(node, ())):
                extend(node + 1)
        partial[node - 1] = Value.BOT

    extend(1)
    return solutions
