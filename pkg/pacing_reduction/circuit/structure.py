"""
Circuit Structure
Unique-output and degree checks on the interaction graph, and the rewrite
of PURIFY gates into NPURIFY plus two NOT gates.
"""

from typing import Dict, List, Tuple

from pacing_reduction.circuit.gates import Circuit, Gate, GateKind
from pacing_reduction.core.verification import VerificationReport, Violation

STRUCTURE_DEFINITION = "circuit-structure"
COND_UNIQUE_OUTPUT = "unique-output"
COND_DEGREE = "degree"

ALLOWED_DEGREES = frozenset({(1, 1), (2, 1), (1, 2)})


def output_gates(circuit: Circuit) -> Dict[int, List[int]]:
    """node -> indices of the gates writing it"""
    writers: Dict[int, List[int]] = {node: [] for node in range(1, circuit.node_count + 1)}
    for index, gate in enumerate(circuit.gates):
        for node in gate.outputs:
            writers[node].append(index)
    return writers


def node_degrees(circuit: Circuit) -> Dict[int, Tuple[int, int]]:
    """node -> (d_in, d_out) over the interaction graph"""
    edges = set(circuit.interaction_edges())
    d_in = {node: 0 for node in range(1, circuit.node_count + 1)}
    d_out = dict(d_in)
    for source, target in edges:
        d_out[source] += 1
        d_in[target] += 1
    return {node: (d_in[node], d_out[node]) for node in d_in}


def degree_valid(circuit: Circuit) -> bool:
    return all(degrees in ALLOWED_DEGREES for degrees in node_degrees(circuit).values())


def validate_structure(circuit: Circuit) -> VerificationReport:
    """Unique-output rule as errors, degree rule as warnings"""
    violations = []
    for node, writers in output_gates(circuit).items():
        if len(writers) != 1:
            problem = "is the output of no gate" if not writers else f"is the output of gates {writers}"
            violations.append(Violation(
                COND_UNIQUE_OUTPUT, f"node {node} {problem}",
                node=node, witness={"writers": len(writers)},
            ))

    warnings = []
    for node, (d_in, d_out) in node_degrees(circuit).items():
        if (d_in, d_out) not in ALLOWED_DEGREES:
            warnings.append(Violation(
                COND_DEGREE, f"node {node} has (d_in, d_out) = ({d_in}, {d_out})",
                node=node, witness={"d_in": d_in, "d_out": d_out},
            ))
    return VerificationReport(tuple(violations), tuple(warnings), STRUCTURE_DEFINITION)


def purify_to_npurify(circuit: Circuit) -> Circuit:
    """Replace PURIFY(u; v, w) by NPURIFY(u; v', w'), NOT(v' -> v), NOT(w' -> w)"""
    if GateKind.PURIFY not in circuit.kinds:
        return circuit

    gates: List[Gate] = []
    next_node = circuit.node_count + 1
    for gate in circuit.gates:
        if gate.kind is not GateKind.PURIFY:
            gates.append(gate)
            continue
        fresh_v, fresh_w = next_node, next_node + 1
        next_node += 2
        gates.append(Gate(GateKind.NPURIFY, gate.u, fresh_v, fresh_w))
        gates.append(Gate(GateKind.NOT, fresh_v, gate.v))
        gates.append(Gate(GateKind.NOT, fresh_w, gate.w))
    return Circuit(next_node - 1, tuple(gates))
