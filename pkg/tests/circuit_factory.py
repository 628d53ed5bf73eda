"""
Circuit generators shared by the test modules
"""

import random
from typing import Dict, Iterator, List, Optional

from pacing_reduction.circuit.gates import Circuit, Gate, GateKind
from pacing_reduction.circuit.structure import degree_valid

TWO_OUTPUT = (GateKind.NPURIFY, GateKind.PURIFY)


def not_cycle(n: int) -> Circuit:
    """NOT(1 -> 2), NOT(2 -> 3), ..., NOT(n -> 1)"""
    return Circuit(n, tuple(Gate(GateKind.NOT, i, i % n + 1) for i in range(1, n + 1)))


def two_not_cycle() -> Circuit:
    return not_cycle(2)


def enumerate_circuits(n: int) -> Iterator[Circuit]:
    """Every structurally valid circuit over {NOT, NOR, NPURIFY} on n nodes.

    NOR inputs are taken in increasing order; NPURIFY outputs in both orders.
    """
    nodes = range(1, n + 1)

    def extend(covered: frozenset, gates: List[Gate]) -> Iterator[List[Gate]]:
        free = [v for v in nodes if v not in covered]
        if not free:
            yield list(gates)
            return
        out = free[0]
        others = [v for v in nodes if v != out]
        for u in others:
            yield from extend(covered | {out}, gates + [Gate(GateKind.NOT, u, out)])
        for i, u in enumerate(others):
            for v in others[i + 1:]:
                yield from extend(covered | {out}, gates + [Gate(GateKind.NOR, u, v, out)])
        for partner in free[1:]:
            for u in nodes:
                if u in (out, partner):
                    continue
                for v, w in ((out, partner), (partner, out)):
                    yield from extend(covered | {out, partner}, gates + [Gate(GateKind.NPURIFY, u, v, w)])

    for gates in extend(frozenset(), []):
        yield Circuit(n, tuple(gates))


def random_circuit(rng: random.Random, n: int, kinds=(GateKind.NOT, GateKind.NOR, GateKind.NPURIFY)) -> Circuit:
    """A structurally valid circuit; inputs are drawn uniformly"""
    if n < 2:
        raise ValueError("A valid circuit needs at least two nodes")
    free = list(range(1, n + 1))
    rng.shuffle(free)
    gates: List[Gate] = []
    while free:
        out = free.pop()
        choices = [k for k in kinds if k is not GateKind.NOR or n >= 3]
        if not free or n < 3:
            choices = [k for k in choices if k not in TWO_OUTPUT]
        kind = rng.choice(choices or [GateKind.NOT])
        others = [v for v in range(1, n + 1) if v != out]
        if kind is GateKind.NOT:
            gates.append(Gate(kind, rng.choice(others), out))
        elif kind is GateKind.NOR:
            u, v = rng.sample(others, 2)
            gates.append(Gate(kind, u, v, out))
        else:
            partner = free.pop()
            u = rng.choice([v for v in others if v != partner])
            gates.append(Gate(kind, u, out, partner))
    return Circuit(n, tuple(gates))


def _assign_inputs(rng: random.Random, n: int, shapes: List[tuple]) -> Optional[List[Gate]]:
    """Fill input slots so that every node has out-degree >= 1 within its capacity"""
    in_degree: Dict[int, int] = {}
    for kind, outputs in shapes:
        for node in outputs:
            in_degree[node] = 2 if kind is GateKind.NOR else 1
    capacity = {node: 3 - in_degree[node] for node in range(1, n + 1)}
    used = {node: 0 for node in range(1, n + 1)}

    def pick(exclude, weight) -> Optional[int]:
        valid = [v for v in range(1, n + 1) if v not in exclude and used[v] + weight <= capacity[v]]
        if weight == 2:
            valid = [v for v in valid if used[v] == 0]
        fresh = [v for v in valid if used[v] == 0]
        pool = fresh or valid
        if not pool:
            return None
        choice = rng.choice(pool)
        used[choice] += weight
        return choice

    order = sorted(shapes, key=lambda shape: {GateKind.NPURIFY: 0, GateKind.NOR: 1, GateKind.NOT: 2}[shape[0]])
    gates: List[Gate] = []
    for kind, outputs in order:
        if kind is GateKind.NPURIFY:
            u = pick(set(outputs), 2)
            if u is None:
                return None
            gates.append(Gate(kind, u, *outputs))
        elif kind is GateKind.NOR:
            u = pick(set(outputs), 1)
            v = pick(set(outputs) | {u}, 1) if u is not None else None
            if v is None:
                return None
            gates.append(Gate(kind, u, v, outputs[0]))
        else:
            u = pick(set(outputs), 1)
            if u is None:
                return None
            gates.append(Gate(kind, u, outputs[0]))
    if any(count == 0 for count in used.values()):
        return None
    return gates


def random_degree_valid_circuit(rng: random.Random, n: int, attempts: int = 500) -> Circuit:
    """A circuit obeying the degree rule; falls back to a NOT cycle"""
    for _ in range(attempts):
        free = list(range(1, n + 1))
        rng.shuffle(free)
        shapes = []
        while free:
            out = free.pop()
            roll = rng.random()
            if roll < 0.25 and free and n >= 3:
                shapes.append((GateKind.NPURIFY, (out, free.pop())))
            elif roll < 0.5 and n >= 3:
                shapes.append((GateKind.NOR, (out,)))
            else:
                shapes.append((GateKind.NOT, (out,)))
        gates = _assign_inputs(rng, n, shapes)
        if gates is None:
            continue
        circuit = Circuit(n, tuple(gates))
        if degree_valid(circuit):
            return circuit
    return not_cycle(n)
