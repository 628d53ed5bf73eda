"""
Lemma Suite
Executable versions of the reduction's correctness properties, instantiated on
concrete equilibria of a compiled game: the range of every multiplier, the
whole-unit wins on edge goods, and each gate's implications.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List

from pacing_reduction.circuit.gates import Gate, GateKind
from pacing_reduction.core.game import ONE, prices
from pacing_reduction.core.verification import Equilibrium, VerificationReport, Violation, verify
from pacing_reduction.reduction.artifact import ReductionArtifact, edge_good_label
from pacing_reduction.reduction.decoder import WEAK_ONE, WEAK_ZERO
from pacing_reduction.reduction.params import WEAK_TOLERANCE, Variant
from pacing_reduction.utils.logger import system_logger

LEMMA_DEFINITION = "lemma-suite"

COND_EQUILIBRIUM = "equilibrium"
COND_RANGE = "general-range"
COND_EDGE = "edge-goods"
COND_NOT = "not-gate"
COND_NOR = "nor-gate"
COND_NPURIFY = "npurify-gate"
COND_SPLIT = "npurify-split"

WEAK_NODE_FLOOR = Fraction(1, 10)
WEAK_SPLIT = Fraction(2, 5)


@dataclass(frozen=True)
class Encoding:
    """How a variant reads 0 and 1 off a multiplier, and its range bounds"""

    is_zero: Callable[[Fraction], bool]
    is_one: Callable[[Fraction], bool]
    node_in_range: Callable[[Fraction], bool]
    aux_in_range: Callable[[Fraction], bool]
    # NPURIFY: alpha_u above the split forces v to 0, at or below it forces w to 1
    split: Fraction
    node_range: str
    aux_range: str


def encoding_for(artifact: ReductionArtifact) -> Encoding:
    if artifact.variant is Variant.MAIN:
        params = artifact.params
        kappa = params.kappa
        return Encoding(
            is_zero=lambda a: a == kappa,
            is_one=lambda a: a == ONE,
            node_in_range=lambda a: kappa <= a <= ONE,
            aux_in_range=lambda a: a == ONE,
            split=Fraction(1, 2) + params.delta / 2,
            node_range=f"[{kappa}, 1]",
            aux_range="{1}",
        )
    aux_floor = ONE - WEAK_TOLERANCE
    return Encoding(
        is_zero=lambda a: a <= WEAK_ZERO[1],
        is_one=lambda a: a >= WEAK_ONE[0],
        node_in_range=lambda a: WEAK_NODE_FLOOR <= a <= ONE,
        aux_in_range=lambda a: aux_floor <= a <= ONE,
        split=WEAK_SPLIT,
        node_range=f"[{WEAK_NODE_FLOOR}, 1]",
        aux_range=f"[{aux_floor}, 1]",
    )


def _gate_failures(gate: Gate, alpha: List[Fraction], enc: Encoding) -> List[str]:
    """Implications of one gate that fail; alpha is indexed by node"""
    failures: List[str] = []

    def require(antecedent: bool, consequent: bool, text: str):
        if antecedent and not consequent:
            failures.append(text)

    a_u = alpha[gate.u]
    if gate.kind is GateKind.NOT:
        a_v = alpha[gate.v]
        require(enc.is_zero(a_u), enc.is_one(a_v), f"u reads 0 ({a_u}) but v does not read 1 ({a_v})")
        require(enc.is_one(a_u), enc.is_zero(a_v), f"u reads 1 ({a_u}) but v does not read 0 ({a_v})")
        return failures

    if gate.kind is GateKind.NOR:
        a_v, a_w = alpha[gate.v], alpha[gate.w]
        require(enc.is_zero(a_u) and enc.is_zero(a_v), enc.is_one(a_w),
                f"both inputs read 0 ({a_u}, {a_v}) but w does not read 1 ({a_w})")
        require(enc.is_one(a_u) or enc.is_one(a_v), enc.is_zero(a_w),
                f"an input reads 1 ({a_u}, {a_v}) but w does not read 0 ({a_w})")
        return failures

    a_v, a_w = alpha[gate.v], alpha[gate.w]
    require(True, enc.is_zero(a_v) or enc.is_one(a_w),
            f"neither output is pure (v = {a_v}, w = {a_w})")
    require(enc.is_zero(a_u), enc.is_one(a_v) and enc.is_one(a_w),
            f"u reads 0 ({a_u}) but outputs are ({a_v}, {a_w})")
    require(enc.is_one(a_u), enc.is_zero(a_v) and enc.is_zero(a_w),
            f"u reads 1 ({a_u}) but outputs are ({a_v}, {a_w})")
    return failures


def _split_failures(gate: Gate, alpha: List[Fraction], enc: Encoding) -> List[str]:
    a_u, a_v, a_w = alpha[gate.u], alpha[gate.v], alpha[gate.w]
    if a_u > enc.split and not enc.is_zero(a_v):
        return [f"u = {a_u} > {enc.split} but v does not read 0 ({a_v})"]
    if a_u <= enc.split and not enc.is_one(a_w):
        return [f"u = {a_u} <= {enc.split} but w does not read 1 ({a_w})"]
    return []


_GATE_CONDITION = {GateKind.NOT: COND_NOT, GateKind.NOR: COND_NOR, GateKind.NPURIFY: COND_NPURIFY}


def check_equilibrium(artifact: ReductionArtifact, equilibrium: Equilibrium, index: int = 0) -> List[Violation]:
    """Every lemma failure on one equilibrium"""
    game = artifact.game
    alpha, x = equilibrium.alpha, equilibrium.x
    tag = f"equilibrium {index}"
    failures: List[Violation] = []

    report = verify(game, alpha, x, equilibrium.params)
    for v in report.violations:
        failures.append(Violation(COND_EQUILIBRIUM, f"{tag}: ({v.condition}) {v.message}",
                                  buyer=v.buyer, good=v.good, witness={"equilibrium": index}))

    enc = encoding_for(artifact)
    for node, buyer in artifact.node_buyer.items():
        if not enc.node_in_range(alpha[buyer]):
            failures.append(Violation(
                COND_RANGE, f"{tag}: alpha of b_{node} is {alpha[buyer]}, outside {enc.node_range}",
                buyer=buyer, node=node, witness={"equilibrium": index, "alpha": alpha[buyer]},
            ))
    for node, buyer in artifact.aux_buyer.items():
        if not enc.aux_in_range(alpha[buyer]):
            failures.append(Violation(
                COND_RANGE, f"{tag}: alpha of c_{node} is {alpha[buyer]}, outside {enc.aux_range}",
                buyer=buyer, node=node, witness={"equilibrium": index, "alpha": alpha[buyer]},
            ))

    # The head of every interaction edge buys its whole unit at the tail's bid
    price_vector = prices(game, alpha)
    for source, target in artifact.circuit.interaction_edges():
        good = artifact.mapping.good_of(edge_good_label(source, target))
        winner, payer = artifact.node_buyer[target], artifact.node_buyer[source]
        share, price = x.get(winner, good), price_vector[good]
        if share != ONE or price != alpha[payer]:
            failures.append(Violation(
                COND_EDGE,
                f"{tag}: b_{target} holds {share} of g_({source},{target}) at price {price}, expected 1 at {alpha[payer]}",
                buyer=winner, good=good, witness={"equilibrium": index, "x": share, "price": price},
            ))

    by_node = [ONE] + [alpha[artifact.node_buyer[node]] for node in range(1, artifact.circuit.node_count + 1)]
    for gate in artifact.circuit.gates:
        for text in _gate_failures(gate, by_node, enc):
            failures.append(Violation(_GATE_CONDITION[gate.kind], f"{tag}: {gate}: {text}",
                                      node=gate.outputs[0], witness={"equilibrium": index}))
        if gate.kind is GateKind.NPURIFY:
            for text in _split_failures(gate, by_node, enc):
                failures.append(Violation(COND_SPLIT, f"{tag}: {gate}: {text}",
                                          node=gate.u, witness={"equilibrium": index}))
    return failures


def lemma_suite(artifact: ReductionArtifact, equilibria: Iterable[Equilibrium]) -> VerificationReport:
    """Check the reduction's lemmas on every given equilibrium and report all failures"""
    violations: List[Violation] = []
    count = 0
    for index, equilibrium in enumerate(equilibria):
        violations.extend(check_equilibrium(artifact, equilibrium, index))
        count += 1
    report = VerificationReport(tuple(violations), (), LEMMA_DEFINITION)
    system_logger.log_verification(LEMMA_DEFINITION, report.valid, len(violations))
    if count == 0:
        system_logger.log_system_event("lemma_suite_empty", {"variant": artifact.variant.value})
    return report
