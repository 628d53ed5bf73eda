"""
Gadget Compilers
Translate a Pure-Circuit instance over {NOT, NOR, NPURIFY} into a pacing game.

Every node v gets a buyer b_v. Every gate output v gets an auxiliary buyer c_v
and a gadget good g_v valued by b_v and c_v, and every interaction edge
(u, v) gets a good g_(u,v) valued by b_u and b_v. The main and weak variants
differ only in their constants.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pacing_reduction.circuit.gates import Circuit, GateKind
from pacing_reduction.circuit.structure import validate_structure
from pacing_reduction.config import settings
from pacing_reduction.core.game import ONE, PacingGame, RationalLike, to_rational
from pacing_reduction.exceptions import CircuitStructureError, UnsupportedGateError
from pacing_reduction.reduction.artifact import (
    GateGoods,
    ReductionArtifact,
    ReductionMapping,
    aux_buyer_label,
    edge_good_label,
    gadget_good_label,
    node_buyer_label,
    sparsity_report,
)
from pacing_reduction.reduction.params import ReductionParams, Variant
from pacing_reduction.utils.logger import system_logger

AUX_BUDGET = Fraction(1000)


@dataclass(frozen=True)
class OutputGadget:
    """Budget of b_v and the values of g_v for b_v and c_v"""

    budget: Fraction
    node_value: Fraction
    aux_value: Fraction


@dataclass(frozen=True)
class GadgetTable:
    outputs: Dict[GateKind, Tuple[OutputGadget, ...]]
    # g_(u,v): b_u values it at 1, b_v at edge_value
    edge_value: Fraction
    aux_budget: Fraction = AUX_BUDGET


def main_table(params: ReductionParams) -> GadgetTable:
    delta, kappa = params.delta, params.kappa

    def output(budget, aux_value) -> OutputGadget:
        return OutputGadget(Fraction(budget), aux_value / kappa, aux_value)

    half = Fraction(1, 2)
    return GadgetTable(
        outputs={
            GateKind.NOT: (output(2, 1 + delta),),
            GateKind.NOR: (output(3, 2 - delta),),
            GateKind.NPURIFY: (
                output(Fraction(3, 2), 1 - delta * half),
                output(Fraction(3, 2), half + delta * half),
            ),
        },
        edge_value=1 / kappa + 1,
    )


WEAK_TABLE = GadgetTable(
    outputs={
        GateKind.NOT: (OutputGadget(Fraction(3, 2), Fraction(9), Fraction(1)),),
        GateKind.NOR: (OutputGadget(Fraction(5, 2), Fraction(18), Fraction(2)),),
        GateKind.NPURIFY: (
            OutputGadget(Fraction(9, 5), Fraction(27, 2), Fraction(3, 2)),
            OutputGadget(Fraction(14, 5), Fraction(18), Fraction(2)),
        ),
    },
    edge_value=Fraction(1000),
)


def _check_compilable(circuit: Circuit):
    if GateKind.PURIFY in circuit.kinds:
        raise UnsupportedGateError("PURIFY gates must be rewritten with purify_to_npurify before compiling")
    report = validate_structure(circuit)
    if not report.valid:
        raise CircuitStructureError("; ".join(v.message for v in report.violations))


def _assemble(circuit: Circuit, table: GadgetTable, variant: Variant, gamma: Optional[Fraction]) -> ReductionArtifact:
    _check_compilable(circuit)
    n = circuit.node_count

    node_buyer = {node: node - 1 for node in range(1, n + 1)}
    buyer_labels: List[str] = [node_buyer_label(node) for node in range(1, n + 1)]
    budgets: List[Fraction] = [ONE] * n
    aux_buyer: Dict[int, int] = {}

    values: Dict[Tuple[int, int], Fraction] = {}
    good_labels: List[str] = []
    gate_goods: List[GateGoods] = []

    for index, gate in enumerate(circuit.gates):
        goods: List[int] = []
        for node, gadget in zip(gate.outputs, table.outputs[gate.kind]):
            c_buyer = len(buyer_labels)
            aux_buyer[node] = c_buyer
            buyer_labels.append(aux_buyer_label(node))
            budgets.append(table.aux_budget)
            budgets[node_buyer[node]] = gadget.budget

            good = len(good_labels)
            good_labels.append(gadget_good_label(node))
            values[(node_buyer[node], good)] = gadget.node_value
            values[(c_buyer, good)] = gadget.aux_value
            goods.append(good)

        for source, target in gate.edges():
            good = len(good_labels)
            good_labels.append(edge_good_label(source, target))
            values[(node_buyer[source], good)] = ONE
            values[(node_buyer[target], good)] = table.edge_value
            goods.append(good)

        gate_goods.append(GateGoods(index, gate, tuple(goods)))

    game = PacingGame(
        n=len(buyer_labels),
        m=len(good_labels),
        values=values,
        budgets=tuple(budgets),
        buyer_labels=tuple(buyer_labels),
        good_labels=tuple(good_labels),
    )
    mapping = ReductionMapping(
        variant=variant,
        circuit=circuit,
        node_buyer=node_buyer,
        aux_buyer=aux_buyer,
        gate_goods=tuple(gate_goods),
        buyer_labels=game.buyer_labels,
        good_labels=game.good_labels,
        gamma=gamma,
    )
    artifact = ReductionArtifact(game, mapping)

    report = sparsity_report(artifact)
    system_logger.log_compilation(
        variant=variant.value,
        nodes=n,
        buyers=game.n,
        goods=game.m,
        degree_valid=report.degree_valid,
        max_items=report.max_node_items,
    )
    return artifact


def compile_main(circuit: Circuit, gamma: Optional[RationalLike] = None) -> ReductionArtifact:
    """Main reduction; gamma defaults to settings.DEFAULT_GAMMA"""
    params = ReductionParams(to_rational(settings.DEFAULT_GAMMA) if gamma is None else gamma)
    return _assemble(circuit, main_table(params), Variant.MAIN, params.gamma)


def compile_weak(circuit: Circuit) -> ReductionArtifact:
    """Weak reduction with fixed constants, built for (1/20, 1/20, 1/20)-approximate equilibria"""
    return _assemble(circuit, WEAK_TABLE, Variant.WEAK, None)
