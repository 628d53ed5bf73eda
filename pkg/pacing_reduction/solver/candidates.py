"""
Assignment-Guided Candidates
"""

from typing import Optional

from pacing_reduction.circuit.gates import Assignment, Value
from pacing_reduction.core.feasibility import allocation_feasible
from pacing_reduction.core.game import ONE, MultiplierProfile
from pacing_reduction.core.verification import Equilibrium, verify
from pacing_reduction.exceptions import ImpureAssignmentError, VariantMismatchError
from pacing_reduction.reduction.artifact import ReductionArtifact
from pacing_reduction.reduction.params import Variant


def candidate_profile(artifact: ReductionArtifact, assignment: Assignment) -> MultiplierProfile:
    """alpha_b = kappa for 0, 1 for 1, and every auxiliary buyer at 1"""
    if artifact.variant is not Variant.MAIN:
        raise VariantMismatchError("Candidates are only built for main-variant artifacts")
    if len(assignment) != artifact.circuit.node_count:
        raise ValueError(f"Assignment covers {len(assignment)} of {artifact.circuit.node_count} nodes")
    if not assignment.is_pure:
        raise ImpureAssignmentError(f"Assignment {assignment} contains Bot")

    kappa = artifact.params.kappa
    alpha = [ONE] * artifact.game.n
    for node, buyer in artifact.node_buyer.items():
        alpha[buyer] = kappa if assignment[node] is Value.ZERO else ONE
    return MultiplierProfile(tuple(alpha))


def candidate_from_assignment(artifact: ReductionArtifact, assignment: Assignment) -> Optional[Equilibrium]:
    """Equilibrium whose multipliers encode the assignment, or None.

    Checked under the notion the artifact was compiled for, exact at gamma = 0.
    """
    alpha = candidate_profile(artifact, assignment)
    params = artifact.default_params()
    x = allocation_feasible(artifact.game, alpha, params)
    if x is None or not verify(artifact.game, alpha, x, params).valid:
        return None
    return Equilibrium(alpha, x, params)
