"""
Decoders
Read a circuit assignment off the node buyers' multipliers.
"""

from fractions import Fraction
from typing import Callable, Optional

from pacing_reduction.circuit.gates import Assignment, Value
from pacing_reduction.config import settings
from pacing_reduction.core.game import ONE, MultiplierProfile, RationalLike, to_rational
from pacing_reduction.exceptions import MissingBuyerError, VariantMismatchError
from pacing_reduction.reduction.artifact import ArtifactLike, ReductionMapping, mapping_of
from pacing_reduction.reduction.params import Variant

# Weak encoding: closed intervals
WEAK_ZERO = (Fraction(1, 10), Fraction(3, 20))
WEAK_ONE = (Fraction(9, 10), ONE)


def _require(mapping: ReductionMapping, alpha: MultiplierProfile, variant: Variant):
    if mapping.variant is not variant:
        raise VariantMismatchError(f"Expected a {variant.value} artifact, got {mapping.variant.value}")
    if len(alpha) < mapping.buyer_count:
        raise MissingBuyerError(f"Profile covers {len(alpha)} of {mapping.buyer_count} buyers")


def _decode_with(mapping: ReductionMapping, alpha: MultiplierProfile, rule: Callable[[Fraction], Value]) -> Assignment:
    nodes = range(1, mapping.circuit.node_count + 1)
    return Assignment(tuple(rule(alpha[mapping.node_buyer[node]]) for node in nodes))


def decode_main(target: ArtifactLike, alpha: MultiplierProfile) -> Assignment:
    """0 iff alpha_b = kappa, 1 iff alpha_b = 1, Bot otherwise"""
    mapping = mapping_of(target)
    _require(mapping, alpha, Variant.MAIN)
    kappa = mapping.params.kappa

    def rule(a: Fraction) -> Value:
        if a == kappa:
            return Value.ZERO
        if a == ONE:
            return Value.ONE
        return Value.BOT

    return _decode_with(mapping, alpha, rule)


def decode_weak(target: ArtifactLike, alpha: MultiplierProfile) -> Assignment:
    """0 on [1/10, 3/20], 1 on [9/10, 1], Bot otherwise"""
    mapping = mapping_of(target)
    _require(mapping, alpha, Variant.WEAK)

    def rule(a: Fraction) -> Value:
        if WEAK_ZERO[0] <= a <= WEAK_ZERO[1]:
            return Value.ZERO
        if WEAK_ONE[0] <= a <= WEAK_ONE[1]:
            return Value.ONE
        return Value.BOT

    return _decode_with(mapping, alpha, rule)


def decode(target: ArtifactLike, alpha: MultiplierProfile) -> Assignment:
    if mapping_of(target).variant is Variant.WEAK:
        return decode_weak(target, alpha)
    return decode_main(target, alpha)


def snap_decode_main(
    target: ArtifactLike,
    alpha: MultiplierProfile,
    tolerance: Optional[RationalLike] = None,
) -> Assignment:
    """Tolerance decoder: snap each multiplier to the nearest of {kappa, 1} within epsilon.

    Meant for profiles seeded from floating-point searches; the exact
    decode_main is the one that defines the encoding.
    """
    mapping = mapping_of(target)
    _require(mapping, alpha, Variant.MAIN)
    epsilon = to_rational(settings.SNAP_TOLERANCE if tolerance is None else tolerance)
    kappa = mapping.params.kappa

    def rule(a: Fraction) -> Value:
        to_zero, to_one = abs(a - kappa), abs(a - ONE)
        if to_zero <= epsilon and to_zero <= to_one:
            return Value.ZERO
        if to_one <= epsilon:
            return Value.ONE
        return Value.BOT

    return _decode_with(mapping, alpha, rule)
