"""
Tests for grid search, candidate construction and the reduction round trip
"""

import itertools
import random
from fractions import Fraction

import pytest

from pacing_reduction.circuit.enumeration import brute_force_solve
from pacing_reduction.circuit.gates import Assignment, check_circuit
from pacing_reduction.core.game import MultiplierProfile, PacingGame
from pacing_reduction.core.verification import ApproxParams, verify
from pacing_reduction.exceptions import (
    EnumerationLimitError,
    ImpureAssignmentError,
    InvalidProfileError,
    VariantMismatchError,
)
from pacing_reduction.reduction.decoder import decode
from pacing_reduction.reduction.gadgets import compile_main, compile_weak
from pacing_reduction.solver.candidates import candidate_from_assignment, candidate_profile
from pacing_reduction.solver.grid import SearchConfig, grid_search, structured_config
from pacing_reduction.solver.lemmas import lemma_suite
from tests.circuit_factory import enumerate_circuits, not_cycle, random_circuit, two_not_cycle

F = Fraction


def search(artifact, refine=False):
    config = structured_config(artifact, refine=refine)
    return grid_search(artifact.game, artifact.default_params(), config)


def pure_solutions(circuit):
    return [s for s in brute_force_solve(circuit) if s.is_pure]


def test_two_cycle_grid_search():
    """Test the NOT 2-cycle has exactly the two encoded equilibria on {kappa, 1}"""
    artifact = compile_main(two_not_cycle(), 0)
    found = search(artifact)
    assert [eq.alpha.alpha for eq in found] == [(F(1, 2), 1, 1, 1), (1, F(1, 2), 1, 1)]
    assert [str(decode(artifact, eq.alpha)) for eq in found] == ["01", "10"]
    for eq in found:
        assert verify(artifact.game, eq.alpha, eq.x, eq.params).valid


def test_search_config_axes():
    """Test aux pinning, generic grids and grid normalisation"""
    artifact = compile_main(two_not_cycle(), 0)
    config = structured_config(artifact)
    assert config.axes(artifact.game) == [(F(1, 2), 1), (F(1, 2), 1), (1,), (1,)]
    assert config.profile_count(artifact.game) == 4
    refined = structured_config(artifact, refine=True)
    assert refined.b_grid == (F(1, 2), F(2, 3), F(3, 4), 1)

    generic = SearchConfig(generic_grid=2)
    assert generic.axes(artifact.game)[2] == (0, F(1, 2), 1)
    assert SearchConfig(b_grid=("1", "1/2", "1/2")).b_grid == (F(1, 2), 1)
    with pytest.raises(InvalidProfileError):
        SearchConfig(b_grid=(F(3, 2),))
    with pytest.raises(ValueError):
        SearchConfig(generic_grid=0)


def test_generic_grid_results_verify():
    """Test every profile reported on q/D grids is a verified equilibrium"""
    game = PacingGame(2, 1, {(0, 0): 2, (1, 0): 2}, (1, 1))
    found = grid_search(game, ApproxParams.exact(), SearchConfig(generic_grid=2))
    assert [eq.alpha.alpha for eq in found] == [(1, 1)]
    assert found[0].x.get(0, 0) == F(1, 2)


def test_empty_grid_and_limit():
    """Test an empty grid finds nothing and oversized grids refuse to run"""
    artifact = compile_main(two_not_cycle(), 0)
    assert grid_search(artifact.game, ApproxParams.exact(), SearchConfig()) == []
    with pytest.raises(EnumerationLimitError):
        grid_search(artifact.game, ApproxParams.exact(), structured_config(artifact, limit=3))


def test_refined_grid_finds_bot_equilibrium_on_odd_cycle():
    """Test the 3-cycle has the all-2/3 equilibrium decoding to Bot everywhere"""
    artifact = compile_main(not_cycle(3), 0)
    assert search(artifact) == []
    found = search(artifact, refine=True)
    two_thirds = [eq for eq in found if eq.alpha.alpha[:3] == (F(2, 3),) * 3]
    assert len(two_thirds) == 1
    assert str(decode(artifact, two_thirds[0].alpha)) == "⊥⊥⊥"


def check_main_round_trip(circuit):
    artifact = compile_main(circuit, 0)
    found = search(artifact)
    decoded = [decode(artifact, eq.alpha) for eq in found]
    assert decoded == pure_solutions(circuit), str(circuit.gates)
    for assignment in decoded:
        assert check_circuit(circuit, assignment)
    report = lemma_suite(artifact, found)
    assert report.valid, report.summary()


def check_weak_round_trip(circuit, refine=False):
    artifact = compile_weak(circuit)
    found = search(artifact, refine=refine)
    for eq in found:
        assert all(eq.alpha[b] >= F(1, 10) for b in artifact.node_buyer.values())
        assert check_circuit(circuit, decode(artifact, eq.alpha)), str(circuit.gates)
    report = lemma_suite(artifact, found)
    assert report.valid, report.summary()
    return found


@pytest.mark.parametrize("n", [2, 3, 4])
def test_main_round_trip_exhaustive(n):
    """Test decoded equilibria are exactly the pure solutions on every small circuit"""
    for circuit in enumerate_circuits(n):
        check_main_round_trip(circuit)


def test_main_round_trip_random():
    """Test the round trip on 200 random five and six node circuits"""
    rng = random.Random(5)
    for _ in range(200):
        check_main_round_trip(random_circuit(rng, rng.randint(5, 6)))


@pytest.mark.parametrize("n", [2, 3])
def test_weak_round_trip(n):
    """Test weak equilibria decode to solutions and the refined grid realises pure ones"""
    for circuit in enumerate_circuits(n):
        check_weak_round_trip(circuit)
        found = check_weak_round_trip(circuit, refine=True)
        if pure_solutions(circuit):
            assert found, str(circuit.gates)


def test_weak_round_trip_on_four_nodes_and_random_circuits():
    """Test soundness on the default weak grid for every four node circuit and 200 random ones"""
    rng = random.Random(13)
    random_circuits = [random_circuit(rng, rng.randint(5, 6)) for _ in range(200)]
    for circuit in itertools.chain(enumerate_circuits(4), random_circuits):
        check_weak_round_trip(circuit)


def test_candidate_for_two_cycle():
    """Test the candidate for 10 gives b_2 three quarters of its gadget good"""
    artifact = compile_main(two_not_cycle(), 0)
    assignment = Assignment.parse("10")
    assert candidate_profile(artifact, assignment).alpha == (1, F(1, 2), 1, 1)
    eq = candidate_from_assignment(artifact, assignment)
    assert eq is not None
    g2 = artifact.mapping.good_of("g_2")
    assert eq.x.get(artifact.node_buyer[2], g2) == F(3, 4)
    assert eq.x.get(artifact.aux_buyer[2], g2) == F(1, 4)
    assert verify(artifact.game, eq.alpha, eq.x, ApproxParams.exact()).valid


def test_candidate_rejects_unsatisfying_and_bad_assignments():
    """Test failed candidates, Bot values, lengths and the weak variant"""
    artifact = compile_main(two_not_cycle(), 0)
    assert candidate_from_assignment(artifact, Assignment.parse("11")) is None
    with pytest.raises(ImpureAssignmentError):
        candidate_profile(artifact, Assignment.parse("1⊥"))
    with pytest.raises(ValueError):
        candidate_profile(artifact, Assignment.parse("1"))
    with pytest.raises(VariantMismatchError):
        candidate_profile(compile_weak(two_not_cycle()), Assignment.parse("10"))


def test_candidates_realise_every_pure_solution():
    """Test each pure solution of every circuit up to four nodes yields an exact equilibrium"""
    for circuit in itertools.chain.from_iterable(enumerate_circuits(n) for n in (2, 3, 4)):
        artifact = compile_main(circuit, 0)
        for assignment in pure_solutions(circuit):
            eq = candidate_from_assignment(artifact, assignment)
            assert eq is not None, f"{circuit.gates} {assignment}"
            assert decode(artifact, eq.alpha) == assignment
            assert eq.params == ApproxParams.exact()
            assert verify(artifact.game, eq.alpha, eq.x, ApproxParams.exact()).valid


def test_candidate_under_positive_gamma():
    """Test candidates use the artifact's own equilibrium notion"""
    artifact = compile_main(two_not_cycle(), "1/6")
    eq = candidate_from_assignment(artifact, Assignment.parse("01"))
    assert eq is not None
    assert eq.params == ApproxParams.approximate(F(1, 6))
    assert eq.alpha.alpha[:2] == (F(1, 4), 1)


def test_parallel_search_matches_serial():
    """Test a process pool returns the same equilibria in the same order"""
    artifact = compile_main(not_cycle(4), 0)
    config = structured_config(artifact)
    serial = grid_search(artifact.game, artifact.default_params(), config)
    pooled = grid_search(
        artifact.game,
        artifact.default_params(),
        SearchConfig(b_grid=config.b_grid, aux_buyers=config.aux_buyers, workers=2),
    )
    assert [eq.alpha for eq in pooled] == [eq.alpha for eq in serial]
    assert len(serial) == 2


@pytest.mark.parametrize("game", [
    PacingGame(2, 1, {(0, 0): 2, (1, 0): 2}, (1, 1)),
    PacingGame(2, 1, {(0, 0): 2, (1, 0): 1}, (F(1, 2), 10)),
    PacingGame(2, 2, {(0, 0): 2, (0, 1): 1, (1, 0): 1, (1, 1): 2}, (1, F(3, 2))),
    PacingGame(3, 2, {(0, 0): 2, (1, 0): 2, (1, 1): 1, (2, 1): 2}, (F(1, 2), 1, F(1, 4))),
])
def test_generic_grid_agrees_with_finer_grid(game):
    """Test q/8 profiles found directly are exactly the q/8 profiles found on the q/16 grid"""
    params = ApproxParams.exact()
    coarse = grid_search(game, params, SearchConfig(generic_grid=8))
    fine = grid_search(game, params, SearchConfig(generic_grid=16))
    representable = [eq.alpha for eq in fine if all((a * 8).denominator == 1 for a in eq.alpha)]
    assert [eq.alpha for eq in coarse] == representable
    for eq in fine:
        assert verify(game, eq.alpha, eq.x, params).valid


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
