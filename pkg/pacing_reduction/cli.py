"""
Command Line Interface
compile, verify, solve, decode, roundtrip and validate-circuit
"""

import functools
from pathlib import Path
from typing import List, Optional

import click

from pacing_reduction import __version__
from pacing_reduction.circuit.gates import Circuit, GateKind, check_circuit
from pacing_reduction.circuit.structure import node_degrees, purify_to_npurify, validate_structure
from pacing_reduction.core.game import format_rational, to_rational
from pacing_reduction.core.verification import ApproxParams, Equilibrium, combine_reports, verify_equilibrium
from pacing_reduction.exceptions import PacingError
from pacing_reduction.reduction.artifact import ReductionArtifact, ReductionMapping, sparsity_report
from pacing_reduction.reduction.decoder import decode, snap_decode_main
from pacing_reduction.reduction.gadgets import compile_main, compile_weak
from pacing_reduction.reduction.params import Variant
from pacing_reduction.solver.grid import SearchConfig, grid_search, structured_config
from pacing_reduction.solver.lemmas import lemma_suite
from pacing_reduction.storage.documents import DocumentStore, pair_artifact, serialize_equilibria
from pacing_reduction.utils.logger import system_logger

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class RationalParam(click.ParamType):
    """Exact rational given as "p/q", an integer or a decimal"""

    name = "rational"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return to_rational(value)
        except (TypeError, ValueError) as e:
            self.fail(str(e), param, ctx)


class GridParam(click.ParamType):
    """Comma-separated rationals, e.g. 1/2,1"""

    name = "grid"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return tuple(to_rational(token) for token in value.split(",") if token.strip())
        except (TypeError, ValueError) as e:
            self.fail(str(e), param, ctx)


RATIONAL = RationalParam()
GRID = GridParam()


def _abort(message: str, code: int = EXIT_USAGE):
    system_logger.log_error("cli", message)
    click.echo(f"Error: {message}", err=True)
    click.get_current_context().exit(code)


def handle_errors(command):
    """Map package and parameter errors to the usage exit code"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (PacingError, ValueError) as e:
            _abort(str(e))

    return wrapper


def _params_from_flags(
    gamma: Optional[object],
    sigma: Optional[object],
    tau: Optional[object],
) -> Optional[ApproxParams]:
    """Explicit equilibrium notion, or None when no flag was given"""
    if sigma is not None or tau is not None:
        return ApproxParams.relaxed(sigma or 0, gamma or 0, tau or 0)
    if gamma is not None:
        return ApproxParams.approximate(gamma) if gamma else ApproxParams.exact()
    return None


def _prepare_circuit(circuit: Circuit, rewrite_purify: bool) -> Circuit:
    if rewrite_purify and GateKind.PURIFY in circuit.kinds:
        rewritten = purify_to_npurify(circuit)
        system_logger.log_system_event(
            "purify_rewritten",
            {"nodes_before": circuit.node_count, "nodes_after": rewritten.node_count},
        )
        return rewritten
    return circuit


def _compile(circuit: Circuit, variant: str, gamma) -> ReductionArtifact:
    if Variant(variant) is Variant.WEAK:
        if gamma is not None:
            raise ValueError("--gamma applies to the main variant only")
        return compile_weak(circuit)
    return compile_main(circuit, gamma)


def _document_stem(path: Path) -> str:
    name = path.name
    for suffix in (".json", ".circuit"):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
    return name


@click.group()
@click.version_option(__version__, prog_name="pacing-reduction")
def cli():
    """Exact pacing games and the Pure-Circuit gadget reductions"""


@cli.command("compile")
@click.argument("circuit_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--variant", type=click.Choice([v.value for v in Variant]), default=Variant.MAIN.value, show_default=True)
@click.option("--gamma", type=RATIONAL, default=None, help="Main variant only; defaults to PACING_DEFAULT_GAMMA")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--no-rewrite-purify", is_flag=True, help="Fail on PURIFY gates instead of rewriting them")
@handle_errors
def compile_command(circuit_path, variant, gamma, out_dir, no_rewrite_purify):
    """Compile a circuit into a game document and a mapping document"""
    store = DocumentStore()
    circuit = _prepare_circuit(store.load_circuit(circuit_path), not no_rewrite_purify)
    artifact = _compile(circuit, variant, gamma)

    stem = _document_stem(Path(circuit_path))
    game_path = store.save_game(artifact.game, Path(out_dir) / f"{stem}.game.json")
    mapping_path = store.save_mapping(artifact.mapping, Path(out_dir) / f"{stem}.mapping.json")

    report = sparsity_report(artifact)
    click.echo(f"variant: {artifact.variant.value}")
    click.echo(f"buyers: {artifact.game.n}")
    click.echo(f"goods: {artifact.game.m}")
    click.echo(f"degree rule: {'holds' if report.degree_valid else 'violated'}")
    click.echo(f"max items per node buyer: {report.max_node_items}")
    click.echo(f"game: {game_path}")
    click.echo(f"mapping: {mapping_path}")


@cli.command("verify")
@click.argument("game_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("equilibria_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--gamma", type=RATIONAL, default=None)
@click.option("--sigma", type=RATIONAL, default=None)
@click.option("--tau", type=RATIONAL, default=None)
@click.option("--mapping", "mapping_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Use the reduction's equilibrium notion when no tolerance flag is given")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Also write the combined report as JSON")
@handle_errors
def verify_command(game_path, equilibria_path, gamma, sigma, tau, mapping_path, report_path):
    """Verify every equilibrium of a list; exit 0 iff all are valid"""
    store = DocumentStore()
    game = store.load_game(game_path)
    equilibria = store.load_equilibria(equilibria_path, game)

    params = _params_from_flags(gamma, sigma, tau)
    if mapping_path is not None:
        mapping = pair_artifact(game, store.load_mapping(mapping_path)).mapping
        if mapping.variant is Variant.MAIN and (sigma is not None or tau is not None):
            raise ValueError("--sigma and --tau apply to weak-variant games only")
        params = params or mapping.default_params()

    reports = []
    for index, equilibrium in enumerate(equilibria):
        if params is not None:
            equilibrium = Equilibrium(equilibrium.alpha, equilibrium.x, params)
        report = verify_equilibrium(game, equilibrium)
        reports.append(report)
        click.echo(f"equilibrium {index}: " + report.summary())

    definition = params.definition if params is not None else "stored"
    combined = combine_reports(reports, definition)
    system_logger.log_verification(definition, combined.valid, len(combined.violations))
    if report_path is not None:
        store.save_report(combined, report_path)
    if not equilibria:
        click.echo("no equilibria to verify")
    click.get_current_context().exit(EXIT_OK if combined.valid else EXIT_INVALID)


@cli.command("solve")
@click.argument("game_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--mapping", "mapping_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Search the structured grid of a compiled game")
@click.option("--gamma", type=RATIONAL, default=None)
@click.option("--sigma", type=RATIONAL, default=None)
@click.option("--tau", type=RATIONAL, default=None)
@click.option("--grid", type=GRID, default=None, help="Multipliers for node buyers, e.g. 1/2,1")
@click.option("--generic-grid", type=click.IntRange(min=1), default=None, help="Uniform grid q/D for every buyer")
@click.option("--refine", is_flag=True, help="Add case-split and tie points to the structured grid")
@click.option("--limit", type=click.IntRange(min=0), default=None, help="Maximum number of profiles")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Defaults to stdout")
@handle_errors
def solve_command(game_path, mapping_path, gamma, sigma, tau, grid, generic_grid, refine, limit, out_path):
    """Enumerate grid profiles and write the verified equilibria"""
    store = DocumentStore()
    game = store.load_game(game_path)
    params = _params_from_flags(gamma, sigma, tau)
    limits = {} if limit is None else {"limit": limit}

    if generic_grid is not None:
        config = SearchConfig(generic_grid=generic_grid, **limits)
    elif mapping_path is not None:
        artifact = pair_artifact(game, store.load_mapping(mapping_path))
        config = structured_config(artifact, refine=refine, b_grid=grid, limit=limit)
        params = params or artifact.default_params()
    elif grid is not None:
        config = SearchConfig(b_grid=grid, **limits)
    else:
        raise ValueError("Give --grid, --generic-grid or --mapping")

    equilibria = grid_search(game, params or ApproxParams.exact(), config)
    if out_path is None:
        click.echo(serialize_equilibria(game, equilibria), nl=False)
    else:
        store.save_equilibria(game, equilibria, out_path)
        click.echo(f"{len(equilibria)} equilibria found on the grid; written to {out_path}")


@cli.command("decode")
@click.argument("mapping_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("equilibria_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--snap", "tolerance", type=RATIONAL, default=None,
              help="Main variant: snap multipliers within this tolerance of kappa or 1")
@handle_errors
def decode_command(mapping_path, equilibria_path, tolerance):
    """Print the circuit assignment encoded by each equilibrium"""
    store = DocumentStore()
    mapping = store.load_mapping(mapping_path)
    equilibria = store.load_equilibria(equilibria_path, mapping)
    for index, equilibrium in enumerate(equilibria):
        if tolerance is not None:
            assignment = snap_decode_main(mapping, equilibrium.alpha, tolerance)
        else:
            assignment = decode(mapping, equilibrium.alpha)
        satisfied = check_circuit(mapping.circuit, assignment)
        click.echo(f"equilibrium {index}: {assignment} ({'satisfying' if satisfied else 'not satisfying'})")


def _restrict_and_check(original: Circuit, mapping: ReductionMapping, assignment) -> bool:
    return check_circuit(mapping.circuit, assignment) and check_circuit(
        original, assignment.restrict(original.node_count)
    )


@cli.command("roundtrip")
@click.argument("circuit_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--variant", type=click.Choice([v.value for v in Variant]), default=Variant.MAIN.value, show_default=True)
@click.option("--gamma", type=RATIONAL, default=None)
@click.option("--grid", type=GRID, default=None)
@click.option("--refine", is_flag=True, help="Probe off-grid multipliers as well")
@click.option("--limit", type=click.IntRange(min=0), default=None)
@click.option("--no-rewrite-purify", is_flag=True)
@handle_errors
def roundtrip_command(circuit_path, variant, gamma, grid, refine, limit, no_rewrite_purify):
    """Compile, search, decode and check; exit 0 iff every equilibrium decodes to a solution"""
    store = DocumentStore()
    original = store.load_circuit(circuit_path)
    artifact = _compile(_prepare_circuit(original, not no_rewrite_purify), variant, gamma)

    config = structured_config(artifact, refine=refine, b_grid=grid, limit=limit)
    params = artifact.default_params()
    equilibria = grid_search(artifact.game, params, config)

    decoded: List[str] = []
    satisfied = 0
    for equilibrium in equilibria:
        assignment = decode(artifact, equilibrium.alpha)
        ok = _restrict_and_check(original, artifact.mapping, assignment)
        satisfied += ok
        decoded.append(f"{assignment.restrict(original.node_count)}{'' if ok else '  (NOT satisfying)'}")

    lemmas = lemma_suite(artifact, equilibria)
    success = satisfied == len(equilibria) and lemmas.valid
    system_logger.log_roundtrip(artifact.variant.value, len(equilibria), satisfied, success)

    click.echo(f"variant: {artifact.variant.value} ({params.definition})")
    click.echo(f"grid: {', '.join(format_rational(g) for g in config.b_grid)}")
    click.echo(f"equilibria found on grid: {len(equilibria)}")
    for line in decoded:
        click.echo(f"  {line}")
    if not equilibria:
        click.echo("  none found on grid" + ("" if refine else "; try --refine"))
    click.echo(lemmas.summary())
    if not success:
        click.echo("roundtrip: FAILED")
    elif equilibria:
        click.echo("roundtrip: ok")
    else:
        click.echo("roundtrip: ok (vacuous, no equilibria to check)")
    click.get_current_context().exit(EXIT_OK if success else EXIT_INVALID)


@cli.command("validate-circuit")
@click.argument("circuit_path", type=click.Path(exists=True, dir_okay=False))
@handle_errors
def validate_circuit_command(circuit_path):
    """Check the unique-output rule and report the degree rule"""
    circuit = DocumentStore().load_circuit(circuit_path)
    report = validate_structure(circuit)
    system_logger.log_verification(report.definition, report.valid, len(report.violations))
    click.echo(report.summary())
    for node, (d_in, d_out) in node_degrees(circuit).items():
        click.echo(f"  node {node}: d_in={d_in} d_out={d_out}")
    click.get_current_context().exit(EXIT_OK if report.valid else EXIT_INVALID)


def main():
    cli()


if __name__ == "__main__":
    main()
