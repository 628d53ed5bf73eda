"""
Document Storage
Reads and writes every document kind as JSON through the pydantic schemas
"""

from pathlib import Path
from typing import Callable, List, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from pacing_reduction.circuit.gates import Circuit
from pacing_reduction.config import create_directories
from pacing_reduction.core.game import PacingGame
from pacing_reduction.core.verification import Equilibrium, VerificationReport
from pacing_reduction.exceptions import DocumentError, PacingError
from pacing_reduction.models.schemas import (
    CircuitDocument,
    EquilibriumListDocument,
    GameDocument,
    Labelled,
    MappingDocument,
    ReportDocument,
)
from pacing_reduction.reduction.artifact import ReductionArtifact, ReductionMapping
from pacing_reduction.utils.logger import system_logger

PathLike = Union[str, Path]
M = TypeVar("M", bound=BaseModel)
T = TypeVar("T")


def _dump(document: BaseModel) -> str:
    return document.model_dump_json(indent=2) + "\n"


def _load(model: Type[M], text: str, kind: str) -> M:
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        system_logger.log_error("documents", f"Invalid {kind} document: {e}")
        raise DocumentError(f"Invalid {kind} document: {e}") from e


def _build(convert: Callable[[], T], kind: str) -> T:
    """Run a document-to-domain conversion, reporting structural errors as DocumentError"""
    try:
        return convert()
    except (PacingError, ValueError, LookupError, TypeError) as e:
        if isinstance(e, DocumentError):
            raise
        system_logger.log_error("documents", f"Inconsistent {kind} document: {e}")
        raise DocumentError(f"Inconsistent {kind} document: {e}") from e


# Text round trips

def serialize_game(game: PacingGame) -> str:
    return _dump(GameDocument.from_domain(game))


def parse_game(text: str) -> PacingGame:
    document = _load(GameDocument, text, "game")
    return _build(document.to_domain, "game")


def serialize_circuit(circuit: Circuit) -> str:
    return _dump(CircuitDocument.from_domain(circuit))


def parse_circuit(text: str) -> Circuit:
    document = _load(CircuitDocument, text, "circuit")
    return _build(document.to_domain, "circuit")


def serialize_mapping(mapping: ReductionMapping) -> str:
    return _dump(MappingDocument.from_domain(mapping))


def parse_mapping(text: str) -> ReductionMapping:
    document = _load(MappingDocument, text, "mapping")
    return _build(document.to_domain, "mapping")


def serialize_equilibria(labels: Labelled, equilibria: List[Equilibrium]) -> str:
    return _dump(EquilibriumListDocument.from_domain(labels, equilibria))


def parse_equilibria(text: str, labels: Labelled) -> List[Equilibrium]:
    """Equilibria keyed by the labels of a game or of a reduction mapping"""
    document = _load(EquilibriumListDocument, text, "equilibrium list")
    return _build(lambda: document.to_domain(labels), "equilibrium list")


def serialize_report(report: VerificationReport) -> str:
    return _dump(ReportDocument.from_domain(report))


def pair_artifact(game: PacingGame, mapping: ReductionMapping) -> ReductionArtifact:
    """Join a game with the mapping it was compiled with; labels must agree in order"""
    for kind, ours, theirs in (
        ("buyer", game.buyer_labels, mapping.buyer_labels),
        ("good", game.good_labels, mapping.good_labels),
    ):
        if tuple(ours) != tuple(theirs):
            message = f"Mapping does not belong to the game: {kind} labels differ ({len(theirs)} in mapping, {len(ours)} in game)"
            system_logger.log_error("documents", message)
            raise DocumentError(message)
    return ReductionArtifact(game, mapping)


class DocumentStore:
    """File-backed access to game, circuit, mapping, equilibrium and report documents"""

    def __init__(self, root: PathLike = "."):
        self.root = Path(root)

    def path(self, name: PathLike) -> Path:
        path = Path(name)
        return path if path.is_absolute() else self.root / path

    def _read(self, name: PathLike, kind: str) -> str:
        path = self.path(name)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            system_logger.log_error("documents", f"Cannot read {kind} document {path}: {e}")
            raise DocumentError(f"Cannot read {kind} document {path}: {e}") from e
        system_logger.log_document(kind, str(path), "read")
        return text

    def _write(self, name: PathLike, kind: str, text: str) -> Path:
        path = self.path(name)
        try:
            create_directories(path)
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            system_logger.log_error("documents", f"Cannot write {kind} document {path}: {e}")
            raise DocumentError(f"Cannot write {kind} document {path}: {e}") from e
        system_logger.log_document(kind, str(path), "write")
        return path

    def load_game(self, name: PathLike) -> PacingGame:
        return parse_game(self._read(name, "game"))

    def save_game(self, game: PacingGame, name: PathLike) -> Path:
        return self._write(name, "game", serialize_game(game))

    def load_circuit(self, name: PathLike) -> Circuit:
        return parse_circuit(self._read(name, "circuit"))

    def save_circuit(self, circuit: Circuit, name: PathLike) -> Path:
        return self._write(name, "circuit", serialize_circuit(circuit))

    def load_mapping(self, name: PathLike) -> ReductionMapping:
        return parse_mapping(self._read(name, "mapping"))

    def save_mapping(self, mapping: ReductionMapping, name: PathLike) -> Path:
        return self._write(name, "mapping", serialize_mapping(mapping))

    def load_artifact(self, game_name: PathLike, mapping_name: PathLike) -> ReductionArtifact:
        return pair_artifact(self.load_game(game_name), self.load_mapping(mapping_name))

    def load_equilibria(self, name: PathLike, labels: Labelled) -> List[Equilibrium]:
        return parse_equilibria(self._read(name, "equilibrium list"), labels)

    def save_equilibria(self, labels: Labelled, equilibria: List[Equilibrium], name: PathLike) -> Path:
        return self._write(name, "equilibrium list", serialize_equilibria(labels, equilibria))

    def save_report(self, report: VerificationReport, name: PathLike) -> Path:
        return self._write(name, "report", serialize_report(report))
