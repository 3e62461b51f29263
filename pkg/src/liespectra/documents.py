"""Input and report documents: a JSON-compatible text format with a
canonical, byte-stable writer.

Numbers are written with 12 significant digits; complex scalars are always
two-element [re, im] arrays; magnitudes at or below 1e-12 display as 0.
Object keys keep insertion order, nesting is indented by two spaces, and an
array is kept on one line whenever that line stays short. Identical input
and tolerances therefore produce byte-identical text.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError, LieSpectraError
from .fixtures import fixture_generators, fixture_names
from .numeric import DEFAULT_TOL, ToleranceProfile

__all__ = [
    "CONVENTION",
    "GeneratorSpec",
    "InputDocument",
    "ReportDocument",
    "canonical_text",
    "character_to_jsonable",
    "complex_pair",
    "document_from_jsonable",
    "matrix_to_jsonable",
    "parse_input",
]

# echoed into every report so a reader can interpret signs without source
CONVENTION = {
    "bracket": "[a, b] = b a - a b (commutator of the opposite product)",
    "action": "generators act on column vectors by left multiplication",
    "characters": "coordinates are values on the generators, in input order",
    "complex": "complex scalars serialize as [re, im]",
    "tensor": "Kronecker index (a1, a2) -> a1 * m2 + a2 (left factor major)",
}

_DISPLAY_SNAP = 1e-12
_INLINE_WIDTH = 78


def _fmt_number(v) -> str:
    f = float(v)
    if not np.isfinite(f):
        raise LieSpectraError("cannot serialize a non-finite number")
    if abs(f) <= _DISPLAY_SNAP:
        f = 0.0
    return "%.12g" % f


def canonical_text(value, indent: int = 0) -> str:
    """Render a tree of dicts/lists/scalars as deterministic JSON text."""
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = "  " * (indent + 1)
        rows = [
            f"{inner}{json.dumps(str(key))}: {canonical_text(item, indent + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            return "[]"
        parts = [canonical_text(item, indent + 1) for item in items]
        inline = "[" + ", ".join(parts) + "]"
        if "\n" not in inline and indent * 2 + len(inline) <= _INLINE_WIDTH:
            return inline
        inner = "  " * (indent + 1)
        return "[\n" + ",\n".join(inner + p for p in parts) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt_number(value)
    if isinstance(value, str):
        return json.dumps(value)
    raise LieSpectraError(f"cannot serialize value of type {type(value).__name__}")


def complex_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def character_to_jsonable(c) -> list:
    return [complex_pair(v) for v in c.values]


def matrix_to_jsonable(matrix) -> list:
    m = np.asarray(matrix, dtype=np.complex128)
    return [[complex_pair(v) for v in row] for row in m]


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    matrix: np.ndarray

    def to_jsonable(self) -> dict:
        return {"name": self.name, "matrix": matrix_to_jsonable(self.matrix)}


@dataclass(frozen=True, eq=False)
class InputDocument:
    """A parsed input: either a named fixture or explicit generators.

    The two are mutually exclusive; `resolve` materializes generator names
    and matrices either way. Tolerances hold the full effective profile.
    """

    fixture: str | None
    dim: int | None
    generators: tuple
    tolerances: ToleranceProfile

    def resolve(self) -> tuple:
        """(names, matrices) for this document."""
        if self.fixture is not None:
            names, matrices = fixture_generators(self.fixture)
            if self.dim is not None and matrices[0].shape[0] != self.dim:
                raise InputError(
                    f"fixture {self.fixture} has dim {matrices[0].shape[0]}, "
                    f"document says {self.dim}",
                    field="dim",
                )
            return list(names), [m.copy() for m in matrices]
        return [g.name for g in self.generators], [g.matrix.copy() for g in self.generators]

    def to_jsonable(self) -> dict:
        out: dict = {}
        if self.fixture is not None:
            out["fixture"] = self.fixture
        else:
            out["dim"] = int(self.dim)
            out["generators"] = [g.to_jsonable() for g in self.generators]
        overrides = {
            name: getattr(self.tolerances, name)
            for name in ("eps_rank", "eps_cluster", "eps_residual")
            if getattr(self.tolerances, name) != getattr(DEFAULT_TOL, name)
        }
        if overrides:
            out["tolerances"] = overrides
        return out

    def to_text(self) -> str:
        return canonical_text(self.to_jsonable()) + "\n"

    def __eq__(self, other) -> bool:
        return isinstance(other, InputDocument) and self.to_jsonable() == other.to_jsonable()


def _entry_to_complex(entry, where: str) -> complex:
    if isinstance(entry, bool):
        raise InputError(f"{where}: booleans are not matrix entries", field="matrix")
    if isinstance(entry, (int, float)):
        return complex(entry, 0.0)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        re, im = entry
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            return complex(re, im)
    raise InputError(f"{where}: expected a number or an [re, im] pair", field="matrix")


def _parse_generator(obj, index: int, dim: int) -> GeneratorSpec:
    where = f"generators[{index}]"
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object", field="generators")
    unknown = set(obj) - {"name", "matrix"}
    if unknown:
        raise InputError(f"{where}: unknown keys {sorted(unknown)}", field="generators")
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise InputError(f"{where}: missing generator name", field="generators")
    rows = obj.get("matrix")
    if not isinstance(rows, list) or len(rows) != dim:
        raise InputError(
            f"{where} ({name}): matrix must have {dim} rows", field="generators"
        )
    out = np.zeros((dim, dim), dtype=np.complex128)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise InputError(
                f"{where} ({name}): row {r} must have {dim} entries", field="generators"
            )
        for c, entry in enumerate(row):
            out[r, c] = _entry_to_complex(entry, f"{where} ({name}): row {r}, column {c}")
    out.setflags(write=False)
    return GeneratorSpec(name=name, matrix=out)


def _parse_tolerances(obj) -> ToleranceProfile:
    if obj is None:
        return DEFAULT_TOL
    if not isinstance(obj, dict):
        raise InputError("tolerances must be an object", field="tolerances")
    allowed = {"eps_rank", "eps_cluster", "eps_residual"}
    unknown = set(obj) - allowed
    if unknown:
        raise InputError(f"unknown tolerance keys {sorted(unknown)}", field="tolerances")
    values = {}
    for key, v in obj.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not 0 < v < 1:
            raise InputError(f"tolerance {key} must be a number in (0, 1)", field="tolerances")
        values[key] = float(v)
    return dataclasses.replace(DEFAULT_TOL, **values)


def document_from_jsonable(obj) -> InputDocument:
    """Validate a parsed JSON object into an InputDocument."""
    if not isinstance(obj, dict):
        raise InputError("input document must be a JSON object")
    unknown = set(obj) - {"fixture", "dim", "generators", "tolerances"}
    if unknown:
        raise InputError(f"unknown document keys {sorted(unknown)}")
    tol = _parse_tolerances(obj.get("tolerances"))

    fixture = obj.get("fixture")
    if fixture is not None:
        if not isinstance(fixture, str):
            raise InputError("fixture must be a string", field="fixture")
        if "generators" in obj:
            raise InputError(
                "fixture and generators are mutually exclusive", field="fixture"
            )
        # resolve now so unknown names fail at parse time, with suggestions
        try:
            fixture_generators(fixture)
        except InputError:
            known = ", ".join(fixture_names())
            raise InputError(
                f"unknown fixture {fixture!r}; known: {known}", field="fixture"
            ) from None
        dim = obj.get("dim")
        if dim is not None and (isinstance(dim, bool) or not isinstance(dim, int)):
            raise InputError("dim must be an integer", field="dim")
        doc = InputDocument(fixture=fixture, dim=dim, generators=(), tolerances=tol)
        doc.resolve()  # dim consistency check
        return doc

    dim = obj.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InputError("dim must be a positive integer", field="dim")
    gens = obj.get("generators")
    if not isinstance(gens, list) or not gens:
        raise InputError("generators must be a non-empty array", field="generators")
    specs = tuple(_parse_generator(g, i, dim) for i, g in enumerate(gens))
    names = [g.name for g in specs]
    if len(set(names)) != len(names):
        raise InputError("generator names must be unique", field="generators")
    return InputDocument(fixture=None, dim=dim, generators=specs, tolerances=tol)


def parse_input(source) -> InputDocument:
    """Parse a document from a path, raw JSON text, or an already-loaded
    JSON object. Text is recognized by a leading brace."""
    if isinstance(source, dict):
        return document_from_jsonable(source)
    if isinstance(source, Path):
        text = source.read_text()
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    elif isinstance(source, str):
        p = Path(source)
        if not p.exists():
            raise InputError(f"no such input file: {source}")
        text = p.read_text()
    else:
        raise InputError(f"cannot parse input of type {type(source).__name__}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"invalid document syntax at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return document_from_jsonable(obj)


def input_document_for(names, matrices, tolerances: ToleranceProfile = DEFAULT_TOL) -> InputDocument:
    """Wrap explicit generators (e.g. a derived dual/tensor rep) as a document."""
    specs = tuple(
        GeneratorSpec(name=str(n), matrix=np.asarray(m, dtype=np.complex128))
        for n, m in zip(names, matrices)
    )
    return InputDocument(
        fixture=None, dim=specs[0].matrix.shape[0], generators=specs, tolerances=tolerances
    )


@dataclass
class ReportDocument:
    """One computation's full output, assembled section by section.

    Field order here is the canonical section order of the serialized
    report; sections a command does not produce stay None and are omitted.
    """

    input: dict
    convention: dict
    nilpotent: bool | None = None
    solvable: bool | None = None
    flag: dict | None = None
    weights: list | None = None
    candidates: list | None = None
    sigma_p: list | None = None
    sp: list | None = None
    slodkowski: dict | None = None
    derived_document: dict | None = None
    verification: list | None = None
    notes: list | None = None
    diagnostics: dict | None = None

    def to_jsonable(self) -> dict:
        out = {}
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if value is not None:
                out[field.name] = value
        return out

    def to_text(self) -> str:
        return canonical_text(self.to_jsonable()) + "\n"
