"""
Input specifications of groups and the reports produced by the command line.
"""
from __future__ import annotations
import json
from dataclasses import dataclass, field
from pathlib import Path

from constants import DEFAULT_MAX_ORDER, MAX_RANK, MIN_RANK
from errors import PreconditionError
from exactmath.field import render
from exactmath.poly import Poly
from group import GroupData, close
from lattice import CircleClass
from strata import Stratum


@dataclass(frozen = True)
class GroupSpec:
    """
    User description of a maximal-torus normalizer: the lattice rank and generators of W.
    Attributes:
        rank (int): n, between MIN_RANK and MAX_RANK.
        generators (tuple): Integer generator matrices, row-major.
        characteristic (int): Coefficient characteristic p.
        name (str | None): Optional label.
    """
    rank: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]
    characteristic: int = 0
    name: str | None = None

    def __post_init__(self):
        if not (MIN_RANK <= self.rank <= MAX_RANK):
            raise PreconditionError(f"Rank must be in [{MIN_RANK}, {MAX_RANK}] (got: {self.rank})")
        for k, g in enumerate(self.generators):
            if len(g) != self.rank or any(len(row) != self.rank for row in g):
                raise PreconditionError(f"Generator {k} is not {self.rank}x{self.rank}")

    def build(self, max_order: int = DEFAULT_MAX_ORDER) -> GroupData:
        """Close the generators; p is checked against the order of the closure."""
        return close(self.generators, max_order = max_order, rank = self.rank,
                     characteristic = self.characteristic, name = self.name)


def _ints(tokens: list[str], where: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise PreconditionError(f"Expected integers in {where}: {' '.join(tokens)}") from None


def parse_text(text: str, name: str | None = None) -> GroupSpec:
    """
    Parse the text format: a header line `rank p`, then the rows of each generator matrix
    (blank lines between matrices are optional).
    Raises:
        PreconditionError: On a malformed header, non-integer entries or a ragged matrix list.
    """
    lines = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise PreconditionError("Empty group specification")
    header = _ints(lines[0], "the header")
    if len(header) != 2:
        raise PreconditionError("The header line must be `rank p`")
    n, p = header
    rows = [_ints(line, "a matrix row") for line in lines[1:]]
    if n < 1 or len(rows) % n:
        raise PreconditionError(f"{len(rows)} matrix rows do not split into {n}x{n} matrices")
    gens = tuple(tuple(tuple(r) for r in rows[i:i + n]) for i in range(0, len(rows), n))
    return GroupSpec(n, gens, p, name)


def parse_json(text: str, name: str | None = None) -> GroupSpec:
    """
    Parse the structured format with fields `rank`, `char` and `generators` (and optionally `name`).
    Raises:
        PreconditionError: On invalid JSON or missing fields.
    """
    try:
        doc = json.loads(text)
        gens = tuple(tuple(tuple(int(x) for x in row) for row in g) for g in doc["generators"])
        return GroupSpec(int(doc["rank"]), gens, int(doc.get("char", 0)), doc.get("name", name))
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise PreconditionError(f"Invalid group specification: {e}") from None


def load_spec(path: str | Path) -> GroupSpec:
    """
    Read a group specification file in either format (JSON when it starts with `{`).
    Raises:
        PreconditionError: If the file cannot be read or does not parse.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding = "utf-8")
    except OSError as e:
        raise PreconditionError(f"Cannot read group file {path}: {e.strerror or e}") from None
    if text.lstrip().startswith("{"):
        return parse_json(text, path.stem)
    return parse_text(text, path.stem)


def poly_record(f: Poly) -> list[dict]:
    """Coefficient list of a polynomial, terms in descending exponent order."""
    return [{"exponent": list(e), "coeff": render(f.field, c)} for e, c in f.sorted_terms()]


def generator_names(count: int) -> list[str]:
    return [f"y{i + 1}" for i in range(count)]


def stratum_record(s: Stratum, witness: list[CircleClass] | None = None) -> dict:
    record = {
        "basis": [list(b) for b in s.lattice.basis],
        "dimension": s.lattice.rank,
        "subgroup_order": s.subgroup.order,
        "nuclear": s.nuclear,
        "representative": list(s.representative) if s.representative is not None else None,
    }
    if witness is not None:
        record["witness_circles"] = [list(c.vector) for c in witness]
    return record


@dataclass
class Report:
    """
    Result of one command.
    Attributes:
        command (str): Command name.
        data (dict): JSON-serializable records in canonical order.
        lines (list[str]): Human-readable rendering.
        ok (bool): False when a verification check failed.
    """
    command: str
    data: dict = field(default_factory = dict)
    lines: list[str] = field(default_factory = list)
    ok: bool = True

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "ok": self.ok, **self.data}, sort_keys = True, indent = 2)

    def to_text(self) -> str:
        return "\n".join(self.lines)

    @classmethod
    def from_json(cls, text: str) -> Report:
        doc = json.loads(text)
        command = doc.pop("command")
        ok = doc.pop("ok")
        return cls(command, doc, [], ok)
