"""Catalog entries: transcription, canonical fixtures and loading."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..algebra.textform import (ParseError, element_to_text, parse_canonical, parse_expr,
                                parse_tower, tower_to_text)
from ..algebra.tower import Tower
from ..pvi import ParamSolution, ThetaTuple
from .sources import SOURCES, Source, explicit, source

FIXTURE_DIR = "fixtures"


class CatalogError(KeyError):
    pass


@dataclass
class CatalogEntry:
    id: str
    descriptor: str
    theta: ThetaTuple
    solution: ParamSolution
    degree: int | None = None
    genus: int | None = None

    @property
    def tower(self) -> Tower:
        return self.solution.tower


def _tower_from_source(src: Source) -> Tower:
    tower = Tower(src.base)
    for name, rad in src.tower:
        tower = tower.extend(parse_expr(explicit(rad), tower), name)
    return tower


def source_env(src: Source, tower: Tower) -> dict:
    env: dict = {}
    for name, text in src.defs.items():
        env[name] = parse_expr(explicit(text), tower, env)
    return env


def parse_source_expr(src: Source, text: str, tower: Tower | None = None):
    tower = tower or _tower_from_source(src)
    return parse_expr(explicit(text), tower, source_env(src, tower))


def entry_from_source(src: Source) -> CatalogEntry:
    """Expand a compact transcription into exact tower elements."""
    tower = _tower_from_source(src)
    env = source_env(src, tower)
    t = parse_expr(explicit(src.t), tower, env)
    y = parse_expr(explicit(src.y), tower, env)
    theta = ThetaTuple.of(src.theta)
    sol = ParamSolution(t, y, theta, src.id)
    return CatalogEntry(src.id, src.descriptor, theta, sol, src.degree, src.genus)


# ---------------------------------------------------------------------------
# fixture text


def entry_to_text(entry: CatalogEntry) -> str:
    """Canonical fixture text; loading and re-serializing reproduces it exactly."""
    sol = entry.solution
    lines = [f"# {entry.descriptor}",
             f"id: {entry.id}",
             f"theta: {' '.join(str(v) for v in entry.theta)}"]
    if entry.degree is not None:
        lines.append(f"degree: {entry.degree}")
    if entry.genus is not None:
        lines.append(f"genus: {entry.genus}")
    lines.append(f"base: {sol.tower.base}")
    for rel in tower_to_text(sol.tower):
        lines.append(f"tower: {rel}")
    lines.append(f"t: {element_to_text(sol.t)}")
    lines.append(f"y: {element_to_text(sol.y)}")
    return "\n".join(lines) + "\n"


def entry_from_text(text: str) -> CatalogEntry:
    descriptor = ""
    fields: dict[str, str] = {}
    rels: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            descriptor = descriptor or line[1:].strip()
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"malformed fixture line {line!r}")
        key, value = key.strip(), value.strip()
        if key == "tower":
            rels.append(value)
        else:
            fields[key] = value
    for need in ("id", "theta", "base", "t", "y"):
        if need not in fields:
            raise ParseError(f"fixture is missing {need!r}")
    tower = parse_tower(rels, fields["base"])
    theta = ThetaTuple.of(fields["theta"].split())
    t = parse_canonical(fields["t"], tower)
    y = parse_canonical(fields["y"], tower)
    sol = ParamSolution(t, y, theta, fields["id"])
    degree = int(fields["degree"]) if "degree" in fields else None
    genus = int(fields["genus"]) if "genus" in fields else None
    return CatalogEntry(fields["id"], descriptor, theta, sol, degree, genus)


def fixture_path(entry_id: str) -> Path:
    return Path(str(resources.files(__package__).joinpath(FIXTURE_DIR, f"{entry_id}.txt")))


def fixture_text(entry_id: str) -> str:
    path = fixture_path(entry_id)
    if not path.exists():
        raise CatalogError(f"no catalog entry {entry_id!r}")
    return path.read_text()


def catalog_ids() -> list[str]:
    return [src.id for src in SOURCES]


@lru_cache(maxsize=None)
def load_entry(entry_id: str) -> CatalogEntry:
    """Load an entry from its canonical fixture."""
    if entry_id not in catalog_ids():
        raise CatalogError(f"no catalog entry {entry_id!r}; known: {', '.join(catalog_ids())}")
    return entry_from_text(fixture_text(entry_id))


def load_catalog() -> dict[str, CatalogEntry]:
    return {eid: load_entry(eid) for eid in catalog_ids()}


def write_fixtures(directory: Path | None = None) -> list[Path]:
    directory = Path(directory) if directory else fixture_path("x").parent
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for src in SOURCES:
        path = directory / f"{src.id}.txt"
        path.write_text(entry_to_text(entry_from_source(src)))
        out.append(path)
    return out


__all__ = ["CatalogEntry", "CatalogError", "entry_from_source", "entry_to_text", "entry_from_text",
           "load_entry", "load_catalog", "catalog_ids", "write_fixtures", "fixture_path",
           "fixture_text", "source", "parse_source_expr"]
