"""Published inequality lists stored as data, loaded as systems.

Each file in ``data/`` holds the relations of one boxed description, written
as text. Lists quoted "up to permutation" are stored as orbit
representatives with the stated number of extra permutations; the orbit
under permuting the three blocks is expanded here and its size checked
against the stated count.
"""

from __future__ import annotations

import itertools
import json
from importlib import resources

from .coneid import ConeId
from .cones import build_system
from .polyhedra import InequalitySystem, canonicalize, parse_relation

__all__ = ["FIXTURES", "load_fixture", "fixture_relations", "fixture_data"]

FIXTURES = ("e1_3", "e1_4", "e2_1", "e2_2", "e2_3", "lr_2_2", "b_1", "b_2", "sing_p_1", "sing_p_2", "sing_3_3")


def fixture_data(name: str) -> dict:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    text = resources.files("horncones").joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def _cone(data: dict) -> ConeId:
    params = dict(data["cone"])
    kind = params.pop("kind")
    return ConeId.make(kind, "", **params)


def _rename(text: str, mapping: dict) -> str:
    return "".join(mapping.get(ch, ch) for ch in text)


def _orbit(text: str, letters: str, dims: dict) -> list[str]:
    """Distinct relations obtained by permuting the roles of ``letters``."""
    out, seen = [], set()
    for perm in itertools.permutations(letters):
        mapped = _rename(text, dict(zip(letters, perm)))
        key = canonicalize(parse_relation(mapped, dims)).key
        if key not in seen:
            seen.add(key)
            out.append(mapped)
    return out


def fixture_relations(name: str) -> list[str]:
    """The fixture's relations as text, orbits expanded, in the generator's block names."""
    data = fixture_data(name)
    rename = data.get("rename", {})
    lines = list(data.get("relations", []))
    letters = "".join(sorted(rename)) if rename else "xyz"
    dims = {ch: int(data["cone"]["q"]) for ch in letters} if "orbits" in data else {}
    for rep, extra in data.get("orbits", []):
        orbit = _orbit(rep, letters, dims)
        if len(orbit) != extra + 1:
            raise ValueError(f"{rep!r}: orbit has {len(orbit)} members, expected {extra + 1}")
        lines.extend(orbit)
    return [_rename(line, rename) for line in lines]


def load_fixture(name: str) -> InequalitySystem:
    """Fixture as an InequalitySystem with the same blocks as the generated cone."""
    data = fixture_data(name)
    cone = _cone(data)
    blocks = build_system(cone).blocks
    sys = InequalitySystem(None, blocks)
    dims = {b.name: b.dim for b in blocks}
    for k, line in enumerate(fixture_relations(name)):
        sys.add(parse_relation(line, dims, {"kind": "fixture", "source": data["source"], "line": k + 1}))
    return sys
