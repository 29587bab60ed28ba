"""Soundness and equivalence drivers producing JSON-ready reports.

``soundness_check`` samples realizable points of a cone and evaluates every
relation of a system in floating point. ``equivalence_check`` compares two
systems through one of the registered linear embeddings, exactly, on
integer (scaled rational) points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ..combinatorics import hat_pq, reverse_negate
from ..compare import compare_predicates, sample_points
from ..coneid import KIND_VARIANTS, ConeId
from ..cones import build_system
from ..errors import UnsupportedEmbedding, ZeroRelation
from ..polyhedra import EQ, GE, InequalitySystem, LinearRelation, canonicalize, member_batch, relation_text
from .sampling import sample_cone_points

__all__ = [
    "soundness_check",
    "equivalence_check",
    "Embedding",
    "EMBEDDINGS",
    "embedding_matrix",
    "cross_checks",
    "report_json",
]

MAX_LISTED = 50


def _floats(v) -> list[float]:
    return [float(a) for a in v]


def soundness_check(
    cone: ConeId,
    trials: int = 1000,
    seed=0,
    tol: float = 1e-8,
    system: InequalitySystem | None = None,
) -> dict:
    """Sample ``trials`` realizable points of ``cone`` and test them against ``system``.

    ``system`` defaults to the generated system of ``cone``; a fixture with
    the same blocks can be passed instead. Chamber constraints are checked
    too. Only the first ``MAX_LISTED`` violations are listed.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if system is None:
        system = build_system(cone)
    pts = sample_cone_points(cone, trials, seed)
    P = np.hstack([pts[b.name] for b in system.blocks])
    rels = list(system.relations)
    C = system.chamber_matrix().astype(float)
    rows = [system.matrix(rels).astype(float)] if rels else []
    if C.shape[0]:
        rows.append(C)
    A = np.vstack(rows) if rows else np.zeros((0, system.nvars))
    vals = P @ A.T
    is_eq = np.array([r.rel == EQ for r in rels] + [False] * C.shape[0], dtype=bool)
    deficit = np.where(is_eq, np.abs(vals), -vals)  # > 0 means violated
    labels = [relation_text(r) for r in rels] + _chamber_labels(system)
    provs = [r.provenance for r in rels] + [{"kind": "chamber"}] * C.shape[0]
    bad = np.argwhere(deficit > tol)
    violations = []
    for t, j in bad[:MAX_LISTED]:
        violations.append(
            {
                "trial": int(t),
                "point": {b.name: _floats(pts[b.name][t]) for b in system.blocks},
                "relation": labels[j],
                "provenance": provs[j],
                "margin": float(-deficit[t, j]),
            }
        )
    worst = float(deficit.max()) if deficit.size else 0.0
    return {
        "cone": str(cone),
        "system": str(system.cone) if system.cone is not None else "fixture",
        "trials": trials,
        "seed": seed,
        "tol": tol,
        "violation_count": int(bad.shape[0]),
        "violations": violations,
        "max_violation": max(worst, 0.0),
        "ok": bad.shape[0] == 0,
    }


def _chamber_labels(system: InequalitySystem) -> list[str]:
    out = []
    for b in system.blocks:
        if b.chamber.value == "unconstrained":
            continue
        for k in range(1, b.dim):
            out.append(f"{b.name}{k} >= {b.name}{k + 1}")
        if b.chamber.value == "decreasing-nonneg":
            out.append(f"{b.name}{b.dim} >= 0")
    return out


# embeddings -----------------------------------------------------------------

Map = Callable[[dict, ConeId], dict]


@dataclass(frozen=True)
class Embedding:
    name: str
    source: str
    target: str
    apply: Map
    target_cone: Callable[[ConeId], ConeId]
    description: str


def _hat(v, p, q):
    return list(hat_pq(v, p, q).entries)


def _vee(v):
    return list(reverse_negate(v).entries)


def _scale(v, k):
    return [k * a for a in v]


EMBEDDINGS: dict[str, Embedding] = {}


def _register(name, source, target, apply, target_cone, description):
    EMBEDDINGS[name] = Embedding(name, source, target, apply, target_cone, description)


_register(
    "e1-horn", "e1", "horn",
    lambda v, c: {"x": v["x"], "y": v["x"], "z": _scale(v["y"], 2)},
    lambda c: ConeId.make("horn", n=c["n"]),
    "(x, y) -> (x, x, 2y)",
)
_register(
    "e2-lr", "e2", "lr",
    lambda v, c: {"z": v["x"], "x": v["y"], "y": v["y"]},
    lambda c: ConeId.make("lr", m=c["n"], n=c["n"]),
    "(x, y) -> (x, y, y)",
)
_register(
    "sing-horn", "sing", "horn",
    lambda v, c: {k: _hat(v[k], c["p"], c["q"]) for k in "xyz"},
    lambda c: ConeId.make("horn", n=c["p"] + c["q"]),
    "(x, y, z) -> (x^, y^, z^) with hats of type (p, q)",
)
_register(
    "so_odd-horn", "so_odd", "horn",
    lambda v, c: {k: _hat(v[k], c["q"] + 1, c["q"]) for k in "xyz"},
    lambda c: ConeId.make("horn", n=2 * c["q"] + 1),
    "(x, y, z) -> (x^, y^, z^) with hats of type (q+1, q)",
)
_register(
    "a-horn", "a", "horn",
    lambda v, c: {"x": v["x"], "y": _vee(v["x"]), "z": _scale(_hat(v["y"], c["p"], c["q"]), 2)},
    lambda c: ConeId.make("horn", n=c["p"] + c["q"]),
    "(x, y) -> (x, x^vee, 2 y^) with y^ of type (p, q)",
)
_register(
    "b-lr", "b", "lr",
    lambda v, c: {"z": _hat(v["x"], c["n"], c["n"]), "x": v["y"], "y": _vee(v["y"])},
    lambda c: ConeId.make("lr", m=c["n"], n=c["n"]),
    "(x, y) -> (x^ of type (n, n), y, y^vee)",
)
_register(
    "s-lr", "s", "lr",
    lambda v, c: {
        "z": _hat(v["z"], c["p"] + c["q"], c["p"] + c["q"]),
        "x": _hat(v["x"], c["p"], c["q"]),
        "y": _hat(v["y"], c["p"], c["q"]),
    },
    lambda c: ConeId.make("lr", m=c["p"] + c["q"], n=c["p"] + c["q"]),
    "(z, x, y) -> (z^ of type (n, n), x^ and y^ of type (p, q))",
)
_register(
    "t-lr", "t", "lr",
    lambda v, c: {
        "z": _hat(v["z"], c["p"] + c["q"], c["p"] + c["q"]),
        "x": _hat(v["x"], c["p"], c["p"]),
        "y": _hat(v["y"], c["q"], c["q"]),
    },
    lambda c: ConeId.make("lr", m=2 * c["p"], n=2 * c["q"]),
    "(z, x, y) -> (z^ of type (n, n), x^ of type (p, p), y^ of type (q, q))",
)
_register(
    "identity", "*", "*",
    lambda v, c: dict(v),
    lambda c: c,
    "same blocks, e.g. two variants of one cone",
)


def embedding_matrix(name: str, source: InequalitySystem, target: InequalitySystem) -> np.ndarray:
    """Integer matrix ``E`` with ``flatten(target point) = E @ flatten(source point)``.

    Built column by column from the images of unit vectors, after checking
    that the embedding is registered for these two cones.
    """
    emb = EMBEDDINGS.get(name)
    if emb is None:
        raise UnsupportedEmbedding(f"unknown embedding {name!r}; known: {sorted(EMBEDDINGS)}")
    sc, tc = source.cone, target.cone
    if sc is None or tc is None:
        raise UnsupportedEmbedding("embeddings need systems with a cone identifier")
    if emb.source == "*":
        if sc.kind != tc.kind or sc.params != tc.params:
            raise UnsupportedEmbedding(f"identity needs the same cone, got {sc} and {tc}")
    else:
        if sc.kind != emb.source or tc.kind != emb.target:
            raise UnsupportedEmbedding(f"{name} maps {emb.source} to {emb.target}, got {sc.kind} and {tc.kind}")
        expected = emb.target_cone(sc)
        if expected.params != tc.params:
            raise UnsupportedEmbedding(f"{name} sends {sc} into {expected.kind}{dict(expected.params)}, got {tc}")
    E = np.zeros((target.nvars, source.nvars), dtype=np.int64)
    for j in range(source.nvars):
        unit = [Fraction(0)] * source.nvars
        unit[j] = Fraction(1)
        image = emb.apply(source.unflatten(unit), sc)
        col = target.flatten(image)
        for i, v in enumerate(col):
            v = Fraction(v)
            if v.denominator != 1:
                raise UnsupportedEmbedding("embedding is not integral")
            E[i, j] = int(v)
    return E


def _pullback(target: InequalitySystem, E: np.ndarray, source: InequalitySystem) -> InequalitySystem:
    """The target's relations and chamber rows, composed with ``E``, on the source blocks."""
    out = InequalitySystem(source.cone, source.blocks)
    offs = source.offsets()
    rows = [(r.rel, target.matrix([r])[0]) for r in target.relations]
    rows += [(GE, c) for c in target.chamber_matrix()]
    for rel, row in rows:
        coeffs = row @ E
        d = {b.name: [int(v) for v in coeffs[offs[b.name]: offs[b.name] + b.dim]] for b in source.blocks}
        try:
            out.add(canonicalize(LinearRelation.build(d, rel, kind="pullback")))
        except ZeroRelation:
            pass
    return out


def _first_failure(system: InequalitySystem, point: dict) -> str:
    res = system.member(point)
    for v in res.violations:
        if v.relation is not None:
            return relation_text(v.relation)
        return f"chamber of {v.block}"
    return ""


def equivalence_check(
    source: InequalitySystem,
    embedding: str,
    target: InequalitySystem,
    trials: int = 10000,
    seed=0,
) -> dict:
    """Compare ``source`` with ``target`` composed with ``embedding`` on exact points.

    On the chamber of the source blocks, a point should satisfy ``source``
    iff its image satisfies ``target``. The points are integer vectors
    (rational points cleared of denominators) drawn near the boundaries of
    both sides and at random.
    """
    E = embedding_matrix(embedding, source, target)
    pulled = _pullback(target, E, source)
    rng = np.random.default_rng(seed)
    P = sample_points([source, pulled], trials, rng)
    in_a = member_batch(source, P)
    chamber_only = InequalitySystem(source.cone, source.blocks)
    Q = P.astype(object) @ E.T.astype(object) if P.dtype == object else P @ E.T
    in_b = member_batch(chamber_only, P) & member_batch(target, Q)
    verdict = compare_predicates(source, in_a, in_b, P)
    separations = []
    for i in np.nonzero(in_a != in_b)[0][:MAX_LISTED]:
        pt = source.unflatten([int(v) for v in P[i]])
        img = target.unflatten([int(v) for v in Q[i]])
        failed = _first_failure(target, img) if in_a[i] else _first_failure(source, pt)
        separations.append(
            {
                "point": {k: [int(a) for a in v] for k, v in pt.items()},
                "image": {k: [int(a) for a in v] for k, v in img.items()},
                "in_source": bool(in_a[i]),
                "in_target": bool(in_b[i]),
                "relation": failed,
            }
        )
    return {
        "cone": str(source.cone),
        "target": str(target.cone),
        "embedding": embedding,
        "trials": int(P.shape[0]),
        "seed": seed,
        "inside_source": verdict.inside_a,
        "inside_target": verdict.inside_b,
        "separation_count": int((in_a != in_b).sum()),
        "violations": separations,
        "ok": verdict.equal,
    }


def cross_checks(cone: ConeId) -> list[tuple[str, ConeId]]:
    """Registered (embedding, target cone) pairs to cross-check ``cone`` against."""
    out = []
    for emb in EMBEDDINGS.values():
        if emb.source == cone.kind:
            out.append((emb.name, emb.target_cone(cone)))
    for variant in KIND_VARIANTS[cone.kind]:
        if variant != cone.variant:
            out.append(("identity", ConeId(cone.kind, cone.params, variant)))
    return out


def report_json(report: dict, indent: int | None = 2) -> str:
    return json.dumps(report, indent=indent, default=str)
