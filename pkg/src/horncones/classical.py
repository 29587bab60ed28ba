"""Horn(n) and LR(m, n): eigenvalues of sums and of diagonal blocks."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .combinatorics import Chamber, IndexSet, mu, subsets
from .coneid import ConeId
from .errors import BadRange, DimensionMismatch
from .lr import lr_subset
from .polyhedra import EQ, GE, InequalitySystem, LinearRelation, VariableBlock, cached_system

__all__ = [
    "ConeId",
    "HornTriple",
    "horn_triples",
    "horn_system",
    "horn_member",
    "lr_mn_system",
    "indicator",
    "admits",
]


def indicator(S, dim: int, k: int = 1) -> list[int]:
    """Coefficient vector of ``k * |v|_S`` for a block of dimension ``dim``."""
    vec = [0] * dim
    for s in S:
        vec[s - 1] += k
    return vec


def admits(c: int, variant: str) -> bool:
    """Does an LR coefficient ``c`` pass the filter of ``variant``?"""
    return c == 1 if variant == "strict-one" else c != 0


@dataclass(frozen=True)
class HornTriple:
    I: IndexSet
    J: IndexSet
    L: IndexSet
    coeff: int

    def as_tuple(self):
        return (self.I.elements, self.J.elements, self.L.elements)


@functools.lru_cache(maxsize=None)
def _horn_triples(r: int, n: int, variant: str) -> tuple[HornTriple, ...]:
    sets = list(subsets(n, r))
    weight = {S: sum(mu(S)) for S in sets}
    by_weight: dict[int, list[IndexSet]] = {}
    for S in sets:
        by_weight.setdefault(weight[S], []).append(S)
    out = []
    for I in sets:
        for J in sets:
            for L in by_weight.get(weight[I] + weight[J], ()):
                c = lr_subset(I, J, L)
                if c and admits(c, variant):
                    out.append(HornTriple(I, J, L, c))
    out.sort(key=lambda t: t.as_tuple())
    return tuple(out)


def horn_triples(r: int, n: int, variant: str = "nonzero") -> list[HornTriple]:
    """The triples (I, J, L) in P(r, n)^3 with cc^L_{I,J} nonzero (or equal to 1)."""
    if not 1 <= r < n:
        raise BadRange(f"need 1 <= r < n, got r={r}, n={n}")
    return list(_horn_triples(r, n, variant))


def _prov(kind: str, **data) -> dict:
    out = {"kind": kind}
    for k, v in data.items():
        out[k] = list(v.elements) if isinstance(v, IndexSet) else v
    return out


@cached_system
def _horn_system(n: int, variant: str) -> InequalitySystem:
    cone = ConeId.make("horn", variant, n=n)
    blocks = [VariableBlock(b, n, Chamber.DECREASING) for b in "xyz"]
    sys = InequalitySystem(cone, blocks)
    ones = [1] * n
    sys.add(LinearRelation.build({"x": ones, "y": ones, "z": [-1] * n}, EQ, kind="trace"))
    for r in range(1, n):
        for t in horn_triples(r, n, variant):
            sys.add(
                LinearRelation.build(
                    {"x": indicator(t.I, n), "y": indicator(t.J, n), "z": indicator(t.L, n, -1)},
                    GE,
                    _prov("horn", I=t.I, J=t.J, L=t.L, c=t.coeff),
                )
            )
    return sys


def horn_system(n: int, variant: str = "nonzero") -> InequalitySystem:
    """``|x| + |y| = |z|`` and ``|x|_I + |y|_J >= |z|_L`` over all admitted triples."""
    if n < 1:
        raise BadRange("n must be positive")
    return _horn_system(n, ConeId.make("horn", variant, n=n).variant)


def horn_member(x, y, z, variant: str = "nonzero") -> bool:
    n = len(x)
    if len(y) != n or len(z) != n:
        raise DimensionMismatch("x, y, z must have the same length")
    return horn_system(n, variant).member({"x": list(x), "y": list(y), "z": list(z)}).member


def _proper_subsets(n: int):
    for r in range(n):
        yield from subsets(n, r)


@cached_system
def _lr_mn_system(m: int, n: int, variant: str) -> InequalitySystem:
    cone = ConeId.make("lr", variant, m=m, n=n)
    N = m + n
    blocks = [VariableBlock("z", N), VariableBlock("x", m), VariableBlock("y", n)]
    sys = InequalitySystem(cone, blocks)
    sys.add(LinearRelation.build({"z": [1] * N, "x": [-1] * m, "y": [-1] * n}, EQ, kind="trace"))
    for k in range(1, m + 1):
        sys.add(LinearRelation.build({"z": indicator([k], N), "x": indicator([k], m, -1)}, GE, kind="interlace", block="x", k=k))
        sys.add(LinearRelation.build({"z": indicator([n + k], N, -1), "x": indicator([k], m)}, GE, kind="interlace", block="x", k=k))
    for l in range(1, n + 1):
        sys.add(LinearRelation.build({"z": indicator([l], N), "y": indicator([l], n, -1)}, GE, kind="interlace", block="y", k=l))
        sys.add(LinearRelation.build({"z": indicator([m + l], N, -1), "y": indicator([l], n)}, GE, kind="interlace", block="y", k=l))
    for I, J in itertools.product(_proper_subsets(m), _proper_subsets(n)):
        size = len(I) + len(J)
        if size == 0:
            continue
        target = sum(mu(I)) + sum(mu(J))
        for L in subsets(N, size):
            if sum(mu(L)) != target:
                continue
            c = lr_subset(I, J, L)
            if c and admits(c, variant):
                sys.add(
                    LinearRelation.build(
                        {"z": indicator(L, N), "x": indicator(I, m, -1), "y": indicator(J, n, -1)},
                        GE,
                        _prov("lr", I=I, J=J, L=L, c=c),
                    )
                )
    return sys


def lr_mn_system(m: int, n: int, variant: str = "nonzero") -> InequalitySystem:
    """Spectra ``(z, x, y)`` of a Hermitian matrix and of its two diagonal blocks."""
    if m < 1 or n < 1:
        raise BadRange("m, n must be positive")
    return _lr_mn_system(m, n, ConeId.make("lr", variant, m=m, n=n).variant)
