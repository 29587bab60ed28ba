"""Partitions, Schubert index sets and polarized subsets.

Every interface is 1-based: an :class:`IndexSet` is a strictly increasing
tuple of positive integers together with the ambient size ``n`` of ``[n]``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, NotNested

__all__ = [
    "Partition",
    "IndexSet",
    "PolarizedSet",
    "Chamber",
    "SpectrumVector",
    "mu",
    "lam",
    "opposite",
    "complement",
    "oc",
    "natural",
    "hat_pq",
    "hat_nn",
    "reverse_negate",
    "polarized_embed",
    "polarized_tilde",
    "subsets",
    "b_sets",
    "polarized_subsets",
    "split_polarized",
]


class Partition(tuple):
    """Weakly decreasing tuple of non-negative integers, trailing zeros stripped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts are not weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def scaled(self, k: int) -> "Partition":
        return Partition(k * p for p in self)

    def contains(self, other: Sequence[int]) -> bool:
        """Young-diagram containment ``other ⊆ self``."""
        if any(other[len(self):]):
            return False
        return all(a >= b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


@dataclass(frozen=True, order=True)
class IndexSet:
    """A subset of ``[ambient]`` stored as a strictly increasing tuple."""

    elements: tuple[int, ...]
    ambient: int

    def __post_init__(self):
        elems = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if self.ambient < 0:
            raise ValueError("ambient must be non-negative")
        if any(b <= a for a, b in zip(elems, elems[1:])):
            raise ValueError(f"elements must be strictly increasing: {elems}")
        if elems and (elems[0] < 1 or elems[-1] > self.ambient):
            raise ValueError(f"{elems} is not a subset of [{self.ambient}]")

    @classmethod
    def of(cls, elements: Iterable[int], ambient: int) -> "IndexSet":
        return cls(tuple(sorted(set(elements))), ambient)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.elements

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def opposite(self) -> "IndexSet":
        return opposite(self)

    def complement(self) -> "IndexSet":
        return complement(self)

    def oc(self) -> "IndexSet":
        return oc(self)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def mu(I: IndexSet | Sequence[int]) -> Partition:
    """``(i_r - r, ..., i_1 - 1)``; depends only on the elements, not the ambient."""
    elems = I.elements if isinstance(I, IndexSet) else tuple(sorted(I))
    return Partition(e - k for k, e in reversed(list(enumerate(elems, start=1))))


def lam(I: IndexSet) -> Partition:
    """``(n-r+1-i_1, ..., n-i_r)``, equal to ``mu(opposite(I))``."""
    return mu(opposite(I))


def opposite(I: IndexSet) -> IndexSet:
    n = I.ambient
    return IndexSet(tuple(n + 1 - i for i in reversed(I.elements)), n)


def complement(I: IndexSet) -> IndexSet:
    members = I.as_set()
    return IndexSet(tuple(i for i in range(1, I.ambient + 1) if i not in members), I.ambient)


def oc(I: IndexSet) -> IndexSet:
    """``I^{o,c}``: complement of the opposite; maps P(r,n) onto P(n-r,n)."""
    return complement(opposite(I))


def natural(A: IndexSet, B: IndexSet) -> IndexSet:
    """Relative position of ``A`` inside ``B``: ``{#{b in B : b <= a} : a in A}``.

    The result lives in ``[len(B)]``.
    """
    bset = B.as_set()
    if not A.as_set() <= bset:
        raise NotNested(f"{A} is not contained in {B}")
    position = {b: k for k, b in enumerate(B.elements, start=1)}
    return IndexSet(tuple(position[a] for a in A.elements), len(B))


class Chamber(str, enum.Enum):
    DECREASING = "decreasing"
    DECREASING_NONNEG = "decreasing-nonneg"
    UNCONSTRAINED = "unconstrained"


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


@dataclass(frozen=True)
class SpectrumVector:
    """Exact rational vector tagged with the chamber it is claimed to lie in."""

    entries: tuple[Fraction, ...]
    chamber: Chamber = Chamber.UNCONSTRAINED

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(_as_fraction(v) for v in self.entries))
        object.__setattr__(self, "chamber", Chamber(self.chamber))
        if not in_chamber(self.entries, self.chamber):
            raise ValueError(f"{self.entries} is not in chamber {self.chamber.value}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k):
        return self.entries[k]


def in_chamber(entries: Sequence, chamber: Chamber | str) -> bool:
    chamber = Chamber(chamber)
    if chamber is Chamber.UNCONSTRAINED:
        return True
    if any(a < b for a, b in zip(entries, entries[1:])):
        return False
    if chamber is Chamber.DECREASING_NONNEG and entries and entries[-1] < 0:
        return False
    return True


def _entries(x) -> tuple[Fraction, ...]:
    if isinstance(x, SpectrumVector):
        return x.entries
    return tuple(_as_fraction(v) for v in x)


def _hat_chamber(x, entries) -> Chamber:
    return Chamber.DECREASING if in_chamber(entries, Chamber.DECREASING_NONNEG) else Chamber.UNCONSTRAINED


def hat_pq(x, p: int, q: int | None = None) -> SpectrumVector:
    """``(x_1, ..., x_q, 0, ..., 0, -x_q, ..., -x_1)`` of length ``p + q``."""
    entries = _entries(x)
    if q is None:
        q = len(entries)
    if len(entries) != q or q > p:
        raise DimensionMismatch(f"hat_pq needs len(x) = q <= p, got len {len(entries)}, p={p}, q={q}")
    out = entries + (Fraction(0),) * (p - q) + tuple(-v for v in reversed(entries))
    return SpectrumVector(out, _hat_chamber(x, entries))


def hat_nn(z) -> SpectrumVector:
    """``(z_1, ..., z_n, -z_n, ..., -z_1)``."""
    entries = _entries(z)
    return hat_pq(entries, len(entries), len(entries))


def reverse_negate(x) -> SpectrumVector:
    """``x^∨ = (-x_n, ..., -x_1)``; keeps a decreasing vector decreasing."""
    entries = _entries(x)
    out = tuple(-v for v in reversed(entries))
    chamber = Chamber.DECREASING if in_chamber(entries, Chamber.DECREASING) else Chamber.UNCONSTRAINED
    return SpectrumVector(out, chamber)


@dataclass(frozen=True)
class PolarizedSet:
    """Disjoint pair ``(X_+, X_-)`` of subsets of ``[ambient]``."""

    plus: frozenset[int]
    minus: frozenset[int]
    ambient: int

    def __post_init__(self):
        plus, minus = frozenset(self.plus), frozenset(self.minus)
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)
        if plus & minus:
            raise ValueError(f"polarized parts overlap: {sorted(plus & minus)}")
        if any(x < 1 or x > self.ambient for x in plus | minus):
            raise ValueError(f"polarized set not inside [{self.ambient}]")

    def __len__(self) -> int:
        return len(self.plus) + len(self.minus)

    @property
    def support(self) -> frozenset[int]:
        return self.plus | self.minus

    def sort_key(self):
        return (len(self), sorted(self.support), sorted(self.minus))

    def __str__(self) -> str:
        signed = sorted([(x, "+") for x in self.plus] + [(x, "-") for x in self.minus])
        return "{" + ",".join(f"{x}{s}" for x, s in signed) + "}"


def polarized_embed(X: PolarizedSet, p: int) -> IndexSet:
    """``X^p = X_+ ∪ {p+q+1-x : x in X_-}`` inside ``[p+q]`` with ``q = X.ambient``."""
    q = X.ambient
    if q > p:
        raise DimensionMismatch(f"polarized ambient q={q} exceeds p={p}")
    n = p + q
    return IndexSet.of(list(X.plus) + [n + 1 - x for x in X.minus], n)


def polarized_tilde(X: PolarizedSet, p: int) -> IndexSet:
    """``X^p ♮ (X^p)^{o,c}``, a subset of ``[p+q-r]``."""
    E = polarized_embed(X, p)
    return natural(E, oc(E))


def split_polarized(I: IndexSet, q: int) -> PolarizedSet:
    """Inverse of :func:`polarized_embed` for ``I`` in B(r,p,q)."""
    n = I.ambient
    plus = [i for i in I if i <= q]
    minus = [n + 1 - i for i in I if i > n - q]
    if len(plus) + len(minus) != len(I):
        raise ValueError(f"{I} meets the middle block of [{n}] with q={q}")
    return PolarizedSet(frozenset(plus), frozenset(minus), q)


def subsets(n: int, r: int) -> Iterator[IndexSet]:
    """All ``r``-subsets of ``[n]`` in lexicographic order."""
    for combo in itertools.combinations(range(1, n + 1), r):
        yield IndexSet(combo, n)


def b_sets(r: int, p: int, q: int) -> list[IndexSet]:
    """The family B(r,p,q): ``I ⊂ [p+q]``, ``|I| = r``, ``I ∩ I^o = ∅``, ``I`` avoids ``{q+1..p}``."""
    n = p + q
    allowed = [i for i in range(1, n + 1) if i <= q or i > p]
    out = []
    for combo in itertools.combinations(allowed, r):
        s = set(combo)
        if all(n + 1 - i not in s for i in combo):
            out.append(IndexSet(combo, n))
    return out


def polarized_subsets(q: int, r: int | None = None) -> list[PolarizedSet]:
    """Polarized subsets of ``[q]`` (optionally of fixed cardinality), deterministic order."""
    out = []
    sizes = range(q + 1) if r is None else [r]
    for size in sizes:
        for support in itertools.combinations(range(1, q + 1), size):
            for signs in itertools.product((1, -1), repeat=size):
                plus = frozenset(x for x, s in zip(support, signs) if s > 0)
                minus = frozenset(x for x, s in zip(support, signs) if s < 0)
                out.append(PolarizedSet(plus, minus, q))
    return out
