"""Cones attached to involutions: E_I, E_II, sing, Horn(SO_{2q+1}), A, B, S, T.

Every generator enumerates its candidate index sets exhaustively and filters
them through the LR kernel. Equivalent descriptions through Horn(n) and
LR(m, n) live in :mod:`horncones.oracle.checks` and are used as cross-checks.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .classical import _proper_subsets, admits, indicator
from .combinatorics import (
    Chamber,
    IndexSet,
    PolarizedSet,
    b_sets,
    complement,
    mu,
    natural,
    oc,
    opposite,
    polarized_embed,
    polarized_subsets,
    polarized_tilde,
    split_polarized,
    subsets,
)
from .coneid import ConeId
from .errors import BadRange, ZeroRelation
from .lr import lr_subset
from .polyhedra import EQ, GE, InequalitySystem, LinearRelation, VariableBlock, cached_system

__all__ = [
    "SingTriple",
    "PolarizedTriple",
    "e1_system",
    "e2_system",
    "sing_triples",
    "sing_system",
    "is_regular",
    "sing_stabilizes",
    "so_odd_system",
    "a_system",
    "b_system",
    "s_triples",
    "t_triples",
    "s_system",
    "t_system",
]


def _add(sys: InequalitySystem, coeffs: dict, rel: str = GE, **prov) -> bool:
    """Add a relation unless all of its coefficients cancel."""
    try:
        return sys.add(LinearRelation.build(coeffs, rel, prov))
    except ZeroRelation:
        return False


def _elems(S) -> list[int]:
    return sorted(S.elements) if isinstance(S, IndexSet) else sorted(S)


def _norm_variant(kind: str, variant: str, **params) -> str:
    return ConeId.make(kind, variant, **params).variant


# E_I(n): spectra of X and of its real part -----------------------------------


@cached_system
def _e1_system(n: int, variant: str) -> InequalitySystem:
    sys = InequalitySystem(ConeId.make("e1", variant, n=n), [VariableBlock("x", n), VariableBlock("y", n)])
    _add(sys, {"x": [1] * n, "y": [-1] * n}, EQ, kind="trace")
    # r = n only restates the trace equality
    for r in range(1, n):
        sets = list(subsets(n, r))
        for I in sets:
            target = 2 * sum(mu(I))
            for J in sets:
                if sum(mu(J)) != target:
                    continue
                c = lr_subset(I, I, J)
                if c and admits(c, variant):
                    _add(sys, {"x": indicator(I, n), "y": indicator(J, n, -1)}, kind="e1", I=_elems(I), J=_elems(J), c=c)
    return sys


def e1_system(n: int, variant: str = "nonzero") -> InequalitySystem:
    """``|x| = |y|`` and ``|x|_I >= |y|_J`` whenever cc^J_{I,I} is nonzero (r < n)."""
    if n < 1:
        raise BadRange("n must be positive")
    return _e1_system(n, _norm_variant("e1", variant, n=n))


# E_II(n): spectra of A in herm(2n) and of its quaternionic projection ----------


@cached_system
def _e2_system(n: int, variant: str) -> InequalitySystem:
    sys = InequalitySystem(ConeId.make("e2", variant, n=n), [VariableBlock("x", 2 * n), VariableBlock("y", n)])
    _add(sys, {"x": [1] * (2 * n), "y": [-2] * n}, EQ, kind="trace")
    for r in range(1, n):
        big = list(subsets(2 * n, 2 * r))
        for J in subsets(n, r):
            target = 2 * sum(mu(J))
            for I in big:
                if sum(mu(I)) != target:
                    continue
                c = lr_subset(J, J, I)
                if c and admits(c, variant):
                    _add(sys, {"x": indicator(I, 2 * n), "y": indicator(J, n, -2)}, kind="e2", I=_elems(I), J=_elems(J), c=c)
    return sys


def e2_system(n: int, variant: str = "nonzero") -> InequalitySystem:
    """``|x| = 2|y|`` and ``|x|_I >= 2|y|_J`` whenever cc^I_{J,J} is nonzero (r < n)."""
    if n < 1:
        raise BadRange("n must be positive")
    return _e2_system(n, _norm_variant("e2", variant, n=n))


# sing(p, q): singular values of A, B and A + B -----------------------------------


@dataclass(frozen=True)
class SingTriple:
    I: IndexSet
    J: IndexSet
    L: IndexSet
    q: int
    c1: int
    c2: int

    @property
    def polarized(self) -> tuple[PolarizedSet, PolarizedSet, PolarizedSet]:
        return tuple(split_polarized(X, self.q) for X in (self.I, self.J, self.L))

    @property
    def r(self) -> int:
        return len(self.I)

    def coefficients(self) -> dict[str, list[int]]:
        """Coefficients of (⋆): minus parts count positively, plus parts negatively."""
        out = {}
        for name, X in zip("xyz", self.polarized):
            vec = [0] * self.q
            for k in X.minus:
                vec[k - 1] += 1
            for k in X.plus:
                vec[k - 1] -= 1
            out[name] = vec
        return out


def sing_conditions(I: IndexSet, J: IndexSet, L: IndexSet) -> tuple[int, int]:
    """The two LR coefficients tested for a triple of B(r, p, q)."""
    c1 = lr_subset(opposite(I), opposite(J), L)
    if not c1:
        return 0, 0
    c2 = lr_subset(
        natural(opposite(I), complement(I)),
        natural(opposite(J), complement(J)),
        natural(L, oc(L)),
    )
    return c1, c2


def _sing_admits(c1: int, c2: int, variant: str) -> bool:
    if variant == "weak":
        return c1 != 0
    if variant == "strict-one":
        return c1 == 1 and c2 == 1
    return c1 != 0 and c2 != 0


@functools.lru_cache(maxsize=None)
def _sing_triples(r: int, p: int, q: int, variant: str) -> tuple[SingTriple, ...]:
    sets = b_sets(r, p, q)
    weight = {S: sum(mu(S)) for S in sets}
    weight_o = {S: sum(mu(opposite(S))) for S in sets}
    out = []
    for I, J, L in itertools.product(sets, repeat=3):
        if weight_o[I] + weight_o[J] != weight[L]:
            continue
        c1, c2 = sing_conditions(I, J, L)
        if c1 and _sing_admits(c1, c2, variant):
            out.append(SingTriple(I, J, L, q, c1, c2))
    return tuple(out)


def sing_triples(r: int, p: int, q: int, variant: str = "nonzero") -> list[SingTriple]:
    """Triples of B(r, p, q) passing the LR conditions of ``variant``.

    ``nonzero`` (alias ``full``) requires both coefficients nonzero,
    ``strict-one`` requires both equal to 1, ``weak`` only tests the first.
    """
    if not (p >= q >= 1 and 1 <= r <= q):
        raise BadRange(f"need p >= q >= 1 and 1 <= r <= q, got r={r}, p={p}, q={q}")
    return list(_sing_triples(r, p, q, _norm_variant("sing", variant, p=p, q=q)))


def _sing_into(sys: InequalitySystem, p: int, q: int, variant: str) -> InequalitySystem:
    for r in range(1, q + 1):
        for t in sing_triples(r, p, q, variant):
            X = t.polarized
            _add(
                sys,
                t.coefficients(),
                kind="sing",
                r=r,
                I=_elems(t.I),
                J=_elems(t.J),
                L=_elems(t.L),
                signed=[str(Y) for Y in X],
                c=[t.c1, t.c2],
            )
    return sys


@cached_system
def _sing_system(p: int, q: int, variant: str, kind: str) -> InequalitySystem:
    cone = ConeId.make("sing", variant, p=p, q=q) if kind == "sing" else ConeId.make("so_odd", variant, q=q)
    blocks = [VariableBlock(b, q, Chamber.DECREASING_NONNEG) for b in "xyz"]
    return _sing_into(InequalitySystem(cone, blocks), p, q, variant)


def sing_system(p: int, q: int, variant: str = "nonzero") -> InequalitySystem:
    """All inequalities (⋆) for sing(p, q); blocks x, y, z in the non-negative chamber."""
    v = _norm_variant("sing", variant, p=p, q=q)
    return _sing_system(p, q, v, "sing")


def is_regular(t: SingTriple) -> bool:
    """``#I_- + #J_- + #L_- = 2 (#I_+ + #J_+ + #L_+)``."""
    X = t.polarized
    minus = sum(len(Y.minus) for Y in X)
    plus = sum(len(Y.plus) for Y in X)
    return minus == 2 * plus


def sing_stabilizes(p: int, q: int, variant: str = "nonzero") -> bool:
    """True when every generated triple of sing(p, q) is regular.

    Regularity of all triples is a sufficient condition for sing(p, q) to be
    independent of p; the converse is not tested here.
    """
    return all(is_regular(t) for r in range(1, q + 1) for t in sing_triples(r, p, q, variant))


def so_odd_system(q: int, variant: str = "nonzero") -> InequalitySystem:
    """Horn(SO_{2q+1}), which coincides with sing(q+1, q)."""
    if q < 1:
        raise BadRange("q must be positive")
    v = _norm_variant("so_odd", variant, q=q)
    return _sing_system(q + 1, q, v, "so_odd")


# A(p, q): spectrum of X and singular values of its off-diagonal block -----------


def _a_coeffs(I, J, L, n: int, q: int) -> dict:
    x = indicator(I, n)
    for j in opposite(J):
        x[j - 1] -= 1
    y = [0] * q
    for l in L:
        if l <= q:
            y[l - 1] -= 2
    for l in opposite(L):
        if l <= q:
            y[l - 1] += 2
    return {"x": x, "y": y}


@cached_system
def _a_system(p: int, q: int, variant: str) -> InequalitySystem:
    n = p + q
    sys = InequalitySystem(
        ConeId.make("a", variant, p=p, q=q),
        [VariableBlock("x", n, Chamber.DECREASING), VariableBlock("y", q, Chamber.DECREASING_NONNEG)],
    )
    if variant == "fflp":
        for r in range(1, q + 1):
            small = [IndexSet(S.elements, n) for S in subsets(q, r)]
            for I, J, L in itertools.product(small, repeat=3):
                c = lr_subset(I, J, L)
                if c:
                    _add(sys, _a_coeffs(I, J, L, n, q), kind="a-fflp", I=_elems(I), J=_elems(J), L=_elems(L), c=c)
        return sys
    if variant == "os-weak":
        r = 1
        while 2 * r <= n:
            sets = list(subsets(n, r))
            for I, J, L in itertools.product(sets, repeat=3):
                c = lr_subset(I, J, L)
                if c:
                    _add(sys, _a_coeffs(I, J, L, n, q), kind="a-os", I=_elems(I), J=_elems(J), L=_elems(L), c=c)
            r += 1
        return sys
    for r in range(1, q + 1):
        sets = list(subsets(n, r))
        for L in b_sets(r, p, q):
            Ln = natural(L, oc(L))
            for I, J in itertools.product(sets, repeat=2):
                if I.as_set() & opposite(J).as_set():
                    continue
                c1 = lr_subset(I, J, L)
                if not c1 or not admits(c1, variant):
                    continue
                c2 = lr_subset(natural(I, oc(J)), natural(J, oc(I)), Ln)
                if c2 and admits(c2, variant):
                    _add(sys, _a_coeffs(I, J, L, n, q), kind="a", I=_elems(I), J=_elems(J), L=_elems(L), c=[c1, c2])
    return sys


def a_system(p: int, q: int, variant: str = "nonzero") -> InequalitySystem:
    """Inequalities ``|x|_I - |x|_{J^o} >= 2(|y|_{L∩[q]} - |y|_{L^o∩[q]})`` for A(p, q).

    Variants: ``nonzero``/``strict-one`` (all five conditions), ``fflp``
    (I, J, L inside [q]), ``os-weak`` (only the LR condition, 2r <= n).
    """
    return _a_system(p, q, _norm_variant("a", variant, p=p, q=q))


# B(n): singular values of X and spectrum of its Hermitian part ---------------------


@cached_system
def _b_system(n: int, variant: str) -> InequalitySystem:
    sys = InequalitySystem(
        ConeId.make("b", variant, n=n),
        [VariableBlock("x", n, Chamber.DECREASING_NONNEG), VariableBlock("y", n, Chamber.DECREASING)],
    )
    for k in range(1, n + 1):
        _add(sys, {"x": indicator([k], n), "y": indicator([k], n, -1)}, kind="bound", k=k)
        _add(sys, {"x": indicator([n + 1 - k], n), "y": indicator([k], n)}, kind="bound", k=-k)
    proper = list(_proper_subsets(n))
    for size in range(1, n + 1):
        Ls = [L for L in subsets(2 * n, size) if not L.as_set() & opposite(L).as_set()]
        for I, J in itertools.product(proper, repeat=2):
            if len(I) + len(J) != size or I.as_set() & opposite(J).as_set():
                continue
            for L in Ls:
                c1 = lr_subset(I, J, L)
                if not c1 or not admits(c1, variant):
                    continue
                c2 = None
                if variant != "weak":
                    c2 = lr_subset(natural(I, oc(J)), natural(J, oc(I)), natural(L, oc(L)))
                    if not c2 or not admits(c2, variant):
                        continue
                x = [0] * n
                for l in L:
                    if l <= n:
                        x[l - 1] += 1
                for l in opposite(L):
                    if l <= n:
                        x[l - 1] -= 1
                y = indicator(I, n, -1)
                for j in opposite(J):
                    y[j - 1] += 1
                _add(sys, {"x": x, "y": y}, kind="b", I=_elems(I), J=_elems(J), L=_elems(L), c=[c1, c2])
    return sys


def b_system(n: int, variant: str = "strict-one") -> InequalitySystem:
    """Bounds ``-x_{n+1-k} <= y_k <= x_k`` and the LR-indexed inequalities of B(n).

    Variants: ``strict-one`` (both coefficients 1), ``nonzero`` (both
    nonzero), ``weak`` (coefficient 1 for the first, second dropped).
    """
    if n < 1:
        raise BadRange("n must be positive")
    return _b_system(n, _norm_variant("b", variant, n=n))


# S(p, q) and T(p, q): polarized triples --------------------------------------------


@dataclass(frozen=True)
class PolarizedTriple:
    I: PolarizedSet
    J: PolarizedSet
    L: PolarizedSet
    c1: int
    c2: int | None

    def coefficients(self) -> dict[str, list[int]]:
        """Coefficients of (†): z with signs (+, -), x and y with signs (-, +)."""
        out = {}
        for name, X, sign in (("z", self.L, 1), ("x", self.I, -1), ("y", self.J, -1)):
            vec = [0] * X.ambient
            for k in X.plus:
                vec[k - 1] += sign
            for k in X.minus:
                vec[k - 1] -= sign
            out[name] = vec
        return out


def _polarized_triples(ambI: int, pI: int, ambJ: int, pJ: int, n: int, variant: str) -> list[PolarizedTriple]:
    Is = polarized_subsets(ambI)
    Js = polarized_subsets(ambJ)
    Ls = polarized_subsets(n)
    emb_I = {X: polarized_embed(X, pI) for X in Is}
    emb_J = {X: polarized_embed(X, pJ) for X in Js}
    emb_L = {X: polarized_embed(X, n) for X in Ls}
    L_by = {}
    for X in Ls:
        if len(X):
            L_by.setdefault((len(X), sum(mu(emb_L[X]))), []).append(X)
    out = []
    for I in Is:
        for J in Js:
            size = len(I) + len(J)
            if size == 0:
                continue
            target = sum(mu(emb_I[I])) + sum(mu(emb_J[J]))
            for L in L_by.get((size, target), ()):
                c1 = lr_subset(emb_I[I], emb_J[J], emb_L[L])
                if not c1 or not admits(c1, variant):
                    continue
                c2 = None
                if variant != "weak":
                    c2 = lr_subset(polarized_tilde(I, pI), polarized_tilde(J, pJ), polarized_tilde(L, n))
                    if not c2 or not admits(c2, variant):
                        continue
                out.append(PolarizedTriple(I, J, L, c1, c2))
    return out


def s_triples(p: int, q: int, variant: str = "strict-one") -> list[PolarizedTriple]:
    return _polarized_triples(q, p, q, p, p + q, _norm_variant("s", variant, p=p, q=q))


def t_triples(p: int, q: int, variant: str = "strict-one") -> list[PolarizedTriple]:
    return _polarized_triples(p, p, q, q, p + q, _norm_variant("t", variant, p=p, q=q))


def _add_polarized(sys: InequalitySystem, triples, kind: str) -> None:
    for t in triples:
        _add(sys, t.coefficients(), kind=kind, I=str(t.I), J=str(t.J), L=str(t.L), c=[t.c1, t.c2])


@cached_system
def _s_system(p: int, q: int, variant: str) -> InequalitySystem:
    n = p + q
    blocks = [VariableBlock("z", n, Chamber.DECREASING_NONNEG)] + [VariableBlock(b, q, Chamber.DECREASING_NONNEG) for b in "xy"]
    sys = InequalitySystem(ConeId.make("s", variant, p=p, q=q), blocks)
    for k in range(1, q + 1):
        _add(sys, {"z": indicator([k], n), "x": indicator([k], q, -1)}, kind="base", k=k)
        _add(sys, {"z": indicator([k], n), "y": indicator([k], q, -1)}, kind="base", k=k)
    _add_polarized(sys, s_triples(p, q, variant), "s")
    return sys


def s_system(p: int, q: int, variant: str = "strict-one") -> InequalitySystem:
    """S(p, q): singular values of X and of its two off-diagonal blocks."""
    return _s_system(p, q, _norm_variant("s", variant, p=p, q=q))


@cached_system
def _t_system(p: int, q: int, variant: str) -> InequalitySystem:
    n = p + q
    blocks = [
        VariableBlock("z", n, Chamber.DECREASING_NONNEG),
        VariableBlock("x", p, Chamber.DECREASING_NONNEG),
        VariableBlock("y", q, Chamber.DECREASING_NONNEG),
    ]
    sys = InequalitySystem(ConeId.make("t", variant, p=p, q=q), blocks)
    for k in range(1, p + 1):
        _add(sys, {"z": indicator([k], n), "x": indicator([k], p, -1)}, kind="base", k=k)
    for j in range(1, q + 1):
        _add(sys, {"z": indicator([j], n), "y": indicator([j], q, -1)}, kind="base", k=j)
    for l in range(1, p - q + 1):
        _add(sys, {"z": indicator([2 * q + l], n, -1), "x": indicator([l], p)}, kind="base", k=-l)
    _add_polarized(sys, t_triples(p, q, variant), "t")
    return sys


def t_system(p: int, q: int, variant: str = "strict-one") -> InequalitySystem:
    """T(p, q): singular values of X and of its two diagonal blocks."""
    return _t_system(p, q, _norm_variant("t", variant, p=p, q=q))
