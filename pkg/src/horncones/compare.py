"""Semantic comparison of inequality systems by exact rational sampling.

Both systems describe homogeneous cones, so every rational test point is
scaled to an integer vector before evaluation. Points come from three
sources: segments from an interior point to the boundary of either cone
(and slightly past it), random points of the common equality subspace, and
random chamber points with ties and zeros inserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.optimize import linprog

from .errors import BlockMismatch
from .polyhedra import InequalitySystem, member_batch

__all__ = [
    "SemanticVerdict",
    "semantically_equal",
    "sample_points",
    "compare_predicates",
    "integer_nullspace",
    "PointSampler",
    "chamber_points",
]


def integer_nullspace(E: np.ndarray, nvars: int) -> np.ndarray:
    """Integer basis (columns) of ``{v : E v = 0}``, computed exactly."""
    rows = [[Fraction(int(c)) for c in row] for row in np.asarray(E).reshape(-1, nvars)]
    pivots = []
    r = 0
    for col in range(nvars):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * nvars
        vec[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][f]
        den = 1
        for v in vec:
            den = den * v.denominator // np.gcd(den, v.denominator)
        basis.append([int(v * den) for v in vec])
    if not basis:
        return np.zeros((nvars, 0), dtype=np.int64)
    return np.array(basis, dtype=np.int64).T


def chamber_points(sys: InequalitySystem, rng: np.random.Generator, count: int) -> np.ndarray:
    """Random rational chamber points (common denominator <= 64), scaled to integers.

    Each coordinate is duplicated from its neighbour or set to zero with
    probability 1/4 to bias toward chamber walls.
    """
    pts = np.zeros((count, sys.nvars), dtype=np.int64)
    for i in range(count):
        pos = 0
        for b in sys.blocks:
            vals = rng.integers(-64, 65, size=b.dim)
            if b.chamber.value != "unconstrained":
                vals = np.sort(vals)[::-1].copy()
                for k in range(1, b.dim):
                    if rng.random() < 0.25:
                        vals[k] = vals[k - 1]
                if b.chamber.value == "decreasing-nonneg":
                    vals = np.abs(vals)
                    vals = np.sort(vals)[::-1].copy()
                    if rng.random() < 0.25:
                        vals[-1] = 0
            else:
                zero = rng.random(b.dim) < 0.25
                vals[zero] = 0
            pts[i, pos: pos + b.dim] = vals
            pos += b.dim
    return pts


def _interior_point(sys: InequalitySystem, N: np.ndarray, scale: int = 4096) -> np.ndarray | None:
    """An integer point of the cone, as deep inside as an LP finds it."""
    G = np.vstack([sys.matrix(sys.inequalities()), sys.chamber_matrix()]) if len(sys.inequalities()) else sys.chamber_matrix()
    k = N.shape[1]
    if k == 0:
        return None
    if G.shape[0] == 0:
        return N @ np.ones(k, dtype=np.int64)
    GN = (G @ N).astype(float)
    # rows vanishing on the equality subspace hold trivially there
    GN = GN[np.any(GN != 0, axis=1)]
    if GN.shape[0] == 0:
        return N @ np.ones(k, dtype=np.int64)
    # maximize s subject to GN w >= s, -1 <= w <= 1, s <= 1
    c = np.zeros(k + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-GN, np.ones((GN.shape[0], 1))])
    b_ub = np.zeros(GN.shape[0])
    bounds = [(-1.0, 1.0)] * k + [(None, 1.0)]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if not res.success or res.x[-1] <= 1e-9:
        return None
    w = np.round(res.x[:k] * scale).astype(np.int64)
    point = N @ w
    if np.all(G @ point >= 0):
        return point
    return None


def _boundary_points(sys: InequalitySystem, center: np.ndarray, N: np.ndarray, rng, count: int) -> list:
    G = np.vstack([sys.matrix(sys.inequalities()), sys.chamber_matrix()])
    out = []
    k = N.shape[1]
    Gc = [int(v) for v in G @ center]
    for _ in range(count):
        w = rng.integers(-8, 9, size=k)
        if not w.any():
            w[rng.integers(k)] = 1
        d = N @ w
        Gd = G @ d
        neg = np.nonzero(Gd < 0)[0]
        if neg.size == 0:
            num, den = int(rng.integers(1, 50)), 1
        else:
            ratios = np.array([Gc[i] / -int(Gd[i]) for i in neg])
            i = int(neg[int(np.argmin(ratios))])
            num, den = Gc[i], -int(Gd[i])
        m = int(rng.choice([2, 16, 1024]))
        for factor_num, factor_den in ((1, 1), (m + 1, m), (m - 1, m)):
            # point = center + t d with t = num * factor_num / (den * factor_den)
            tn, td = num * factor_num, den * factor_den
            pt = [td * int(c) + tn * int(dd) for c, dd in zip(center, d)]
            out.append(pt)
    return out


@dataclass
class SemanticVerdict:
    equal: bool
    points_tested: int
    inside_a: int
    inside_b: int
    point: dict | None = None
    in_a: bool | None = None
    in_b: bool | None = None
    notes: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.equal


PointSampler = Callable[[InequalitySystem, np.random.Generator, int], np.ndarray]


def _as_array(points: list) -> np.ndarray:
    big = max((abs(v) for p in points for v in p), default=0)
    if big < 2**40:
        return np.array(points, dtype=np.int64)
    return np.array(points, dtype=object)


def sample_points(systems: list[InequalitySystem], trials: int, rng: np.random.Generator) -> np.ndarray:
    """``trials`` integer test points on the common variable space of ``systems``.

    About half come from boundary segments of each system that has an
    interior, a quarter from the joint equality subspace, the rest are
    random chamber points of the first system.
    """
    first = systems[0]
    nv = first.nvars
    points: list = []
    eqs = []
    for s in systems:
        for r in s.equalities():
            eqs.append(s.matrix([r])[0])
    E = np.array(eqs, dtype=np.int64) if eqs else np.zeros((0, nv), dtype=np.int64)
    N = integer_nullspace(E, nv)
    centers = []
    for s in systems:
        sub_eqs = s.equalities()
        Ns = integer_nullspace(s.matrix(sub_eqs) if sub_eqs else np.zeros((0, nv), dtype=np.int64), nv)
        c = _interior_point(s, Ns)
        if c is not None:
            centers.append((s, c, Ns))
    if centers:
        per = max(1, (trials // 2) // (3 * len(centers)))
        for s, c, Ns in centers:
            points.extend(_boundary_points(s, c, Ns, rng, per))
    n_sub = (trials - len(points)) // 2
    if N.shape[1] and n_sub > 0:
        W = rng.integers(-64, 65, size=(n_sub, N.shape[1]))
        points.extend((W @ N.T).tolist())
    rest = trials - len(points)
    if rest > 0:
        points.extend(chamber_points(first, rng, rest).tolist())
    return _as_array(points[:trials])


def semantically_equal(
    a: InequalitySystem,
    b: InequalitySystem,
    trials: int = 10000,
    seed: int = 0,
    sampler: PointSampler | None = None,
) -> SemanticVerdict:
    """Compare the membership predicates of two systems on exact sampled points."""
    if [(x.name, x.dim, x.chamber) for x in a.blocks] != [(x.name, x.dim, x.chamber) for x in b.blocks]:
        raise BlockMismatch("systems have different blocks")
    rng = np.random.default_rng(seed)
    if sampler is not None:
        P = _as_array(sampler(a, rng, trials).tolist())
    else:
        P = sample_points([a, b], trials, rng)
    return compare_predicates(a, member_batch(a, P), member_batch(b, P), P)


def compare_predicates(a: InequalitySystem, in_a: np.ndarray, in_b: np.ndarray, P: np.ndarray) -> SemanticVerdict:
    diff = np.nonzero(in_a != in_b)[0]
    verdict = SemanticVerdict(
        equal=diff.size == 0,
        points_tested=int(P.shape[0]),
        inside_a=int(in_a.sum()),
        inside_b=int(in_b.sum()),
    )
    if diff.size:
        i = int(diff[0])
        verdict.point = a.unflatten([int(v) for v in P[i]])
        verdict.in_a = bool(in_a[i])
        verdict.in_b = bool(in_b[i])
    return verdict
