"""Integer linear inequality systems over named blocks of spectral variables.

A system holds variable blocks (each with a chamber: weakly decreasing,
decreasing and non-negative, or unconstrained) and a deduplicated list of
canonical integer relations ``a . v >= 0`` or ``a . v = 0``. Chamber
constraints stay on the blocks and are never stored as relations.
"""

from __future__ import annotations

import functools
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .combinatorics import Chamber, SpectrumVector, in_chamber
from .coneid import ConeId
from .errors import BlockMismatch, DimensionMismatch, ZeroRelation

__all__ = [
    "GE",
    "EQ",
    "VariableBlock",
    "LinearRelation",
    "InequalitySystem",
    "Violation",
    "MembershipResult",
    "canonicalize",
    "cached_system",
    "member",
    "to_json",
    "from_json",
    "to_text",
    "relation_text",
    "parse_relation",
]

GE = "GE"
EQ = "EQ"

# numpy int64 is used only while every partial sum provably fits
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class VariableBlock:
    name: str
    dim: int
    chamber: Chamber = Chamber.DECREASING

    def __post_init__(self):
        if not re.fullmatch(r"[A-Za-z]\w*", self.name) or self.name[-1].isdigit():
            raise ValueError(f"bad block name {self.name!r}")
        if self.dim < 1:
            raise ValueError("block dimension must be positive")
        object.__setattr__(self, "chamber", Chamber(self.chamber))


@dataclass(frozen=True, eq=False)
class LinearRelation:
    """``sum_b coeffs[b] . v_b  (>= | =)  0`` with a provenance tag."""

    coeffs: tuple[tuple[str, tuple[int, ...]], ...]
    rel: str = GE
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        items = self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs
        coeffs = tuple((str(b), tuple(int(c) for c in vec)) for b, vec in items)
        names = [b for b, _ in coeffs]
        if len(set(names)) != len(names):
            raise ValueError(f"block repeated in relation: {names}")
        object.__setattr__(self, "coeffs", coeffs)
        if self.rel not in (GE, EQ):
            raise ValueError(f"relation must be GE or EQ, got {self.rel!r}")
        object.__setattr__(self, "provenance", dict(self.provenance))

    @classmethod
    def build(cls, coeffs: Mapping[str, Sequence[int]], rel: str = GE, provenance=None, **tags):
        prov = dict(provenance or {})
        prov.update(tags)
        return cls(tuple(coeffs.items()), rel, prov)

    def coeff_dict(self) -> dict[str, tuple[int, ...]]:
        return dict(self.coeffs)

    @property
    def key(self):
        """Identity of the relation, ignoring provenance and all-zero blocks."""
        return (self.rel, tuple((b, v) for b, v in self.coeffs if any(v)))

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return self.key == other.key and self.provenance == other.provenance

    def __hash__(self):
        return hash(self.key)

    def is_zero(self) -> bool:
        return not any(any(v) for _, v in self.coeffs)

    def scaled(self, k: int) -> "LinearRelation":
        return LinearRelation(tuple((b, tuple(k * c for c in v)) for b, v in self.coeffs), self.rel, self.provenance)

    def evaluate(self, point: Mapping[str, Sequence]) -> Fraction:
        total = Fraction(0)
        for b, vec in self.coeffs:
            vals = point[b]
            for c, v in zip(vec, vals):
                if c:
                    total += c * Fraction(v)
        return total

    def __repr__(self) -> str:
        return f"LinearRelation({relation_text(self)!r})"


def canonicalize(rel: LinearRelation) -> LinearRelation:
    """Divide by the content; make the leading coefficient of an equality positive."""
    coeffs = [(b, v) for b, v in rel.coeffs if any(v)]
    if not coeffs:
        raise ZeroRelation("relation has no nonzero coefficient")
    g = 0
    for _, v in coeffs:
        for c in v:
            g = math.gcd(g, c)
    sign = 1
    if rel.rel == EQ:
        lead = next(c for _, v in coeffs for c in v if c)
        sign = 1 if lead > 0 else -1
    out = tuple((b, tuple(sign * c // g for c in v)) for b, v in coeffs)
    return LinearRelation(out, rel.rel, rel.provenance)


@dataclass(frozen=True)
class Violation:
    kind: str  # "relation" or "chamber"
    margin: Fraction | float
    relation: LinearRelation | None = None
    block: str | None = None

    def describe(self) -> str:
        if self.kind == "chamber":
            return f"block {self.block} is outside its chamber"
        return f"{relation_text(self.relation)}  (margin {self.margin})"


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    violations: tuple[Violation, ...]

    def __bool__(self) -> bool:
        return self.member


class InequalitySystem:
    """Blocks plus a deduplicated, canonical list of relations."""

    def __init__(self, cone: ConeId | None, blocks: Iterable[VariableBlock], relations: Iterable[LinearRelation] = ()):
        self.cone = cone
        self.blocks = tuple(blocks)
        names = [b.name for b in self.blocks]
        if len(set(names)) != len(names):
            raise BlockMismatch(f"duplicate block names {names}")
        self._by_name = {b.name: b for b in self.blocks}
        self._relations: list[LinearRelation] = []
        self._keys: dict = {}
        self._frozen = False
        for rel in relations:
            self.add(rel)

    def freeze(self) -> "InequalitySystem":
        """Forbid further insertions; generated systems are shared through caches."""
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # construction -------------------------------------------------------

    def block(self, name: str) -> VariableBlock:
        return self._by_name[name]

    @property
    def block_names(self) -> tuple[str, ...]:
        return tuple(b.name for b in self.blocks)

    @property
    def relations(self) -> tuple[LinearRelation, ...]:
        return tuple(self._relations)

    def _ordered(self, rel: LinearRelation) -> LinearRelation:
        given = rel.coeff_dict()
        unknown = set(given) - set(self._by_name)
        if unknown:
            raise BlockMismatch(f"relation uses undeclared blocks {sorted(unknown)}")
        out = []
        for b in self.blocks:
            if b.name in given:
                if len(given[b.name]) != b.dim:
                    raise DimensionMismatch(f"block {b.name} has dim {b.dim}, relation gives {len(given[b.name])}")
                out.append((b.name, given[b.name]))
        return LinearRelation(tuple(out), rel.rel, rel.provenance)

    def add(self, rel: LinearRelation) -> bool:
        """Insert ``rel`` in canonical form; returns False if it was already present."""
        if self._frozen:
            raise TypeError("system is frozen; copy it with with_relations() first")
        rel = canonicalize(self._ordered(rel))
        if rel.key in self._keys:
            return False
        self._keys[rel.key] = len(self._relations)
        self._relations.append(rel)
        return True

    def __contains__(self, rel: LinearRelation) -> bool:
        return canonicalize(self._ordered(rel)).key in self._keys

    def find(self, rel: LinearRelation) -> LinearRelation | None:
        idx = self._keys.get(canonicalize(self._ordered(rel)).key)
        return None if idx is None else self._relations[idx]

    def __len__(self) -> int:
        return len(self._relations)

    def __iter__(self):
        return iter(self._relations)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InequalitySystem):
            return NotImplemented
        return (
            self.cone == other.cone
            and self.blocks == other.blocks
            and list(self._relations) == list(other._relations)
        )

    def _eq_rref(self):
        rows = [[Fraction(int(c)) for c in row] for row in self.matrix(self.equalities())]
        pivots = []
        r = 0
        for col in range(self.nvars):
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
            pivots.append((r, col))
            r += 1
        return rows, pivots

    def normal_form(self, rel: LinearRelation) -> tuple:
        """Coefficients of ``rel`` reduced modulo the system's equalities, content 1.

        Two inequalities with equal normal forms define the same half-space on
        the equality subspace. An equality implied by the system reduces to ().
        """
        rows, pivots = self._eq_rref()
        vec = [Fraction(int(c)) for c in self.matrix([self._ordered(rel)])[0]]
        for i, col in pivots:
            if vec[col]:
                f = vec[col]
                vec = [a - f * b for a, b in zip(vec, rows[i])]
        if not any(vec):
            return ()
        den = 1
        for v in vec:
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = [int(v * den) for v in vec]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        if rel.rel == EQ:
            lead = next(v for v in ints if v)
            ints = [v if lead > 0 else -v for v in ints]
        return (rel.rel, tuple(ints))

    def contains_modulo_equalities(self, rel: LinearRelation) -> bool:
        """Is ``rel`` one of the relations up to adding multiples of the equalities?"""
        nf = self.normal_form(rel)
        if nf == ():
            return True
        return any(self.normal_form(r) == nf for r in self._relations)

    def equalities(self) -> list[LinearRelation]:
        return [r for r in self._relations if r.rel == EQ]

    def inequalities(self) -> list[LinearRelation]:
        return [r for r in self._relations if r.rel == GE]

    def with_relations(self, relations: Iterable[LinearRelation]) -> "InequalitySystem":
        return InequalitySystem(self.cone, self.blocks, relations)

    def count_by_kind(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for r in self._relations:
            kind = r.provenance.get("kind", "unknown")
            counts[kind] = counts.get(kind, 0) + 1
        return counts

    # dense views ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return sum(b.dim for b in self.blocks)

    def offsets(self) -> dict[str, int]:
        out, pos = {}, 0
        for b in self.blocks:
            out[b.name] = pos
            pos += b.dim
        return out

    def matrix(self, relations: Sequence[LinearRelation] | None = None) -> np.ndarray:
        """Integer coefficient matrix, one row per relation, columns in block order."""
        rels = self._relations if relations is None else relations
        off = self.offsets()
        A = np.zeros((len(rels), self.nvars), dtype=np.int64)
        for i, r in enumerate(rels):
            for b, vec in r.coeffs:
                A[i, off[b]: off[b] + len(vec)] = vec
        return A

    def chamber_matrix(self) -> np.ndarray:
        """Rows ``c . v >= 0`` expressing every block's chamber."""
        rows = []
        off = self.offsets()
        for b in self.blocks:
            if b.chamber is Chamber.UNCONSTRAINED:
                continue
            for k in range(b.dim - 1):
                row = np.zeros(self.nvars, dtype=np.int64)
                row[off[b.name] + k] = 1
                row[off[b.name] + k + 1] = -1
                rows.append(row)
            if b.chamber is Chamber.DECREASING_NONNEG:
                row = np.zeros(self.nvars, dtype=np.int64)
                row[off[b.name] + b.dim - 1] = 1
                rows.append(row)
        if not rows:
            return np.zeros((0, self.nvars), dtype=np.int64)
        return np.array(rows, dtype=np.int64)

    def flatten(self, point: Mapping[str, Sequence]) -> list:
        self._check_point(point)
        out = []
        for b in self.blocks:
            out.extend(point[b.name])
        return out

    def unflatten(self, flat: Sequence) -> dict[str, tuple]:
        out, pos = {}, 0
        for b in self.blocks:
            out[b.name] = tuple(flat[pos: pos + b.dim])
            pos += b.dim
        return out

    def _check_point(self, point: Mapping[str, Sequence]) -> None:
        if set(point) != set(self._by_name):
            raise DimensionMismatch(f"point blocks {sorted(point)} != system blocks {sorted(self._by_name)}")
        for b in self.blocks:
            if len(point[b.name]) != b.dim:
                raise DimensionMismatch(f"block {b.name} needs {b.dim} entries, got {len(point[b.name])}")

    # membership ----------------------------------------------------------

    def member(self, point: Mapping[str, Sequence], mode: str = "exact", tol: float = 1e-8) -> MembershipResult:
        return member(self, point, mode, tol)

    def member_batch(self, points: np.ndarray) -> np.ndarray:
        """Exact membership of integer points (rows, flattened in block order).

        The cones are homogeneous, so a rational point can be scaled to an
        integer one without changing membership.
        """
        return member_batch(self, points)

    def __repr__(self) -> str:
        return f"InequalitySystem({self.cone}, {len(self)} relations)"


def cached_system(builder):
    """Memoize a system builder and freeze what it returns."""

    @functools.lru_cache(maxsize=None)
    def wrapper(*args):
        return builder(*args).freeze()

    wrapper.__doc__ = builder.__doc__
    wrapper.__name__ = builder.__name__
    return wrapper


def _to_fractions(point: Mapping[str, Sequence]) -> dict[str, tuple[Fraction, ...]]:
    out = {}
    for name, vec in point.items():
        if isinstance(vec, SpectrumVector):
            vec = vec.entries
        out[name] = tuple(v if isinstance(v, Fraction) else Fraction(v) for v in vec)
    return out


def member(sys: InequalitySystem, point: Mapping[str, Sequence], mode: str = "exact", tol: float = 1e-8) -> MembershipResult:
    """Test a point against chambers, then every relation.

    ``mode="exact"`` evaluates with rationals and no tolerance; ``mode="float"``
    uses doubles and flags a relation only when it misses by more than ``tol``.
    """
    sys._check_point(point)
    violations: list[Violation] = []
    if mode == "exact":
        pt = _to_fractions(point)
        for b in sys.blocks:
            if not in_chamber(pt[b.name], b.chamber):
                violations.append(Violation("chamber", Fraction(-1), block=b.name))
        if violations:
            return MembershipResult(False, tuple(violations))
        for r in sys.relations:
            val = r.evaluate(pt)
            if (r.rel == GE and val < 0) or (r.rel == EQ and val != 0):
                violations.append(Violation("relation", val, relation=r))
    elif mode == "float":
        pt = {k: np.asarray([float(v) for v in vec]) for k, vec in point.items()}
        for b in sys.blocks:
            vec = pt[b.name]
            bad = np.any(np.diff(vec) > tol) if b.chamber is not Chamber.UNCONSTRAINED else False
            if b.chamber is Chamber.DECREASING_NONNEG and vec[-1] < -tol:
                bad = True
            if bad:
                violations.append(Violation("chamber", -1.0, block=b.name))
        if violations:
            return MembershipResult(False, tuple(violations))
        if len(sys):
            x = np.concatenate([pt[b.name] for b in sys.blocks])
            vals = sys.matrix().astype(float) @ x
            for r, val in zip(sys.relations, vals):
                if (r.rel == GE and val < -tol) or (r.rel == EQ and abs(val) > tol):
                    violations.append(Violation("relation", float(val), relation=r))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return MembershipResult(not violations, tuple(violations))


def _safe_product(A: np.ndarray, P: np.ndarray) -> np.ndarray:
    """``P @ A.T`` exactly, in int64 when it cannot overflow, else with Python ints."""
    if P.dtype != object and A.size and P.size:
        bound = int(np.abs(A).max()) * int(np.abs(P).max()) * A.shape[1]
        if bound < _INT64_SAFE:
            return P.astype(np.int64) @ A.T.astype(np.int64)
    return P.astype(object) @ A.T.astype(object)


def member_batch(sys: InequalitySystem, points: np.ndarray) -> np.ndarray:
    points = np.asarray(points)
    if points.ndim != 2 or points.shape[1] != sys.nvars:
        raise DimensionMismatch(f"expected (k, {sys.nvars}) integer array")
    ok = np.ones(points.shape[0], dtype=bool)
    C = sys.chamber_matrix()
    if C.shape[0]:
        ok &= np.all(_safe_product(C, points) >= 0, axis=1)
    ge = sys.inequalities()
    eq = sys.equalities()
    if ge:
        ok &= np.all(_safe_product(sys.matrix(ge), points) >= 0, axis=1)
    if eq:
        ok &= np.all(_safe_product(sys.matrix(eq), points) == 0, axis=1)
    return ok


# text and JSON -------------------------------------------------------------


def _term(c: int, name: str, idx: int) -> str:
    return f"{name}{idx}" if c == 1 else f"{c}{name}{idx}"


def relation_text(rel: LinearRelation) -> str:
    """Text rendering with positive terms on the left, negative on the right."""
    left, right = [], []
    for b, vec in rel.coeffs:
        for k, c in enumerate(vec, start=1):
            if c > 0:
                left.append(_term(c, b, k))
            elif c < 0:
                right.append(_term(-c, b, k))
    sym = ">=" if rel.rel == GE else "="
    return f"{' + '.join(left) or '0'} {sym} {' + '.join(right) or '0'}"


_TERM = re.compile(r"^(\d*)\s*\*?\s*([A-Za-z]\w*?)(\d+)$")


def _parse_side(side: str, dims: Mapping[str, int], sign: int, acc: dict) -> None:
    side = side.replace("-", "+-")
    for tok in side.split("+"):
        tok = tok.strip()
        if not tok or tok == "0":
            continue
        neg = tok.startswith("-")
        tok = tok.lstrip("-").strip()
        m = _TERM.match(tok)
        if not m:
            raise ValueError(f"cannot parse term {tok!r}")
        c = int(m.group(1) or 1)
        name, idx = m.group(2), int(m.group(3))
        if name not in dims:
            raise BlockMismatch(f"unknown block {name!r}")
        if not 1 <= idx <= dims[name]:
            raise DimensionMismatch(f"{name}{idx} out of range")
        acc.setdefault(name, [0] * dims[name])
        acc[name][idx - 1] += sign * (-c if neg else c)


def parse_relation(text: str, dims: Mapping[str, int], provenance=None) -> LinearRelation:
    """Parse ``"x1 + 2y2 >= z1"`` (also ``<=`` and ``=``) into a relation."""
    for sym, rel, flip in ((">=", GE, False), ("<=", GE, True), ("=", EQ, False)):
        if sym in text:
            lhs, rhs = text.split(sym, 1)
            break
    else:
        raise ValueError(f"no relation symbol in {text!r}")
    if flip:
        lhs, rhs = rhs, lhs
    acc: dict = {}
    _parse_side(lhs, dims, 1, acc)
    _parse_side(rhs, dims, -1, acc)
    ordered = {b: acc[b] for b in dims if b in acc}
    return LinearRelation.build(ordered, rel, provenance or {})


def to_text(sys: InequalitySystem) -> str:
    return "\n".join(relation_text(r) for r in sys.relations)


def to_dict(sys: InequalitySystem) -> dict:
    cone = sys.cone
    return {
        "cone": cone.kind if cone else "custom",
        "params": ({**cone.param_dict(), "variant": cone.variant} if cone else {}),
        "blocks": [{"name": b.name, "dim": b.dim, "chamber": b.chamber.value} for b in sys.blocks],
        "relations": [
            {"coeffs": {b: list(v) for b, v in r.coeffs}, "rel": r.rel, "provenance": r.provenance}
            for r in sys.relations
        ],
    }


def to_json(sys: InequalitySystem, indent: int | None = None) -> str:
    return json.dumps(to_dict(sys), indent=indent)


def from_json(data: str | dict) -> InequalitySystem:
    if isinstance(data, str):
        data = json.loads(data)
    params = dict(data.get("params", {}))
    cone = None
    if data["cone"] != "custom":
        variant = params.pop("variant", "")
        cone = ConeId(data["cone"], tuple(params.items()), variant)
    blocks = [VariableBlock(b["name"], int(b["dim"]), Chamber(b["chamber"])) for b in data["blocks"]]
    rels = [LinearRelation(tuple(r["coeffs"].items()), r["rel"], r.get("provenance", {})) for r in data["relations"]]
    return InequalitySystem(cone, blocks, rels)
