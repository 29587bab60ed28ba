import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from horncones.classical import horn_system
from horncones.combinatorics import Chamber
from horncones.compare import integer_nullspace, semantically_equal
from horncones.errors import BlockMismatch, DimensionMismatch, ZeroRelation
from horncones.fixtures import load_fixture
from horncones.involution import e1_system
from horncones.polyhedra import (
    EQ,
    GE,
    InequalitySystem,
    LinearRelation,
    VariableBlock,
    canonicalize,
    from_json,
    member,
    member_batch,
    parse_relation,
    relation_text,
    to_dict,
    to_json,
    to_text,
)

DIMS = {"x": 2, "y": 2, "z": 2}


def rel(text, dims=DIMS):
    return parse_relation(text, dims)


def xyz_system(rels=()):
    return InequalitySystem(None, [VariableBlock(b, 2) for b in "xyz"], rels)


coeff_vectors = st.lists(st.integers(-6, 6), min_size=2, max_size=2)


@st.composite
def relations(draw):
    coeffs = {b: draw(coeff_vectors) for b in "xyz"}
    if not any(any(v) for v in coeffs.values()):
        coeffs["x"][0] = 1
    return LinearRelation.build(coeffs, draw(st.sampled_from([GE, EQ])))


class TestCanonicalize:
    def test_content_removed(self):
        r = canonicalize(LinearRelation.build({"x": [2, 0], "y": [2, 0], "z": [-2, 0]}))
        assert r.coeff_dict() == {"x": (1, 0), "y": (1, 0), "z": (-1, 0)}

    def test_equality_sign(self):
        r = canonicalize(LinearRelation.build({"x": [-1, 0], "y": [1, 0]}, EQ))
        assert r.coeff_dict()["x"] == (1, 0)

    def test_zero(self):
        with pytest.raises(ZeroRelation):
            canonicalize(LinearRelation.build({"x": [0, 0]}))

    @given(relations())
    def test_idempotent(self, r):
        once = canonicalize(r)
        assert canonicalize(once).key == once.key

    @given(relations(), st.integers(1, 5))
    def test_scaling_invariant(self, r, k):
        assert canonicalize(r.scaled(k)).key == canonicalize(r).key


class TestSystem:
    def test_dedup(self):
        s = xyz_system([rel("x1 + y1 >= z1")])
        assert not s.add(rel("2x1 + 2y1 >= 2z1"))
        assert len(s) == 1

    def test_undeclared_block(self):
        s = xyz_system()
        with pytest.raises(BlockMismatch):
            s.add(LinearRelation.build({"w": [1, 0]}))
        with pytest.raises(DimensionMismatch):
            s.add(LinearRelation.build({"x": [1, 0, 0]}))

    def test_duplicate_block_names(self):
        with pytest.raises(BlockMismatch):
            InequalitySystem(None, [VariableBlock("x", 1), VariableBlock("x", 2)])

    def test_generated_systems_are_frozen(self):
        s = horn_system(2)
        with pytest.raises(TypeError):
            s.add(rel("x1 >= 0"))
        copy = s.with_relations(s.relations)
        assert copy.add(rel("x1 >= 0"))
        assert len(horn_system(2)) == 4

    def test_normal_form_modulo_equalities(self):
        s = e1_system(3)
        assert s.contains_modulo_equalities(parse_relation("x2 + x3 <= y2 + y3", {"x": 3, "y": 3}))
        assert not s.contains_modulo_equalities(parse_relation("x3 >= y1", {"x": 3, "y": 3}))


class TestMembership:
    def test_empty_system(self):
        s = xyz_system()
        assert member(s, {"x": [1, 0], "y": [0, 0], "z": [5, 5]}).member

    def test_horn2_examples(self):
        s = horn_system(2)
        assert member(s, {"x": [1, 0], "y": [1, 0], "z": [1, 1]}).member
        res = member(s, {"x": [1, 0], "y": [1, 0], "z": [2, 1]})
        assert not res.member
        assert [v.relation.rel for v in res.violations] == [EQ]

    def test_chamber_checked_first(self):
        s = horn_system(2)
        res = member(s, {"x": [0, 1], "y": [1, 0], "z": [1, 1]})
        assert not res.member and res.violations[0].kind == "chamber"
        nonneg = InequalitySystem(None, [VariableBlock("x", 2, Chamber.DECREASING_NONNEG)])
        assert not member(nonneg, {"x": [1, -1]}).member
        assert not member(nonneg, {"x": [1, -1]}, "float").member

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            member(horn_system(2), {"x": [1], "y": [1, 0], "z": [1, 1]})

    def test_rational_points(self):
        s = horn_system(2)
        pt = {"x": ["1/2", "1/3"], "y": [0, 0], "z": [Fraction(1, 2), Fraction(1, 3)]}
        assert member(s, pt).member

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=8), min_size=6, max_size=6))
    def test_float_agrees_with_exact_away_from_boundary(self, vals):
        s = horn_system(2)
        pt = {"x": sorted(vals[:2], reverse=True), "y": sorted(vals[2:4], reverse=True), "z": sorted(vals[4:], reverse=True)}
        exact = member(s, pt)
        tol = 1e-9
        margins = [abs(r.evaluate(pt)) for r in s.relations]
        if min(margins) > 2 * tol:
            assert member(s, pt, "float", tol).member == exact.member

    @given(st.lists(st.integers(-20, 20), min_size=6, max_size=6), st.integers(1, 4))
    def test_member_invariant_under_relation_scaling(self, vals, k):
        s = horn_system(2)
        scaled = InequalitySystem(s.cone, s.blocks)
        for r in s.relations:
            scaled.add(r.scaled(k))
        pt = s.unflatten(vals)
        assert member(s, pt).member == member(scaled, pt).member

    def test_batch_agrees_with_single(self):
        s = horn_system(3)
        rng = np.random.default_rng(0)
        P = rng.integers(-5, 6, size=(300, s.nvars))
        P[:, :3] = -np.sort(-P[:, :3])
        batch = member_batch(s, P)
        for row, b in zip(P, batch):
            assert member(s, s.unflatten([int(v) for v in row])).member == b

    def test_batch_large_integers_use_exact_path(self):
        s = horn_system(2)
        big = 2**70
        P = np.array([[big, 0, big, 0, big, big]], dtype=object)
        assert member_batch(s, P).tolist() == [True]


class TestSerialization:
    def test_text_rendering(self):
        assert relation_text(rel("x1 + x2 >= z1 - y2")) == "x1 + x2 + y2 >= z1"
        assert relation_text(rel("x1 <= 0")) == "0 >= x1"
        assert relation_text(rel("2x1 = y2")) == "2x1 = y2"
        assert "x1 + x2 + x3 = y1 + y2 + y3" in to_text(e1_system(3)).splitlines()

    def test_parse_round_trip(self):
        for r in horn_system(3).relations:
            text = relation_text(r)
            assert canonicalize(parse_relation(text, {"x": 3, "y": 3, "z": 3})).key == r.key

    def test_json_round_trip(self):
        for s in (horn_system(3), e1_system(4), xyz_system()):
            back = from_json(to_json(s))
            assert back == s
            assert from_json(json.loads(to_json(s))) == s

    def test_empty_schema(self):
        d = to_dict(xyz_system())
        assert set(d) == {"cone", "params", "blocks", "relations"}
        assert d["relations"] == []
        assert d["blocks"][0] == {"name": "x", "dim": 2, "chamber": "decreasing"}


class TestSemanticEquality:
    def test_identical(self):
        s = horn_system(3)
        assert semantically_equal(s, s, trials=2000).equal

    def test_dropped_inequality_is_detected(self):
        s = horn_system(2)
        for dropped in s.inequalities():
            weaker = s.with_relations([r for r in s.relations if r is not dropped])
            verdict = semantically_equal(s, weaker, trials=3000, seed=1)
            assert not verdict.equal
            assert verdict.in_b and not verdict.in_a
            assert dropped.evaluate(verdict.point) < 0
            assert all(r.evaluate(verdict.point) >= 0 for r in weaker.inequalities())

    def test_e1_3_fixture(self):
        gen = e1_system(3)
        fix = InequalitySystem(gen.cone, gen.blocks, load_fixture("e1_3").relations)
        assert semantically_equal(gen, fix, trials=10000).equal

    def test_block_mismatch(self):
        with pytest.raises(BlockMismatch):
            semantically_equal(horn_system(2), horn_system(3))

    def test_integer_nullspace(self):
        E = np.array([[1, 1, -1, 0], [0, 2, 0, -1]])
        N = integer_nullspace(E, 4)
        assert N.shape == (4, 2)
        assert not (E @ N).any()
