"""Command-line front end.

Exit codes: 0 success or member, 1 non-member or failed verification,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .coneid import ALIASES, KINDS, KIND_VARIANTS, ConeId
from .cones import build_system
from .errors import HornConesError
from .fixtures import FIXTURES, fixture_data, load_fixture
from .lr import lr_coefficient
from .polyhedra import GE, InequalitySystem, LinearRelation, relation_text, to_json, to_text

__all__ = ["main", "build_parser", "parse_point", "fixtures_for"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_point(text: str, exact: bool = True) -> dict[str, list]:
    """``"x=1,0;y=1/2,0"`` -> ``{"x": [1, 0], "y": [1/2, 0]}`` (Fractions, or floats)."""
    point = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise UsageError(f"block {chunk!r} is not of the form name=v1,v2,...")
        name, values = chunk.split("=", 1)
        name = name.strip()
        if name in point:
            raise UsageError(f"block {name!r} given twice")
        try:
            vals = [Fraction(v.strip()) for v in values.split(",") if v.strip()]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad number in block {name!r}: {exc}") from None
        point[name] = vals if exact else [float(v) for v in vals]
    return point


def _partition(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad partition {text!r}") from None


def _cone_from_args(args) -> ConeId:
    kind = ALIASES.get(args.cone.lower(), args.cone.lower())
    params = {k: getattr(args, k) for k in KINDS.get(kind, ()) if getattr(args, k, None) is not None}
    return ConeId.make(args.cone, args.variant or "", **params)


def _seed(args) -> int:
    env = os.environ.get("CI_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CI_SEED must be an integer, got {env!r}") from None
    if args.seed is not None:
        return args.seed
    if os.environ.get("CI"):
        raise UsageError("an explicit --seed (or CI_SEED) is required in CI mode")
    return 0


def _with_chamber(system: InequalitySystem) -> InequalitySystem:
    out = system.with_relations(system.relations)
    offs = system.offsets()
    for row in system.chamber_matrix():
        coeffs = {b.name: [int(v) for v in row[offs[b.name]: offs[b.name] + b.dim]] for b in system.blocks}
        out.add(LinearRelation.build(coeffs, GE, kind="chamber"))
    return out


def fixtures_for(cone: ConeId) -> list[str]:
    """Names of stored fixtures describing exactly this cone."""
    out = []
    for name in FIXTURES:
        data = dict(fixture_data(name)["cone"])
        kind = data.pop("kind")
        if kind == cone.kind and all(cone.param_dict().get(k) == v for k, v in data.items()):
            out.append(name)
    return out


# subcommands -----------------------------------------------------------------

def cmd_gen(args) -> int:
    system = build_system(_cone_from_args(args))
    if args.include_chamber:
        system = _with_chamber(system)
    print(to_json(system, indent=2) if args.format == "json" else to_text(system))
    return EXIT_OK


def cmd_check(args) -> int:
    cone = _cone_from_args(args)
    system = build_system(cone)
    exact = args.tol is None
    point = parse_point(args.point, exact=exact)
    dims = {b.name: b.dim for b in system.blocks}
    if set(point) != set(dims) or any(len(point[k]) != d for k, d in dims.items()):
        raise UsageError(f"point must have blocks {dims}, got { {k: len(v) for k, v in point.items()} }")
    res = system.member(point, "exact" if exact else "float", args.tol if args.tol is not None else 1e-8)
    if res.member:
        print(f"member of {cone}")
        return EXIT_OK
    print(f"not a member of {cone}")
    for v in res.violations:
        print("  violated:", v.describe())
    return EXIT_FAIL


def cmd_verify(args) -> int:
    from .oracle import cross_checks, equivalence_check, soundness_check

    cone = _cone_from_args(args)
    seed = _seed(args)
    system = build_system(cone)
    reports = [soundness_check(cone, args.trials, seed, args.tol, system)]
    for name in fixtures_for(cone):
        rep = soundness_check(cone, args.trials, seed, args.tol, load_fixture(name))
        rep["system"] = f"fixture {name}"
        reports.append(rep)
    if args.cross:
        for emb, target in cross_checks(cone):
            reports.append(equivalence_check(system, emb, build_system(target), args.trials, seed))
    ok = True
    for rep in reports:
        ok &= rep["ok"]
        status = "ok" if rep["ok"] else "FAIL"
        if "embedding" in rep:
            print(f"{status}  equivalence {rep['cone']} -> {rep['target']} via {rep['embedding']}: "
                  f"{rep['trials']} exact points, {rep['separation_count']} separations")
        else:
            print(f"{status}  soundness of {rep['system']} on {rep['trials']} samples of {rep['cone']}: "
                  f"{rep['violation_count']} violations, max {rep['max_violation']:.3g}")
    if args.json or not ok:
        print(json.dumps(reports if args.json else [r for r in reports if not r["ok"]], indent=2, default=str))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lr(args) -> int:
    print(lr_coefficient(_partition(args.lam), _partition(args.mu), _partition(args.nu)))
    return EXIT_OK


def cmd_count(args) -> int:
    cone = _cone_from_args(args)
    system = build_system(cone)
    ge, eq = len(system.inequalities()), len(system.equalities())
    print(f"{cone}: {ge} GE, {eq} EQ")
    for kind, n in sorted(system.count_by_kind().items()):
        print(f"  {kind}: {n}")
    chamber = system.chamber_matrix().shape[0]
    if args.include_chamber:
        print(f"  chamber: {chamber}")
    print(f"  half-spaces (GE + chamber + 2 per EQ): {ge + chamber + 2 * eq}")
    for name in fixtures_for(cone):
        fix = load_fixture(name)
        found = sum(system.contains_modulo_equalities(r) for r in fix.inequalities())
        matched = sum(fix.contains_modulo_equalities(r) for r in system.inequalities())
        print(f"  fixture {name}: {len(fix.inequalities())} GE stated, {found} of them generated; "
              f"{matched} of the {ge} generated GE appear in the fixture")
    return EXIT_OK


def cmd_fixtures(args) -> int:
    from .compare import semantically_equal

    names = args.names or list(FIXTURES)
    bad = [n for n in names if n not in FIXTURES]
    if bad:
        raise UsageError(f"unknown fixtures {bad}; choose from {list(FIXTURES)}")
    ok = True
    for name in names:
        data = fixture_data(name)
        fix = load_fixture(name)
        line = f"{name}: {data['source']} ({len(fix)} relations)"
        if args.compare:
            gen = build_system(ConeId.make(**{**data["cone"], "variant": args.variant or ""}))
            seed = _seed(args)
            verdict = semantically_equal(gen, InequalitySystem(gen.cone, gen.blocks, fix.relations), args.trials, seed)
            missing = [relation_text(r) for r in fix.relations if not gen.contains_modulo_equalities(r)]
            ok &= verdict.equal and not missing
            line += f" vs {gen.cone}: {'equal' if verdict.equal else 'DIFFERENT'}"
            if missing:
                line += f", {len(missing)} fixture relations not generated"
            if verdict.point is not None:
                line += f", separating point {verdict.point}"
        print(line)
        if args.show:
            print("\n".join("  " + relation_text(r) for r in fix.relations))
    return EXIT_OK if ok else EXIT_FAIL


# parser ----------------------------------------------------------------------

def _add_cone_args(p):
    p.add_argument("cone", help=f"cone kind: {', '.join(KINDS)}")
    for name in ("n", "m", "p", "q"):
        p.add_argument(f"--{name}", type=int)
    variants = sorted({v for vs in KIND_VARIANTS.values() for v in vs} | {"full"})
    p.add_argument("--variant", default="", help=f"one of {', '.join(variants)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="horncones", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print the generated inequality system")
    _add_cone_args(p)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--include-chamber", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="test membership of a point")
    _add_cone_args(p)
    p.add_argument("--point", required=True, help='e.g. "x=1,0;y=1,0;z=1,1"')
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact rational evaluation (default)")
    mode.add_argument("--tol", type=float, help="float evaluation with this tolerance")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="numerical soundness and exact cross checks")
    _add_cone_args(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--cross", action="store_true", help="also run the registered equivalence checks")
    p.add_argument("--json", action="store_true", help="print the full reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lr", help="Littlewood-Richardson coefficient")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.set_defaults(func=cmd_lr)

    p = sub.add_parser("count", help="relation counts by provenance kind")
    _add_cone_args(p)
    p.add_argument("--include-chamber", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("fixtures", help="list, show or compare the stored fixtures")
    p.add_argument("names", nargs="*")
    p.add_argument("--show", action="store_true")
    p.add_argument("--compare", action="store_true", help="compare with the generated system by exact sampling")
    p.add_argument("--variant", default="")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "trials", 1) is not None and getattr(args, "trials", 1) < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, HornConesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
