"""Command line interface: ``tameideals <command> ...``.

Exit status is 0 after a completed analysis (tame or not), 1 for bad input
and 2 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .cone import ConsistencyError, classify_chart, vertices
from .constructions import (BuildingFamily, PermutohedronSpec, ResourceGuardError,
                            arrangement_closure, building_product, is_building_set,
                            permutation_polynomial_maxvectors, permutohedral_ideal,
                            permutohedron_vertices, rosenberg_ideal, rosenberg_vertices,
                            smooth_product, MAX_POLYNOMIAL_N)
from .exactmath import DimensionError
from .ideal import (CoordinateCloud, MonomialIdeal, ParseError, equals, format_ideal,
                    ideal_sum, intersect, parse_ideal, power, product_all, radical)
from .tameness import TamenessReport, is_tame, verify_report

BUILDING_CLOSURE_LIMIT = 512


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def laurent_monomial(v: Sequence[int]) -> str:
    """``x^v`` for an integer vector, e.g. (-1, 1) -> ``x2/x1``."""
    def part(pairs):
        return "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in pairs)

    num = [(i, e) for i, e in enumerate(v, 1) if e > 0]
    den = [(i, -e) for i, e in enumerate(v, 1) if e < 0]
    top = part(num) if num else "1"
    if not den:
        return top
    bottom = part(den)
    if len(den) > 1:
        bottom = f"({bottom})"
    return f"{top}/{bottom}"


def _vec(a) -> str:
    return "(" + ", ".join(str(x) for x in a) + ")"


def emit_report(r: TamenessReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(r.to_dict()) + "\n"
    lines = [f"ideal: {format_ideal(r.ideal)}", f"n: {r.ideal.n}", f"vertices: {len(r.vertices)}"]
    for a, cls in r.charts:
        if cls.is_smooth:
            coords = ", ".join(laurent_monomial(g) for g in cls.generators)
            lines.append(f"  {_vec(a)}  smooth    coordinates: {coords}")
        else:
            lines.append(f"  {_vec(a)}  {cls.kind.value:<9} {len(cls.generators)} minimal generators")
    if r.tame:
        lines.append("TAME")
    else:
        count = len(r.chart(r.witness).generators)
        lines.append(f"NOT TAME: vertex {_vec(r.witness)} has {count} minimal generators (n = {r.ideal.n})")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _ideal_arg(text: str, n: Optional[int]) -> MonomialIdeal:
    return parse_ideal(text, n)


def _common_n(texts: Sequence[str], n: Optional[int]) -> int:
    if n is not None:
        return n
    return max(parse_ideal(t).n for t in texts)


def _analyze(I: MonomialIdeal, args) -> tuple[str, TamenessReport]:
    r = is_tame(I)
    if args.verify:
        verify_report(r)
    return emit_report(r, "json" if args.json else "text"), r


def cmd_analyze(args) -> str:
    return _analyze(_ideal_arg(args.ideal, args.n), args)[0]


def cmd_vertices(args) -> str:
    I = _ideal_arg(args.ideal, args.n)
    vs = vertices(I)
    if args.json:
        return json.dumps({"vertices": [list(a) for a in vs]}) + "\n"
    return "".join(_vec(a) + "\n" for a in vs)


def _parse_point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise InputError(f"cannot read point {text!r}; expected e.g. 0,1,1") from None


def cmd_chart(args) -> str:
    I = _ideal_arg(args.ideal, args.n)
    a = _parse_point(args.at)
    if len(a) != I.n:
        raise InputError(f"point {a} does not have {I.n} coordinates")
    cls = classify_chart(I, a)
    gens = [list(g) for g in cls.generators] if cls.generators is not None else None
    if args.json:
        return json.dumps({"vertex": list(a), "class": cls.kind.value, "minimal_generators": gens}) + "\n"
    out = f"{_vec(a)}: {cls.kind.value}\n"
    if cls.generators is not None:
        out += "minimal generators: " + ", ".join(_vec(g) for g in cls.generators) + "\n"
        if cls.is_smooth:
            out += "coordinates: " + ", ".join(laurent_monomial(g) for g in cls.generators) + "\n"
    return out


def cmd_algebra(args) -> str:
    texts = args.ideal
    n = _common_n(texts, args.n)
    ideals = [parse_ideal(t, n) for t in texts]
    op = args.op
    arity = {"power": 1, "radical": 1, "equals": 2}
    if op in arity and len(ideals) != arity[op]:
        raise InputError(f"{op} takes {arity[op]} ideal(s), got {len(ideals)}")
    if op in ("product", "intersect", "sum") and len(ideals) < 2:
        raise InputError(f"{op} takes at least two ideals")
    if op == "equals":
        same = equals(*ideals)
        return (json.dumps({"equal": same}) if args.json else str(same).lower()) + "\n"
    if op == "product":
        result = product_all(ideals)
    elif op == "intersect":
        result = ideals[0]
        for J in ideals[1:]:
            result = intersect(result, J)
    elif op == "sum":
        result = ideals[0]
        for J in ideals[1:]:
            result = ideal_sum(result, J)
    elif op == "power":
        if args.k is None:
            raise InputError("power needs --k")
        result = power(ideals[0], args.k)
    else:
        result = radical(ideals[0])
    if args.json:
        return json.dumps(result.to_json()) + "\n"
    return format_ideal(result) + "\n"


def _family_output(I: MonomialIdeal, args, extra: dict) -> str:
    """Ideal alone, or ideal plus verified report under ``--verify``."""
    if not args.verify:
        if args.json:
            return json.dumps({"ideal": I.to_json(), **extra}) + "\n"
        return format_ideal(I) + "\n"
    r = is_tame(I)
    verify_report(r)
    if args.json:
        return json.dumps({"ideal": I.to_json(), **extra, "report": r.to_dict()}) + "\n"
    lines = [f"{k}: {v}" for k, v in extra.items()]
    return "\n".join(lines + [emit_report(r).rstrip("\n")]) + "\n"


def cmd_rosenberg(args) -> str:
    I = rosenberg_ideal(args.n, args.s)
    out = _family_output(I, args, {})
    if args.verify and vertices(I) != rosenberg_vertices(args.n, args.s):
        raise ConsistencyError("vertex set differs from the closed form")
    return out


def cmd_permutohedral(args) -> str:
    spec = PermutohedronSpec(args.n, args.k)
    I = permutohedral_ideal(spec, force=args.force)
    extra = {"base": list(spec.base), "expected_vertices": spec.vertex_count}
    out = _family_output(I, args, extra)
    if args.verify:
        expected = permutohedron_vertices(spec)
        if vertices(I) != expected or len(expected) != spec.vertex_count:
            raise ConsistencyError("vertex set differs from the permutohedron")
        if spec.n <= MAX_POLYNOMIAL_N and set(expected) != permutation_polynomial_maxvectors(spec.n, spec.k):
            raise ConsistencyError("coefficient-1 exponents differ from the permutohedron")
    return out


def _parse_sets(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in block.split(",") if x.strip()] for block in text.split(";") if block.strip()]
    except ValueError:
        raise InputError(f"cannot read sets {text!r}; expected e.g. 1,2;2,3") from None


def _sets_n(sets, n: Optional[int]) -> int:
    if n is not None:
        return n
    if not sets or not any(sets):
        raise InputError("no sets given")
    return max(max(s) for s in sets if s)


def cmd_building(args) -> str:
    sets = _parse_sets(args.sets)
    f = BuildingFamily(_sets_n(sets, args.n), sets)
    closure = arrangement_closure(f, limit=None if args.force else BUILDING_CLOSURE_LIMIT)
    ok = is_building_set(f)
    if not ok:
        if args.json:
            return json.dumps({"building_set": False, "closure": closure.as_lists()}) + "\n"
        return "not a building set\n"
    return _family_output(building_product(f), args, {"building_set": True})


def cmd_smooth(args) -> str:
    sets = _parse_sets(args.sets)
    n = _sets_n(sets, args.n)
    I = smooth_product([CoordinateCloud(n, s) for s in sets], verify=args.verify)
    return _family_output(I, args, {})


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tameideals", description="Tameness of monomial ideals.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, verify=True):
        sp.add_argument("--n", type=int, help="number of variables (default: largest index used)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if verify:
            sp.add_argument("--verify", action="store_true", help="re-check every smooth chart")

    sp = sub.add_parser("analyze", help="tameness report for an ideal")
    sp.add_argument("--ideal", required=True)
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("vertices", help="vertices of the Newton polyhedron")
    sp.add_argument("--ideal", required=True)
    common(sp, verify=False)
    sp.set_defaults(func=cmd_vertices)

    sp = sub.add_parser("chart", help="classify the chart at one support point")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--at", required=True, help="exponent vector, e.g. 0,1,1")
    common(sp, verify=False)
    sp.set_defaults(func=cmd_chart)

    sp = sub.add_parser("algebra", help="ideal arithmetic")
    sp.add_argument("op", choices=["product", "intersect", "sum", "power", "radical", "equals"])
    sp.add_argument("--ideal", action="append", required=True, help="repeat for several operands")
    sp.add_argument("--k", type=int, help="exponent for power")
    common(sp, verify=False)
    sp.set_defaults(func=cmd_algebra)

    sp = sub.add_parser("rosenberg", help="intersection of the axes ideal with m^3")
    sp.add_argument("--s", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_rosenberg)

    sp = sub.add_parser("permutohedral", help="product of all k-subset coordinate ideals")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--force", action="store_true", help="allow n > 6")
    common(sp)
    sp.set_defaults(func=cmd_permutohedral)

    sp = sub.add_parser("building", help="product over a building set, e.g. --sets '1,2;2,3;1,2,3'")
    sp.add_argument("--sets", required=True)
    sp.add_argument("--force", action="store_true", help=f"allow closures over {BUILDING_CLOSURE_LIMIT} sets")
    common(sp)
    sp.set_defaults(func=cmd_building)

    sp = sub.add_parser("smooth", help="prod I_i * prod (I_i + I_j) for coordinate ideals")
    sp.add_argument("--sets", required=True)
    common(sp)
    sp.set_defaults(func=cmd_smooth)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command in ("rosenberg", "permutohedral") and args.n is None:
            raise InputError(f"{args.command} needs --n")
        out = args.func(args)
    except ConsistencyError as e:
        print(f"consistency check failed: {e}", file=stderr)
        return 2
    except ParseError as e:
        print(f"parse error: {e}", file=stderr)
        return 1
    except (InputError, ResourceGuardError, DimensionError, ValueError) as e:
        print(f"error: {e}", file=stderr)
        return 1
    stdout.write(out)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
