"""Command-line interface: invariants, family construction, equivalence,
descent and the reproducible verification harness.

Exit codes: 0 success, 1 input error, 2 mathematical finding (a named
check failed), 3 negative decision (not equivalent / not invariant).
Output is byte-deterministic for a fixed seed; expected errors print a
message, never a traceback.
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import branch as brm
from . import descent as dsc
from . import families as fam
from . import invariants as inv
from . import tower as tw
from .errors import (
    InvalidParameters,
    LevelOverflow,
    NotInvariant,
    NSCurveError,
    ParseError,
    PointNotOnCurve,
)
from .grammar import parse_generator_file, parse_point, parse_poly, parse_scalar
from .tower import TowerScalar

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FINDING = 2
EXIT_NEGATIVE = 3


@dataclass(frozen=True)
class RunConfig:
    p: int = 3
    max_level: int = tw.DEFAULT_MAX_LEVEL
    trunc: int = brm.DEFAULT_TRUNC
    span_degree: int = brm.DEFAULT_SPAN_DEGREE
    seed: int = 0
    json: bool = False

    def __post_init__(self):
        if min(self.p, self.max_level, self.trunc, self.span_degree) <= 0:
            raise InvalidParameters("all configuration bounds must be positive")


def _emit(config, payload, text_lines):
    if config.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


_DEFAULTS = {
    "p": 3,
    "max_level": None,
    "trunc": brm.DEFAULT_TRUNC,
    "span_degree": brm.DEFAULT_SPAN_DEGREE,
    "seed": 0,
    "json": False,
}


def _common_flags():
    """Shared flags, usable before or after the subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    common.add_argument("--p", type=int, default=s, help="characteristic (default 3)")
    common.add_argument("--max-level", type=int, default=s, help="tower level cap")
    common.add_argument(
        "--trunc", type=int, default=s,
        help="branch truncation cap; the working window adapts below it",
    )
    common.add_argument(
        "--span-degree", type=int, default=s, help="monomial span degree bound"
    )
    common.add_argument("--seed", type=int, default=s)
    common.add_argument("--json", action="store_true", default=s, help="JSON output")
    return common


def _build_parser():
    common = _common_flags()
    ap = argparse.ArgumentParser(
        prog="nscurve",
        description="Invariants, Frobenius descent and quartic families over F_3(t).",
        parents=[common],
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser(
        "invariants", help="full local report at a point", parents=[common]
    )
    src = p_inv.add_mutually_exclusive_group(required=True)
    src.add_argument("--curve", help="homogeneous polynomial (inline)")
    src.add_argument("--curve-file", help="file with a 'level m' header and one form")
    p_inv.add_argument("--point", required=True, help="projective point (a:b:c)")
    p_inv.add_argument("--level", type=int, default=1, help="level of r in inline text")

    p_fam = sub.add_parser(
        "family", help="construct and validate a family member", parents=[common]
    )
    p_fam.add_argument("--tag", required=True, choices=fam.TAGS)
    p_fam.add_argument("--t1", required=True)
    p_fam.add_argument("--t2", required=True)
    p_fam.add_argument("--a", required=True)

    p_eq = sub.add_parser(
        "equiv", help="decide projective equivalence of members", parents=[common]
    )
    p_eq.add_argument("member_a", help="member JSON file (from the family command)")
    p_eq.add_argument("member_b", help="member JSON file")

    p_desc = sub.add_parser(
        "descend", help="descend/extend/check an ideal", parents=[common]
    )
    p_desc.add_argument("--ideal-file", required=True)
    p_desc.add_argument(
        "--direction", required=True, choices=("descend", "extend", "check")
    )

    p_ver = sub.add_parser(
        "verify", help="seeded family verification runs", parents=[common]
    )
    p_ver.add_argument("--family", required=True, choices=fam.TAGS)
    p_ver.add_argument("--samples", type=int, default=20)
    return ap


def _config_from_args(args):
    merged = {k: getattr(args, k, _DEFAULTS[k]) for k in _DEFAULTS}
    if merged["max_level"] is not None:
        tw.set_max_level(merged["max_level"])
    return RunConfig(
        p=merged["p"],
        max_level=tw.get_max_level(),
        trunc=merged["trunc"],
        span_degree=merged["span_degree"],
        seed=merged["seed"],
        json=bool(merged["json"]),
    )


# -- sampling ----------------------------------------------------------------


def _sample_fraction(rng, level, p):
    """Uniform fraction with numerator/denominator of degree <= 2."""
    num = [rng.randrange(p) for _ in range(3)]
    while True:
        den = [rng.randrange(p) for _ in range(3)]
        if any(den):
            break
    return TowerScalar(num, den, level, p)


def sample_member(tag, rng, p=3):
    """Seeded family member: t_i = r + offset, a in K.

    Offsets are uniform degree-<=2 numerator/denominator fractions in the
    level-1 generator (heights stay small, runs stay fast); a is the same
    measure in t.  Invalid draws (t1 = t2, a = 0, the excluded C0 value,
    offsets collapsing into K) are redrawn.
    """
    r = TowerScalar.generator(1, p)
    while True:
        u1 = _sample_fraction(rng, 1, p)
        u2 = _sample_fraction(rng, 1, p)
        a = _sample_fraction(rng, 0, p)
        try:
            return fam.make(tag, r + u1, r + u2, a)
        except InvalidParameters:
            continue


# -- commands ----------------------------------------------------------------


def cmd_invariants(args, config):
    if args.curve is not None:
        curve = parse_poly(args.curve, args.level, config.p)
    else:
        with open(args.curve_file, encoding="utf-8") as fh:
            _, polys = parse_generator_file(fh.read(), config.p)
        if len(polys) != 1:
            raise ParseError("curve file must contain exactly one form")
        curve = polys[0]
    point = parse_point(args.point, args.level, config.p)
    report = inv.full_report(
        curve, point, trunc=config.trunc, span_degree=config.span_degree
    )
    payload = report.to_dict()
    lines = [
        f"point: {point}",
        f"degree_of_point: {report.degree_of_point}",
        f"delta: {report.delta}",
        f"conductor: {report.conductor}",
        f"d_levels: {list(report.d_levels)}",
        f"semigroup values: {list(report.semigroup.values)}",
        f"minimal generators: {list(report.semigroup.minimal_generators)}",
        f"regularity: {report.regularity}",
    ] + [f"check {name}: {'pass' if ok else 'FAIL'}" for name, ok in report.checks.items()]
    _emit(config, payload, lines)
    return EXIT_OK if report.all_checks_pass else EXIT_FINDING


def _member_from_args(tag, t1_text, t2_text, a_text, p):
    t1 = parse_scalar(t1_text, 1, p)
    t2 = parse_scalar(t2_text, 1, p)
    a = parse_scalar(a_text, 0, p)
    return fam.make(tag, t1, t2, a)


def cmd_family(args, config):
    member = _member_from_args(args.tag, args.t1, args.t2, args.a, config.p)
    eq = fam.equation(member)
    pts = fam.singular_points(member)
    payload = member.to_dict()
    payload["equation"] = str(eq)
    payload["singular_points"] = [str(pt) for pt in pts]
    lines = [
        f"family: {member.tag}",
        f"t1: {member.t1}",
        f"t2: {member.t2}",
        f"a: {member.a}",
        f"A, B, C: {member.abc[0]}, {member.abc[1]}, {member.abc[2]}",
        f"equation: {eq}",
        f"singular points: {pts[0]} {pts[1]}",
    ]
    _emit(config, payload, lines)
    return EXIT_OK


def _load_member(path, p):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        return _member_from_args(
            data["family"], data["t1"], data["t2"], data["a"], p
        )
    except KeyError as exc:
        raise ParseError(f"member file {path} lacks field {exc}") from exc


def cmd_equiv(args, config):
    m1 = _load_member(args.member_a, config.p)
    m2 = _load_member(args.member_b, config.p)
    status, witness = fam.are_equivalent(m1, m2)
    if status == fam.EQUIVALENT:
        payload = {
            "status": status,
            "parameters": {k: str(v) for k, v in witness.params.items()},
            "map": [[str(c) for c in row] for row in witness.map.matrix],
            "scalar": str(witness.scalar),
        }
        lines = [
            "equivalent",
            "parameters: "
            + ", ".join(f"{k}={v}" for k, v in payload["parameters"].items()),
            "map rows: " + "; ".join(",".join(row) for row in payload["map"]),
        ]
        _emit(config, payload, lines)
        return EXIT_OK
    text = "different family" if status == fam.DIFFERENT_FAMILY else "not equivalent"
    _emit(config, {"status": status}, [text])
    return EXIT_NEGATIVE


def cmd_descend(args, config):
    with open(args.ideal_file, encoding="utf-8") as fh:
        level, polys = parse_generator_file(fh.read(), config.p)
    if not polys:
        raise ParseError("ideal file contains no generators")
    ideal = dsc.IdealPresentation(tuple(polys), level, config.p)
    if args.direction == "check":
        ok = dsc.is_invariant(ideal)
        _emit(config, {"invariant": ok}, ["true" if ok else "false"])
        return EXIT_OK if ok else EXIT_NEGATIVE
    if args.direction == "descend":
        down = dsc.descend(ideal)
        gens = [str(g) for g in down.generators]
        _emit(
            config,
            {"level": down.level, "generators": gens},
            [f"level {down.level}"] + gens,
        )
        return EXIT_OK
    up = dsc.extend(ideal)
    gens = [str(g) for g in up.generators]
    _emit(
        config,
        {"level": up.level, "generators": gens},
        [f"level {up.level}"] + gens,
    )
    return EXIT_OK


def cmd_verify(args, config):
    rng = random.Random(config.seed)
    results = []
    failures = 0
    check_counts = {}
    for k in range(args.samples):
        member = sample_member(args.family, rng, config.p)
        ver = fam.verify_member(
            member, trunc=config.trunc, span_degree=config.span_degree
        )
        for name, ok in ver.checks.items():
            check_counts.setdefault(name, 0)
            check_counts[name] += 1 if ok else 0
        if not ver.passed:
            failures += 1
        results.append(
            {
                "index": k,
                "member": member.to_dict(),
                "passed": ver.passed,
                "genus": ver.genus,
                "checks": dict(ver.checks),
            }
        )
    payload = {
        "family": args.family,
        "samples": args.samples,
        "seed": config.seed,
        "results": results,
        "summary": {
            "passed": args.samples - failures,
            "failed": failures,
            "check_counts": check_counts,
        },
    }
    lines = [f"family {args.family}: {args.samples - failures}/{args.samples} pass"]
    for name in sorted(check_counts):
        lines.append(f"  {name}: {check_counts[name]}/{args.samples}")
    _emit(config, payload, lines)
    return EXIT_OK if failures == 0 else EXIT_FINDING


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        config = _config_from_args(args)
        handler = {
            "invariants": cmd_invariants,
            "family": cmd_family,
            "equiv": cmd_equiv,
            "descend": cmd_descend,
            "verify": cmd_verify,
        }[args.command]
        return handler(args, config)
    except (
        ParseError,
        InvalidParameters,
        PointNotOnCurve,
        LevelOverflow,
        FileNotFoundError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotInvariant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except NSCurveError as exc:
        print(f"finding: {exc}", file=sys.stderr)
        return EXIT_FINDING


if __name__ == "__main__":
    sys.exit(main())
