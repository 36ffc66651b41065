"""Command-line frontend: compute, sweep, verify, render, export."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import render
from .complexes import (
    build_lspace_staircase,
    figure_eight_complex,
    left_trefoil_complex,
    relabel,
    right_trefoil_complex,
    subquotient,
    unknot_complex,
)
from .cone import build_cone, involutive_invariants
from .homology import hfk_hat
from .involution import (
    figure_eight_involution,
    identity_involution,
    standard_staircase_involution,
)
from .pretzel import (
    PretzelParams,
    full_complex,
    full_involution,
    model_complex,
    model_involution_for,
    report_dict,
    theorem_values,
)

log = logging.getLogger("cfku")

USAGE_ERROR = 2
MISMATCH_ERROR = 1


def _params_or_exit(parser: argparse.ArgumentParser, m: int, n: int) -> PretzelParams:
    try:
        return PretzelParams(m, n)
    except ValueError as e:
        parser.error(str(e))  # exits with code 2


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_invariants(parser, args) -> int:
    params = _params_or_exit(parser, args.m, args.n)
    report = report_dict(args.m, args.n, args.mirror, deep=not args.fast)
    expected = theorem_values(params, args.mirror)
    if args.format == "json":
        _emit(render.to_json_text(report), args.out)
    else:
        lines = [render.report_table(report).rstrip("\n")]
        lines.append(
            "  closed form: V0 = %d, lower V0 = %d, upper V0 = %d"
            % expected.triple
        )
        lines.append(
            "  verdict: %s"
            % ("MATCH" if all(report["checks"].values()) else "MISMATCH")
        )
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(report["checks"].values()) else MISMATCH_ERROR


def _verify_case(case: tuple[int, int, bool, bool]) -> dict:
    m, n, mirrored, deep = case
    return report_dict(m, n, mirrored, deep=deep)


def cmd_verify(parser, args) -> int:
    if args.m_max % 2 == 0 or args.m_max < 3:
        parser.error("--m-max must be odd and at least 3")
    cases = []
    for m in range(3, args.m_max + 1, 2):
        for n in range(3, m + 1, 2):
            # deep structural checks once per pair; theorem both chiralities
            cases.append((m, n, False, True))
            cases.append((m, n, True, False))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_case, cases))
    else:
        reports = [_verify_case(c) for c in cases]
    reports.sort(key=lambda r: (r["m"], r["n"], r["mirrored"]))
    failures = [r for r in reports if not all(r["checks"].values())]
    if args.format == "json":
        _emit(render.to_json_text({"reports": reports, "failures": len(failures)}), args.out)
    else:
        lines = []
        for r in reports:
            ok = all(r["checks"].values())
            lines.append(
                "P(-2,%2d,%2d)%s  (V0, lower, upper) = (%d, %d, %d)  %s"
                % (
                    r["m"], r["n"],
                    " mirror" if r["mirrored"] else "       ",
                    r["V0"], r["V0_lower"], r["V0_upper"],
                    "ok" if ok else "MISMATCH " + str(r["checks"]),
                )
            )
        lines.append(
            "%d cases, %d failures" % (len(reports), len(failures))
        )
        _emit("\n".join(lines) + "\n", args.out)
    return MISMATCH_ERROR if failures else 0


def cmd_hfk(parser, args) -> int:
    _params_or_exit(parser, args.m, args.n)
    table = hfk_hat(full_complex(PretzelParams(args.m, args.n)))
    if args.format == "json":
        data = [
            {"alexander": w, "maslov": k, "rank": r}
            for (w, k), r in sorted(table.items())
        ]
        _emit(render.to_json_text(data), args.out)
    else:
        lines = ["%9s %7s %5s" % ("alexander", "maslov", "rank")]
        for (w, k), r in sorted(table.items(), reverse=True):
            lines.append("%9d %7d %5d" % (w, k, r))
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_show(parser, args) -> int:
    params = _params_or_exit(parser, args.m, args.n)
    if args.which == "full":
        c = full_complex(params)
    else:
        c = model_complex(params)
    if args.which in ("full", "model"):
        if args.format == "json":
            _emit(render.to_json_text(render.complex_to_json(c)), args.out)
        elif args.format == "dot":
            _emit(render.render_dot(c, "P_2_%d_%d" % (args.m, args.n)), args.out)
        elif args.format == "ascii":
            _emit(render.render_ascii(c), args.out)
        else:
            _emit(render.generator_table(c), args.out)
        return 0
    iota = (
        full_involution(params, c)
        if args.which == "full"
        else model_involution_for(params, c)
    )
    if args.which == "A0":
        sq = subquotient(c, "A0minus")
        if args.format == "json":
            _emit(render.to_json_text(render.subquotient_to_json(sq)), args.out)
        else:
            lines = ["%-12s %7s" % ("label", "maslov")]
            for lab, mm in zip(sq.labels(), sq.maslov):
                lines.append("%-12s %7d" % (lab, mm))
            _emit("\n".join(lines) + "\n", args.out)
        return 0
    cone = build_cone(c, iota)
    if args.format == "json":
        data = {
            "generators": [
                {"label": lab, "maslov": mm}
                for lab, mm in zip(cone.labels, cone.maslov)
            ]
        }
        _emit(render.to_json_text(data), args.out)
    else:
        lines = ["%-16s %7s" % ("label", "maslov")]
        for lab, mm in zip(cone.labels, cone.maslov):
            lines.append("%-16s %7d" % (lab, mm))
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _example(name: str, ws: list[int]):
    if name == "trefoil":
        c = right_trefoil_complex()
        relabel(c, {"a": "z0", "b": "z1_1", "c": "z1_2"})
        return c, standard_staircase_involution(c)
    if name == "left-trefoil":
        c = left_trefoil_complex()
        relabel(c, {"a": "z0", "b": "z1_1", "c": "z1_2"})
        return c, standard_staircase_involution(c)
    if name == "figure-eight":
        c = figure_eight_complex()
        return c, figure_eight_involution(c)
    if name == "unknot":
        c = unknot_complex()
        return c, identity_involution(c)
    if name == "lspace":
        if not ws:
            raise ValueError("lspace needs the jump list, e.g. lspace 1 3")
        c, _nk = build_lspace_staircase(tuple(ws))
        return c, standard_staircase_involution(c)
    raise ValueError("unknown example %r" % name)


def cmd_examples(parser, args) -> int:
    try:
        c, iota = _example(args.name, args.jumps)
    except ValueError as e:
        parser.error(str(e))
    from . import upoly as up

    triple = involutive_invariants(c, iota)
    lines = [render.generator_table(c).rstrip("\n")]
    images: dict[int, list[str]] = {}
    for (t, s), coeff in sorted(iota.map.matrix.items()):
        for a in up.lterms(coeff):
            images.setdefault(s, []).append(
                ("U^%d " % a if a else "") + c.gens[t].label
            )
    for s in sorted(images):
        lines.append("iota(%s) = %s" % (c.gens[s].label, " + ".join(images[s])))
    lines.append("V0 = %d, lower V0 = %d, upper V0 = %d" % triple)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfku",
        description="Involutive concordance invariants of P(-2,m,n) pretzel knots",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_mn(p):
        p.add_argument("-m", type=int, required=True)
        p.add_argument("-n", type=int, required=True)

    def add_common(p, formats):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("invariants", help="compute and check one pair")
    add_mn(p)
    p.add_argument("--mirror", action="store_true")
    p.add_argument("--fast", action="store_true", help="skip the deep model checks")
    add_common(p, ["table", "json"])

    p = sub.add_parser("verify", help="sweep all pairs up to m-max")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    add_common(p, ["table", "json"])

    p = sub.add_parser("hfk", help="bigraded ranks of the full complex")
    add_mn(p)
    add_common(p, ["table", "json"])

    p = sub.add_parser("show", help="render a complex or subquotient")
    add_mn(p)
    p.add_argument("--which", choices=["full", "model", "A0", "cone"], default="full")
    add_common(p, ["table", "json", "dot", "ascii"])

    p = sub.add_parser("examples", help="worked small examples")
    p.add_argument("name")
    p.add_argument("jumps", nargs="*", type=int)
    add_common(p, ["table"])
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("CFK_LOG", "WARNING").upper())
    parser = build_parser()
    args = parser.parse_args(argv)
    log.info("command %s", args.command)
    handlers = {
        "invariants": cmd_invariants,
        "verify": cmd_verify,
        "hfk": cmd_hfk,
        "show": cmd_show,
        "examples": cmd_examples,
    }
    return handlers[args.command](parser, args)


if __name__ == "__main__":
    sys.exit(main())
