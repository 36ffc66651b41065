"""Renderings: JSON, Graphviz DOT, and ASCII plane grids.

JSON output is stable and round-trips through the standard parser; DOT
output draws the differential as a digraph with U-power edge labels;
the ASCII grid prints generator multiplicities per plane position, which
reproduces the dot-and-box diagrams of the source figures.
"""

from __future__ import annotations

import json

from . import upoly as up
from .complexes import FilteredComplex, Generator, SubquotientComplex
from .homology import GradedModule


def complex_to_json(c: FilteredComplex) -> dict:
    return {
        "generators": [
            {"label": g.label, "maslov": g.maslov, "i": g.i, "j": g.j}
            for g in c.gens
        ],
        "differential": [
            {
                "source": c.gens[s].label,
                "target": c.gens[t].label,
                "upowers": up.lterms(coeff),
            }
            for (t, s), coeff in sorted(c.diff.items())
            if coeff[1]
        ],
    }


def complex_from_json(d: dict) -> FilteredComplex:
    gens = [
        Generator(g["label"], g["maslov"], g["i"], g["j"]) for g in d["generators"]
    ]
    c = FilteredComplex(gens)
    for e in d["differential"]:
        coeff = up.lzero()
        for a in e["upowers"]:
            coeff = up.ladd(coeff, up.lmono(a))
        c.diff[(c.index(e["target"]), c.index(e["source"]))] = coeff
    return c


def module_to_json(h: GradedModule) -> dict:
    return {
        "free": [{"grading": g} for g, _rep in h.free],
        "torsion": [
            {"grading": g, "order": k} for g, k, _rep in h.torsion
        ],
    }


def subquotient_to_json(sq: SubquotientComplex) -> dict:
    labels = sq.labels()
    return {
        "region": sq.region,
        "generators": [
            {"label": lab, "maslov": m} for lab, m in zip(labels, sq.maslov)
        ],
        "differential": [
            {"source": labels[s], "target": labels[t], "upowers": up.lterms(up.lfrompoly(p))}
            for (t, s), p in sorted(sq.diff.items())
            if p
        ],
    }


def _edge_label(exponents: list[int]) -> str:
    return " + ".join("U^%d" % a if a != 1 else "U" for a in exponents if a) or ""


def render_dot(c: FilteredComplex, name: str = "complex") -> str:
    lines = ["digraph %s {" % name, "  rankdir=LR;", "  node [shape=circle];"]
    for g in c.gens:
        lines.append(
            '  "%s" [label="%s\\n(%d,%d) M=%d"];' % (g.label, g.label, g.i, g.j, g.maslov)
        )
    for (t, s), coeff in sorted(c.diff.items()):
        if not coeff[1]:
            continue
        label = _edge_label(up.lterms(coeff))
        attr = ' [label="%s"]' % label if label else ""
        lines.append('  "%s" -> "%s"%s;' % (c.gens[s].label, c.gens[t].label, attr))
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_ascii(c: FilteredComplex) -> str:
    """Plane grid of generator counts, j increasing upward."""
    counts: dict[tuple[int, int], int] = {}
    for g in c.gens:
        counts[(g.i, g.j)] = counts.get((g.i, g.j), 0) + 1
    imin = min(g.i for g in c.gens)
    imax = max(g.i for g in c.gens)
    jmin = min(g.j for g in c.gens)
    jmax = max(g.j for g in c.gens)
    width = max(len(str(i)) for i in range(imin, imax + 1))
    width = max(width, max(len(str(n)) for n in counts.values()), 1) + 1
    lines = []
    for j in range(jmax, jmin - 1, -1):
        row = ["%4d |" % j]
        for i in range(imin, imax + 1):
            n = counts.get((i, j), 0)
            row.append((str(n) if n else ".").rjust(width))
        lines.append("".join(row))
    lines.append("     +" + "-" * ((imax - imin + 1) * width))
    lines.append("      " + "".join(str(i).rjust(width) for i in range(imin, imax + 1)))
    return "\n".join(lines) + "\n"


def generator_table(c: FilteredComplex) -> str:
    lines = ["%-12s %7s %5s %5s" % ("label", "maslov", "i", "j")]
    for g in c.gens:
        lines.append("%-12s %7d %5d %5d" % (g.label, g.maslov, g.i, g.j))
    return "\n".join(lines) + "\n"


def module_table(h: GradedModule, name: str) -> str:
    parts = ["F[U] at grading %d" % g for g, _ in h.free]
    parts += ["F[U]/U^%d at grading %d" % (k, g) for g, k, _ in h.torsion]
    body = "\n".join("  " + p for p in parts) or "  0"
    return "%s =\n%s\n" % (name, body)


def report_table(report: dict) -> str:
    """Human-readable rendering of the invariant report dict."""
    head = "P(-2,%d,%d)%s" % (
        report["m"], report["n"], " mirror" if report["mirrored"] else ""
    )
    lines = [
        head,
        "  family %s, staircase steps %d, n(K) = %d" % (
            report["family"], report["v"], report["nK"]
        ),
        "  boxes: %s" % (
            ", ".join(
                "%+d: %d" % (b["diagonal"], b["count"]) for b in report["boxes"]
            ) or "none"
        ),
        "  V0 = %d, lower V0 = %d, upper V0 = %d" % (
            report["V0"], report["V0_lower"], report["V0_upper"]
        ),
    ]
    for check, ok in report["checks"].items():
        lines.append("  %-16s %s" % (check, "MATCH" if ok else "MISMATCH"))
    return "\n".join(lines) + "\n"


def to_json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
