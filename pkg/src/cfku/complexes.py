"""(Z + Z)-filtered, Z-graded chain complexes over F2[U, U^-1].

A complex is a finite list of generators, each anchored at the plane
position (i, j) of its U^0 representative, together with a differential
matrix whose entries are powers of U.  The U-action translates a
generator down the diagonal, so a finite basis presents the whole
infinitely generated complex.

Conventions used throughout:

  * U has Maslov degree -2 and drops the plane position by (1, 1).
  * A differential entry U^a from x to y must satisfy the grading law
    M(y) - 2a = M(x) - 1 and the filtration law
    (i_y - a, j_y - a) <= (i_x, j_x) componentwise.
  * Staircase generators are z0, z_r^1 (upper-left path) and z_r^2
    (its transpose); step r joins z_{r-1} to z_r and the constructor
    takes the step lengths of the top half listed from z_v inward.
  * Maslov gradings of staircases are normalized so the tower of
    H(B0-) = H(C{i<=0}) sits in grading 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import upoly as up


@dataclass(frozen=True)
class Generator:
    label: str
    maslov: int
    i: int
    j: int

    @property
    def plane(self) -> tuple[int, int]:
        return (self.i, self.j)


@dataclass
class FilteredComplex:
    gens: list[Generator]
    # diff[(t, s)] = Laurent coefficient of gens[t] in the boundary of gens[s]
    diff: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def index(self, label: str) -> int:
        for k, g in enumerate(self.gens):
            if g.label == label:
                return k
        raise KeyError(label)

    def entry(self, target: str, source: str) -> tuple[int, int]:
        return self.diff.get((self.index(target), self.index(source)), up.lzero())

    def boundary_of(self, label: str) -> dict[str, tuple[int, int]]:
        s = self.index(label)
        return {
            self.gens[t].label: coeff
            for (t, ss), coeff in sorted(self.diff.items())
            if ss == s and coeff[1]
        }


@dataclass
class ChainMap:
    source: FilteredComplex
    target: FilteredComplex
    matrix: dict[tuple[int, int], tuple[int, int]]
    filtration_kind: str  # "filtered" or "skew-filtered"
    maslov_shift: int = 0


@dataclass
class SubquotientComplex:
    """F2[U]-complex spanned by the minimal U-translates inside a region.

    basis[k] = (generator index in parent, U-power k0 of the translate);
    maslov[k] is the grading of U^k0 x; diff entries are F2[U] monomials.
    """

    parent: FilteredComplex
    region: str
    basis: list[tuple[int, int]]
    maslov: list[int]
    diff: dict[tuple[int, int], int]

    def labels(self) -> list[str]:
        out = []
        for g, k0 in self.basis:
            label = self.parent.gens[g].label
            if k0 > 0:
                label = "U^%d %s" % (k0, label) if k0 > 1 else "U %s" % label
            elif k0 < 0:
                label = "U^%d %s" % (k0, label)
            out.append(label)
        return out

    def matrix(self) -> list[list[int]]:
        n = len(self.basis)
        m = up.mat_zero(n, n)
        for (t, s), p in self.diff.items():
            m[t][s] = p
        return m


# ---------------------------------------------------------------------------
# Validation


def _compose(
    a: dict[tuple[int, int], tuple[int, int]],
    b: dict[tuple[int, int], tuple[int, int]],
) -> dict[tuple[int, int], tuple[int, int]]:
    """Sparse product a after b of Laurent matrices."""
    by_source: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    for (t, s), coeff in a.items():
        by_source.setdefault(s, []).append((t, coeff))
    out: dict[tuple[int, int], tuple[int, int]] = {}
    for (mid, s), coeff in b.items():
        for t, c2 in by_source.get(mid, ()):
            key = (t, s)
            out[key] = up.ladd(out.get(key, up.lzero()), up.lmul(c2, coeff))
    return {k: v for k, v in out.items() if v[1]}


def map_add(
    a: dict[tuple[int, int], tuple[int, int]],
    b: dict[tuple[int, int], tuple[int, int]],
) -> dict[tuple[int, int], tuple[int, int]]:
    out = dict(a)
    for k, v in b.items():
        out[k] = up.ladd(out.get(k, up.lzero()), v)
    return {k: v for k, v in out.items() if v[1]}


def validate(c: FilteredComplex) -> list[str]:
    """All violated structural invariants; empty list means ok."""
    problems = []
    labels = [g.label for g in c.gens]
    if len(set(labels)) != len(labels):
        problems.append("duplicate generator labels")
    for (t, s), coeff in c.diff.items():
        if not coeff[1]:
            continue
        gs, gt = c.gens[s], c.gens[t]
        for a in up.lterms(coeff):
            if gt.maslov - 2 * a != gs.maslov - 1:
                problems.append(
                    "grading law broken on U^%d %s in d(%s)" % (a, gt.label, gs.label)
                )
            if not (gt.i - a <= gs.i and gt.j - a <= gs.j):
                problems.append(
                    "filtration law broken on U^%d %s in d(%s)"
                    % (a, gt.label, gs.label)
                )
    for (t, s), coeff in _compose(c.diff, c.diff).items():
        problems.append(
            "d^2 != 0: d^2(%s) contains %s" % (c.gens[s].label, c.gens[t].label)
        )
    return problems


def validate_chain_map(f: ChainMap) -> list[str]:
    problems = []
    fd = _compose(f.matrix, f.source.diff)
    df = _compose(f.target.diff, f.matrix)
    if fd != df:
        problems.append("does not commute with the differentials")
    for (t, s), coeff in f.matrix.items():
        if not coeff[1]:
            continue
        gs = f.source.gens[s]
        gt = f.target.gens[t]
        for a in up.lterms(coeff):
            if gt.maslov - 2 * a != gs.maslov + f.maslov_shift:
                problems.append(
                    "Maslov shift broken on U^%d %s in f(%s)" % (a, gt.label, gs.label)
                )
            si, sj = (gs.i, gs.j) if f.filtration_kind == "filtered" else (gs.j, gs.i)
            if not (gt.i - a <= si and gt.j - a <= sj):
                problems.append(
                    "%s law broken on U^%d %s in f(%s)"
                    % (f.filtration_kind, a, gt.label, gs.label)
                )
    return problems


# ---------------------------------------------------------------------------
# Constructors


def build_staircase(
    sign: str, step_lengths: tuple[int, ...], prefix: str = "z"
) -> FilteredComplex:
    """Staircase with the given top-half step lengths, z_v first.

    sign "positive" gives the L-space-knot shape (z0 a source for odd v);
    "negative" the mirrored shape.  Gradings are normalized so that the
    tower of H(B0-) sits in grading 0.
    """
    if sign not in ("positive", "negative"):
        raise ValueError("sign must be positive or negative")
    if not step_lengths:
        raise ValueError("step list must be nonempty")
    if any(l <= 0 for l in step_lengths):
        raise ValueError("step lengths must be positive")
    v = len(step_lengths)
    lengths = {r: step_lengths[v - r] for r in range(1, v + 1)}  # l_r, r from z0 out

    def is_source(r: int) -> bool:
        if sign == "negative":
            return r % 2 == v % 2
        return r % 2 != v % 2

    def step_is_vertical(r: int) -> bool:
        # direction of step r on the upper-left path
        if sign == "negative":
            return r % 2 == v % 2
        return r % 2 != v % 2

    # walk the upper-left path; side 2 is the transpose
    pos1 = {0: (0, 0)}
    for r in range(1, v + 1):
        i, j = pos1[r - 1]
        if step_is_vertical(r):
            pos1[r] = (i, j + lengths[r])
        else:
            pos1[r] = (i - lengths[r], j)

    gens = []
    index = {}

    def add(label, m, i, j):
        index[label] = len(gens)
        gens.append(Generator(label, m, i, j))

    m0 = 0 if is_source(0) else -1
    add("%s0" % prefix, m0, 0, 0)
    for r in range(1, v + 1):
        m = 0 if is_source(r) else -1
        i, j = pos1[r]
        add("%s%d_1" % (prefix, r), m, i, j)
        add("%s%d_2" % (prefix, r), m, j, i)

    diff: dict[tuple[int, int], tuple[int, int]] = {}

    def arrow(src, tgt):
        diff[(index[tgt], index[src])] = up.lmono(0)

    for r in range(0, v + 1):
        if not is_source(r):
            continue
        if r == 0:
            arrow("%s0" % prefix, "%s1_1" % prefix)
            arrow("%s0" % prefix, "%s1_2" % prefix)
            continue
        for side in (1, 2):
            src = "%s%d_%d" % (prefix, r, side)
            below = "%s0" % prefix if r == 1 else "%s%d_%d" % (prefix, r - 1, side)
            arrow(src, below)
            if r < v:
                arrow(src, "%s%d_%d" % (prefix, r + 1, side))

    c = FilteredComplex(gens, diff)
    shift_maslov(c, -b0_tower_grading(c))
    return c


def staircase_n_of_k(step_lengths: tuple[int, ...]) -> int:
    """Total vertical-arrow length in the top half of a negative staircase
    with these steps (equals the alternating sum of the Alexander jumps)."""
    v = len(step_lengths)
    return sum(l for r, l in enumerate(reversed(step_lengths), start=1) if r % 2 == v % 2)


def shift_maslov(c: FilteredComplex, shift: int) -> None:
    for k, g in enumerate(c.gens):
        c.gens[k] = Generator(g.label, g.maslov + shift, g.i, g.j)


def b0_tower_grading(c: FilteredComplex) -> int:
    """Grading of the free-summand generator of H(B0-)."""
    from .homology import homology_over_U

    h = homology_over_U(subquotient(c, "B0minus"))
    if len(h.free) != 1:
        raise ValueError("B0- homology free rank is %d, not 1" % len(h.free))
    return h.free[0][0]


def build_box(
    diagonal_corner: tuple[int, int], a_maslov: int | None = None, suffix: str = ""
) -> FilteredComplex:
    """Acyclic one-by-one box with inner corner at the given position.

    Generators a, b, c and the corner generator ue (the U-translate the
    figures label Ue sits one diagonal step further in).  Differentials
    da = b + c, db = dc = ue.  Default grading puts a at i + j + 2.
    """
    i, j = diagonal_corner
    ma = i + j + 2 if a_maslov is None else a_maslov
    gens = [
        Generator("a" + suffix, ma, i + 1, j + 1),
        Generator("b" + suffix, ma - 1, i, j + 1),
        Generator("c" + suffix, ma - 1, i + 1, j),
        Generator("ue" + suffix, ma - 2, i, j),
    ]
    diff = {
        (1, 0): up.lmono(0),
        (2, 0): up.lmono(0),
        (3, 1): up.lmono(0),
        (3, 2): up.lmono(0),
    }
    return FilteredComplex(gens, diff)


def build_lspace_staircase(ws: tuple[int, ...]) -> tuple[FilteredComplex, int]:
    """Positive staircase of the L-space knot with Alexander jumps at ws."""
    if not ws or any(a <= 0 for a in ws) or any(
        b <= a for a, b in zip(ws, ws[1:])
    ):
        raise ValueError("need 0 < w_1 < ... < w_v")
    steps_from_z0 = [w - prev for prev, w in zip((0,) + ws, ws)]
    steps = tuple(reversed(steps_from_z0))
    c = build_staircase("positive", steps)
    n_of_k = sum(w * (-1) ** (len(ws) - 1 - k) for k, w in enumerate(ws))
    assert n_of_k == staircase_n_of_k(steps)
    return c, n_of_k


def dualize(c: FilteredComplex) -> FilteredComplex:
    """Mirror complex: gradings and positions negate, arrows transpose."""
    problems = validate(c)
    if problems:
        raise ValueError("cannot dualize invalid complex: %s" % problems)
    gens = [Generator(g.label, -g.maslov, -g.i, -g.j) for g in c.gens]
    diff = {(s, t): coeff for (t, s), coeff in c.diff.items()}
    return FilteredComplex(gens, diff)


def direct_sum(cs: list[FilteredComplex]) -> FilteredComplex:
    gens = []
    diff = {}
    offset = 0
    for c in cs:
        gens.extend(c.gens)
        for (t, s), coeff in c.diff.items():
            diff[(t + offset, s + offset)] = coeff
        offset += len(c.gens)
    out = FilteredComplex(gens, diff)
    if len({g.label for g in gens}) != len(gens):
        raise ValueError("direct_sum label collision; use distinct suffixes")
    return out


# ---------------------------------------------------------------------------
# Subquotients


def subquotient(c: FilteredComplex, region: str, w: int | None = None) -> SubquotientComplex:
    """The F2[U]-complex of a plane region.

    A0minus: C{i<=0, j<=0}; B0minus: C{i<=0}; i_equals_0: the quotient
    complex C{i<=0}/C{i<0}; i0_j_w: its direct summand on the diagonal
    j - i = w.  The basis element for generator x is U^k0 x with the
    minimal translate meeting the region; k0 may be negative.
    """
    if region not in ("A0minus", "B0minus", "i_equals_0", "i0_j_w"):
        raise ValueError("unknown region %r" % region)
    if region == "i0_j_w" and w is None:
        raise ValueError("region i0_j_w needs the diagonal w")
    problems = validate(c)
    if problems:
        raise ValueError("cannot take subquotient of invalid complex: %s" % problems)

    basis = []
    slot = {}
    for k, g in enumerate(c.gens):
        if region == "A0minus":
            k0 = max(g.i, g.j)
        else:
            k0 = g.i
        if region == "i0_j_w" and g.j - g.i != w:
            continue
        slot[k] = len(basis)
        basis.append((k, k0))

    diff: dict[tuple[int, int], int] = {}
    for (t, s), coeff in c.diff.items():
        if s not in slot or t not in slot:
            continue
        k0s = basis[slot[s]][1]
        k0t = basis[slot[t]][1]
        for a in up.lterms(coeff):
            e = k0s + a - k0t
            if region in ("A0minus", "B0minus"):
                if e < 0:
                    raise ValueError(
                        "negative U-power in %s differential: %s -> %s"
                        % (region, c.gens[s].label, c.gens[t].label)
                    )
            elif e != 0:
                # target leaves the i = 0 slice: quotiented away
                continue
            key = (slot[t], slot[s])
            diff[key] = diff.get(key, 0) ^ up.mono(e)
    diff = {k: p for k, p in diff.items() if p}
    maslov = [c.gens[k].maslov - 2 * k0 for k, k0 in basis]
    return SubquotientComplex(c, region, basis, maslov, diff)


# ---------------------------------------------------------------------------
# Directional components, Phi/Psi and the Sarkar map


def _components(c: FilteredComplex, keep) -> dict[tuple[int, int], tuple[int, int]]:
    out: dict[tuple[int, int], tuple[int, int]] = {}
    for (t, s), coeff in c.diff.items():
        gs, gt = c.gens[s], c.gens[t]
        kept = up.lzero()
        for a in up.lterms(coeff):
            idrop = gs.i - (gt.i - a)
            jdrop = gs.j - (gt.j - a)
            if keep(idrop, jdrop):
                kept = up.ladd(kept, up.lmono(a))
        if kept[1]:
            out[(t, s)] = kept
    return out


def directional_diff(c: FilteredComplex, direction: str) -> ChainMap:
    if direction == "vertical":
        keep = lambda idrop, jdrop: idrop == 0
    elif direction == "horizontal":
        keep = lambda idrop, jdrop: jdrop == 0
    else:
        raise ValueError("direction must be vertical or horizontal")
    return ChainMap(c, c, _components(c, keep), "filtered", maslov_shift=-1)


def phi_psi(c: FilteredComplex) -> tuple[ChainMap, ChainMap]:
    phi = _components(c, lambda idrop, jdrop: idrop % 2 == 1)
    psi = _components(c, lambda idrop, jdrop: jdrop % 2 == 1)
    return (
        ChainMap(c, c, phi, "filtered", maslov_shift=-1),
        ChainMap(c, c, psi, "filtered", maslov_shift=-1),
    )


def sarkar(c: FilteredComplex) -> ChainMap:
    """The map Id + U^-1 Phi Psi; a filtered chain map of shift 0."""
    phi, psi = phi_psi(c)
    composite = _compose(phi.matrix, psi.matrix)
    matrix = {(k, k): up.lmono(0) for k in range(len(c.gens))}
    for key, coeff in composite.items():
        matrix[key] = up.ladd(matrix.get(key, up.lzero()), up.lshift(coeff, -1))
    matrix = {k: v for k, v in matrix.items() if v[1]}
    return ChainMap(c, c, matrix, "filtered", maslov_shift=0)


# ---------------------------------------------------------------------------
# Worked examples


def unknot_complex() -> FilteredComplex:
    return FilteredComplex([Generator("u", 0, 0, 0)], {})


def right_trefoil_complex() -> FilteredComplex:
    """Figure-1 staircase: da = b + c, with a = z0 relabeled."""
    c = build_staircase("positive", (1,))
    relabel(c, {"z0": "a", "z1_1": "b", "z1_2": "c"})
    return c


def left_trefoil_complex() -> FilteredComplex:
    """Negative staircase with db = dc = a."""
    c = build_staircase("negative", (1,))
    relabel(c, {"z0": "a", "z1_1": "b", "z1_2": "c"})
    return c


def figure_eight_complex() -> FilteredComplex:
    """One box at corner (-1,-1) plus a lone generator x at the origin."""
    box = build_box((-1, -1), a_maslov=0)
    x = FilteredComplex([Generator("x", 0, 0, 0)], {})
    return direct_sum([box, x])


def relabel(c: FilteredComplex, mapping: dict[str, str]) -> None:
    for k, g in enumerate(c.gens):
        if g.label in mapping:
            c.gens[k] = Generator(mapping[g.label], g.maslov, g.i, g.j)
