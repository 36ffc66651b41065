"""Involutions: constructions, fault injection, and tiny-scale uniqueness.

Every builder must pass the validator; the fault-injection tests confirm
the validator actually catches the failure modes it claims to.  The slow
test enumerates the full space of skew-filtered chain maps squaring to
the Sarkar map on the smallest coupled staircase-plus-box complex and
checks they form a single orbit under filtered changes of basis.
"""

import pytest

from cfku import upoly as up
from cfku.complexes import (
    ChainMap,
    _compose,
    build_box,
    build_staircase,
    direct_sum,
    dualize,
    figure_eight_complex,
    left_trefoil_complex,
    relabel,
    right_trefoil_complex,
    sarkar,
)
from cfku.involution import (
    Involution,
    dual_involution,
    figure_eight_involution,
    identity_involution,
    involution_from_rules,
    model_involution,
    square_pair_rules,
    standard_square_pair_map,
    standard_staircase_involution,
    validate_involution,
)


def trefoil_staircase(left=False):
    c = left_trefoil_complex() if left else right_trefoil_complex()
    relabel(c, {"a": "z0", "b": "z1_1", "c": "z1_2"})
    return c


def tiny_c1():
    """Smallest coupled model: three-step-free staircase with one box."""
    stair = build_staircase("negative", (1, 1))
    box = build_box((-1, -1), a_maslov=stair.gens[0].maslov)
    return direct_sum([stair, box])


def c1_model(nk):
    stair = build_staircase("negative", (1, 2) + (1,) * (2 * nk - 2))
    box = build_box((-1, -1), a_maslov=stair.gens[0].maslov)
    return direct_sum([stair, box])


def test_trefoil_involutions():
    for left in (False, True):
        c = trefoil_staircase(left)
        iota = standard_staircase_involution(c)
        assert validate_involution(iota) == []
        assert iota.map.matrix[(c.index("z1_2"), c.index("z1_1"))] == up.lmono(0)
        assert iota.map.matrix[(c.index("z0"), c.index("z0"))] == up.lmono(0)


def test_staircase_involution_rejects_non_staircase():
    with pytest.raises(ValueError):
        standard_staircase_involution(figure_eight_complex())


def test_square_pair_main_diagonal():
    pair = direct_sum([build_box((0, 0), suffix="1"), build_box((0, 0), suffix="2")])
    iota = standard_square_pair_map(pair, "1", "2")
    assert validate_involution(iota) == []


def test_square_pair_off_diagonal():
    pair = direct_sum([build_box((0, 2), suffix="1"), build_box((2, 0), suffix="2")])
    iota = standard_square_pair_map(pair, "1", "2")
    assert validate_involution(iota) == []


def test_square_pair_rejects_unmirrored():
    pair = direct_sum([build_box((0, 2), suffix="1"), build_box((1, 0), suffix="2")])
    with pytest.raises(ValueError):
        standard_square_pair_map(pair, "1", "2")


def test_square_pair_fault_injection():
    pair = direct_sum([build_box((0, 0), suffix="1"), build_box((0, 0), suffix="2")])
    rules = square_pair_rules(pair, "1", "2")
    rules["b1"] = [("b2", 0)]  # should be c2
    with pytest.raises(ValueError, match="commute|iota"):
        involution_from_rules(pair, rules)


def test_c1_squares_to_sarkar():
    c = c1_model(2)
    iota = model_involution("C1", c)
    sigma = sarkar(c)
    a = c.index("a")
    ue = c.index("ue")
    # sigma(a) = a + U^-1 ue, reproduced by composing iota with itself
    sq = _compose(iota.map.matrix, iota.map.matrix)
    assert sq[(ue, a)] == up.lmono(-1)
    assert sq == sigma.matrix


def test_c1_dropped_term_fails():
    c = c1_model(2)
    iota = model_involution("C1", c)
    broken = dict(iota.map.matrix)
    del broken[(c.index("z0"), c.index("a"))]  # drop the +z0 coupling term
    bad = Involution(
        ChainMap(c, c, broken, "skew-filtered", 0), sarkar(c)
    )
    assert any("iota^2" in p or "commute" in p for p in validate_involution(bad))


def test_c1_identity_on_box_fails_skew():
    c = c1_model(2)
    rules = {g.label: [(g.label, 0)] for g in c.gens}
    bad = Involution(
        ChainMap(
            c, c,
            {(c.index(t), c.index(s)): up.lmono(e) for s, tgts in rules.items() for t, e in tgts},
            "skew-filtered", 0,
        ),
        sarkar(c),
    )
    problems = validate_involution(bad)
    assert any("transposed slot" in p or "skew" in p for p in problems)


def test_model_involutions_all_families():
    cases = {
        "C1": c1_model(2),
        "C2": build_staircase("negative", (1, 2, 1)),
        "C3": build_staircase("negative", (1, 2)),
        "C4": build_staircase("negative", (1, 2, 1, 1, 1)),
    }
    for name, c in cases.items():
        assert validate_involution(model_involution(name, c)) == []
        d = dualize(c)
        assert validate_involution(model_involution("dual" + name, d)) == []
    with pytest.raises(ValueError):
        model_involution("C9", cases["C2"])


def test_dual_c1_formulas():
    c = c1_model(2)
    iota = model_involution("C1", c)
    d = dualize(c)
    di = dual_involution(iota, d)
    assert validate_involution(di) == []
    # the dual of iota(c) = b + z1_1 sends z1_1 to z1_2 plus a c term
    img = {
        d.gens[t].label: coeff
        for (t, s), coeff in di.map.matrix.items()
        if s == d.index("z1_1")
    }
    assert set(img) == {"z1_2", "c"}


def test_figure_eight_involution():
    c = figure_eight_complex()
    iota = figure_eight_involution(c)
    assert validate_involution(iota) == []
    sq = _compose(iota.map.matrix, iota.map.matrix)
    assert sq[(c.index("ue"), c.index("a"))] == up.lmono(-1)


def test_identity_involution_unknot():
    from cfku.complexes import unknot_complex

    c = unknot_complex()
    assert validate_involution(identity_involution(c)) == []


def test_missing_rule_rejected():
    c = trefoil_staircase()
    with pytest.raises(ValueError, match="no involution rule"):
        involution_from_rules(c, {"z0": [("z0", 0)]})


# ---------------------------------------------------------------------------
# Exhaustive uniqueness at the smallest coupled complex (slow tier)


def _allowed_entries(c, kind):
    out = []
    for s, gs in enumerate(c.gens):
        si, sj = (gs.i, gs.j) if kind == "filtered" else (gs.j, gs.i)
        for t, gt in enumerate(c.gens):
            diff = gt.maslov - gs.maslov
            if diff % 2:
                continue
            a = diff // 2
            if gt.i - a <= si and gt.j - a <= sj:
                out.append((t, s, a))
    return out


def _chain_map_space(c, kind):
    """Basis of the F2-space of grading-0 chain maps of the given kind.

    Returns (variables, basis masks); each mask selects variables and the
    matrix of a span element is the xor of its selected entries.
    """
    variables = _allowed_entries(c, kind)
    vidx = {v: k for k, v in enumerate(variables)}
    eqs: dict[tuple[int, int, int], int] = {}
    for (t, s, a) in variables:
        bit = 1 << vidx[(t, s, a)]
        for (t2, tt), coeff in c.diff.items():
            if tt == t:  # d after f
                for e in up.lterms(coeff):
                    key = (t2, s, a + e)
                    eqs[key] = eqs.get(key, 0) ^ bit
        for (mid, s2), coeff in c.diff.items():
            if mid == s:  # f after d
                for e in up.lterms(coeff):
                    key = (t, s2, a + e)
                    eqs[key] = eqs.get(key, 0) ^ bit
    pivots: dict[int, int] = {}
    for row in eqs.values():
        while row:
            low = row & -row
            if low in pivots:
                row ^= pivots[low]
            else:
                pivots[low] = row
                break
    # Gauss-Jordan: clear each pivot bit from every other row, ascending
    for low in sorted(pivots):
        row = pivots[low]
        for low2, row2 in pivots.items():
            if low2 != low and row2 & low:
                pivots[low2] = row2 ^ row
    nv = len(variables)
    basis = []
    for k in range(nv):
        free_bit = 1 << k
        if free_bit in pivots:
            continue
        vec = free_bit
        for low, row in pivots.items():
            if row & free_bit:
                vec |= low
        basis.append(vec)
    return variables, basis


def _mask_to_matrix(variables, mask):
    out: dict[tuple[int, int], tuple[int, int]] = {}
    for k, (t, s, a) in enumerate(variables):
        if (mask >> k) & 1:
            out[(t, s)] = up.ladd(out.get((t, s), up.lzero()), up.lmono(a))
    return {k: v for k, v in out.items() if v[1]}


def _is_laurent_unimodular(matrix, n):
    shift = max((-min(up.lterms(v)) for v in matrix.values() if v[1]), default=0)
    m = up.mat_zero(n, n)
    for (t, s), coeff in matrix.items():
        m[t][s] = up.lto_poly(up.lshift(coeff, shift))
    snf = up.smith_normal_form(m)
    return snf.rank == n and all(up.is_mono(d) for d in snf.d)


@pytest.mark.slow
def test_c1_involution_unique_up_to_basis_change():
    c = tiny_c1()
    iota = model_involution("C1", c)
    sigma = sarkar(c)

    skew_vars, skew_basis = _chain_map_space(c, "skew-filtered")
    assert len(skew_basis) <= 20
    for vec in skew_basis:  # nullspace sanity: basis elements commute with d
        f = _mask_to_matrix(skew_vars, vec)
        assert _compose(f, c.diff) == _compose(c.diff, f)
    candidates = []
    for mask in range(1 << len(skew_basis)):
        sel = 0
        for b, vec in enumerate(skew_basis):
            if (mask >> b) & 1:
                sel ^= vec
        f = _mask_to_matrix(skew_vars, sel)
        if _compose(f, f) == sigma.matrix:
            candidates.append(f)
    assert iota.map.matrix in candidates
    assert len(candidates) >= 1

    filt_vars, filt_basis = _chain_map_space(c, "filtered")
    assert len(filt_basis) <= 20
    autos = []
    for mask in range(1 << len(filt_basis)):
        sel = 0
        for b, vec in enumerate(filt_basis):
            if (mask >> b) & 1:
                sel ^= vec
        g = _mask_to_matrix(filt_vars, sel)
        if _is_laurent_unimodular(g, len(c.gens)):
            autos.append(g)
    # every valid involution is conjugate to the model one:
    # g iota = f g for some invertible filtered chain map g
    for f in candidates:
        assert any(
            _compose(g, iota.map.matrix) == _compose(f, g) for g in autos
        ), "involution not conjugate to the model map"
