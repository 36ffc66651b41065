"""Graded homology over F2[U] and the classical knot outputs.

Small decompositions are checked against hand values; random staircases
exercise the representative and coordinate machinery (reps are cycles,
coordinates of a rep form a unit vector, torsion reps die at their
order).  The bigraded rank tables for the three small knots are the
standard published values.
"""

import pytest
from hypothesis import given, strategies as st

from cfku import upoly as up
from cfku.complexes import (
    build_staircase,
    figure_eight_complex,
    left_trefoil_complex,
    right_trefoil_complex,
    subquotient,
    unknot_complex,
)
from cfku.homology import (
    alexander_poly,
    genus_detect,
    graded_homology,
    hfk_hat,
    homology_over_U,
    induced_map,
    localized_rank,
    v0,
    vector_grading,
)

steps_strategy = st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=5).map(tuple)


def test_vector_grading():
    assert vector_grading([0, 0], [5, 7]) is None
    assert vector_grading([up.mono(1), 0], [2, 0]) == 0
    assert vector_grading([up.mono(1), up.mono(0)], [2, 0]) == 0
    with pytest.raises(ValueError):
        vector_grading([up.mono(1), up.mono(0)], [2, 1])


def test_homology_zero_differential():
    h = graded_homology([[0, 0], [0, 0]], [3, 8])
    assert sorted(g for g, _ in h.free) == [3, 8]
    assert h.torsion == []


def test_homology_single_torsion():
    # d(x) = U^2 y gives F[U]/U^2 on [y]
    h = graded_homology([[0, up.mono(2)], [0, 0]], [5, 2])
    assert h.free == []
    assert [(g, k) for g, k, _ in h.torsion] == [(5, 2)]
    rep = h.torsion[0][2]
    assert h.class_coords(up.mat_vec([[up.mono(2), 0], [0, up.mono(2)]], rep))[1] == [0]


def test_homology_rejects_d_squared():
    with pytest.raises(ValueError):
        graded_homology([[0, 1], [1, 0]], [0, 1])


def test_homology_not_a_cycle():
    h = graded_homology([[0, up.mono(1)], [0, 0]], [1, 0])
    with pytest.raises(ValueError):
        h.class_coords([0, up.mono(0)])


def test_v0_values():
    assert v0(right_trefoil_complex()) == 1
    assert v0(left_trefoil_complex()) == 0
    assert v0(figure_eight_complex()) == 0
    assert v0(unknot_complex()) == 0


def test_trefoil_a0_decomposition():
    h = homology_over_U(subquotient(right_trefoil_complex(), "A0minus"))
    assert [g for g, _ in h.free] == [-2]
    assert h.torsion == []


def test_localized_rank():
    c = build_staircase("negative", (1, 2, 1, 1))
    assert localized_rank(subquotient(c, "B0minus").matrix()) == 1


def test_induced_identity():
    c = right_trefoil_complex()
    h = homology_over_U(subquotient(c, "A0minus"))
    n = 3
    m = induced_map(up.mat_identity(n), h, h)
    assert m == up.mat_identity(len(h.free) + len(h.torsion))


def test_hfk_trefoils():
    assert hfk_hat(right_trefoil_complex()) == {(1, 0): 1, (0, -1): 1, (-1, -2): 1}
    assert hfk_hat(left_trefoil_complex()) == {(1, 2): 1, (0, 1): 1, (-1, 0): 1}


def test_hfk_figure_eight():
    assert hfk_hat(figure_eight_complex()) == {(1, 1): 1, (0, 0): 3, (-1, -1): 1}


def test_alexander_and_genus():
    assert alexander_poly(right_trefoil_complex()) == {-1: 1, 0: -1, 1: 1}
    assert alexander_poly(figure_eight_complex()) == {-1: -1, 0: 3, 1: -1}
    assert genus_detect(right_trefoil_complex()) == 1
    assert genus_detect(figure_eight_complex()) == 1


@given(st.sampled_from(["positive", "negative"]), steps_strategy)
def test_homology_representatives(sign, steps):
    c = build_staircase(sign, steps)
    sq = subquotient(c, "A0minus")
    d = sq.matrix()
    h = homology_over_U(sq)
    assert len(h.free) == 1  # knot-like: one tower
    for g, rep in h.free:
        assert not any(up.mat_vec(d, rep))  # cycle
        assert vector_grading(rep, sq.maslov) == g
    for pos, (g, k, rep) in enumerate(h.torsion):
        assert not any(up.mat_vec(d, rep))
        assert vector_grading(rep, sq.maslov) == g
        killed = [up.mul(up.mono(k), x) for x in rep]
        assert h.is_zero_class(killed)
        fc, tc = h.class_coords(rep)
        assert not any(fc)
        assert [1 if i == pos else 0 for i in range(len(h.torsion))] == tc


@given(steps_strategy)
def test_hfk_symmetry(steps):
    c = build_staircase("negative", steps)
    table = hfk_hat(c)
    for (w, k), rank in table.items():
        assert table.get((-w, k - 2 * w)) == rank
    alex = alexander_poly(c)
    assert sum(alex.values()) in (1, -1)
