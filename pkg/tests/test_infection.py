import pytest

from concord.errors import CapabilityError
from concord.freegroup import Word
from concord.infection import (
    FIGURE_EIGHT_PATTERN,
    R1_PATTERN,
    UNKNOT,
    Curve,
    Infect,
    KnotRef,
    Leaf,
    Mirror,
    Pattern,
    Sum,
    build_bing,
    build_Jn,
    expand_clones,
    knot,
    leaves,
    seifert_of,
    solvable_level,
)
from concord.seifert import mirror

from conftest import R1, TREFOIL

TREF = knot("trefoil", TREFOIL.entries)
ARF0 = knot("K0", [[1, 1], [0, 2]])  # Arf 0, Alexander polynomial 2t^2 - 3t + 2


def test_knot_flags():
    assert KnotRef("r", ribbon=True).slice
    assert UNKNOT.slice and UNKNOT.amphichiral
    assert not TREF.slice


def test_jn_structure_and_labels():
    J2 = build_Jn(2, TREF)
    assert str(J2) == "Jn(2, trefoil)"
    assert str(J2.children[0]) == "Jn(1, trefoil)"
    assert build_Jn(0, TREF) == Leaf(TREF)
    assert J2.is_knot
    assert len(leaves(J2)) == 4


def test_clone_counts():
    for n in range(7):
        J = build_Jn(n, TREF)
        for i in range(n + 1):
            cs = expand_clones(J, i)
            assert len(cs.clones) == 2 ** i
            assert all(c.depth == i for c in cs.clones)
            assert all(str(c.infecting) == (str(build_Jn(n - i, TREF))) for c in cs.clones)
    with pytest.raises(ValueError):
        expand_clones(build_Jn(2, TREF), 3)


def test_ghost_counts_r2():
    cs = expand_clones(build_Jn(2, TREF), 2)
    assert cs.ghost_counts() == (4, 2, 1)
    assert str(cs.residual) == "R2"
    ids = {c.id for c in cs.clones}
    assert ids == {"eta+/eta+", "eta+/eta-", "eta-/eta+", "eta-/eta-"}


def test_solvable_levels():
    for n in range(6):
        lv = solvable_level(build_Jn(n, ARF0))
        assert not lv.slice and lv.level == n and not lv.rational_only
        lv = solvable_level(build_Jn(n, TREF))
        assert lv.level == n and lv.rational_only
    assert solvable_level(build_Jn(3, UNKNOT)).slice


def test_bing_levels():
    for n in range(2, 5):
        for k in range(1, n):
            t = build_bing(k, build_Jn(n - k, ARF0))
            assert t.components == 2 ** k
            lv = solvable_level(t)
            assert lv.level == n and not lv.rational_only
    assert str(build_bing(2, Leaf(TREF))) == "BD^2(trefoil)"
    assert str(build_bing(1, Leaf(TREF))) == "BD(trefoil)"


def test_seifert_of():
    for n in range(1, 5):
        assert seifert_of(build_Jn(n, TREF)) == R1
    assert seifert_of(build_Jn(0, TREF)) == TREFOIL
    assert seifert_of(Mirror(Leaf(TREF))) == mirror(TREFOIL)
    assert seifert_of(Sum(Leaf(TREF), Leaf(TREF))).size == 4
    with pytest.raises(CapabilityError):
        seifert_of(build_bing(1, Leaf(TREF)))


def test_pattern_validation():
    with pytest.raises(ValueError):
        Pattern("bad", "knot", 1, (Curve("c", 0, (1, 0)),), R1)
    with pytest.raises(ValueError):
        Pattern("bad", "knot", 1, (Curve("c", 1, (1,)),), R1)
    with pytest.raises(ValueError):
        Pattern("bad", "link", 2, (Curve("c", 2, word=Word.parse("[x1,x2]")),))
    with pytest.raises(ValueError):
        Infect(R1_PATTERN, (Leaf(TREF),))
    with pytest.raises(CapabilityError):
        Infect(R1_PATTERN, (Leaf(TREF), build_bing(1, Leaf(TREF))))
    assert FIGURE_EIGHT_PATTERN.amphichiral
