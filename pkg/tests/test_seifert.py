import itertools

import pytest
import sympy

from concord.algebra import LaurentPoly
from concord.errors import CapabilityError
from concord.seifert import (
    SeifertMatrix,
    alexander_polynomial,
    arf,
    connected_sum,
    fox_milnor_factor,
    genus1_metabolizers,
    is_algebraically_slice,
    mirror,
    random_seifert_matrix,
)

from conftest import FIGURE_EIGHT, R1, TREFOIL

t = sympy.Symbol("t")


def alexander_oracle(V):
    """det(tV - V^T) by sympy, normalized to min exponent 0 and value 1 at t = 1."""
    if V.size == 0:
        return sympy.Integer(1)
    M = sympy.Matrix(V.entries)
    d = sympy.expand((t * M - M.T).det())
    p = sympy.Poly(d, t)
    low = min(m[0] for m in p.monoms())
    q = sympy.expand(d / t ** low)
    return sympy.expand(q / q.subs(t, 1))


def arf_oracle(V):
    """Arf invariant by majority count of q(v) = v^T V v mod 2 over (Z/2)^n."""
    n = V.size
    if n == 0:
        return 0
    zeros = sum(1 for v in itertools.product((0, 1), repeat=n)
                if sum(v[i] * V.entries[i][j] * v[j] for i in range(n) for j in range(n)) % 2 == 0)
    return 0 if 2 * zeros > 2 ** n else 1


def as_sympy(p: LaurentPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * t ** e for e, c in p.items()), sympy.Integer(0))


def test_validation():
    with pytest.raises(ValueError):
        SeifertMatrix(((1, 0), (0, 1)))
    with pytest.raises(ValueError):
        SeifertMatrix(((1,),))
    assert SeifertMatrix(()).genus == 0
    assert TREFOIL.genus == 1


def test_named_alexander_polynomials():
    assert alexander_polynomial(TREFOIL) == LaurentPoly.parse("t^2 - t + 1")
    assert alexander_polynomial(R1).associated(LaurentPoly.parse("2t^2 - 5t + 2"))
    assert alexander_polynomial(FIGURE_EIGHT).associated(LaurentPoly.parse("t^2 - 3t + 1"))
    assert alexander_polynomial(SeifertMatrix(())) == LaurentPoly.one()


def test_alexander_matches_sympy_determinant(rng):
    for _ in range(40):
        V = random_seifert_matrix(rng, rng.randint(1, 3))
        delta = alexander_polynomial(V)
        assert delta.min_exp == 0
        assert delta(1) == 1
        assert sympy.expand(as_sympy(delta) - alexander_oracle(V)) == 0


def test_arf_named_and_oracle(rng):
    assert arf(TREFOIL) == 1
    assert arf(FIGURE_EIGHT) == 1
    assert arf(R1) == 0
    for _ in range(40):
        V = random_seifert_matrix(rng, rng.randint(1, 3))
        assert arf(V) == arf_oracle(V)


def test_arf_agrees_with_alexander_at_minus_one(rng):
    # Levine: Arf = 0 iff Delta(-1) = +-1 mod 8
    for _ in range(40):
        V = random_seifert_matrix(rng, rng.randint(1, 3))
        d = int(alexander_polynomial(V)(-1))
        assert arf(V) == (0 if d % 8 in (1, 7) else 1)


def test_connected_sum_and_mirror():
    S = connected_sum(TREFOIL, FIGURE_EIGHT)
    assert S.size == 4
    assert alexander_polynomial(S) == alexander_polynomial(TREFOIL) * alexander_polynomial(FIGURE_EIGHT)
    assert arf(S) == (arf(TREFOIL) + arf(FIGURE_EIGHT)) % 2
    M = mirror(TREFOIL)
    assert alexander_polynomial(M) == alexander_polynomial(TREFOIL)
    assert mirror(M) == TREFOIL


def test_genus1_metabolizers():
    rep = genus1_metabolizers(R1)
    assert rep.kind == "lines"
    assert set(rep.lines) == {(1, 0), (0, 1)}
    assert genus1_metabolizers(TREFOIL).kind == "none"
    assert genus1_metabolizers(FIGURE_EIGHT).kind == "none"
    assert genus1_metabolizers([[0, 0], [0, 0]]).kind == "all"
    with pytest.raises(CapabilityError):
        genus1_metabolizers(connected_sum(R1, R1))


def test_isotropic_lines_are_isotropic(rng):
    for _ in range(50):
        a, b, c, d = (rng.randint(-4, 4) for _ in range(4))
        rep = genus1_metabolizers([[a, b], [c, d]])
        for x, y in rep.lines:
            assert a * x * x + (b + c) * x * y + d * y * y == 0


def test_fox_milnor():
    assert fox_milnor_factor(alexander_polynomial(R1)) is not None
    assert fox_milnor_factor(alexander_polynomial(TREFOIL)) is None
    sq = alexander_polynomial(TREFOIL) ** 2
    assert fox_milnor_factor(sq).associated(alexander_polynomial(TREFOIL))


def test_algebraic_sliceness():
    assert is_algebraically_slice(R1).kind == "yes"
    assert is_algebraically_slice(TREFOIL).kind == "no"
    assert is_algebraically_slice(FIGURE_EIGHT).kind == "no"
    assert is_algebraically_slice(connected_sum(TREFOIL, mirror(TREFOIL))).kind == "yes"
    res = is_algebraically_slice(connected_sum(FIGURE_EIGHT, FIGURE_EIGHT))
    assert res.kind in ("yes", "unknown")


def test_metabolizer_witness_is_isotropic():
    V = connected_sum(TREFOIL, mirror(TREFOIL))
    res = is_algebraically_slice(V)
    E = V.entries
    for u in res.witness:
        for w in res.witness:
            assert sum(u[i] * E[i][j] * w[j] for i in range(4) for j in range(4)) == 0
