from fractions import Fraction

import pytest

from concord.algebra import LaurentPoly
from concord.errors import DomainError
from concord.seifert import SeifertMatrix, connected_sum, mirror, random_seifert_matrix
from concord.signature import rho0, sigma_at, signature_function, step_records, symmetrized_alexander

from conftest import FIGURE_EIGHT, R1, TREFOIL, riemann_rho0


def test_trefoil_signature_function():
    sf = signature_function(TREFOIL)
    assert len(sf.jumps) == 1
    a = sf.jumps[0]
    assert a.lo <= 1 <= a.hi
    assert sf.plateaus == (0, -2)
    assert sf.value_at_minus_one == -2


def test_symmetrized_alexander():
    # t^2 - t + 1 = t (x - 1) with x = t + 1/t
    assert symmetrized_alexander(TREFOIL) == LaurentPoly.parse("t - 1")
    assert symmetrized_alexander(R1).associated(LaurentPoly.parse("2t - 5"))


def test_sigma_at_and_domain():
    assert sigma_at(TREFOIL, -2) == -2
    assert sigma_at(TREFOIL, Fraction(3, 2)) == 0
    with pytest.raises(DomainError):
        sigma_at(TREFOIL, 1)
    with pytest.raises(DomainError):
        sigma_at(TREFOIL, 3)
    assert signature_function(TREFOIL).value(Fraction(-1)) == -2
    with pytest.raises(DomainError):
        signature_function(TREFOIL).value(1)


def test_exact_rho0_values():
    assert rho0(TREFOIL).exact == Fraction(-4, 3)
    assert rho0(FIGURE_EIGHT).exact == 0
    assert rho0(R1).exact == 0
    assert rho0(SeifertMatrix(())).exact == 0


def test_rho0_additive_and_odd(rng):
    for V in (TREFOIL, FIGURE_EIGHT, R1):
        assert rho0(connected_sum(V, mirror(V))).is_zero()
        assert rho0(mirror(V)).exact == -rho0(V).exact
    for _ in range(5):
        V, W = random_seifert_matrix(rng, 1), random_seifert_matrix(rng, 1)
        s, a, b = rho0(connected_sum(V, W)), rho0(V), rho0(W)
        assert s.lo <= a.hi + b.hi and s.hi >= a.lo + b.lo
        assert abs(s.mid - (a.mid + b.mid)) < Fraction(1, 10 ** 25)


def test_rho0_bounded_by_size(rng):
    for _ in range(10):
        V = random_seifert_matrix(rng, rng.randint(1, 2))
        r = rho0(V)
        assert abs(r.mid) <= V.size


def test_rho0_matches_riemann_oracle(rng):
    for _ in range(3):
        V = random_seifert_matrix(rng, 1)
        r = rho0(V)
        assert abs(float(r.mid) - riemann_rho0(V, 10 ** 5)) < 1e-3


def test_step_records_unknot_and_trefoil():
    rows = step_records(SeifertMatrix(()))
    assert len(rows) == 1
    lo, hi, s = rows[0]
    assert Fraction(lo) == 0 and s == 0
    assert hi == "3.141592653589793238462643383280"
    rows = step_records(TREFOIL)
    assert [r[2] for r in rows] == [0, -2]
    assert rows[0][1].startswith("1.04719755119659774615421446109")


def test_orientation_convention_flips(rng):
    # V^T is the reversed knot, -V^T the mirror: only the sign of rho0 may change
    from concord.blanchfield import enumerate_isotropic_submodules
    from concord.seifert import alexander_polynomial, arf

    mats = [R1, TREFOIL, FIGURE_EIGHT] + [random_seifert_matrix(rng, 1) for _ in range(5)]
    for V in mats:
        T = SeifertMatrix(V.transpose())
        N = SeifertMatrix([[-x for x in row] for row in V.transpose()])
        base = rho0(V)
        for W, sign in ((T, 1), (N, -1)):
            assert alexander_polynomial(W).associated(alexander_polynomial(V))
            assert arf(W) == arf(V)
            assert len(enumerate_isotropic_submodules(W)) == len(enumerate_isotropic_submodules(V))
            r = rho0(W)
            if base.exact is not None:
                assert r.exact == sign * base.exact
            lo, hi = sorted((sign * base.lo, sign * base.hi))
            assert r.lo <= hi and lo <= r.hi
