import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_elliptic.census import (
    FamilyTooLarge,
    ell_summary,
    family,
    family_size,
    free_product_summary,
    parse_predicate,
    r_lower_bound_holds,
    scan,
    vertex_census,
)
from drinfeld_elliptic.curve import CurveError, CurveSpec, DeltaParityError, validate
from drinfeld_elliptic.zeta import l_polynomial

import curvekit


@pytest.mark.parametrize(
    "d,expected",
    [
        (curvekit.F2_CURVE, (5, 1, 2)),
        (curvekit.F7_CURVE, (13, 1, 6)),
        (curvekit.F9_XCUBED_MINUS_X, (4, 4, 0)),
        (curvekit.F4_SUPERSINGULAR, (1, 1, 0)),
    ],
)
def test_ell_summary_examples(d, expected):
    s = ell_summary(curvekit.hyper(d))
    assert (s.ell, s.ell2, s.r) == expected
    assert len(s.orbits) == s.ell
    assert sum(o.self_conjugate for o in s.orbits) == s.ell2


def test_ell_summary_refuses_even_delta():
    with pytest.raises(DeltaParityError):
        ell_summary(curvekit.hyper(curvekit.F2_CURVE, infinity=[0, 1]))


def test_vertex_census_examples(f2curve, f7curve):
    v = vertex_census(f2curve)
    assert (v.gl2_vertices, v.torus_vertices) == (1, 2)
    assert (v.gl2_order, v.torus_order) == (6, 3)
    v = vertex_census(f7curve)
    assert (v.gl2_vertices, v.torus_vertices) == (1, 6)
    assert v.gl2_order == 7 * 36 * 8 and v.torus_order == 48
    g0 = validate(CurveSpec.hyperelliptic(5, 1, [], [0, 1], 0))
    v = vertex_census(g0)
    assert (v.gl2_vertices, v.torus_vertices) == (1, 0)


def test_vertex_census_needs_delta_one():
    # odd delta other than 1: patch a fresh curve object
    c3 = curvekit.hyper(curvekit.F7_CURVE)
    c3.delta = 3
    with pytest.raises(CurveError):
        vertex_census(c3)
    with pytest.raises(CurveError):
        free_product_summary(c3)


def test_free_product_text(f2curve, f7curve):
    fp = free_product_summary(f2curve)
    assert fp["text"] == "Z/3Z ⋆ Z/3Z ⋆ (remainder)"
    assert fp["amalgams"] == ["GL_2(F_2) ⋆_{B_2(F_2)} H"]
    fp = free_product_summary(f7curve)
    assert fp["text"] == "(⋆_{i=1}^6 Z/8Z) ⋆ (remainder)"
    assert (fp["r"], fp["cyclic_order"]) == (6, 8)
    g0 = validate(CurveSpec.hyperelliptic(3, 1, [], [0, 1], 0))
    fp = free_product_summary(g0)
    assert fp["text"] == "(remainder)" and len(fp["amalgams"]) == 1


def test_family_size_counts_models():
    # genus 1 over F_2: h in {1, x, x+1}, f of degree exactly 3 (monic automatically)
    assert family_size(2, 2, 1, False) == 3 * 8
    models = list(family(3, 1, 1, monic=True))
    assert len(models) <= family_size(3, 3, 1, True) == 27
    # y^2 = x^3 - x is in the F_3 family
    assert any(c.f == (0, 2, 0, 1) for c in models)


def test_family_too_large():
    with pytest.raises(FamilyTooLarge):
        scan([16], 2)


def test_unknown_predicate():
    with pytest.raises(ValueError):
        parse_predicate("nonsense")


def test_scan_q4_ell_one():
    rep = scan([4], 1, "ell:1")
    assert rep.matches
    for m in rep.matches:
        assert m.lpoly.coeffs == (1, 4, 4)
        assert m.summary.ell == 1
    assert any(m.curve.h == (1,) and m.curve.f == (0, 0, 0, 1) for m in rep.matches)
    assert list(rep.lpoly_groups) == [(1, 4, 4)]


def test_scan_q3_klein_four():
    rep = scan([3], 1, "cl0_structure:2,2")
    assert any(m.curve.f == (0, 2, 0, 1) for m in rep.matches)
    for m in rep.matches:
        assert m.cl0 == (2, 2)
    assert scan([3], 1, "cl0_exponent2").scanned == rep.scanned


def test_scan_is_deterministic():
    a = scan([2, 3], 1, "all", summarize_all=True)
    b = scan([2, 3], 1, "all", summarize_all=True)
    assert [m.as_dict() for m in a.matches] == [m.as_dict() for m in b.matches]
    assert a.scanned == len(a.matches)
    assert "window" in a.note


def test_scan_ell_eq_ell2_subset_of_powers_of_two():
    rep = scan([2, 3, 4, 5], 1, "ell_eq_ell2")
    for m in rep.matches:
        ell = m.summary.ell
        assert ell & (ell - 1) == 0
        assert m.summary.ell2 == ell and m.summary.r == 0


def _check_summary_invariants(c):
    s = ell_summary(c)
    assert 2 * s.r == s.ell - s.ell2
    assert s.ell2 >= 1
    assert s.ell == l_polynomial(c)(-1)
    assert s.ell2 <= 2 ** (2 * c.g)
    if c.F.p == 2:
        assert s.ell2 <= 2**c.g
    return s


def test_summary_invariants_over_small_families():
    n = 0
    for p, m in ((2, 1), (3, 1), (2, 2)):
        for c in family(p, m, 1):
            _check_summary_invariants(c)
            n += 1
    assert n > 50


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (5, 1), (7, 1), (8, 1), (9, 1)]), st.randoms(use_true_random=False))
def test_summary_invariants_random(qg, rnd):
    q, g = qg
    c = curvekit.random_hyperelliptic(random.Random(rnd.random()), q, g)
    s = _check_summary_invariants(c)
    if q >= 8 and s.ell > s.ell2:
        assert r_lower_bound_holds(s, q, g)


def test_r_lower_bound_examples(f7curve):
    s = ell_summary(f7curve)
    # (sqrt 7 - 1)^2 / 4 ~ 0.68 <= 6
    assert r_lower_bound_holds(s, 7, 1)
    s.r = 0
    assert not r_lower_bound_holds(s, 7, 1)
