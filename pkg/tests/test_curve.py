import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_elliptic.algebra.fields import embedding, extension_field, fq_make
from drinfeld_elliptic.algebra.poly import poly_ring
from drinfeld_elliptic.curve import (
    CurveError,
    CurveSpec,
    DeltaParityError,
    HyperellipticCurve,
    UnsupportedOperation,
    validate,
)

import curvekit


def test_example_curves_validate():
    c = curvekit.hyper(curvekit.F2_CURVE)
    assert c.delta == 1 and c.g == 1
    assert c.count_points(1) == 1
    c9 = curvekit.hyper(curvekit.F9_XCUBED_MINUS_X)
    assert c9.delta == 1


def test_cusp_rejected():
    with pytest.raises(CurveError):
        validate(CurveSpec.hyperelliptic(3, 1, [], [0, 0, 0, 1], 1))


def test_genus_mismatch_rejected():
    with pytest.raises(CurveError):
        validate(CurveSpec.hyperelliptic(7, 1, [], [4, 0, 0, 1], 2))
    with pytest.raises(CurveError):
        validate(CurveSpec.hyperelliptic(2, 1, [1, 1, 1], [1, 1, 0, 1], 1))  # deg h > g


def test_odd_characteristic_needs_h_zero():
    with pytest.raises(CurveError):
        validate(CurveSpec.hyperelliptic(3, 1, [1], [0, 2, 0, 1], 1))


def test_char2_needs_h():
    with pytest.raises(CurveError):
        validate(CurveSpec.hyperelliptic(2, 1, [], [1, 1, 0, 1], 1))


def test_non_prime_coefficient_needs_digits():
    with pytest.raises(CurveError):
        validate(CurveSpec.hyperelliptic(3, 2, [], [0, 8, 0, 1], 1))


@pytest.mark.parametrize(
    "d,counts",
    [
        (curvekit.F2_CURVE, [1, 5, 13, 25]),
        (curvekit.F7_CURVE, [3, 39]),
        (curvekit.F4_SUPERSINGULAR, [9]),
    ],
)
def test_point_counts(d, counts):
    c = curvekit.hyper(d)
    assert [c.count_points(k) for k in range(1, len(counts) + 1)] == counts


@pytest.mark.parametrize("d", [curvekit.F2_CURVE, curvekit.F7_CURVE, curvekit.F4_SUPERSINGULAR] + curvekit.KLEIN_FOUR)
def test_counts_two_ways(d):
    c = curvekit.hyper(d)
    for k in (1, 2, 3):
        assert c.count_points(k) == c.count_points_by_places(k)


@pytest.mark.parametrize("d", [curvekit.F2_CURVE, curvekit.F7_CURVE] + curvekit.KLEIN_FOUR[:2])
def test_base_change_counts(d):
    c = curvekit.hyper(d)
    c2 = c.base_change(2)
    assert c2.count_points(1) == c.count_points(2)
    assert c2.count_points(2) == c.count_points(4)


def test_places_above_x():
    c = curvekit.hyper(curvekit.F2_CURVE)
    (pl,) = c.places_above((0, 1))
    assert pl.degree == 2 and pl.ramification == 1
    c3 = curvekit.hyper(curvekit.KLEIN_FOUR[0])
    (pl,) = c3.places_above((0, 1))
    assert pl.degree == 1 and pl.ramification == 2


@pytest.mark.parametrize("d", [curvekit.F2_CURVE, curvekit.F7_CURVE, curvekit.KLEIN_FOUR[3]])
def test_ramification_degree_sum(d):
    c = curvekit.hyper(d)
    for n in (1, 2):
        for P in c.R.irreducibles(n):
            pls = c.places_above(P)
            assert sum(pl.ramification * pl.degree for pl in pls) == 2 * n


def test_places_reject_reducible():
    c = curvekit.hyper(curvekit.F2_CURVE)
    with pytest.raises(CurveError):
        c.places_above((0, 0, 1))


def test_even_delta_detected():
    c = curvekit.hyper(curvekit.F2_CURVE, infinity=[0, 1])
    assert c.delta == 2
    with pytest.raises(DeltaParityError):
        c.require_odd_delta()
    c2 = validate(CurveSpec.hyperelliptic(2, 1, [1], [0, 1], 0, infinity=[1, 1]))
    assert c2.delta == 2


def test_odd_non_default_delta_is_refused_for_classes():
    # f(0) = 4 is a square mod 7, so x splits: delta = 1 but not the default infinity
    c = curvekit.hyper(curvekit.F7_CURVE, infinity=[0, 1])
    assert c.delta == 1
    assert curvekit.hyper(curvekit.F7_CURVE, infinity=[1, 1]).delta == 2  # f(-1) = 3 is not a square
    with pytest.raises(UnsupportedOperation):
        c.require_default_infinity()


# --- nonsingularity against an exhaustive singular-point search --------------------------


def _singular_oracle(p, m, h, f, max_ext=2):
    """Search all (x, y) over F_{q^d}, d <= max_ext, for a point with C = C_x = C_y = 0."""
    F = fq_make(p, m)
    R = poly_ring(F)
    for d in range(1, max_ext + 1):
        E = extension_field(F, d) if d > 1 else F
        emb = embedding(F, E) if d > 1 else (lambda a: a)
        RE = poly_ring(E)
        hE = RE.map_coeffs(h, emb)
        fE = RE.map_coeffs(f, emb)
        dh, df = RE.deriv(hE), RE.deriv(fE)
        for x in E.elements():
            hx, fx = RE.evaluate(hE, x), RE.evaluate(fE, x)
            for y in E.elements():
                c = E.sub(E.add(E.mul(y, y), E.mul(hx, y)), fx)
                cy = E.add(E.add(y, y), hx)
                cx = E.sub(E.mul(RE.evaluate(dh, x), y), RE.evaluate(df, x))
                if c == 0 and cy == 0 and cx == 0:
                    return True
    return False


def _all_models(p, m, genus):
    F = fq_make(p, m)
    R = poly_ring(F)
    hs = [()] if p != 2 else [R.norm(c) for c in itertools.product(range(F.q), repeat=genus + 1) if any(c)]
    for h in hs:
        for low in itertools.product(range(F.q), repeat=2 * genus + 1):
            yield h, R.norm(low + (1,))


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_nonsingularity_matches_exhaustive_search_genus1(p, m):
    for h, f in _all_models(p, m, 1):
        spec = CurveSpec(p, m, "hyperelliptic", 1, h, f)
        try:
            validate(spec)
            ok = True
        except CurveError:
            ok = False
        assert ok == (not _singular_oracle(p, m, h, f)), (h, f)


def test_nonsingularity_matches_exhaustive_search_genus2_char2():
    # singular points of a genus-2 model have x in F_{q^2} at worst (x is a root of h)
    for h, f in _all_models(2, 1, 2):
        spec = CurveSpec(2, 1, "hyperelliptic", 2, h, f)
        try:
            validate(spec)
            ok = True
        except CurveError:
            ok = False
        assert ok == (not _singular_oracle(2, 1, h, f)), (h, f)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=5, max_size=5))
def test_nonsingularity_genus2_odd(low):
    f = tuple(low) + (1,)
    spec = CurveSpec(3, 1, "hyperelliptic", 2, (), poly_ring(fq_make(3)).norm(f))
    try:
        validate(spec)
        ok = True
    except CurveError:
        ok = False
    assert ok == (not _singular_oracle(3, 1, (), f))


# --- plane curves ----------------------------------------------------------------------


def test_hermitian_counts():
    c = validate(curvekit.HERMITIAN)
    assert c.count_points(1) == 28
    assert c.count_points(2) == 28


def test_plane_singular_rejected():
    # y^3 = x^2 has a cusp at the origin
    with pytest.raises(CurveError):
        validate(CurveSpec.plane(3, 2, [[0, 0, 2], [], [], [1]], 0))


def test_plane_genus_checked():
    with pytest.raises(CurveError):
        validate(CurveSpec.plane(3, 2, [[0, 0, 0, 0, 2], [1], [], [1]], 2))


def test_plane_curve_has_no_class_machinery():
    c = validate(curvekit.HERMITIAN)
    assert not isinstance(c, HyperellipticCurve)
    from drinfeld_elliptic.jacobian import Jacobian

    with pytest.raises(UnsupportedOperation):
        Jacobian(c)


def test_spec_field_property():
    spec = CurveSpec.hyperelliptic(3, 2, [], [0, [0, 2], 0, 1], 1)
    assert spec.field.q == 9
    assert spec.f[1] == spec.field.from_digits([0, 2])
