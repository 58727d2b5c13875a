import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_elliptic.elliptic_points import enumerate_points, eps_norm, j_ideal
from drinfeld_elliptic.orders import (
    CurveRings,
    OrderError,
    equivalence_witness,
    ideal_conj,
    ideal_from_generators,
    ideal_from_mumford,
    ideal_mul,
    ideal_norm,
    ideal_scale,
    normal_form,
    principal_ideal,
    unit_ideal,
)

import curvekit


@pytest.fixture(scope="module")
def rings_list():
    out = []
    for d in (curvekit.F2_CURVE, curvekit.F7_CURVE, curvekit.F9_XCUBED_MINUS_X):
        out.append(CurveRings(curvekit.hyper(d)))
    return out


@pytest.fixture(scope="module")
def points(rings_list):
    return [enumerate_points(r, 3).points for r in rings_list]


def _rand_poly(R, rng, d):
    return R.norm([rng.randrange(R.F.q) for _ in range(rng.randrange(d + 1))])


def _rand_elem(o, rng, d=2):
    return o.elem(_rand_poly(o.R, rng, d), _rand_poly(o.R, rng, d))


def test_valuations_and_curve_relation(f2curve_rings):
    A = f2curve_rings.A
    assert A.nu(A.elem((0, 1))) == -2
    assert A.nu(A.y) == -3
    assert A.mul(A.y, A.y) == A.elem((1, 1, 0, 1), (1,))  # y^2 = y + x^3 + x + 1


def test_norm_of_eps_plus_s(f7curve_rings):
    r = f7curve_rings
    A = r.A
    rng = random.Random(3)
    for _ in range(30):
        s = _rand_elem(A, rng)
        assert r.norm_to_A(r.eps_plus(s)) == eps_norm(r, s)
    assert eps_norm(r, A.zero) == A.const(r.norm)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.randoms(use_true_random=False))
def test_ring_axioms(which, rnd):
    r = [CurveRings(curvekit.hyper(curvekit.F2_CURVE)), CurveRings(curvekit.hyper(curvekit.F7_CURVE))][which % 2]
    rng = random.Random(rnd.random())
    for o in (r.A, r.At):
        u, v, w = (_rand_elem(o, rng) for _ in range(3))
        assert o.mul(o.mul(u, v), w) == o.mul(u, o.mul(v, w))
        assert o.mul(u, v) == o.mul(v, u)
        assert o.mul(u, o.add(v, w)) == o.add(o.mul(u, v), o.mul(u, w))
        if u != o.zero and v != o.zero:
            assert o.nu(o.mul(u, v)) == o.nu(u) + o.nu(v)
        assert o.conj(o.conj(u)) == u
        assert o.conj(o.mul(u, v)) == o.mul(o.conj(u), o.conj(v))
        assert o.mul(u, o.iota(u)) == o.poly(o.norm(u))
        if v != o.zero:
            assert o.divide(o.mul(u, v), v) == u
    # Galois norm lands in A
    u = _rand_elem(r.At, rng)
    n = r.norm_to_A(u)
    assert r.lift(n) == r.At.mul(u, r.At.conj(u))


def test_unit_and_trivial_point(f2curve_rings):
    r = f2curve_rings
    At, A = r.At, r.A
    U = unit_ideal(At)
    assert U.is_unit()
    assert ideal_from_generators(At, [At.one]) == U
    assert ideal_from_generators(At, [r.lift(A.one), r.eps_plus(A.zero)]) == U
    assert r.ideal_class(U) == r.jac2.identity
    with pytest.raises(OrderError):
        ideal_from_generators(At, [At.zero])


def test_principal_ideal_degree(f7curve_rings):
    r = f7curve_rings
    At = r.At
    rng = random.Random(11)
    for _ in range(40):
        u = _rand_elem(At, rng)
        if u == At.zero:
            continue
        P = principal_ideal(At, u)
        assert P.degree == At.R.deg(At.norm(u))
        assert r.ideal_class(P) == r.jac2.identity
        assert ideal_norm(P, r.A) == principal_ideal(r.A, r.norm_to_A(u))


def test_point_ideals(rings_list, points):
    for r, pts in zip(rings_list, points):
        At, A = r.At, r.A
        for pt in pts:
            J = j_ideal(r, pt)
            tAt = principal_ideal(At, r.lift(pt.t))
            assert ideal_mul(J, ideal_conj(J)) == tAt
            assert ideal_norm(J, A) == principal_ideal(A, pt.t)
            assert ideal_conj(ideal_conj(J)) == J
            assert ideal_mul(J, unit_ideal(At)) == J
            D = r.ideal_class(J)
            assert r.ideal_class(ideal_conj(J)) == r.jac2.neg(D)


def _random_ideal(r, rng, classes):
    At = r.At
    D = rng.choice(classes)
    u = _rand_elem(At, rng, 1)
    if u == At.zero:
        u = At.one
    return ideal_mul(ideal_from_mumford(At, D), principal_ideal(At, u)), D


@pytest.mark.parametrize("idx", [0, 1])
def test_class_map_is_multiplicative(rings_list, idx):
    r = rings_list[idx]
    J2 = r.jac2
    classes = J2.enumerate()
    rng = random.Random(idx)
    for _ in range(500):
        I, DI = _random_ideal(r, rng, classes)
        J, DJ = _random_ideal(r, rng, classes)
        assert r.ideal_class(I) == DI
        assert r.ideal_class(ideal_mul(I, J)) == J2.add(DI, DJ)


@pytest.mark.parametrize("idx", [0, 1])
def test_conjugation_acts_as_frobenius_on_classes(rings_list, idx):
    r = rings_list[idx]
    for D in r.jac2.enumerate():
        J = r.class_ideal(D)
        assert r.ideal_class(ideal_conj(J)) == r.jac2.frobenius(D)


def _check_normal_form(r, J):
    At, A = r.At, r.A
    nf = normal_form(r, J)
    # J2 = I + (eps + a) A~, with I = J2 cap A = N(J2)
    assert r.descend(nf.J2)[0] == nf.I
    assert ideal_norm(nf.J2, A) == nf.I
    gens = [r.lift(b) for b in nf.I.basis()] + [r.eps_plus(nf.a)]
    assert ideal_from_generators(At, gens) == nf.J2
    assert ideal_scale(nf.J2, nf.mult_new) == ideal_scale(J, nf.mult_old)
    return nf


@pytest.mark.parametrize("idx", [0, 1, 2])
def test_normal_form_every_class(rings_list, idx):
    r = rings_list[idx]
    rng = random.Random(idx + 40)
    for D in r.jac2.enumerate()[:40]:
        _check_normal_form(r, r.class_ideal(D))
        J, _ = _random_ideal(r, rng, [D])
        nf = _check_normal_form(r, J)
        assert r.ideal_class(nf.J2) == D


def test_normal_form_of_point_ideal(rings_list, points):
    for r, pts in zip(rings_list, points):
        for pt in pts:
            nf = _check_normal_form(r, j_ideal(r, pt))
            assert nf.I == principal_ideal(r.A, pt.t)
            assert nf.I.contains(r.A.sub(nf.a, pt.s))


def test_normal_form_unit(f2curve_rings):
    nf = _check_normal_form(f2curve_rings, unit_ideal(f2curve_rings.At))
    assert nf.I.is_unit()


def test_equivalence_witness(f7curve_rings):
    r = f7curve_rings
    At = r.At
    rng = random.Random(9)
    classes = r.jac2.enumerate()
    for _ in range(30):
        I, DI = _random_ideal(r, rng, classes)
        J, DJ = _random_ideal(r, rng, classes)
        w = equivalence_witness(I, J)
        if DI == DJ:
            alpha, beta = w
            assert ideal_scale(I, alpha) == ideal_scale(J, beta)
        else:
            assert w is None
