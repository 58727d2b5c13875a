"""The twelve acceptance criteria, one test each.

Run alone with ``pytest tests/test_acceptance.py`` (or ``python3 tests/test_acceptance.py``);
a pass/fail line per criterion is printed in the terminal summary.
"""

import math
import random
import time
import warnings

import pytest

from drinfeld_elliptic.census import ell_summary, r_lower_bound_holds, scan
from drinfeld_elliptic.curve import validate
from drinfeld_elliptic.elliptic_points import (
    check_stabilizer,
    conjugate_class,
    enumerate_points,
    orbit_classes,
    parity_check,
    point_class,
)
from drinfeld_elliptic.jacobian import enumerate_jacobian
from drinfeld_elliptic.orders import CurveRings
from drinfeld_elliptic.zeta import extend_constants, l_polynomial, power_map

import curvekit
from curvekit import criterion

FOUR_CURVES = [curvekit.F2_CURVE, curvekit.F7_CURVE, curvekit.F4_SUPERSINGULAR, curvekit.F9_XCUBED_MINUS_X]

# every L-polynomial built in this module, for criterion 11
_SEEN_L = []
SEARCH_TIME = []


def _L(curve):
    L = l_polynomial(curve)
    _SEEN_L.append(L)
    return L


@pytest.fixture(scope="module")
def searches():
    """Rings, norm kernel and degree-3 point search for curves 1-4."""
    t0 = time.perf_counter()
    out = []
    for d in FOUR_CURVES:
        c = curvekit.hyper(d)
        rings = CurveRings(c)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = enumerate_points(rings, 3)
        out.append((c, rings, res))
    SEARCH_TIME.append(time.perf_counter() - t0)
    return out


def test_c01_f2_curve():
    with criterion(1, 1.0) as rec:
        c = curvekit.hyper(curvekit.F2_CURVE)
        L = _L(c)
        s = ell_summary(c, L)
        assert L.coeffs == (1, -2, 2)
        assert (s.ell, s.ell2, s.r) == (5, 1, 2)
        rec.detail = "L = %s, ell=%d ell2=%d r=%d" % (L.fmt(), s.ell, s.ell2, s.r)


def test_c02_f7_curve():
    with criterion(2, 5.0) as rec:
        c = curvekit.hyper(curvekit.F7_CURVE)
        L = _L(c)
        s = ell_summary(c, L)
        assert L.coeffs == (1, -5, 7)
        assert (s.ell, s.ell2, s.r) == (13, 1, 6)
        rec.detail = "L = %s, ell=%d ell2=%d r=%d" % (L.fmt(), s.ell, s.ell2, s.r)


def test_c03_ell_one_over_f4():
    with criterion(3, 60.0) as rec:
        c = curvekit.hyper(curvekit.F4_SUPERSINGULAR)
        L = _L(c)
        assert L.coeffs == (1, 4, 4)
        assert ell_summary(c, L).ell == 1
        rep = scan([4], 1, "ell:1")
        assert rep.matches, "scan found no curve with ell = 1"
        assert set(rep.lpoly_groups) == {(1, 4, 4)}
        assert any(m.curve.f == c.f and m.curve.h == c.h for m in rep.matches)
        for m in rep.matches:
            assert m.summary.ell == 1
        rec.detail = "%d models scanned, %d with ell = 1, all with L = (1+2u)^2" % (rep.scanned, len(rep.matches))


def test_c04_f9_x3_minus_x():
    with criterion(4, 10.0) as rec:
        c = curvekit.hyper(curvekit.F9_XCUBED_MINUS_X)
        L = _L(c)
        s = ell_summary(c, L)
        assert L.coeffs == (1, 6, 9)
        assert (s.ell, s.ell2, s.r) == (4, 4, 0)
        assert s.kernel == (2, 2)
        rec.detail = "L = %s, ell=ell2=4, kernel (Z/2)^2, r=0" % L.fmt()


def test_c05_klein_four_class_groups():
    with criterion(5, 10.0) as rec:
        got = []
        for d in curvekit.KLEIN_FOUR:
            c = curvekit.hyper(d)
            _L(c)
            got.append(enumerate_jacobian(c).structure)
        assert got == [(2, 2)] * 4
        rec.detail = "Cl0 = Z/2 + Z/2 over F3, F5, F7, F9"


def test_c06_hermitian():
    with criterion(6, 30.0) as rec:
        c = validate(curvekit.HERMITIAN)
        assert c.count_points(1) == 28
        L = _L(c)
        assert L.coeffs == tuple(math.comb(6, k) * 3**k for k in range(7))
        rec.detail = "N1 = 28, L = %s" % L.fmt()


def test_c07_orbits_biject_with_kernel(searches):
    with criterion(7, 120.0, already=sum(SEARCH_TIME)) as rec:
        sizes = []
        for c, rings, res in searches:
            kernel = res.kernel
            classes = orbit_classes(rings, res.points, kernel)  # raises if a class leaves the kernel
            reps = list(res.classes.values())
            assert len({point_class(rings, pt) for pt in reps}) == len(reps)
            assert set(classes) == set(kernel.group.elements)
            assert len(classes) == _L(c)(-1)
            sizes.append(len(classes))
        rec.detail = "orbit counts %s = L(-1), full kernel coverage at deg-bound 3" % sizes


def test_c08_self_conjugate_orbits(searches):
    with criterion(8, None) as rec:
        counts = []
        for c, rings, res in searches:
            selfconj = sum(1 for pt in res.classes.values() if conjugate_class(rings, pt) == point_class(rings, pt))
            assert selfconj == res.kernel.two_torsion_size
            counts.append(selfconj)
        rec.detail = "self-conjugate orbits %s = kernel 2-torsion" % counts


def test_c09_stabilizers(searches):
    with criterion(9, None) as rec:
        n = 0
        for c, rings, res in searches[:2]:
            q = rings.F.q
            F2 = rings.F2
            assert rings.At.emb(rings.norm) == F2.pow(rings.eps, q + 1)
            for pt in res.points:
                st = check_stabilizer(rings, pt, exhaustive=True)
                assert st.span_size == q * q - 1
                assert st.closed and st.fixes_omega
                assert st.det == rings.norm
                n += 1
        rec.detail = "%d points: span of q^2-1 invertible matrices fixing omega, det = eps^(q+1)" % n


def test_c10_parity(searches):
    with criterion(10, None) as rec:
        n = 0
        runs = [(rings, res) for _, rings, res in searches]
        for d in curvekit.KLEIN_FOUR:
            rings = CurveRings(curvekit.hyper(d))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                runs.append((rings, enumerate_points(rings, 3)))
        for rings, res in runs:
            for pt in res.points:
                rep = parity_check(rings, pt)
                assert rep.ok
                n += 1
        rec.detail = "%d points on %d curves: nu(t) even, primes of tA of even degree" % (n, len(runs))


def test_c11_identities():
    with criterion(11, 120.0) as rec:
        rng = random.Random(20240611)
        qs = [2, 3, 4, 5, 7, 9]
        Ls = list(_SEEN_L)
        for i in range(200):
            q = qs[i % len(qs)]
            g = (i // len(qs)) % 3
            Ls.append(l_polynomial(curvekit.random_hyperelliptic(rng, q, g)))
        for L in Ls:
            Lt = extend_constants(L)
            assert L.functional_equation_holds()
            assert Lt.functional_equation_holds()
            assert L(-1) * L(1) == Lt(1)
            assert Lt == power_map(L, 2)
        rec.detail = "%d L-polynomials (200 random, q in 2..9, g <= 2)" % len(Ls)


def test_c12_r_lower_bound():
    with criterion(12, None) as rec:
        rep = scan([9], 1, "all", monic=True, summarize_all=True)
        checked = 0
        for m in rep.matches:
            s = m.summary
            if s.ell > s.ell2:
                assert r_lower_bound_holds(s, 9, 1), m.curve.equation()
                checked += 1
        rng = random.Random(8)
        for _ in range(6):
            c = curvekit.random_hyperelliptic(rng, 8, 1)
            s = ell_summary(c)
            if s.ell > s.ell2:
                assert r_lower_bound_holds(s, 8, 1), c.equation()
                checked += 1
        assert checked > 0
        rec.detail = "%d curves over F8/F9 with ell > ell2 satisfy r >= (sqrt(q)-1)^2g / 4" % checked


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
