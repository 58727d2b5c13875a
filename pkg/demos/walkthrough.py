"""Walk through every invariant for one curve, first by the class-group route
and then by explicit elliptic points, and check the two agree.

    python3 demos/walkthrough.py [demos/curves/f7.curve] [deg-bound]
"""

import sys
import warnings
from pathlib import Path

from drinfeld_elliptic.census import ell_summary, free_product_summary, vertex_census
from drinfeld_elliptic.cli import parse_curve_file
from drinfeld_elliptic.curve import validate
from drinfeld_elliptic.elliptic_points import (
    CoverageWarning,
    check_stabilizer,
    enumerate_points,
    minimal_poly,
    parity_check,
)
from drinfeld_elliptic.jacobian import norm_kernel
from drinfeld_elliptic.orders import CurveRings
from drinfeld_elliptic.zeta import extend_constants, l_polynomial

HERE = Path(__file__).parent


def main(path, bound=3):
    curve = validate(parse_curve_file(Path(path).read_text()))
    print("curve:", curve.equation(), "  delta =", curve.delta)

    # zeta side
    L = l_polynomial(curve)
    print("L(u)  =", L.fmt(), "  class number", L(1))
    print("over F_q^2:", extend_constants(L).fmt())
    print("L(-1) =", L(-1))

    # the norm kernel in Jac(F_q^2)
    K = norm_kernel(curve)
    print("kernel order %d, structure %s, 2-torsion %d" % (K.order, K.structure or "trivial", K.two_torsion_size))

    s = ell_summary(curve, L, K)
    print("ell = %d, ell2 = %d, r = %d" % (s.ell, s.ell2, s.r))
    v = vertex_census(curve, s)
    print("isolated vertices: %d of GL2 type, %d of torus type" % (v.gl2_vertices, v.torus_vertices))
    print("PGL2(A) =", free_product_summary(curve, s)["text"])

    # the other route: search for pairs (s, t) and bucket them by ideal class
    rings = CurveRings(curve)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CoverageWarning)
        res = enumerate_points(rings, bound)
    A = rings.A
    print("\nsearch with degree bound %d reached %d of %d classes" % (bound, *res.coverage))
    for w in caught:
        print("  warning:", w.message)
    for D, pt in res.classes.items():
        st = check_stabilizer(rings, pt)
        mp = minimal_poly(rings, pt)
        ok = parity_check(rings, pt).ok
        print("  %-24s s=%-14s t=%-14s |<M0>|=%-3d  X^2 + (%s)X + (%s)  parity %s" % (
            rings.jac2.fmt(D), A.fmt(pt.s), A.fmt(pt.t), st.order, mp.sigma.fmt(), mp.tau.fmt(), "ok" if ok else "BAD"))
    if res.complete:
        print("both routes give", s.ell, "orbits")


if __name__ == "__main__":
    path = sys.argv[1] if len(sys.argv) > 1 else HERE / "curves" / "f7.curve"
    bound = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    main(path, bound)
