"""Sweep small families of genus-1 curves and look at the ones with few elliptic points.

    python3 demos/family_scans.py
"""

import time

from drinfeld_elliptic.census import r_lower_bound_holds, scan


def show(title, rep, limit=6):
    print("%s: %d models scanned, %d matches" % (title, rep.scanned, len(rep.matches)))
    for m in rep.matches[:limit]:
        s = m.summary
        print("   %-42s L = %-18s ell=%d ell2=%d r=%d" % (m.curve.equation(), m.lpoly.fmt(), s.ell, s.ell2, s.r))
    if len(rep.matches) > limit:
        print("   ... %d more" % (len(rep.matches) - limit))
    for coeffs, n in sorted(rep.lpoly_groups.items()):
        print("   L coefficients %s: %d" % (list(coeffs), n))
    print()


t0 = time.perf_counter()

# ell = 1: nothing beyond the identity class
show("q = 2, 3, 4, ell = 1", scan([2, 3, 4], 1, "ell:1"))

# class group of exponent two over F_3
show("q = 3, Cl0 = (Z/2)^2", scan([3], 1, "cl0_structure:2,2"))

# all elliptic points self-conjugate (r = 0)
show("q = 9 monic, ell = ell2", scan([9], 1, "ell_eq_ell2", monic=True))

# r against the lower bound for q = 9
rep = scan([9], 1, "all", monic=True, summarize_all=True)
checked = [m for m in rep.matches if m.summary.ell > m.summary.ell2]
print("q = 9 monic: %d curves with ell > ell2, bound holds for all: %s" % (
    len(checked), all(r_lower_bound_holds(m.summary, 9, 1) for m in checked)))
print("smallest r seen:", min(m.summary.r for m in checked))
print()
print(rep.note)
print("%.1f s" % (time.perf_counter() - t0))
