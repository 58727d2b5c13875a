"""|Ell|, |Ell_2|, r, isolated vertices, free-product summaries and curve-family scans."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.fields import fq_make, is_prime
from .algebra.poly import poly_ring
from .curve import CurveError, CurveSpec, HyperellipticCurve, validate
from .jacobian import Jacobian, JacobianGroup, norm_kernel
from .zeta import LPoly, compare_with_bound, ell_count, l_polynomial

log = logging.getLogger(__name__)

SCAN_BUDGET = 20_000  # curve models per scan


class CensusError(ArithmeticError):
    pass


class FamilyTooLarge(ValueError):
    pass


@dataclass
class OrbitRecord:
    cls: tuple  # Mumford pair over F_{q^2}
    self_conjugate: bool
    point: object = None  # EllipticPoint when the search reached the class


@dataclass
class EllSummary:
    ell: int
    ell2: int
    r: int
    kernel: tuple  # invariant factors
    lpoly: LPoly
    orbits: list = field(default_factory=list)

    def as_dict(self):
        return {
            "ell": self.ell,
            "ell2": self.ell2,
            "r": self.r,
            "kernel": list(self.kernel),
            "lpoly": list(self.lpoly.coeffs),
        }


def ell_summary(curve: HyperellipticCurve, L: LPoly | None = None, kernel=None) -> EllSummary:
    """ell from the norm kernel (checked against L(-1)), ell2 from its 2-torsion, r = (ell - ell2)/2."""
    curve.require_odd_delta()
    if L is None:
        L = l_polynomial(curve)
    if kernel is None:
        kernel = norm_kernel(curve)
    ell = kernel.order
    if ell != ell_count(L, curve.delta):
        raise CensusError("kernel order %d differs from L(-1) = %d" % (ell, L(-1)))
    two = kernel.group.two_torsion()
    ell2 = len(two)
    if (ell - ell2) % 2:
        raise CensusError("ell - ell2 = %d is odd" % (ell - ell2))
    twoset = set(two)
    orbits = [OrbitRecord(D, D in twoset) for D in kernel.group.elements]
    return EllSummary(ell, ell2, (ell - ell2) // 2, kernel.structure, L, orbits)


@dataclass
class VertexCensus:
    q: int
    gl2_vertices: int
    gl2_order: int
    torus_vertices: int
    torus_order: int

    def as_dict(self):
        return {
            "gl2_vertices": self.gl2_vertices,
            "gl2_stabilizer_order": self.gl2_order,
            "torus_vertices": self.torus_vertices,
            "torus_stabilizer_order": self.torus_order,
        }


def vertex_census(curve: HyperellipticCurve, summary: EllSummary | None = None) -> VertexCensus:
    if curve.delta != 1:
        raise CurveError("isolated-vertex census needs delta = 1")
    s = summary or ell_summary(curve)
    q = curve.F.q
    return VertexCensus(q, s.ell2, q * (q - 1) ** 2 * (q + 1), s.r, q * q - 1)


def free_product_summary(curve: HyperellipticCurve, summary: EllSummary | None = None) -> dict:
    """Text of the free-product shape; the remainder factor is not computed."""
    if curve.delta != 1:
        raise CurveError("free-product summary needs delta = 1")
    s = summary or ell_summary(curve)
    q = curve.F.q
    cyc = "Z/%dZ" % (q + 1)
    if s.r == 0:
        text = "(remainder)"
    elif s.r <= 3:
        text = " ⋆ ".join([cyc] * s.r + ["(remainder)"])
    else:
        text = "(⋆_{i=1}^%d %s) ⋆ (remainder)" % (s.r, cyc)
    note = "GL_2(F_%d) ⋆_{B_2(F_%d)} H" % (q, q)
    return {"text": text, "amalgams": [note] * s.ell2, "r": s.r, "cyclic_order": q + 1}


# -- scans ----------------------------------------------------------------------


def _polys_exact(R, d, lead_any=True):
    F = R.F
    tops = range(1, F.q) if lead_any else [F.one]
    for lower in itertools.product(range(F.q), repeat=d):
        for top in tops:
            yield lower + (top,)


def _polys_upto(R, d):
    F = R.F
    for coeffs in itertools.product(range(F.q), repeat=d + 1):
        yield R.norm(coeffs)


def family(p: int, m: int, genus: int, monic: bool = False):
    """All imaginary hyperelliptic models y^2 + h y = f of the given genus over F_{p^m}.

    Odd characteristic: h = 0, deg f = 2g + 1.  Characteristic 2: h != 0 with
    deg h <= g.  ``monic`` restricts to monic f.  Singular models are skipped.
    """
    F = fq_make(p, m)
    R = poly_ring(F)
    hs = [()] if p != 2 else [h for h in _polys_upto(R, genus) if h]
    for h in hs:
        for f in _polys_exact(R, 2 * genus + 1, lead_any=not monic):
            spec = CurveSpec(p, m, "hyperelliptic", genus, h, R.norm(f))
            try:
                yield validate(spec)
            except CurveError:
                continue


def family_size(q: int, p: int, genus: int, monic: bool) -> int:
    nf = q ** (2 * genus + 1) * (1 if monic else q - 1)
    nh = 1 if p != 2 else q ** (genus + 1) - 1
    return nf * nh


def _power_of_two(n):
    return n > 0 and n & (n - 1) == 0


@dataclass
class Predicate:
    name: str
    test: object  # (record) -> bool
    needs_kernel: object  # (L) -> bool: whether the kernel is required to decide
    needs_jac: object = None  # (L) -> bool


def parse_predicate(text: str) -> Predicate:
    name, _, arg = text.partition(":")
    if name == "all":
        return Predicate(text, lambda rec: True, lambda L: False)
    if name == "ell":
        n = int(arg)
        return Predicate(text, lambda rec: rec.lpoly(-1) == n, lambda L: False)
    if name == "ell_eq_ell2":
        # ell = ell2 forces ell to be a power of two, so the kernel is only built then
        return Predicate(
            text,
            lambda rec: rec.summary is not None and rec.summary.ell == rec.summary.ell2,
            lambda L: _power_of_two(L(-1)),
        )
    if name == "cl0_structure":
        want = tuple(sorted(int(v) for v in arg.split(","))) if arg else ()
        order = 1
        for v in want:
            order *= v
        return Predicate(
            text,
            lambda rec: rec.cl0 is not None and rec.cl0 == want,
            lambda L: False,
            lambda L: L(1) == order,
        )
    if name == "cl0_exponent2":
        return Predicate(
            text,
            lambda rec: rec.cl0 is not None and all(d == 2 for d in rec.cl0),
            lambda L: False,
            lambda L: _power_of_two(L(1)),
        )
    raise ValueError("unknown predicate %r" % text)


@dataclass
class ScanRecord:
    curve: HyperellipticCurve
    lpoly: LPoly
    summary: EllSummary | None = None
    cl0: tuple | None = None

    def as_dict(self):
        c = self.curve
        out = {
            "q": c.F.q,
            "genus": c.g,
            "equation": c.equation(),
            "h": list(c.h),
            "f": list(c.f),
            "lpoly": list(self.lpoly.coeffs),
            "ell": self.lpoly(-1),
            "class_number": self.lpoly(1),
        }
        if self.summary is not None:
            out.update(ell2=self.summary.ell2, r=self.summary.r, kernel=list(self.summary.kernel))
        if self.cl0 is not None:
            out["cl0"] = list(self.cl0)
        return out


@dataclass
class ScanReport:
    qs: list
    genus: int
    predicate: str
    scanned: int
    matches: list
    lpoly_groups: dict  # L coefficients -> number of matches sharing it
    note: str = (
        "matches are curve equations in the scanned window only; "
        "coincident L-polynomials do not imply isomorphic curves"
    )


def _field_params(q: int):
    for p in range(2, q + 1):
        if is_prime(p):
            m, n = 0, q
            while n % p == 0:
                n //= p
                m += 1
            if n == 1:
                return p, m
    raise ValueError("%d is not a prime power" % q)


def scan(qs, genus: int, predicate: str = "all", monic: bool = False, budget: int = SCAN_BUDGET, summarize_all: bool = False) -> ScanReport:
    """Run the predicate over every model in the family, in a deterministic order.

    L is computed for every curve; the norm kernel and Jac(F_q) only when the
    predicate needs them (or for every curve with ``summarize_all``).
    """
    pred = parse_predicate(predicate)
    total = 0
    params = []
    for q in qs:
        p, m = _field_params(q)
        params.append((q, p, m))
        total += family_size(q, p, genus, monic)
    if total > budget:
        raise FamilyTooLarge("family has %d models, budget is %d" % (total, budget))
    matches = []
    scanned = 0
    for q, p, m in params:
        for c in family(p, m, genus, monic):
            scanned += 1
            L = l_polynomial(c)
            rec = ScanRecord(c, L)
            if summarize_all or pred.needs_kernel(L):
                rec.summary = ell_summary(c, L)
            if pred.needs_jac is not None and pred.needs_jac(L):
                rec.cl0 = Jacobian(c).group().structure
            if pred.test(rec):
                if rec.summary is None:
                    rec.summary = ell_summary(c, L)
                matches.append(rec)
    groups = {}
    for rec in matches:
        groups[rec.lpoly.coeffs] = groups.get(rec.lpoly.coeffs, 0) + 1
    return ScanReport(list(qs), genus, predicate, scanned, matches, groups)


def r_lower_bound_holds(summary: EllSummary, q: int, g: int) -> bool:
    """r >= (1/4)(sqrt(q) - 1)^(2g), decided exactly."""
    return compare_with_bound(summary.r, q, g, Fraction(1, 4)) >= 0
