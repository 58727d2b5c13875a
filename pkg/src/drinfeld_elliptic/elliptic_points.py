"""Elliptic points omega = (eps + s)/t of GL2(A), their ideals, orbits and stabilizers.

A pair (s, t) of elements of A gives an elliptic point exactly when t divides
N(eps + s) = (eps + s)(eps^q + s) in A; then t' = N(eps + s)/t.  Orbits are
told apart by the ideal class of J = tA~ + (eps + s)A~, which lies in the
kernel of the norm map Cl^0(K~) -> Cl^0(K).
"""

from __future__ import annotations

import itertools
import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebra.matrix import hnf_contains, hnf_reduce
from .algebra.poly import ResidueField, poly_ring
from .curve import HyperellipticCurve
from .jacobian import NormKernel, norm_kernel
from .orders import (
    CurveRings,
    IdealLattice,
    ideal_conj,
    ideal_from_generators,
    ideal_norm,
    normal_form,
    principal_generator,
    principal_ideal,
)

log = logging.getLogger(__name__)

SEARCH_BUDGET = 50_000_000  # residue tests per search
MAX_COMPONENT_CANDIDATES = 10**6


class EllipticError(ArithmeticError):
    """A structural statement failed to hold (fatal)."""


class BoundTooLarge(ValueError):
    pass


class CoverageWarning(UserWarning):
    pass


@dataclass(frozen=True)
class EllipticPoint:
    """omega = (eps + s)/t with (eps^q + s)(eps + s) = t t'."""

    s: tuple
    t: tuple
    tp: tuple

    def fmt(self, rings: CurveRings) -> str:
        A = rings.A
        return "s=%s  t=%s  t'=%s" % (A.fmt(self.s), A.fmt(self.t), A.fmt(self.tp))


def eps_norm(rings: CurveRings, s):
    """N(eps + s) = s^2 + (eps + eps^q) s + eps^(q+1), an element of A."""
    A = rings.A
    n = A.add(A.mul(s, s), A.scale(A.R.const(rings.trace), s))
    return A.add(n, A.const(rings.norm))


def is_elliptic_pair(rings: CurveRings, s, t):
    """t' when (s, t) is elliptic, else None."""
    A = rings.A
    if t == A.zero:
        raise ValueError("t must be nonzero")
    return A.divide(eps_norm(rings, s), t)


def make_point(rings: CurveRings, s, t) -> EllipticPoint:
    tp = is_elliptic_pair(rings, s, t)
    if tp is None:
        raise EllipticError("(s, t) = (%s, %s) is not elliptic" % (rings.A.fmt(s), rings.A.fmt(t)))
    return EllipticPoint(s, t, tp)


def j_ideal(rings: CurveRings, pt: EllipticPoint, eps=None) -> IdealLattice:
    """J = t A~ + (eps + s) A~."""
    return ideal_from_generators(rings.At, [rings.lift(pt.t), rings.eps_plus(pt.s, eps)])


def point_class(rings: CurveRings, pt: EllipticPoint, eps=None):
    return rings.ideal_class(j_ideal(rings, pt, eps))


def is_self_conjugate(rings: CurveRings, D) -> bool:
    J = rings.jac2
    return J.add(D, D) == J.identity


# -- search -------------------------------------------------------------------


def _polys(R, d: int, monic: bool):
    """Polynomials of degree exactly d (monic if asked); d = -1 gives only zero."""
    F = R.F
    if d < 0:
        yield ()
        return
    tops = [F.one] if monic else list(range(1, F.q))
    for lower in itertools.product(range(F.q), repeat=d):
        for top in tops:
            yield R.norm(lower + (top,))


def _polys_upto(R, d: int):
    for k in range(-1, d + 1):
        yield from _polys(R, k, monic=False)


def t_candidates(rings: CurveRings, bound: int):
    """Nonzero t = a + b y with deg a, deg b <= bound, one per unit class, by increasing -nu(t)."""
    A = rings.A
    R = A.R
    g = A.g
    top = 2 * bound + 2 * g + 1
    for w in range(0, top + 1):
        if w % 2 == 0:
            k = w // 2
            if k > bound:
                continue
            bmax = min(bound, (w - 2 * g - 2) // 2) if w >= 2 * g + 2 else -1
            for a in _polys(R, k, monic=True):
                for b in _polys_upto(R, bmax):
                    yield (a, b)
        else:
            if (w - 2 * g - 1) < 0 or (w - 2 * g - 1) % 2:
                continue
            db = (w - 2 * g - 1) // 2
            if db > bound:
                continue
            amax = min(bound, (w - 1) // 2)
            for b in _polys(R, db, monic=True):
                for a in _polys_upto(R, amax):
                    yield (a, b)


def residues(rings: CurveRings, tA: IdealLattice):
    """Representatives of A / tA (s = alpha + beta y reduced against the HNF)."""
    R = rings.A.R
    F = R.F
    (b0, _), (_, a0) = tA.rows
    db, da = len(b0) - 1, len(a0) - 1
    for bc in itertools.product(range(F.q), repeat=db):
        beta = R.norm(bc)
        for ac in itertools.product(range(F.q), repeat=da):
            yield (R.norm(ac), beta)


class _FieldTables:
    """Addition and multiplication tables of F_q as numpy arrays."""

    _cache = {}

    def __new__(cls, F):
        if F.q in cls._cache and cls._cache[F.q].F is F:
            return cls._cache[F.q]
        self = super().__new__(cls)
        self.F = F
        q = F.q
        els = list(F.elements())
        self.add = np.array([[F.add(a, b) for b in els] for a in els], dtype=np.int32)
        self.mul = np.array([[F.mul(a, b) for b in els] for a in els], dtype=np.int32)
        cls._cache[q] = self
        return self


def _coords(R, tA, z, da, db):
    """F_q-coordinates of z mod tA: alpha coefficients then beta coefficients."""
    beta, alpha = hnf_reduce(R, tA.rows, (z[1], z[0]))
    return [alpha[i] if i < len(alpha) else 0 for i in range(da)] + [
        beta[j] if j < len(beta) else 0 for j in range(db)
    ]


def _scan_residues(rings: CurveRings, tA: IdealLattice, chunk: int = 1 << 18):
    """Indices (in the order of ``residues``) of s with N(eps + s) = 0 mod tA.

    N(eps + s) mod tA is a quadratic map in the coordinates of s, so it is
    evaluated for every residue at once; hits are re-verified exactly by the caller.
    """
    A = rings.A
    R = A.R
    F = rings.F
    q = F.q
    T = _FieldTables(F)
    (b0, _), (_, a0) = tA.rows
    da, db = len(a0) - 1, len(b0) - 1
    D = da + db
    basis = [(R.shift(R.one, i), ()) for i in range(da)] + [((), R.shift(R.one, j)) for j in range(db)]
    const = _coords(R, tA, A.const(rings.norm), da, db)
    lin = [_coords(R, tA, A.scale(R.const(rings.trace), e), da, db) for e in basis]
    quad = {}
    for i in range(D):
        for j in range(i, D):
            prod = A.mul(basis[i], basis[j])
            if i != j:
                prod = A.add(prod, prod)
            quad[i, j] = _coords(R, tA, prod, da, db)
    total = q**D
    # digit k of the residue index: alpha digits come last (fastest), in order
    order = list(range(db)) + list(range(da))  # position -> coordinate
    weights = {}
    for pos in range(D):
        coord = (da + order[pos]) if pos < db else order[pos]
        weights[coord] = q ** (D - 1 - pos)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        c = [(idx // weights[k]) % q for k in range(D)]
        hit = np.ones(idx.shape, dtype=bool)
        for k in range(D):
            acc = np.full(idx.shape, const[k], dtype=np.int32)
            for i in range(D):
                if lin[i][k]:
                    acc = T.add[acc, T.mul[lin[i][k], c[i]]]
            for (i, j), v in quad.items():
                if v[k]:
                    acc = T.add[acc, T.mul[v[k], T.mul[c[i], c[j]]]]
            hit &= acc == 0
            if not hit.any():
                break
        for r in idx[hit]:
            yield int(r)


def _residue_at(rings: CurveRings, tA: IdealLattice, r: int):
    R = rings.A.R
    q = rings.F.q
    (b0, _), (_, a0) = tA.rows
    da, db = len(a0) - 1, len(b0) - 1
    digits = []
    for _ in range(da + db):
        r, d = divmod(r, q)
        digits.append(d)
    digits.reverse()
    return (R.norm(digits[db:]), R.norm(digits[:db]))


@dataclass
class PointSearch:
    """Outcome of enumerate_points."""

    points: list  # one representative per class, ordered by kernel class
    classes: dict  # kernel class -> representative
    kernel: NormKernel
    bound: int
    pairs_found: int = 0
    t_tested: int = 0
    residues_tested: int = 0
    exhausted: bool = False  # whole search space within the bound was scanned
    max_t_nu: int = 0  # largest -nu(t) among the representatives
    max_component_degree: int = 0
    warnings: list = field(default_factory=list)

    @property
    def coverage(self):
        return len(self.classes), self.kernel.order

    @property
    def complete(self) -> bool:
        return len(self.classes) == self.kernel.order


def enumerate_points(
    rings: CurveRings,
    bound: int = 3,
    kernel: NormKernel | None = None,
    early_stop: bool = True,
    budget: int = SEARCH_BUDGET,
    vectorized: bool = True,
) -> PointSearch:
    """Search elliptic pairs (s, t) with components of degree <= bound.

    t runs over A up to units in increasing -nu(t); for each t every residue
    s mod tA is tested.  Each new ideal class keeps its first point.  With
    ``early_stop`` the scan ends as soon as every kernel class is covered.
    The residue test runs through numpy unless ``vectorized`` is False; both
    paths visit residues in the same order.
    """
    A = rings.A
    if bound < 0:
        raise ValueError("degree bound must be non-negative")
    if rings.F.q ** (bound + 1) > MAX_COMPONENT_CANDIDATES:
        raise BoundTooLarge("q^(B+1) = %d^%d candidates per component is too many" % (rings.F.q, bound + 1))
    if kernel is None:
        kernel = norm_kernel(rings.curve)
    res = PointSearch([], {}, kernel, bound)
    target = kernel.order
    done = False
    for t in t_candidates(rings, bound):
        res.t_tested += 1
        tA = principal_ideal(A, t)
        size = rings.F.q ** tA.degree
        if res.residues_tested + size > budget:
            res.warnings.append("search budget exhausted at t = %s" % A.fmt(t))
            done = True
            break
        if vectorized:
            cands = (_residue_at(rings, tA, r) for r in _scan_residues(rings, tA))
            res.residues_tested += size
        else:
            cands = residues(rings, tA)
        for s in cands:
            if not vectorized:
                res.residues_tested += 1
            n = eps_norm(rings, s)
            if not hnf_contains(A.R, tA.rows, A.vec(n)):
                continue
            res.pairs_found += 1
            pt = EllipticPoint(s, t, A.divide(n, t))
            D = point_class(rings, pt)
            if D not in kernel.group:
                raise EllipticError("class of %s lies outside the norm kernel" % pt.fmt(rings))
            if D not in res.classes:
                res.classes[D] = pt
                if early_stop and len(res.classes) == target:
                    done = True
                    break
        if done:
            break
    else:
        res.exhausted = True
    key = kernel.jac2.key
    res.points = [res.classes[D] for D in sorted(res.classes, key=key)]
    if res.points:
        res.max_t_nu = max(-A.nu(p.t) for p in res.points)
        res.max_component_degree = max(max(len(c) - 1 for c in p.s + p.t) for p in res.points)
    if not res.complete:
        msg = "only %d of %d kernel classes reached with degree bound %d" % (len(res.classes), target, bound)
        res.warnings.append(msg)
        warnings.warn(msg, CoverageWarning, stacklevel=2)
    return res


def point_from_class(rings: CurveRings, D) -> EllipticPoint:
    """An elliptic point in a given kernel class, via the normal form of its ideal.

    J2 = I + (eps + a)A with N(J2) = I; when the class is in the kernel, I is
    principal, I = tA, and (a, t) is elliptic.
    """
    A = rings.A
    nf = normal_form(rings, rings.class_ideal(D))
    if ideal_norm(nf.J2, A) != nf.I:
        raise EllipticError("normal form ideal has norm different from its intersection with A")
    t = principal_generator(nf.I)
    if t is None:
        raise EllipticError("norm of a kernel class is not principal")
    pt = make_point(rings, nf.a, t)
    if point_class(rings, pt) != D:
        raise EllipticError("constructed point lands in a different class")
    return pt


def orbit_classes(rings: CurveRings, points, kernel: NormKernel) -> dict:
    """kernel class -> first point with that class; every class must be in the kernel."""
    out = {}
    for pt in points:
        D = point_class(rings, pt)
        if D not in kernel.group:
            raise EllipticError("class of %s lies outside the norm kernel" % pt.fmt(rings))
        out.setdefault(D, pt)
    return out


# -- fractions of K~ and the Moebius action -------------------------------------


class Frac:
    """Elements num/den of the fraction field of an order, den a nonzero polynomial in x."""

    def __init__(self, order, num, den=None):
        R = order.R
        self.o = order
        den = R.one if den is None else den
        if not den:
            raise ZeroDivisionError("zero denominator")
        c = R.F.inv(R.lc(den))
        self.num = (R.scale(c, num[0]), R.scale(c, num[1]))
        self.den = R.scale(c, den)

    def __eq__(self, other):
        o = self.o
        return o.scale(other.den, self.num) == o.scale(self.den, other.num)

    def __hash__(self):
        raise TypeError("Frac is unhashable")

    def __repr__(self):
        return "Frac(%s)" % self.fmt()

    def __add__(self, other):
        o = self.o
        num = o.add(o.scale(other.den, self.num), o.scale(self.den, other.num))
        return Frac(o, num, o.R.mul(self.den, other.den))

    def __neg__(self):
        return Frac(self.o, self.o.neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        o = self.o
        return Frac(o, o.mul(self.num, other.num), o.R.mul(self.den, other.den))

    def inverse(self):
        o = self.o
        if self.num == o.zero:
            raise ZeroDivisionError("inverse of zero")
        nrm = o.norm(self.num)
        return Frac(o, o.scale(self.den, o.iota(self.num)), nrm)

    def __truediv__(self, other):
        return self * other.inverse()

    def is_zero(self):
        return self.num == self.o.zero

    def conj(self):
        o = self.o
        den = (o.R.norm(self.den), ())
        return Frac(o, o.conj(self.num), o.conj(den)[0])

    def fmt(self):
        o = self.o
        if self.den == o.R.one:
            return o.fmt(self.num)
        return "(%s)/(%s)" % (o.fmt(self.num), o.R.fmt(self.den))


def omega(rings: CurveRings, pt: EllipticPoint, eps=None) -> Frac:
    At = rings.At
    return Frac(At, rings.eps_plus(pt.s, eps)) / Frac(At, rings.lift(pt.t))


def mobius(rings: CurveRings, M, w: Frac) -> Frac:
    """(a w + b) / (c w + d) for M = (a, b, c, d) with entries in A."""
    At = rings.At
    a, b, c, d = (Frac(At, rings.lift(e)) for e in M)
    return (a * w + b) / (c * w + d)


# -- stabilizers ---------------------------------------------------------------


def mat_mul(A, M, N):
    a, b, c, d = M
    e, f, g, h = N
    return (
        A.add(A.mul(a, e), A.mul(b, g)),
        A.add(A.mul(a, f), A.mul(b, h)),
        A.add(A.mul(c, e), A.mul(d, g)),
        A.add(A.mul(c, f), A.mul(d, h)),
    )


def mat_det(A, M):
    a, b, c, d = M
    return A.sub(A.mul(a, d), A.mul(b, c))


@dataclass
class Stabilizer:
    M0: tuple  # (s', -t', t, -s)
    det: int  # eps^(q+1), an element of F_q
    trace: int
    order: int  # multiplicative order of M0
    span_size: int  # invertible elements of {alpha I + beta M0}
    closed: bool
    fixes_omega: bool
    fixes_conjugate: bool


def stabilizer_generator(rings: CurveRings, pt: EllipticPoint) -> tuple:
    A = rings.A
    sp = A.add(A.const(rings.trace), pt.s)
    return (sp, A.neg(pt.tp), pt.t, A.neg(pt.s))


def span(rings: CurveRings, M0) -> list:
    """alpha I + beta M0 over (alpha, beta) in F_q^2 minus (0, 0)."""
    A = rings.A
    F = rings.F
    R = A.R
    out = []
    for al in F.elements():
        for be in F.elements():
            if al == 0 and be == 0:
                continue
            sc = R.const(be)
            M = tuple(A.scale(sc, e) for e in M0)
            M = (A.add(M[0], A.const(al)), M[1], M[2], A.add(M[3], A.const(al)))
            out.append(M)
    return out


def check_stabilizer(rings: CurveRings, pt: EllipticPoint, exhaustive: bool | None = None) -> Stabilizer:
    """M0 and the group it spans with the scalars, checked exactly."""
    A = rings.A
    F = rings.F
    M0 = stabilizer_generator(rings, pt)
    det = mat_det(A, M0)
    if det != A.const(rings.norm):
        raise EllipticError("det M0 != eps^(q+1)")
    trace = A.add(M0[0], M0[3])
    if trace != A.const(rings.trace):
        raise EllipticError("trace M0 != eps + eps^q")
    ident = (A.one, A.zero, A.zero, A.one)
    P, order = M0, 1
    while P != ident:
        P = mat_mul(A, P, M0)
        order += 1
        if order > F.q**2:
            raise EllipticError("M0 has order larger than q^2 - 1")
    w = omega(rings, pt)
    fixes = mobius(rings, M0, w) == w
    fixes_bar = mobius(rings, M0, w.conj()) == w.conj()
    if exhaustive is None:
        exhaustive = F.q <= 9
    elems = span(rings, M0)
    invertible = []
    for M in elems:
        d = mat_det(A, M)
        if d[1] or len(d[0]) != 1:
            raise EllipticError("span element with non-constant determinant")
        invertible.append(M)
    closed = True
    if exhaustive:
        S = set(invertible)
        for M in invertible:
            if mobius(rings, M, w) != w:
                fixes = False
            for N in invertible:
                if mat_mul(A, M, N) not in S:
                    closed = False
                    break
            if not closed:
                break
    return Stabilizer(M0, rings.norm, rings.trace, order, len(set(invertible)), closed, fixes, fixes_bar)


def eps_order(rings: CurveRings) -> int:
    F2 = rings.F2
    n = F2.q - 1
    e, k = rings.eps, 1
    x = e
    while x != 1:
        x = F2.mul(x, e)
        k += 1
    return k


@dataclass
class MinimalPoly:
    sigma: Frac  # elements of K, as fractions over A
    tau: Frac


def minimal_poly(rings: CurveRings, pt: EllipticPoint) -> MinimalPoly:
    """X^2 + sigma X + tau with sigma = (d - a)/c, tau = -b/c from M0 = [[a, b], [c, d]]."""
    A = rings.A
    a, b, c, d = stabilizer_generator(rings, pt)
    sigma = Frac(A, A.sub(d, a)) / Frac(A, c)
    tau = Frac(A, A.neg(b)) / Frac(A, c)
    # direct expansion: sigma = -(eps + eps^q + 2 s)/t, tau = N(eps + s)/t^2
    two_s = A.add(pt.s, pt.s)
    sig2 = Frac(A, A.neg(A.add(A.const(rings.trace), two_s))) / Frac(A, pt.t)
    tau2 = Frac(A, eps_norm(rings, pt.s)) / Frac(A, A.mul(pt.t, pt.t))
    if not (sigma == sig2 and tau == tau2):
        raise EllipticError("the two routes to the minimal polynomial disagree")
    At = rings.At
    w = omega(rings, pt)
    lift = lambda fr: Frac(At, rings.lift(fr.num), At.R.map_coeffs(fr.den, At.emb))
    val = w * w + lift(sigma) * w + lift(tau)
    if not val.is_zero():
        raise EllipticError("omega does not satisfy its minimal polynomial")
    return MinimalPoly(sigma, tau)


# -- parity of t -----------------------------------------------------------------


@dataclass
class ParityReport:
    nu_t: int
    primes: list  # (monic irreducible P, place degree, ramification)

    @property
    def ok(self) -> bool:
        return self.nu_t % 2 == 0 and all(d % 2 == 0 for _, d, _ in self.primes)


def primes_dividing(curve: HyperellipticCurve, t):
    """Places of A dividing tA, as (P, degree, ramification)."""
    R = curve.R
    nt = QuadraticNorm(curve)(t)
    out = []
    if R.deg(nt) <= 0:
        return out
    for P, _ in R.factor(nt):
        RF = ResidueField(R, P)
        for pl in curve.places_above(P):
            if pl.branch is not None and pl.ramification == 1:
                val = RF.add(RF.reduce(t[0]), RF.mul(RF.reduce(t[1]), pl.branch))
                if val != RF.zero:
                    continue
            out.append((P, pl.degree, pl.ramification))
    return out


class QuadraticNorm:
    def __init__(self, curve):
        self.R, self.h, self.f = curve.R, curve.h, curve.f

    def __call__(self, u):
        R = self.R
        a, b = u
        return R.sub(R.sub(R.mul(a, a), R.mul(R.mul(a, b), self.h)), R.mul(R.mul(b, b), self.f))


def parity_check(rings: CurveRings, pt: EllipticPoint) -> ParityReport:
    rep = ParityReport(int(rings.A.nu(pt.t)), primes_dividing(rings.curve, pt.t))
    if not rep.ok:
        raise EllipticError("parity fails for %s: nu(t) = %d, primes %s" % (pt.fmt(rings), rep.nu_t, rep.primes))
    return rep


# -- further structural checks -------------------------------------------------------


def eps_independent(rings: CurveRings, pt: EllipticPoint, alpha: int, beta: int) -> bool:
    """J computed with eps' = alpha eps + beta and (s', t') = (alpha s - beta, alpha t) is unchanged."""
    A, F = rings.A, rings.F
    emb = rings.At.emb
    F2 = rings.F2
    eps2 = F2.add(F2.mul(emb(alpha), rings.eps), emb(beta))
    s2 = A.sub(A.scale(A.R.const(alpha), pt.s), A.const(beta))
    t2 = A.scale(A.R.const(alpha), pt.t)
    J1 = j_ideal(rings, pt)
    J2 = ideal_from_generators(rings.At, [rings.lift(t2), rings.eps_plus(s2, eps2)])
    return J1 == J2


def conjugate_class(rings: CurveRings, pt: EllipticPoint):
    """Class of J built with eps^q in place of eps."""
    return point_class(rings, pt, rings.eps_bar)


def spans_meet_in_scalars(rings: CurveRings, points) -> bool:
    """Distinct stabilizer groups share only scalars; omega and its conjugate share the group."""
    A, F = rings.A, rings.F
    scalars = {(A.const(a), A.zero, A.zero, A.const(a)) for a in F.nonzero()}
    data = []
    for pt in points:
        data.append((omega(rings, pt), set(span(rings, stabilizer_generator(rings, pt)))))
    for i in range(len(data)):
        for j in range(i + 1, len(data)):
            wi, Si = data[i]
            wj, Sj = data[j]
            inter = Si & Sj
            if wj == wi or wj == wi.conj():
                if inter != Si:
                    return False
            elif inter != scalars:
                return False
    return True
