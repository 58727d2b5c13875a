"""The rings A = F_q[x, y] and A~ = F_{q^2}[x, y] of a hyperelliptic model, and their ideals.

An element a(x) + b(x) y is a pair ``(a, b)`` of polynomials.  Ideals are
rank-2 lattices over the polynomial ring, stored as the Hermite normal form of
the row module in coordinates ``(y, 1)``:

    [[b, c],
     [0, a]]      b | a, b | c, deg c < deg a

``b`` is the polynomial content; ``(a/b, -c/b mod a/b)`` is a Mumford pair
whose class is the ideal class.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .algebra.fields import GF, canonical_quadratic, embedding, extension_field
from .algebra.matrix import hnf_contains, matrix_hnf, weak_popov
from .algebra.poly import poly_ring
from .curve import HyperellipticCurve, UnsupportedOperation
from .jacobian import Jacobian

INF = math.inf


class OrderError(ArithmeticError):
    pass


class QuadraticOrder:
    """K[x][y] / (y^2 + h y - f) with K the curve's field (A) or its quadratic extension (A~)."""

    def __init__(self, curve: HyperellipticCurve, extended: bool = False):
        if not isinstance(curve, HyperellipticCurve):
            raise UnsupportedOperation("ideal arithmetic needs a hyperelliptic model")
        self.curve = curve
        self.base = curve.F
        self.extended = extended
        self.K = extension_field(curve.F, 2) if extended else curve.F
        self.emb = embedding(curve.F, self.K)
        self.R = R = poly_ring(self.K)
        self.h = R.map_coeffs(curve.h, self.emb)
        self.f = R.map_coeffs(curve.f, self.emb)
        self.g = curve.g
        self.q = curve.F.q
        self.zero = ((), ())
        self.one = (R.one, ())
        self.y = ((), R.one)
        self.shifts = (2 * self.g + 1, 0)  # columns (y, 1)

    def __repr__(self):
        return "%s(%s)" % ("A~" if self.extended else "A", self.curve.equation())

    # -- elements ---------------------------------------------------------

    def elem(self, a=(), b=()):
        R = self.R
        return (R.norm(a), R.norm(b))

    def const(self, c):
        return (self.R.const(c), ())

    def poly(self, p):
        return (self.R.norm(p), ())

    def add(self, u, v):
        R = self.R
        return (R.add(u[0], v[0]), R.add(u[1], v[1]))

    def sub(self, u, v):
        R = self.R
        return (R.sub(u[0], v[0]), R.sub(u[1], v[1]))

    def neg(self, u):
        R = self.R
        return (R.neg(u[0]), R.neg(u[1]))

    def scale(self, p, u):
        """Multiply by the polynomial p(x)."""
        R = self.R
        return (R.mul(p, u[0]), R.mul(p, u[1]))

    def mul(self, u, v):
        R = self.R
        a1, b1 = u
        a2, b2 = v
        bb = R.mul(b1, b2)
        a = R.add(R.mul(a1, a2), R.mul(bb, self.f))
        b = R.sub(R.add(R.mul(a1, b2), R.mul(a2, b1)), R.mul(bb, self.h))
        return (a, b)

    def square(self, u):
        return self.mul(u, u)

    def nu(self, u):
        """Valuation at the infinite place (x has valuation -2, y has -(2g+1))."""
        a, b = u
        if not a and not b:
            return INF
        va = -2 * (len(a) - 1) if a else INF
        vb = -2 * (len(b) - 1) - (2 * self.g + 1) if b else INF
        return min(va, vb)

    def iota(self, u):
        """The hyperelliptic involution y -> -y - h."""
        R = self.R
        a, b = u
        return (R.sub(a, R.mul(b, self.h)), R.neg(b))

    def norm(self, u):
        """u * iota(u), a polynomial in x over K."""
        R = self.R
        a, b = u
        return R.sub(R.sub(R.mul(a, a), R.mul(R.mul(a, b), self.h)), R.mul(R.mul(b, b), self.f))

    def conj(self, u):
        """Coefficientwise a -> a^q (the Galois action of K~/K)."""
        if not self.extended:
            return u
        K, q, R = self.K, self.q, self.R
        return tuple(R.norm(K.pow(c, q) for c in p) for p in u)

    def divide(self, n, t):
        """n / t if t divides n in the ring, else None."""
        if t == self.zero:
            raise ZeroDivisionError("division by zero in %r" % self)
        R = self.R
        d = self.norm(t)
        m = self.mul(n, self.iota(t))
        qa, ra = R.divmod(m[0], d)
        qb, rb = R.divmod(m[1], d)
        if ra or rb:
            return None
        return (qa, qb)

    def divides(self, t, n) -> bool:
        return self.divide(n, t) is not None

    def normalize_unit(self, u):
        """The associate of u whose leading coefficient at infinity is 1."""
        a, b = u
        if u == self.zero:
            return u
        R, K = self.R, self.K
        if b and (not a or 2 * (len(b) - 1) + 2 * self.g + 1 > 2 * (len(a) - 1)):
            c = R.lc(b)
        else:
            c = R.lc(a)
        ci = K.inv(c)
        return (R.scale(ci, a), R.scale(ci, b))

    def vec(self, u):
        return (u[1], u[0])

    def from_vec(self, v):
        return (self.R.norm(v[1]), self.R.norm(v[0]))

    def lift(self, u, source: "QuadraticOrder"):
        """Carry an element of a sub-order (over the base field) into this order."""
        if source.K is self.K:
            return u
        R = self.R
        return (R.map_coeffs(u[0], self.emb), R.map_coeffs(u[1], self.emb))

    def restrict(self, u):
        """Coefficients back in the base field (raises if some coefficient is not)."""
        R0 = poly_ring(self.base)
        return tuple(R0.norm(self.emb.restrict(c) for c in p) for p in u)

    def fmt(self, u) -> str:
        R = self.R
        a, b = u
        if not b:
            return R.fmt(a)
        yb = "y" if b == R.one else "(%s)y" % R.fmt(b)
        return yb if not a else "%s + %s" % (R.fmt(a), yb)



# -- ideals -----------------------------------------------------------------


@dataclass(frozen=True)
class IdealLattice:
    """A nonzero ideal, as the HNF of its row module in coordinates (y, 1)."""

    order: QuadraticOrder
    rows: tuple

    def __eq__(self, other):
        return isinstance(other, IdealLattice) and self.order is other.order and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    @property
    def content(self):
        return self.rows[0][0]

    @property
    def degree(self) -> int:
        """deg of the lattice determinant, i.e. the degree of its norm down to K[x]."""
        return len(self.rows[0][0]) + len(self.rows[1][1]) - 2

    def contains(self, u) -> bool:
        return hnf_contains(self.order.R, self.rows, self.order.vec(u))

    def basis(self):
        return [self.order.from_vec(r) for r in self.rows]

    def is_unit(self) -> bool:
        R = self.order.R
        return self.rows == ((R.one, ()), ((), R.one))

    def primitive_pair(self):
        """(b, u, v): the content b and the Mumford data of J / b."""
        R = self.order.R
        (b, c), (_, a) = self.rows
        u = R.div_exact(a, b)
        cb = R.div_exact(c, b)
        return b, u, R.mod(R.neg(cb), u)

    def fmt(self) -> str:
        o = self.order
        gens = ", ".join(o.fmt(e) for e in self.basis())
        return "<%s>" % gens


def _lattice(order: QuadraticOrder, vecs) -> IdealLattice:
    rows = matrix_hnf(order.R, vecs)
    if len(rows) != 2:
        raise OrderError("ideal lattice must have rank 2")
    return IdealLattice(order, rows)


def ideal_from_generators(order: QuadraticOrder, gens) -> IdealLattice:
    """The ideal generated by ``gens``: the lattice spanned by g and y*g."""
    vecs = []
    for gn in gens:
        if gn != order.zero:
            vecs.append(order.vec(gn))
            vecs.append(order.vec(order.mul(order.y, gn)))
    if not vecs:
        raise OrderError("all generators are zero")
    J = _lattice(order, vecs)
    for r in J.rows:
        if not J.contains(order.mul(order.y, order.from_vec(r))):
            raise OrderError("lattice is not closed under y")
    return J


def ideal_from_mumford(order: QuadraticOrder, D) -> IdealLattice:
    """The primitive ideal (u, y - v)."""
    R = order.R
    u, v = D
    return _lattice(order, [(R.one, R.neg(v)), ((), u)])


def unit_ideal(order):
    return ideal_from_mumford(order, (order.R.one, ()))


def ideal_mul(I: IdealLattice, J: IdealLattice) -> IdealLattice:
    o = I.order
    vecs = [o.vec(o.mul(a, b)) for a in I.basis() for b in J.basis()]
    return _lattice(o, vecs)


def ideal_conj(J: IdealLattice) -> IdealLattice:
    o = J.order
    return _lattice(o, [o.vec(o.conj(e)) for e in J.basis()])


def ideal_scale(J: IdealLattice, u) -> IdealLattice:
    """u * J for an element u."""
    o = J.order
    return _lattice(o, [o.vec(o.mul(u, e)) for e in J.basis()])


def ideal_divide_poly(J: IdealLattice, p) -> IdealLattice:
    """J / p for a polynomial p dividing every basis entry."""
    o = J.order
    R = o.R
    return _lattice(o, [tuple(R.div_exact(e, p) for e in r) for r in J.rows])


def ideal_iota(J: IdealLattice) -> IdealLattice:
    o = J.order
    return _lattice(o, [o.vec(o.iota(e)) for e in J.basis()])


def principal_ideal(order, u) -> IdealLattice:
    return ideal_from_generators(order, [u])


def ideal_norm(J: IdealLattice, A: QuadraticOrder) -> IdealLattice:
    """N(J) = J conj(J) intersected with A, as an ideal of A (J an ideal of A~)."""
    P = ideal_mul(J, ideal_conj(J))
    o = J.order
    R0 = A.R
    try:
        rows = tuple(tuple(R0.norm(o.emb.restrict(c) for c in e) for e in r) for r in P.rows)
    except Exception as exc:  # the HNF of a Galois-stable lattice has base-field entries
        raise OrderError("J * conj(J) is not defined over the base field") from exc
    return IdealLattice(A, rows)


def extend_ideal(I: IdealLattice, At: QuadraticOrder) -> IdealLattice:
    """I * A~ for an ideal I of A."""
    return IdealLattice(At, tuple(tuple(At.R.map_coeffs(e, At.emb) for e in r) for r in I.rows))


def shortest_vector(J: IdealLattice):
    """A nonzero element of J of least -nu (first row of the weak Popov basis)."""
    o = J.order
    return o.from_vec(weak_popov(o.R, J.rows, o.shifts)[0])


def reduced_basis(J: IdealLattice):
    o = J.order
    return [o.from_vec(r) for r in weak_popov(o.R, J.rows, o.shifts)]


def principal_generator(J: IdealLattice):
    """A generator of J normalized at infinity, or None when J is not principal."""
    o = J.order
    gam = o.normalize_unit(shortest_vector(J))
    if principal_ideal(o, gam) == J:
        return gam
    return None


# -- the pair A, A~ with a fixed epsilon ---------------------------------------


class CurveRings:
    """A, A~ and the fixed generator epsilon of F_{q^2} over F_q for a curve."""

    def __init__(self, curve: HyperellipticCurve, eps: int | None = None):
        curve.require_default_infinity()
        self.curve = curve
        self.A = QuadraticOrder(curve)
        self.At = QuadraticOrder(curve, extended=True)
        F, F2 = curve.F, self.At.K
        self.F, self.F2 = F, F2
        emb = self.At.emb
        if eps is None:
            c0, c1, _ = canonical_quadratic(F)
            eps = min(F2.quadratic_roots(emb(c1), emb(c0)))
        self.eps = eps
        self.eps_bar = F2.pow(eps, F.q)
        if self.eps_bar == eps:
            raise OrderError("epsilon must lie outside F_q")
        self.trace = emb.restrict(F2.add(eps, self.eps_bar))
        self.norm = emb.restrict(F2.mul(eps, self.eps_bar))
        self.curve2 = curve.base_change(2)
        self.jac2 = Jacobian(self.curve2)
        self.jac = Jacobian(curve)
        # c = c0 + eps c1 with c0, c1 in F_q, tabulated for F_{q^2}
        dinv = F2.inv(F2.sub(eps, self.eps_bar))
        split = []
        for c in range(F2.q):
            c1 = F2.mul(F2.sub(c, F2.pow(c, F.q)), dinv)
            c0 = F2.sub(c, F2.mul(eps, c1))
            split.append((emb.restrict(c0), emb.restrict(c1)))
        self._split = split

    def with_eps(self, eps: int) -> "CurveRings":
        return CurveRings(self.curve, eps)

    # elements
    def lift(self, u):
        return self.At.lift(u, self.A)

    def eps_plus(self, s, eps=None):
        """eps + s in A~ for s in A."""
        At = self.At
        e = self.eps if eps is None else eps
        return At.add(At.const(e), self.lift(s))

    def norm_to_A(self, u):
        """u * conj(u) for u in A~, as an element of A."""
        At = self.At
        return At.restrict(At.mul(u, At.conj(u)))

    def split_poly(self, p):
        """p = p0 + eps p1 with p0, p1 over F_q."""
        R0 = self.A.R
        sp = self._split
        return R0.norm(sp[c][0] for c in p), R0.norm(sp[c][1] for c in p)

    # classes
    def ideal_class(self, J: IdealLattice):
        """The Mumford class of an ideal of A~ (content discarded: it is principal)."""
        if J.order is not self.At:
            raise OrderError("ideal_class expects an ideal of A~")
        _, u, v = J.primitive_pair()
        return self.jac2.reduce(u, v)

    def class_ideal(self, D) -> IdealLattice:
        return ideal_from_mumford(self.At, D)

    # decomposition of A~-ideals over A
    def descend(self, J: IdealLattice):
        """(J intersect A, B(J)) where B(J) = {beta in A : alpha + eps beta in J for some alpha}.

        Both are returned as lattices of A in coordinates (y, 1); B(J) also
        comes with, for each of its HNF rows, the A-part alpha of a lift.
        """
        At = self.At
        R0 = self.A.R
        vecs = []
        for r in J.rows:
            for mult in (At.one, At.const(self.eps)):
                e = At.mul(mult, At.from_vec(r))
                b0, b1 = self.split_poly(e[1])
                a0, a1 = self.split_poly(e[0])
                vecs.append((b1, a1, b0, a0))
        H = matrix_hnf(R0, vecs)
        inter = [r[2:] for r in H if not r[0] and not r[1]]
        proj = [r for r in H if r[0] or r[1]]
        if len(inter) != 2 or len(proj) != 2:
            raise OrderError("unexpected rank in the descent of %s" % J.fmt())
        return IdealLattice(self.A, tuple(inter)), tuple(proj)

    def is_A_primitive(self, J: IdealLattice) -> bool:
        _, proj = self.descend(J)
        R0 = self.A.R
        return proj[0][0] == R0.one and proj[1][1] == R0.one


@dataclass(frozen=True)
class NormalForm:
    """J2 = I + (eps + a) A with I = J2 cap A, and mult_new * J2 = mult_old * J."""

    I: IdealLattice
    a: tuple
    J2: IdealLattice
    mult_new: tuple
    mult_old: tuple


NORMAL_FORM_BUDGET = 50_000


def _small_combinations(order: QuadraticOrder, basis, max_deg: int = 2):
    """c1*r1 + c2*r2 with polynomial coefficients of growing degree, up to scaling."""
    R, K = order.R, order.K
    r1, r2 = basis

    def polys(d):
        for coeffs in itertools.product(range(K.q), repeat=d + 1):
            yield R.norm(coeffs)

    for D in range(max_deg + 1):
        for c1 in polys(D):
            for c2 in polys(D):
                if max(len(c1), len(c2)) != D + 1:
                    continue
                lead = c1 if c1 else c2
                if R.lc(lead) != K.one:
                    continue
                yield order.add(order.scale(c1, r1), order.scale(c2, r2))


def normal_form(rings: CurveRings, J: IdealLattice) -> NormalForm:
    """An ideal J2 ~ J of the shape I + (eps + a)A, with explicit multipliers."""
    At = rings.At
    if rings.is_A_primitive(J):
        J2, new, old = J, At.one, At.one
    else:
        b, U, v = J.primitive_pair()
        Jp = ideal_from_mumford(At, (U, v))
        inv = ideal_iota(Jp)
        J2 = None
        for n, w in enumerate(_small_combinations(At, reduced_basis(inv))):
            if n >= NORMAL_FORM_BUDGET:
                break
            if w == At.zero:
                continue
            cand = ideal_divide_poly(ideal_scale(Jp, w), U)
            if rings.is_A_primitive(cand):
                J2 = cand
                new, old = At.poly(At.R.mul(U, b)), w
                break
        if J2 is None:
            raise OrderError("no A-primitive ideal found in the class of %s" % J.fmt())
    I, proj = rings.descend(J2)
    row = proj[1]  # (0, 1, a_y, a_1): the element eps + a
    a = rings.A.elem(row[3], row[2])
    return NormalForm(I, a, J2, new, old)


def equivalence_witness(J1: IdealLattice, J2: IdealLattice):
    """(alpha, beta) with alpha J1 = beta J2, or None if the ideals are not equivalent."""
    o = J1.order
    b2, U2, v2 = J2.primitive_pair()
    Jp2 = ideal_from_mumford(o, (U2, v2))
    P = ideal_mul(J1, ideal_iota(Jp2))
    gam = principal_generator(P)
    if gam is None:
        return None
    alpha = o.poly(o.R.mul(U2, b2))
    return alpha, gam
