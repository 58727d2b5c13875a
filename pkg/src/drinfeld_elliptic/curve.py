"""Curve models of the function field K, places, and point counts.

Two kinds of model are supported:

* ``hyperelliptic``: the imaginary model y^2 + h(x) y = f(x) with
  deg f = 2g + 1 and deg h <= g.  It has a single degree-one place over
  x = infinity, which is the default infinite place (delta = 1).  All of the
  class group and elliptic-point machinery runs on this kind.
* ``plane``: C(x, y) = 0, monic in y, with nonsingular projective closure.
  Only point counting and L-polynomials are available.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.fields import FieldError, GF, embedding, extension_field, fq_make
from .algebra.poly import PolyRing, ResidueField, poly_ring


class CurveError(ValueError):
    """The model is invalid (singular, wrong genus, malformed)."""


class UnsupportedOperation(CurveError):
    pass


class DeltaParityError(CurveError):
    """Elliptic points were requested but the infinite place has even degree."""


COUNT_BOUND = 2**20


def _elem(F: GF, c) -> int:
    if isinstance(c, (list, tuple)):
        return F.from_digits(c)
    if isinstance(c, bool) or not isinstance(c, int):
        raise CurveError("coefficient %r is neither an integer nor a digit list" % (c,))
    if F.m > 1 and c >= F.p:
        raise CurveError("coefficient %d is not a prime-field scalar; use a digit list" % c)
    return c % F.p


def _poly(F: GF, coeffs) -> tuple:
    return poly_ring(F).norm(_elem(F, c) for c in coeffs)


@dataclass(frozen=True)
class CurveSpec:
    """Input model of K.  Polynomials hold field encodings, constant term first."""

    p: int
    m: int
    kind: str
    genus: int
    h: tuple = ()
    f: tuple = ()
    C: tuple = ()
    infinity: tuple | None = None

    @classmethod
    def hyperelliptic(cls, p, m, h, f, genus, infinity=None):
        F = fq_make(p, m)
        inf = None if infinity is None else _poly(F, infinity)
        return cls(p, m, "hyperelliptic", genus, _poly(F, h), _poly(F, f), (), inf)

    @classmethod
    def plane(cls, p, m, C, genus):
        F = fq_make(p, m)
        rows = tuple(_poly(F, row) for row in C)
        while rows and not rows[-1]:
            rows = rows[:-1]
        return cls(p, m, "plane", genus, (), (), rows, None)

    @property
    def field(self) -> GF:
        return fq_make(self.p, self.m)


@dataclass(frozen=True)
class Place:
    """A place of K.  ``poly`` is None for the place at infinity.

    ``branch`` is the residue class of y for places over a finite p(x)
    (None when p(x) is inert).  ``ramification`` is the ramification index
    over the rational function field.
    """

    poly: tuple | None
    degree: int
    ramification: int = 1
    branch: tuple | None = None


def validate(spec: CurveSpec):
    """Check the model and return a curve object."""
    F = spec.field
    if spec.genus < 0:
        raise CurveError("genus must be non-negative")
    if spec.kind == "hyperelliptic":
        return HyperellipticCurve(F, spec.h, spec.f, spec.genus, spec.infinity, spec=spec)
    if spec.kind == "plane":
        return PlaneCurve(F, spec.C, spec.genus, spec=spec)
    raise CurveError("unknown model kind %r" % spec.kind)


class _CurveBase:
    F: GF
    g: int

    def count_points(self, d: int) -> int:
        raise NotImplementedError

    def counts(self, n: int) -> list[int]:
        return [self.count_points(d) for d in range(1, n + 1)]

    def _count_field(self, d: int):
        if d < 1:
            raise CurveError("extension degree must be positive")
        if self.F.q**d > COUNT_BOUND:
            raise CurveError("q^d = %d^%d exceeds the counting bound 2^20" % (self.F.q, d))
        E = extension_field(self.F, d)
        return E, embedding(self.F, E)


class HyperellipticCurve(_CurveBase):
    kind = "hyperelliptic"

    def __init__(self, F: GF, h, f, genus: int, infinity=None, spec=None, parent=None, frobenius=None):
        self.F = F
        self.R = R = poly_ring(F)
        self.h = tuple(h)
        self.f = tuple(f)
        self.g = genus
        self.spec = spec
        self.parent = parent  # the curve this one was base-changed from
        self._frob = frobenius
        if R.deg(self.f) != 2 * genus + 1:
            raise CurveError("imaginary model needs deg f = 2g+1 = %d, got %d" % (2 * genus + 1, R.deg(self.f)))
        if R.deg(self.h) > genus:
            raise CurveError("deg h = %d exceeds g = %d" % (R.deg(self.h), genus))
        if F.p == 2:
            if not self.h:
                raise CurveError("characteristic 2 requires h != 0")
            dh, df = R.deriv(self.h), R.deriv(self.f)
            test = R.add(R.mul(R.mul(dh, dh), self.f), R.mul(df, df))
            if R.deg(R.gcd(self.h, test)) > 0:
                raise CurveError("singular model: h, h'y - f' and y^2 + hy - f have a common zero")
        else:
            if self.h:
                raise CurveError("odd characteristic requires h = 0 (complete the square)")
            if R.deg(R.gcd(self.f, R.deriv(self.f))) > 0:
                raise CurveError("singular model: f is not squarefree")
        self.infinity = infinity
        if infinity is None:
            self.delta = 1
        else:
            if not R.is_irreducible(infinity) or R.lc(infinity) != F.one:
                raise CurveError("infinity must be a monic irreducible polynomial")
            self.delta = self.places_above(infinity)[0].degree

    # -- model data -------------------------------------------------------

    def equation(self) -> str:
        R = self.R
        lhs = "y^2" if not self.h else "y^2 + (%s)y" % R.fmt(self.h)
        return "%s = %s over GF(%d)" % (lhs, R.fmt(self.f), self.F.q)

    def base_change(self, d: int) -> "HyperellipticCurve":
        """The same equation over GF(q^d); coefficients carried by the canonical embedding."""
        E = extension_field(self.F, d)
        emb = embedding(self.F, E)
        RE = poly_ring(E)
        return HyperellipticCurve(
            E,
            RE.map_coeffs(self.h, emb),
            RE.map_coeffs(self.f, emb),
            self.g,
            parent=self,
            frobenius=lambda a, F=E, q=self.F.q: F.pow(a, q),
        )

    def frobenius(self, a: int) -> int:
        """a -> a^q on the coefficient field, q the size of the parent field."""
        if self._frob is None:
            raise UnsupportedOperation("curve is not a base change")
        return self._frob(a)

    def require_odd_delta(self):
        if self.delta % 2 == 0:
            raise DeltaParityError(
                "infinite place has even degree %d; GL2(A) has no elliptic points" % self.delta
            )

    def require_default_infinity(self):
        if self.infinity is not None:
            raise UnsupportedOperation("class-group operations need the default infinite place")

    # -- point counting ---------------------------------------------------

    def y_values(self, E: GF, hx: int, fx: int) -> list[int]:
        """All y in E with y^2 + hx*y = fx."""
        return E.quadratic_roots(hx, E.neg(fx))

    def affine_points(self, E: GF | None = None):
        """Affine points over E (default: the coefficient field) as (x, y) pairs."""
        if E is None:
            E, emb = self.F, (lambda a: a)
        else:
            emb = embedding(self.F, E)
        RE = poly_ring(E)
        h = RE.map_coeffs(self.h, emb)
        f = RE.map_coeffs(self.f, emb)
        out = []
        for x in E.elements():
            for y in self.y_values(E, RE.evaluate(h, x), RE.evaluate(f, x)):
                out.append((x, y))
        return out

    def count_points(self, d: int) -> int:
        """Points of the smooth projective model over GF(q^d), by direct enumeration."""
        E, emb = self._count_field(d)
        RE = poly_ring(E)
        h = RE.map_coeffs(self.h, emb)
        f = RE.map_coeffs(self.f, emb)
        n = 1  # the point at infinity
        ev = RE.evaluate
        if E.p == 2:
            for x in E.elements():
                hx = ev(h, x)
                if hx == 0:
                    n += 1
                else:
                    c = E.div(ev(f, x), E.mul(hx, hx))
                    if E.artin_schreier(c) is not None:
                        n += 2
        else:
            for x in E.elements():
                fx = ev(f, x)
                if fx == 0:
                    n += 1
                elif E.is_square(fx):
                    n += 2
        return n

    def places_above(self, P) -> list[Place]:
        """Places of K over the monic irreducible P(x), or over infinity when P is None."""
        if P is None:
            return [Place(None, 1, 2)]
        R = self.R
        P = tuple(P)
        if not R.is_irreducible(P) or R.lc(P) != self.F.one:
            raise CurveError("places_above needs a monic irreducible polynomial")
        k = R.deg(P)
        RF = ResidueField(R, P)
        S = poly_ring(RF)
        quad = S.norm((RF.neg(RF.reduce(self.f)), RF.reduce(self.h), RF.one))
        roots = S.roots(quad)
        if len(roots) == 2:
            return [Place(P, k, 1, r) for r in roots]
        if len(roots) == 1:
            return [Place(P, k, 2, roots[0])]
        return [Place(P, 2 * k, 1, None)]

    def count_points_by_places(self, d: int) -> int:
        """N_d as the sum over places of degree e | d of e (independent of count_points)."""
        R = self.R
        total = 1
        for k in range(1, d + 1):
            if d % k:
                continue
            for P in R.irreducibles(k):
                for pl in self.places_above(P):
                    if d % pl.degree == 0:
                        total += pl.degree
        return total

    def place_degree_counts(self, n: int) -> list[int]:
        """B_1..B_n: number of places of each degree."""
        R = self.R
        B = [0] * (n + 1)
        B[1] += 1
        for k in range(1, n + 1):
            for P in R.irreducibles(k):
                for pl in self.places_above(P):
                    if pl.degree <= n:
                        B[pl.degree] += 1
        return B[1:]


class PlaneCurve(_CurveBase):
    """C(x, y) = sum_j C_j(x) y^j = 0, monic in y, with nonsingular projective closure."""

    kind = "plane"

    def __init__(self, F: GF, rows, genus: int, spec=None):
        self.F = F
        self.R = R = poly_ring(F)
        self.rows = tuple(tuple(r) for r in rows)
        self.g = genus
        self.spec = spec
        self.delta = None
        self.infinity = None
        if len(self.rows) < 2 or self.rows[-1] != (F.one,):
            raise CurveError("plane model must be monic in y of y-degree >= 1")
        self.terms = {}
        for j, row in enumerate(self.rows):
            for i, c in enumerate(row):
                if c != F.zero:
                    self.terms[(i, j)] = c
        self.n = max(i + j for i, j in self.terms)
        expected = (self.n - 1) * (self.n - 2) // 2
        if expected != genus:
            raise CurveError("nonsingular plane curve of degree %d has genus %d, declared %d" % (self.n, expected, genus))
        self._check_affine()
        self._check_infinity()

    def equation(self) -> str:
        R = self.R
        parts = []
        for j in range(len(self.rows) - 1, -1, -1):
            if self.rows[j]:
                mono = "" if j == 0 else ("y" if j == 1 else "y^%d" % j)
                parts.append("(%s)%s" % (R.fmt(self.rows[j]), mono))
        return "%s = 0 over GF(%d)" % (" + ".join(parts), self.F.q)

    def _partial_rows(self):
        R, F = self.R, self.F
        dy = []
        for j in range(1, len(self.rows)):
            k = j % F.p
            dy.append(R.scale(F.from_int(k), self.rows[j]) if k else ())
        dx = [R.deriv(r) for r in self.rows]
        return tuple(dy), tuple(dx)

    def _specialize(self, RF, rows):
        S = poly_ring(RF)
        return S.norm(RF.reduce(r) for r in rows)

    def _check_affine(self):
        F, R = self.F, self.R
        dy, dx = self._partial_rows()
        if not any(dy):
            raise UnsupportedOperation("model is inseparable in y")
        res = self._resultant_y(self.rows, dy)
        if not res:
            raise CurveError("model is not squarefree in y (singular)")
        for P, _ in R.factor(res) if R.deg(res) > 0 else []:
            RF = ResidueField(R, P)
            S = poly_ring(RF)
            g = S.gcd(self._specialize(RF, self.rows), self._specialize(RF, dy))
            g = S.gcd(g, self._specialize(RF, dx))
            if S.deg(g) > 0:
                raise CurveError("singular affine point over the place %s" % R.fmt(P))

    def _resultant_y(self, a_rows, b_rows):
        """Res_y(a, b) in F[x] by evaluation at enough points and interpolation."""
        F, R = self.F, self.R
        dxa = max((len(r) for r in a_rows), default=0)
        dxb = max((len(r) for r in b_rows), default=0)
        bound = (len(a_rows) - 1) * dxb + (len(b_rows) - 1) * dxa + 1
        k = 1
        while F.q**k <= bound:
            k += 1
        E = extension_field(F, k)
        emb = embedding(F, E)
        RE = poly_ring(E)
        a_e = [RE.map_coeffs(r, emb) for r in a_rows]
        b_e = [RE.map_coeffs(r, emb) for r in b_rows]
        xs, vals = [], []
        for x in list(E.elements())[: bound + 1]:
            ay = RE.norm(RE.evaluate(r, x) for r in a_e)
            by = RE.norm(RE.evaluate(r, x) for r in b_e)
            xs.append(x)
            vals.append(resultant(RE, ay, by))
        interp = lagrange(RE, xs, vals)
        return R.norm(emb.restrict(c) for c in interp)

    def _top_forms(self):
        n = self.n
        t = {}
        d1 = {}
        for (i, j), c in self.terms.items():
            if i + j == n:
                t[i] = c
            elif i + j == n - 1:
                d1[i] = (c, j)
        return t, d1

    def _infinity_data(self):
        F, R = self.F, self.R
        t, d1 = self._top_forms()
        tx = R.norm(t.get(i, F.zero) for i in range(self.n + 1))
        dz = R.norm(d1[i][0] if i in d1 else F.zero for i in range(self.n))
        return tx, dz, t, d1

    def _check_infinity(self):
        F, R = self.F, self.R
        tx, dz, t, d1 = self._infinity_data()
        # chart Y = 1: D(x, z) = C^h(x, 1, z); points (x0 : 1 : 0) with tx(x0) = 0
        g = R.gcd(R.gcd(tx, R.deriv(tx)), dz)
        if R.deg(g) > 0:
            raise CurveError("projective closure is singular at infinity")
        # the point (1 : 0 : 0)
        if t.get(self.n, F.zero) == F.zero:
            cy = next((c for i, (c, j) in d1.items() if i == self.n - 1 and j == 1), F.zero)
            cz = next((c for i, (c, j) in d1.items() if i == self.n - 1 and j == 0), F.zero)
            # E(y, z) = C^h(1, y, z): E_y(0,0) is the coefficient of x^(n-1) y, E_z(0,0) that of x^(n-1)
            if cy == F.zero and cz == F.zero:
                raise CurveError("projective closure is singular at (1:0:0)")

    def points_at_infinity(self, d: int) -> int:
        E, emb = self._count_field(d)
        tx, _, t, _ = self._infinity_data()
        RE = poly_ring(E)
        n = len(RE.roots(RE.map_coeffs(tx, emb))) if self.R.deg(tx) > 0 else 0
        if t.get(self.n, self.F.zero) == self.F.zero:
            n += 1
        return n

    def count_points(self, d: int) -> int:
        E, emb = self._count_field(d)
        RE = poly_ring(E)
        rows = [RE.map_coeffs(r, emb) for r in self.rows]
        yq = None
        n = 0
        for x in E.elements():
            cy = RE.norm(RE.evaluate(r, x) for r in rows)
            if len(cy) == 2:
                n += 1
                continue
            xq = RE.powmod(RE.x, E.q, cy)
            n += RE.deg(RE.gcd(cy, RE.sub(xq, RE.x)))
        return n + self.points_at_infinity(d)


def resultant(R: PolyRing, a, b):
    """Resultant of two polynomials over a field."""
    F = R.F
    if not a or not b:
        return F.zero
    acc = F.one
    while True:
        da, db = R.deg(a), R.deg(b)
        if db == 0:
            return F.mul(acc, F.pow(b[0], da)) if da > 0 else acc
        r = R.mod(a, b)
        if not r:
            return F.zero
        dr = R.deg(r)
        if (da * db) % 2 == 1:
            acc = F.neg(acc)
        acc = F.mul(acc, F.pow(R.lc(b), da - dr))
        a, b = b, r


def lagrange(R: PolyRing, xs, ys):
    F = R.F
    out = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == F.zero:
            continue
        num = R.one
        den = F.one
        for j, xj in enumerate(xs):
            if j != i:
                num = R.mul(num, (F.neg(xj), F.one))
                den = F.mul(den, F.sub(xi, xj))
        out = R.add(out, R.scale(F.div(yi, den), num))
    return out
