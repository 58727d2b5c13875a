"""Degree-zero divisor classes of hyperelliptic function fields.

Classes are reduced Mumford pairs (u, v): u monic, deg v < deg u <= g and
u | v^2 + h v - f.  The identity is (1, 0).  The group law is Cantor's
composition followed by reduction, written for y^2 + h y = f so that it
works in every characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.fields import embedding, extension_field, prime_factors
from .curve import HyperellipticCurve, UnsupportedOperation

ENUMERATION_BOUND = 10**6


class JacobianError(ArithmeticError):
    pass


class Jacobian:
    """Cantor arithmetic on a hyperelliptic curve over its coefficient field."""

    def __init__(self, curve: HyperellipticCurve):
        if not isinstance(curve, HyperellipticCurve):
            raise UnsupportedOperation("Jacobian arithmetic needs a hyperelliptic model")
        self.curve = curve
        self.F = curve.F
        self.R = curve.R
        self.g = curve.g
        self.h = curve.h
        self.f = curve.f
        self.identity = (self.R.one, ())

    # -- group law --------------------------------------------------------

    def is_reduced(self, D) -> bool:
        R = self.R
        u, v = D
        if not u or R.lc(u) != self.F.one or R.deg(u) > self.g:
            return False
        if R.deg(v) >= R.deg(u):
            return False
        rhs = R.sub(R.add(R.mul(v, v), R.mul(self.h, v)), self.f)
        return R.divides(u, rhs)

    def reduce(self, u, v):
        """Reduce a semi-reduced pair (u, v) to its reduced representative."""
        R = self.R
        f, h, g = self.f, self.h, self.g
        v = R.mod(v, u)
        while R.deg(u) > g:
            num = R.sub(R.sub(f, R.mul(v, h)), R.mul(v, v))
            u = R.div_exact(num, u)
            v = R.mod(R.neg(R.add(h, v)), u)
        u = R.monic(u)
        return (u, R.mod(v, u))

    def compose(self, D1, D2):
        """Cantor composition (unreduced)."""
        R = self.R
        u1, v1 = D1
        u2, v2 = D2
        d0, e1, e2 = R.xgcd(u1, u2)
        w = R.add(R.add(v1, v2), self.h)
        if w:
            d, c1, s3 = R.xgcd(d0, w)
        else:
            d, c1, s3 = d0, R.one, ()
        s1, s2 = R.mul(c1, e1), R.mul(c1, e2)
        u = R.div_exact(R.mul(u1, u2), R.mul(d, d))
        t = R.add(R.mul(R.mul(s1, u1), v2), R.mul(R.mul(s2, u2), v1))
        t = R.add(t, R.mul(s3, R.add(R.mul(v1, v2), self.f)))
        v = R.mod(R.div_exact(t, d), u)
        return u, v

    def add(self, D1, D2):
        if D1 == self.identity:
            return D2
        if D2 == self.identity:
            return D1
        return self.reduce(*self.compose(D1, D2))

    def neg(self, D):
        u, v = D
        R = self.R
        return (u, R.mod(R.neg(R.add(v, self.h)), u))

    def sub(self, D1, D2):
        return self.add(D1, self.neg(D2))

    def mul(self, n: int, D):
        if n < 0:
            return self.mul(-n, self.neg(D))
        acc = self.identity
        base = D
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def from_point(self, x, y):
        return ((self.F.neg(x), self.F.one), self.R.norm((y,)))

    def key(self, D):
        return (self.R.key(D[0]), self.R.key(D[1]))

    def frobenius(self, D):
        """Coefficientwise a -> a^q (q the size of the field the curve was base-changed from)."""
        fr = self.curve.frobenius
        return tuple(self.R.norm(fr(c) for c in p) for p in D)

    def fmt(self, D) -> str:
        return "(%s, %s)" % (self.R.fmt(D[0]), self.R.fmt(D[1]))

    # -- enumeration ------------------------------------------------------

    def enumerate(self) -> list:
        """All reduced pairs over the coefficient field, sorted canonically (g <= 2)."""
        g = self.g
        if g > 2:
            raise UnsupportedOperation("Mumford enumeration is limited to genus <= 2")
        F, R = self.F, self.R
        curve = self.curve
        pts = curve.affine_points()
        out = {self.identity}
        if g >= 1:
            for x, y in pts:
                out.add(self.from_point(x, y))
        if g == 2:
            by_x = {}
            for x, y in pts:
                by_x.setdefault(x, []).append(y)
            xs = sorted(by_x)
            for i, a1 in enumerate(xs):
                for a2 in xs[i + 1 :]:
                    u = R.mul((F.neg(a1), F.one), (F.neg(a2), F.one))
                    for b1 in by_x[a1]:
                        for b2 in by_x[a2]:
                            c1 = F.div(F.sub(b1, b2), F.sub(a1, a2))
                            c0 = F.sub(b1, F.mul(c1, a1))
                            out.add((u, R.norm((c0, c1))))
            dh, df = R.deriv(self.h), R.deriv(self.f)
            for a, ys in by_x.items():
                for b in ys:
                    den = F.add(F.add(b, b), R.evaluate(self.h, a))
                    if den == F.zero:
                        continue  # ramified: 2P ~ 0
                    k = F.div(F.sub(R.evaluate(df, a), F.mul(R.evaluate(dh, a), b)), den)
                    u = R.mul((F.neg(a), F.one), (F.neg(a), F.one))
                    v = R.norm((F.sub(b, F.mul(k, a)), k))
                    out.add((u, v))
            out |= self._conjugate_pairs()
        if len(out) > ENUMERATION_BOUND:
            raise JacobianError("Jacobian exceeds the enumeration bound")
        return sorted(out, key=self.key)

    def _conjugate_pairs(self) -> set:
        """Pairs {P, P^Frob} of points over the quadratic extension with x outside the base."""
        F, R = self.F, self.R
        E = extension_field(F, 2)
        emb = embedding(F, E)
        RE = self.curve.R.__class__(E)
        hE = RE.map_coeffs(self.h, emb)
        fE = RE.map_coeffs(self.f, emb)
        Q = F.q
        out = set()
        seen = set()
        for x0 in E.elements():
            if emb.contains(x0) or x0 in seen:
                continue
            x1 = E.pow(x0, Q)
            seen.add(x1)
            # u = (X - x0)(X - x1) has coefficients in F
            c1 = emb.restrict(E.neg(E.add(x0, x1)))
            c0 = emb.restrict(E.mul(x0, x1))
            u = (c0, c1, F.one)
            dx = E.sub(x0, x1)
            for y0 in curve_y(E, RE, hE, fE, x0):
                y1 = E.pow(y0, Q)
                s = E.div(E.sub(y0, y1), dx)
                t = E.sub(y0, E.mul(s, x0))
                out.add((u, R.norm((emb.restrict(t), emb.restrict(s)))))
        return out

    def group(self) -> "JacobianGroup":
        return JacobianGroup(self, self.enumerate())


def curve_y(E, RE, hE, fE, x):
    return E.quadratic_roots(RE.evaluate(hE, x), E.neg(RE.evaluate(fE, x)))


def _multiplication_table(elements, index, add, identity, n: int):
    """index of n*e for every element e, by double-and-add."""
    out = []
    for e in elements:
        acc, base, k = identity, e, n
        while k:
            if k & 1:
                acc = add(acc, base)
            base = add(base, base)
            k >>= 1
        out.append(index[acc])
    return out


def group_structure(elements, add, identity) -> tuple:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group (trivial group: ())."""
    elements = list(elements)
    n = len(elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != n:
        raise JacobianError("duplicate elements")
    if identity not in index:
        raise JacobianError("identity missing from element list")
    for e in elements[: min(n, 8)]:
        if add(e, identity) != e:
            raise JacobianError("identity law fails")
    zero = index[identity]
    # primary parts: for each prime, count p^k-torsion
    per_prime = {}
    for p in prime_factors(n) if n > 1 else []:
        times_p = _multiplication_table(elements, index, add, identity, p)
        sizes = [1]
        cur = list(range(n))  # cur[i] = index of p^k * e_i
        while sizes[-1] < _p_part(n, p):
            cur = [times_p[c] for c in cur]
            sizes.append(sum(1 for c in cur if c == zero))
            if len(sizes) > 64:
                raise JacobianError("group law inconsistent with its order")
        if sizes[-1] != _p_part(n, p):
            raise JacobianError("p-primary part has the wrong size")
        # number of cyclic factors of order >= p^k is log_p(|G[p^k]| / |G[p^(k-1)]|)
        ranks = [_ilog(sizes[k] // sizes[k - 1], p) for k in range(1, len(sizes))]
        exps = []
        for k, rk in enumerate(ranks, start=1):
            nxt = ranks[k] if k < len(ranks) else 0
            exps += [k] * (rk - nxt)
        per_prime[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in per_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return tuple(sorted(factors))


def _p_part(n, p):
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def _ilog(n, p):
    k = 0
    while n > 1:
        if n % p:
            raise JacobianError("torsion counts are not powers of %d" % p)
        n //= p
        k += 1
    return k


@dataclass
class JacobianGroup:
    """A fully enumerated Jacobian (or subgroup) with its structure."""

    jac: Jacobian
    elements: list
    structure: tuple = None
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {e: i for i, e in enumerate(self.elements)}
        if self.structure is None:
            self.structure = group_structure(self.elements, self.jac.add, self.jac.identity)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, D):
        return D in self.index

    def two_torsion(self) -> list:
        J = self.jac
        return [D for D in self.elements if J.add(D, D) == J.identity]

    @property
    def exponent(self) -> int:
        return self.structure[-1] if self.structure else 1


@dataclass
class NormKernel:
    group: JacobianGroup  # the kernel, a subgroup of Jac over F_{q^2}
    jac2: Jacobian
    full_order: int  # |Jac(F_{q^2})|
    base_order: int  # |Jac(F_q)|
    image_order: int  # size of the image of D -> D + Frob(D)

    @property
    def order(self):
        return self.group.order

    @property
    def structure(self):
        return self.group.structure

    @property
    def two_torsion_size(self):
        return len(self.group.two_torsion())


def enumerate_jacobian(curve: HyperellipticCurve, degree: int = 1) -> JacobianGroup:
    """Jac over F_{q^degree} (degree 1 or 2)."""
    c = curve if degree == 1 else curve.base_change(degree)
    return Jacobian(c).group()


def norm_kernel(curve: HyperellipticCurve) -> NormKernel:
    """Kernel of D -> D + Frob(D) on Jac(F_{q^2}), plus the surjectivity check of the trace."""
    curve.require_default_infinity()
    J1 = Jacobian(curve)
    base = J1.enumerate()
    c2 = curve.base_change(2)
    J2 = Jacobian(c2)
    full = J2.enumerate()
    emb = embedding(curve.F, c2.F)
    ker = []
    image = set()
    for D in full:
        T = J2.add(D, J2.frobenius(D))
        if T == J2.identity:
            ker.append(D)
        image.add(T)
    base_set = {tuple(c2.R.map_coeffs(p, emb) for p in D) for D in base}
    if image != base_set:
        raise JacobianError("trace map is not onto Jac(F_q)")
    if len(ker) * len(image) != len(full):
        raise JacobianError("|kernel| * |image| != |Jac(F_q^2)|")
    return NormKernel(JacobianGroup(J2, ker), J2, len(full), len(base), len(image))
