"""Univariate polynomials over a finite field.

Polynomials are tuples of field elements, constant term first, with no
trailing zeros; the zero polynomial is ``()``.  A :class:`PolyRing` only needs
its field to provide ``zero, one, p, q, add, sub, neg, mul, inv, pth_root,
random_element``, so the same code runs over :class:`~.fields.GF` and over
:class:`ResidueField` (a quotient ``F[x]/(P)``).
"""

from __future__ import annotations

import functools
import math
import random

NEG_INF = -math.inf


class PolyError(ValueError):
    pass


class PolyRing:
    def __init__(self, F):
        self.F = F
        self.zero = ()
        self.one = (F.one,)
        self.x = (F.zero, F.one)

    # -- basics -----------------------------------------------------------

    def norm(self, coeffs) -> tuple:
        c = list(coeffs)
        z = self.F.zero
        while c and c[-1] == z:
            c.pop()
        return tuple(c)

    def const(self, c) -> tuple:
        return () if c == self.F.zero else (c,)

    @staticmethod
    def degree(f):
        """Degree, with -inf for the zero polynomial."""
        return len(f) - 1 if f else NEG_INF

    @staticmethod
    def deg(f) -> int:
        """Degree with -1 for zero (loop-friendly)."""
        return len(f) - 1

    def lc(self, f):
        return f[-1] if f else self.F.zero

    def add(self, a, b):
        add = self.F.add
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        if len(a) == len(b):
            return self.norm(out)
        return tuple(out)

    def neg(self, a):
        neg = self.F.neg
        return tuple(neg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, c, a):
        if c == self.F.zero:
            return ()
        mul = self.F.mul
        return tuple(mul(c, x) for x in a)

    def shift(self, a, k: int):
        return (self.F.zero,) * k + a if a else ()

    def mul(self, a, b):
        if not a or not b:
            return ()
        F = self.F
        add, mul, z = F.add, F.mul, F.zero
        out = [z] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == z:
                continue
            for j, y in enumerate(b):
                if y != z:
                    out[i + j] = add(out[i + j], mul(x, y))
        return self.norm(out)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        if len(a) < len(b):
            return (), a
        add, mul, neg = F.add, F.mul, F.neg
        inv_lc = F.inv(b[-1])
        r = list(a)
        db = len(b) - 1
        qt = [F.zero] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k]
            if c == F.zero:
                continue
            c = mul(c, inv_lc)
            qt[k - db] = c
            nc = neg(c)
            for j in range(db + 1):
                if b[j] != F.zero:
                    r[k - db + j] = add(r[k - db + j], mul(nc, b[j]))
        return self.norm(qt), self.norm(r[:db])

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def div_exact(self, a, b):
        qt, r = self.divmod(a, b)
        if r:
            raise PolyError("inexact polynomial division")
        return qt

    def divides(self, b, a) -> bool:
        return not self.mod(a, b)

    def monic(self, a):
        if not a or a[-1] == self.F.one:
            return a
        return self.scale(self.F.inv(a[-1]), a)

    def gcd(self, a, b):
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def xgcd(self, a, b):
        """(g, s, t) with g = s*a + t*b monic (g = 0 iff a = b = 0)."""
        r0, r1 = a, b
        s0, s1 = self.one, ()
        t0, t1 = (), self.one
        while r1:
            qt, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(qt, s1))
            t0, t1 = t1, self.sub(t0, self.mul(qt, t1))
        if not r0:
            return (), (), ()
        c = self.F.inv(r0[-1])
        return self.scale(c, r0), self.scale(c, s0), self.scale(c, t0)

    def powmod(self, a, e: int, m):
        result = self.one
        a = self.mod(a, m)
        while e:
            if e & 1:
                result = self.mod(self.mul(result, a), m)
            e >>= 1
            if e:
                a = self.mod(self.mul(a, a), m)
        return self.mod(result, m)

    def pow(self, a, e: int):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def evaluate(self, f, x):
        F = self.F
        acc = F.zero
        for c in reversed(f):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def deriv(self, f):
        F = self.F
        out = []
        for i in range(1, len(f)):
            c = f[i]
            k = i % F.p
            if k == 0 or c == F.zero:
                out.append(F.zero)
            else:
                acc = F.zero
                for _ in range(k):
                    acc = F.add(acc, c)
                out.append(acc)
        return self.norm(out)

    def map_coeffs(self, f, fn):
        return self.norm(fn(c) for c in f)

    def from_roots(self, roots):
        out = self.one
        for r in roots:
            out = self.mul(out, (self.F.neg(r), self.F.one))
        return out

    def key(self, f):
        """Sort key: degree first, then coefficient encoding (leading term dominant)."""
        return (len(f), tuple(reversed(f)))

    # -- factorization ----------------------------------------------------

    def _frob_power(self, a, m):
        """a^q mod m."""
        return self.powmod(a, self.F.q, m)

    def is_irreducible(self, f) -> bool:
        n = len(f) - 1
        if n < 1:
            return False
        if n == 1:
            return True
        from .fields import prime_factors

        f = self.monic(f)
        x = self.x
        xq = {}
        cur = x
        for k in range(1, n + 1):
            cur = self._frob_power(cur, f)
            xq[k] = cur
        if self.sub(xq[n], x):
            return False
        for r in prime_factors(n):
            h = self.sub(xq[n // r], x)
            if len(self.gcd(f, h)) > 1:
                return False
        return True

    def squarefree_decomposition(self, f):
        """[(g, e)] with f monic = prod g^e, each g squarefree (not necessarily coprime)."""
        F = self.F
        f = self.monic(f)
        out = []
        self._sqf(f, 1, out)
        return out

    def _sqf(self, f, mult, out):
        F = self.F
        if len(f) <= 1:
            return
        df = self.deriv(f)
        if not df:
            # f = g(x^p)
            g = self.norm(F.pth_root(f[i]) for i in range(0, len(f), F.p))
            self._sqf(g, mult * F.p, out)
            return
        c = self.gcd(f, df)
        w = self.div_exact(f, c)
        i = 1
        while len(w) > 1:
            y = self.gcd(w, c)
            z = self.div_exact(w, y)
            if len(z) > 1:
                out.append((z, mult * i))
            i += 1
            w = y
            c = self.div_exact(c, y)
        if len(c) > 1:
            g = self.norm(F.pth_root(c[i]) for i in range(0, len(c), F.p))
            self._sqf(g, mult * F.p, out)

    def distinct_degree(self, f):
        """[(g, d)]: g is the product of all degree-d irreducible factors of squarefree monic f."""
        out = []
        x = self.x
        h = x
        d = 0
        while len(f) - 1 >= 2 * (d + 1):
            d += 1
            h = self._frob_power(h, f)
            g = self.gcd(f, self.sub(h, x))
            if len(g) > 1:
                out.append((g, d))
                f = self.div_exact(f, g)
                h = self.mod(h, f)
        if len(f) > 1:
            out.append((f, len(f) - 1))
        return out

    def equal_degree(self, f, d: int, rng=None):
        """Split squarefree monic f, all of whose factors have degree d."""
        n = len(f) - 1
        if n == d:
            return [f]
        if rng is None:
            rng = random.Random(0)
        F = self.F
        while True:
            a = self.norm(F.random_element(rng) for _ in range(n))
            if len(a) < 2:
                continue
            if F.p == 2:
                # trace map a + a^2 + ... + a^(2^(k-1)), q^d = 2^k
                k = d * int(round(math.log2(F.q)))
                t = a
                cur = a
                for _ in range(k - 1):
                    cur = self.mod(self.mul(cur, cur), f)
                    t = self.add(t, cur)
                g = self.gcd(f, t)
            else:
                e = (F.q**d - 1) // 2
                b = self.powmod(a, e, f)
                g = self.gcd(f, self.sub(b, self.one))
            if 1 < len(g) < len(f):
                return self.equal_degree(g, d, rng) + self.equal_degree(self.div_exact(f, g), d, rng)

    def factor(self, f):
        """Irreducible factorization: [(monic irreducible, multiplicity)], sorted by (degree, encoding)."""
        if not f:
            raise PolyError("cannot factor the zero polynomial")
        mult = {}
        rng = random.Random(0)
        for g, e in self.squarefree_decomposition(f):
            for h, d in self.distinct_degree(g):
                for irr in self.equal_degree(h, d, rng):
                    mult[irr] = mult.get(irr, 0) + e
        return sorted(mult.items(), key=lambda it: self.key(it[0]))

    def roots(self, f):
        """Distinct roots of f in the coefficient field, sorted."""
        if not f:
            raise PolyError("roots of the zero polynomial")
        xq = self._frob_power(self.x, self.monic(f)) if len(f) > 1 else ()
        g = self.gcd(f, self.sub(xq, self.x)) if len(f) > 1 else self.one
        if len(g) <= 1:
            return []
        rs = [self.F.neg(h[0]) for h in self.equal_degree(g, 1)]
        return sorted(rs)

    def monic_polys(self, d: int):
        """All monic polynomials of degree d in encoding order."""
        F = self.F
        elems = list(F.elements())
        q = len(elems)
        for n in range(q**d):
            cs = []
            for _ in range(d):
                n, r = divmod(n, q)
                cs.append(elems[r])
            yield tuple(cs) + (F.one,)

    def irreducibles(self, d: int):
        for f in self.monic_polys(d):
            if self.is_irreducible(f):
                yield f

    def fmt(self, f, var: str = "x") -> str:
        if not f:
            return "0"
        F = self.F
        terms = []
        for i in range(len(f) - 1, -1, -1):
            c = f[i]
            if c == F.zero:
                continue
            cs = F.fmt(c)
            if any(ch in cs for ch in "+ ") and i > 0:
                cs = "(" + cs + ")"
            mono = "" if i == 0 else (var if i == 1 else "%s^%d" % (var, i))
            if i > 0 and c == F.one:
                cs = ""
            terms.append(cs + mono)
        return " + ".join(terms)


@functools.lru_cache(maxsize=None)
def poly_ring(F) -> PolyRing:
    return PolyRing(F)


def poly_factor(F, f):
    """Factor f over F; see :meth:`PolyRing.factor`."""
    return poly_ring(F).factor(f)


class ResidueField:
    """F[x]/(P) for monic irreducible P, elements being reduced polynomials."""

    def __init__(self, R: PolyRing, P):
        if not R.is_irreducible(P):
            raise PolyError("modulus is not irreducible")
        self.R = R
        self.P = R.monic(P)
        self.k = len(P) - 1
        self.p = R.F.p
        self.char = self.p
        self.q = R.F.q**self.k
        self.order = self.q
        self.zero = ()
        self.one = R.one

    def add(self, a, b):
        return self.R.add(a, b)

    def sub(self, a, b):
        return self.R.sub(a, b)

    def neg(self, a):
        return self.R.neg(a)

    def mul(self, a, b):
        return self.R.mod(self.R.mul(a, b), self.P)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = self.R.xgcd(a, self.P)
        return self.R.mod(s, self.P)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        return self.R.powmod(a, e, self.P)

    def pth_root(self, a):
        return self.pow(a, self.q // self.p)

    def reduce(self, f):
        return self.R.mod(f, self.P)

    def elements(self):
        F = self.R.F
        elems = list(F.elements())
        for n in range(self.q):
            cs = []
            for _ in range(self.k):
                n, r = divmod(n, len(elems))
                cs.append(elems[r])
            yield self.R.norm(cs)

    def random_element(self, rng):
        F = self.R.F
        return self.R.norm(F.random_element(rng) for _ in range(self.k))

    def fmt(self, a):
        return "[" + self.R.fmt(a) + "]"
