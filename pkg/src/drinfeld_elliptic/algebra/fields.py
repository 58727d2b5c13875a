"""Prime-power finite fields with table-driven arithmetic.

Elements of GF(p^m) are plain ints: the element c_0 + c_1 z + ... + c_{m-1} z^{m-1}
of F_p[z]/(modulus) is encoded as c_0 + c_1 p + ... + c_{m-1} p^{m-1}.  This
encoding doubles as the canonical total order on the field.

Multiplication goes through discrete log/exp tables; addition is XOR for p = 2,
integer arithmetic for m = 1 and Zech logarithms otherwise.
"""

from __future__ import annotations

import functools

FIELD_BOUND = 2**16  # largest q accepted by fq_make
TABLE_BOUND = 2**20  # largest extension field built for point counting


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _digits(a: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


class GF:
    """The finite field of order p**m.

    Build instances with :func:`fq_make` (user-facing, size-checked) or
    :func:`extension_field`; both are cached, so equal fields are identical
    objects and may be compared with ``is``.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p**m
        self.order = self.q
        self.char = p
        self.modulus = modulus  # monic, low degree first, over F_p
        self.zero = 0
        self.one = 1
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        da, db = _digits(a, p, m), _digits(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for j in range(m + 1):
                    prod[k - m + j] = (prod[k - m + j] - c * mod[j]) % p
        return _undigits(prod[:m], p)

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        q1 = self.q - 1
        rs = prime_factors(q1) if q1 > 1 else []
        g = None
        for cand in range(1, self.q):
            if q1 == 1 or all(self._pow_slow(cand, q1 // r) != 1 for r in rs):
                g = cand
                break
        self.generator = g
        exp = [0] * (2 * q1 + 1)
        log = [-1] * self.q
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(q1, 2 * q1 + 1):
            exp[i] = exp[i - q1]
        self._exp = exp
        self._log = log
        p = self.p
        if p != 2 and self.m > 1:
            zech = [-1] * max(q1, 1)
            for d in range(q1):
                e = exp[d]
                c0 = e % p
                s = e - c0 + (c0 + 1) % p
                zech[d] = log[s] if s else -1
            self._zech = zech
        self._as_table = None

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.m == 1:
            s = a + b
            return s - p if s >= p else s
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        d = self._log[b] - la
        if d < 0:
            d += self.q - 1
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        if self.m == 1:
            return self.p - a
        return self._exp[self._log[a] + (self.q - 1) // 2]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int, k: int = 1) -> int:
        """a -> a^(p^k)."""
        return self.pow(a, self.p**k)

    def pth_root(self, a: int) -> int:
        return self.pow(a, self.q // self.p)

    def log(self, a: int) -> int:
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def sqrt(self, a: int) -> int | None:
        """A square root of a (the one with even discrete log), or None."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        la = self._log[a]
        if la % 2:
            return None
        return self._exp[la // 2]

    def artin_schreier(self, c: int) -> int | None:
        """A root z of z^2 + z = c in characteristic 2, or None."""
        if self._as_table is None:
            tab = {}
            for z in range(self.q):
                v = self.add(self.mul(z, z), z)
                if v not in tab:
                    tab[v] = z
            self._as_table = tab
        return self._as_table.get(c)

    def quadratic_roots(self, b: int, c: int) -> list[int]:
        """Roots of X^2 + bX + c in this field, sorted, without multiplicity."""
        if self.p == 2:
            if b == 0:
                return [self.sqrt(c)]
            # X = bZ: Z^2 + Z = c/b^2
            z = self.artin_schreier(self.div(c, self.mul(b, b)))
            if z is None:
                return []
            r1 = self.mul(b, z)
            return sorted({r1, self.add(r1, b)})
        two = 2 % self.p
        half_b = self.div(b, two)
        disc = self.sub(self.mul(half_b, half_b), c)
        s = self.sqrt(disc)
        if s is None:
            return []
        r = self.neg(half_b)
        return sorted({self.add(r, s), self.sub(r, s)})

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.m)

    def from_digits(self, ds) -> int:
        ds = list(ds)
        if len(ds) > self.m or any(not 0 <= d < self.p for d in ds):
            raise FieldError("digit list %r invalid for GF(%d)" % (ds, self.q))
        return _undigits(ds, self.p)

    def fmt(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        terms = []
        for i, d in reversed(list(enumerate(self.digits(a)))):
            if not d:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else "z^%d" % i)
            coef = str(d) if (d != 1 or i == 0) else ""
            terms.append(coef + mono)
        return "+".join(terms) if terms else "0"

    def random_element(self, rng) -> int:
        return rng.randrange(self.q)

    def __repr__(self):
        return "GF(%d)" % self.q


def _canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    from .poly import poly_ring

    R = poly_ring(_field(p, 1))
    for n in range(p**m):
        f = tuple(_digits(n, p, m)) + (1,)
        if f[0] == 0:
            continue
        if R.is_irreducible(f):
            return f
    raise AssertionError("no irreducible polynomial found")


@functools.lru_cache(maxsize=None)
def _field(p: int, m: int) -> GF:
    return GF(p, m, _canonical_modulus(p, m))


def fq_make(p: int, m: int = 1) -> GF:
    """The canonical field of order p**m (q <= 2**16)."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError("characteristic %r is not prime" % (p,))
    if not isinstance(m, int) or m <= 0:
        raise FieldError("extension degree must be positive, got %r" % (m,))
    if p**m > FIELD_BOUND:
        raise FieldError("q = %d^%d exceeds the supported bound 2^16" % (p, m))
    return _field(p, m)


def extension_field(F: GF, d: int) -> GF:
    """The canonical field of order F.q**d (bound 2**20)."""
    if F.q**d > TABLE_BOUND:
        raise FieldError("field of order %d^%d exceeds the table bound 2^20" % (F.q, d))
    return _field(F.p, F.m * d)


class Embedding:
    """The field embedding small -> big sending z to the least root of small.modulus."""

    def __init__(self, small: GF, big: GF):
        if big.p != small.p or big.m % small.m:
            raise FieldError("%r does not embed in %r" % (small, big))
        self.small, self.big = small, big
        if small.m == 1:
            table = list(range(small.q))
        else:
            step = (big.q - 1) // (small.q - 1)
            cands = [0] + [big.exp(k * step) for k in range(small.q - 1)]
            roots = [c for c in cands if _eval_prime_poly(big, small.modulus, c) == 0]
            rho = min(roots)
            powers = [1]
            for _ in range(small.m - 1):
                powers.append(big.mul(powers[-1], rho))
            table = []
            for a in range(small.q):
                acc = 0
                for dgt, pw in zip(small.digits(a), powers):
                    if dgt:
                        acc = big.add(acc, big.mul(dgt, pw))
                table.append(acc)
        self.table = table
        self.inverse = {v: k for k, v in enumerate(table)}

    def __call__(self, a: int) -> int:
        return self.table[a]

    def restrict(self, b: int) -> int:
        """Preimage of b; raises if b is not in the image."""
        try:
            return self.inverse[b]
        except KeyError:
            raise FieldError("%s is not in the subfield %r" % (self.big.fmt(b), self.small)) from None

    def contains(self, b: int) -> bool:
        return b in self.inverse


def _eval_prime_poly(F: GF, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


@functools.lru_cache(maxsize=None)
def embedding(small: GF, big: GF) -> Embedding:
    return Embedding(small, big)


@functools.lru_cache(maxsize=None)
def canonical_quadratic(F: GF) -> tuple[int, int, int]:
    """The least monic irreducible quadratic X^2 + c1 X + c0 over F, as (c0, c1, 1)."""
    for n in range(F.q**2):
        c0, c1 = n % F.q, n // F.q
        if _quadratic_irreducible(F, c1, c0):
            return (c0, c1, 1)
    raise AssertionError("unreachable")


def _quadratic_irreducible(F: GF, b: int, c: int) -> bool:
    return not F.quadratic_roots(b, c)
