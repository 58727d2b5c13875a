"""L-polynomials, constant field extension and the counts derived from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curve import DeltaParityError


class ZetaError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPoly:
    """L(u) = a_0 + a_1 u + ... + a_{2g} u^{2g} with a_0 = 1, over a field with q elements."""

    coeffs: tuple
    q: int
    g: int

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.g + 1:
            raise ZetaError("L-polynomial of genus %d needs %d coefficients" % (self.g, 2 * self.g + 1))
        if self.coeffs[0] != 1:
            raise ZetaError("L(0) must be 1")

    def __call__(self, u):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * u + a
        return acc

    def functional_equation_holds(self) -> bool:
        a, q, g = self.coeffs, self.q, self.g
        return all(a[2 * g - i] == q ** (g - i) * a[i] for i in range(g + 1))

    def reciprocal_roots(self) -> np.ndarray:
        if self.g == 0:
            return np.zeros(0, dtype=complex)
        # roots of the reversed polynomial are the alpha_i; repeated roots are
        # removed first since np.roots is badly conditioned at multiple roots
        sqf = _squarefree_part(list(self.coeffs))
        return np.roots([float(c) for c in sqf])

    def rh_deviation(self) -> float:
        """max | |alpha| / sqrt(q) - 1 | over the reciprocal roots."""
        r = self.reciprocal_roots()
        if r.size == 0:
            return 0.0
        return float(np.max(np.abs(np.abs(r) / math.sqrt(self.q) - 1.0)))

    def rh_holds(self, tol: float = 1e-9) -> bool:
        # advisory: clustered roots of high multiplicity lose precision in np.roots
        return self.rh_deviation() <= tol

    def check(self):
        """Fatal invariants: functional equation, L(1) > 0, L(-1) > 0."""
        if not self.functional_equation_holds():
            raise ZetaError("functional equation fails for %s" % (self.coeffs,))
        if self(1) <= 0 or self(-1) <= 0:
            raise ZetaError("L(1) and L(-1) must be positive")
        return self

    def jacobian_order(self, e: int = 1) -> int:
        """|Jac(F_{q^e})| = prod (1 - alpha_i^e), from the e-th power map on coefficients."""
        return power_map(self, e)(1)

    def point_count(self, d: int) -> int:
        """N_d predicted by L."""
        s = power_sums(self.coeffs, d)
        return self.q**d + 1 - s[d - 1] if d <= len(s) else None

    def to_list(self):
        return list(self.coeffs)

    def fmt(self, var="u") -> str:
        parts = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else "%s^%d" % (var, i))
            mag = abs(a)
            body = str(mag) if (mag != 1 or i == 0) else ""
            sign = "-" if a < 0 else "+"
            parts.append((sign, body + mono))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, t in parts[1:]:
            out += " %s %s" % (sign, t)
        return out


def _qpoly_mod(a, b):
    a = list(a)
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        for i, x in enumerate(b):
            a[k + i] -= c * x
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _squarefree_part(coeffs):
    """f / gcd(f, f') over Q, for integer coefficient lists (low degree first)."""
    f = [Fraction(c) for c in coeffs]
    while f and f[-1] == 0:
        f.pop()
    df = [i * c for i, c in enumerate(f)][1:]
    a, b = f, df
    while b:
        a, b = b, _qpoly_mod(a, b)
    g = a
    if len(g) <= 1:
        return coeffs
    # exact division f / g
    quot = [Fraction(0)] * (len(f) - len(g) + 1)
    rem = list(f)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + len(g) - 1] / g[-1]
        quot[k] = c
        for i, x in enumerate(g):
            rem[k + i] -= c * x
    return [float(c) for c in quot]


def power_sums(coeffs, n: int) -> list[int]:
    """S_k = sum alpha_i^k for k = 1..n, where L(u) = prod (1 - alpha_i u)."""
    # Newton: S_k + c_1 S_{k-1} + ... + c_{k-1} S_1 + k c_k = 0
    c = list(coeffs) + [0] * max(0, n + 1 - len(coeffs))
    S = []
    for k in range(1, n + 1):
        acc = k * c[k]
        for i in range(1, k):
            acc += c[i] * S[k - i - 1]
        S.append(-acc)
    return S


def _coeffs_from_sums(S, g: int) -> list[int]:
    """a_1..a_g from power sums S_1..S_g (inverse Newton)."""
    a = [1]
    for k in range(1, g + 1):
        acc = S[k - 1]
        for i in range(1, k):
            acc += a[i] * S[k - i - 1]
        if acc % k:
            raise ZetaError("power sums are not consistent with an integer polynomial")
        a.append(-acc // k)
    return a


def l_from_counts(counts, q: int, g: int) -> LPoly:
    """L from N_1..N_g via Newton identities and the functional equation."""
    if len(counts) < g:
        raise ZetaError("need N_1..N_%d" % g)
    S = [q**d + 1 - counts[d - 1] for d in range(1, g + 1)]
    a = _coeffs_from_sums(S, g)
    full = a + [0] * g
    for i in range(g):
        full[2 * g - i] = q ** (g - i) * a[i]
    return LPoly(tuple(full), q, g).check()


def l_polynomial(curve, extra: int = 0) -> LPoly:
    """L_K(u) of a validated curve.

    With ``extra`` > 0 the counts N_{g+1}..N_{g+extra} are also compared with
    the prediction (when q^d stays within the counting bound).
    """
    g, q = curve.g, curve.F.q
    L = l_from_counts([curve.count_points(d) for d in range(1, g + 1)], q, g)
    for d in range(g + 1, g + extra + 1):
        if q**d > 2**20:
            break
        if curve.count_points(d) != L.point_count(d):
            raise ZetaError("N_%d disagrees with the L-polynomial; declared genus may be wrong" % d)
    return L


def power_map(L: LPoly, e: int) -> LPoly:
    """L for the constant field extension of degree e: prod (1 - alpha_i^e v)."""
    if e == 1:
        return L
    g = L.g
    S = power_sums(L.coeffs, e * 2 * g) if g else []
    Se = [S[e * k - 1] for k in range(1, 2 * g + 1)]
    a = _coeffs_from_sums(Se, 2 * g) if g else [1]
    return LPoly(tuple(a), L.q**e, g)


def extend_constants(L: LPoly) -> LPoly:
    """L over F_{q^2} from L(u) L(-u) = L~(u^2)."""
    a = L.coeffs
    n = len(a)
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(a):
            prod[i + j] += x * y * (-1) ** j
    if any(prod[k] for k in range(1, len(prod), 2)):
        raise ZetaError("odd coefficients of L(u)L(-u) do not vanish")
    out = LPoly(tuple(prod[0::2]), L.q**2, L.g).check()
    if out != power_map(L, 2):
        raise ZetaError("constant extension disagrees with the power map")
    return out


def class_number(L: LPoly) -> int:
    """|Cl^0(K)| = L(1)."""
    return L(1)


def ell_count(L: LPoly, delta: int = 1) -> int:
    """|Ell(G)| = L(-1), for odd delta."""
    if delta % 2 == 0:
        raise DeltaParityError("infinite place has even degree %d; there are no elliptic points" % delta)
    e = L(-1)
    Lt = extend_constants(L)
    if Lt(1) != e * L(1):
        raise ZetaError("L~(1) != L(1) L(-1)")
    return e


# -- exact comparisons against (sqrt(q) - 1)^(2g) -------------------------


def _sqrt_bracket(q: int, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    r = math.isqrt(q * scale * scale)
    lo = Fraction(r, scale)
    hi = lo if r * r == q * scale * scale else Fraction(r + 1, scale)
    return lo, hi


def compare_with_bound(value, q: int, g: int, factor=Fraction(1)) -> int:
    """Sign of value - factor * (sqrt(q) - 1)^(2g), decided exactly.

    Uses interval brackets for sqrt(q), refined until the comparison is
    certain, or exactly when q is a square.
    """
    value = Fraction(value)
    if g == 0:
        return (value > factor) - (value < factor)
    s = math.isqrt(q)
    if s * s == q:
        b = factor * Fraction(s - 1) ** (2 * g)
        return (value > b) - (value < b)
    bits = 32
    while True:
        lo, hi = _sqrt_bracket(q, bits)
        blo = factor * (lo - 1) ** (2 * g)
        bhi = factor * (hi - 1) ** (2 * g)
        if value > bhi:
            return 1
        if value < blo:
            return -1
        bits *= 2
        if bits > 1 << 14:
            raise ZetaError("could not separate value from the bound")


def ell_lower_bound_holds(L: LPoly) -> bool:
    """L(-1) >= (sqrt(q) - 1)^(2g)."""
    return compare_with_bound(L(-1), L.q, L.g) >= 0


def ell_lower_bound_floor(q: int, g: int) -> int:
    """floor((sqrt(q) - 1)^(2g)), exactly."""
    s = math.isqrt(q)
    if g == 0:
        return 1
    if s * s == q:
        return (s - 1) ** (2 * g)
    bits = 64
    while True:
        lo, hi = _sqrt_bracket(q, bits)
        a, b = math.floor((lo - 1) ** (2 * g)), math.floor((hi - 1) ** (2 * g))
        if a == b:
            return a
        bits *= 2
