"""Row-module normal forms for matrices over F[x].

A matrix is a sequence of rows, each a sequence of polynomials (see
:mod:`.poly`).  ``matrix_hnf`` returns the Hermite normal form of the row
module: echelon shape, monic pivots, entries above each pivot reduced modulo it.
"""

from __future__ import annotations


def _row_axpy(R, r1, c, r2):
    """r1 - c*r2."""
    return tuple(R.sub(a, R.mul(c, b)) for a, b in zip(r1, r2))


def matrix_hnf(R, rows):
    """Hermite normal form of the row module spanned by ``rows`` (zero rows dropped)."""
    rows = [tuple(r) for r in rows if any(r)]
    if not rows:
        return ()
    ncols = len(rows[0])
    done = []
    for col in range(ncols):
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: len(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                qt = R.divmod(r[col], piv[col])[0]
                r = _row_axpy(R, r, qt, piv)
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        c = R.F.inv(R.lc(piv[col]))
        piv = tuple(R.scale(c, e) for e in piv)
        for i, r in enumerate(done):
            qt = R.divmod(r[col], piv[col])[0]
            if qt:
                done[i] = _row_axpy(R, r, qt, piv)
        done.append(piv)
        rows = rest
    return tuple(done)


def hnf_contains(R, hnf, vec) -> bool:
    """Membership of ``vec`` in the row module with the given HNF basis."""
    vec = tuple(vec)
    for piv in hnf:
        col = next(j for j, e in enumerate(piv) if e)
        if any(vec[:col]):
            return False
        qt, _ = R.divmod(vec[col], piv[col])
        vec = _row_axpy(R, vec, qt, piv)
        if vec[col]:
            return False
    return not any(vec)


def hnf_reduce(R, hnf, vec):
    """Reduce ``vec`` modulo the HNF rows (canonical coset representative)."""
    vec = tuple(vec)
    for piv in hnf:
        col = next(j for j, e in enumerate(piv) if e)
        qt, _ = R.divmod(vec[col], piv[col])
        if qt:
            vec = _row_axpy(R, vec, qt, piv)
    return vec


def _weight(row, shifts):
    best, pos = None, None
    for j, (e, s) in enumerate(zip(row, shifts)):
        if e:
            w = 2 * (len(e) - 1) + s
            if best is None or w > best:
                best, pos = w, j
    return best, pos


def weak_popov(R, rows, shifts):
    """Shifted weak Popov form of a 2-row basis.

    The weight of an entry in column j is 2*deg + shifts[j]; shifts must have
    distinct parities so that leading positions are unambiguous.  The row of
    least weight is a shortest nonzero vector of the module.
    """
    rows = [tuple(r) for r in rows if any(r)]
    while len(rows) == 2:
        (w0, p0), (w1, p1) = _weight(rows[0], shifts), _weight(rows[1], shifts)
        if p0 != p1:
            break
        i, j = (0, 1) if w0 >= w1 else (1, 0)
        a, b = rows[i][p0], rows[j][p0]
        c = R.F.div(R.lc(a), R.lc(b))
        mono = R.shift((c,), len(a) - len(b))
        rows[i] = _row_axpy(R, rows[i], mono, rows[j])
        rows = [r for r in rows if any(r)]
    rows.sort(key=lambda r: _weight(r, shifts)[0])
    return rows
