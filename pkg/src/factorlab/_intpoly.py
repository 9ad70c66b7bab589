"""Exact univariate integer-polynomial arithmetic used by the lattice solver.

Polynomials are lists of coefficients in ascending order ([] is the zero
polynomial).  Resultants of bivariate polynomials are computed by building
the Sylvester matrix in one variable (entries are polynomials in the other)
and running fraction-free Bareiss elimination, whose interior divisions are
exact over any integral domain.
"""

from __future__ import annotations

Poly = list[int]


def ptrim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(a: Poly, b: Poly) -> Poly:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return ptrim(out)


def pneg(a: Poly) -> Poly:
    return [-x for x in a]


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim(out)


def pdivexact(a: Poly, b: Poly) -> Poly:
    """a / b when the division is exact; raises ArithmeticError otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(a) < len(b):
        raise ArithmeticError("inexact polynomial division")
    rem = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(rem[i + len(b) - 1], b[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = q
        if q:
            for j, y in enumerate(b):
                rem[i + j] -= q * y
    if any(rem[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return ptrim(out)


def peval(p: Poly, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def bareiss_det(m: list[list[Poly]]) -> Poly:
    """Fraction-free determinant of a square matrix of integer polynomials."""
    n = len(m)
    if n == 0:
        return [1]
    a = [[list(e) for e in row] for row in m]
    sign = 1
    prev: Poly = [1]
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = padd(pmul(a[k][k], a[i][j]), pneg(pmul(a[i][k], a[k][j])))
                a[i][j] = pdivexact(num, prev)
            a[i][k] = []
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else pneg(det)


def sylvester_resultant(fx: list[Poly], hx: list[Poly]) -> Poly:
    """Resultant w.r.t. the outer variable of two bivariate polynomials.

    Inputs are lists of inner-variable polynomials, ascending in the outer
    variable.  Returns a polynomial in the inner variable; [] means the
    resultant is identically zero (the inputs share a factor).
    """
    fx = [list(c) for c in fx]
    hx = [list(c) for c in hx]
    while fx and not fx[-1]:
        fx.pop()
    while hx and not hx[-1]:
        hx.pop()
    if not fx or not hx:
        return []
    dm, dn = len(fx) - 1, len(hx) - 1
    if dm == 0:
        out: Poly = [1]
        for _ in range(dn):
            out = pmul(out, fx[0])
        return out
    if dn == 0:
        out = [1]
        for _ in range(dm):
            out = pmul(out, hx[0])
        return out
    size = dm + dn
    rows: list[list[Poly]] = []
    for i in range(dn):
        row: list[Poly] = [[] for _ in range(size)]
        for j, c in enumerate(fx):
            row[i + dm - j] = list(c)
        rows.append(row)
    for i in range(dm):
        row = [[] for _ in range(size)]
        for j, c in enumerate(hx):
            row[i + dn - j] = list(c)
        rows.append(row)
    return bareiss_det(rows)


_SCAN_LIMIT = 1 << 16


def integer_roots(p: Poly, bound: int) -> list[int]:
    """All integers r with |r| <= bound and p(r) = 0, for p not identically 0.

    Nonzero roots divide the trailing coefficient, so small ranges are
    scanned with a divisibility filter; large ranges fall back to sign-change
    bisection (which can miss even-multiplicity roots; callers verify every
    candidate independently, so the miss risk only affects completeness).
    """
    p = ptrim(list(p))
    if not p:
        raise ValueError("zero polynomial has every integer as a root")
    if bound < 0:
        return []
    roots: set[int] = set()
    v = 0
    while v < len(p) and p[v] == 0:
        v += 1
    if v:
        roots.add(0)
        p = p[v:]
    if len(p) == 1:
        return sorted(roots)
    a0 = abs(p[0])
    lim = min(bound, a0)
    if 2 * lim + 1 <= _SCAN_LIMIT:
        for r in range(-lim, lim + 1):
            if r and a0 % r == 0 and peval(p, r) == 0:
                roots.add(r)
        return sorted(roots)

    def rec(lo: int, hi: int, flo: int, fhi: int) -> None:
        if lo + 1 >= hi:
            return
        mid = (lo + hi) // 2
        fmid = peval(p, mid)
        if fmid == 0:
            roots.add(mid)
        if flo == 0 or fmid == 0 or (flo < 0) != (fmid < 0):
            rec(lo, mid, flo, fmid)
        if fmid == 0 or fhi == 0 or (fmid < 0) != (fhi < 0):
            rec(mid, hi, fmid, fhi)

    flo, fhi = peval(p, -bound), peval(p, bound)
    if flo == 0:
        roots.add(-bound)
    if fhi == 0:
        roots.add(bound)
    rec(-bound, bound, flo, fhi)
    return sorted(roots)
