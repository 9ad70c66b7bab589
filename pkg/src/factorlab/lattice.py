"""Exact lattice reduction and a bivariate small-root solver.

lll_reduce is an all-integer LLL (Gram determinants d_i and scaled
Gram-Schmidt coefficients lambda_ij stay integral throughout), so
size-reduction and the Lovasz condition hold exactly, not up to rounding.
check_reduction re-derives every claimed property of a reduced basis from
scratch with rational arithmetic.

coppersmith_bivariate finds integer roots (x, y) of a bilinear f with
|x| <= X, |y| <= Y by lattice reduction: rows are the coefficient vectors of
the shift polynomials x^i y^j f (0 <= i, j <= m) plus modulus-scaled
monomials, columns scaled by X, Y powers.  Short reduced vectors are read as
polynomials h with h(root) = 0 modulo the working modulus; an h that is both
independent of f and short enough vanishes at every in-range root outright,
and resultants of f and h then pin the roots down.  When no pass certifies,
the solver retries with a larger modulus and recenters the search box into
quadrants (bounded recursion), which buys a few bits of slack per level.
Soundness is unconditional (every returned pair is verified by exact
evaluation); completeness is guaranteed only for certified passes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._intpoly import Poly, integer_roots, ptrim, sylvester_resultant
from .polybuild import BilinearPoly, RootBounds, bound_margin, is_reducible

IntegerMatrix = list[list[int]]


class DependentRows(ValueError):
    """Input rows to lll_reduce are linearly dependent."""


class ReducibleInput(ValueError):
    """The small-root solver requires an irreducible polynomial."""


class BoundsTooLarge(ValueError):
    """Exhaustive enumeration over these bounds was refused."""


class LatticeFailure(RuntimeError):
    """No lattice pass produced roots or a completeness certificate."""

    def __init__(self, message: str, margin_bits: float):
        super().__init__(message)
        self.margin_bits = margin_bits


@dataclass(frozen=True)
class ReductionParams:
    """Tuning knobs: Lovasz delta in (1/4, 1) and the shift degree m."""

    delta: Fraction = Fraction(3, 4)
    shift_degree: int = 2

    def __post_init__(self) -> None:
        if not Fraction(1, 4) < self.delta < 1:
            raise ValueError("delta must lie in (1/4, 1)")
        if self.shift_degree < 1:
            raise ValueError("shift_degree must be >= 1")


def _validate_matrix(basis: IntegerMatrix) -> int:
    if not basis:
        raise ValueError("matrix must have at least one row")
    width = len(basis[0])
    if width == 0 or any(len(row) != width for row in basis):
        raise ValueError("matrix rows must be nonempty and equal-length")
    return width


def lll_reduce(
    basis: IntegerMatrix, params: ReductionParams | None = None
) -> IntegerMatrix:
    """LLL-reduce a basis of row vectors; exact integer arithmetic throughout.

    Output spans the same lattice (unimodular row transform), is
    size-reduced (|mu_ij| <= 1/2) and satisfies the Lovasz condition with the
    given delta.  Raises DependentRows if the rows are not independent.
    """
    params = params or ReductionParams()
    _validate_matrix(basis)
    b = [[int(x) for x in row] for row in basis]
    n = len(b)
    dn, dd = params.delta.numerator, params.delta.denominator
    d = [0] * (n + 1)  # d[k] = Gram determinant of the first k rows
    d[0] = 1
    lam = [[0] * n for _ in range(n)]  # lam[i][j] = d[j+1] * mu[i][j]

    def init_row(k: int) -> None:
        for j in range(k + 1):
            u = sum(x * y for x, y in zip(b[k], b[j]))
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            elif u <= 0:
                raise DependentRows("rows are linearly dependent")
            else:
                d[k + 1] = u

    def size_reduce(k: int, l: int) -> None:
        lkl, dl = lam[k][l], d[l + 1]
        if 2 * abs(lkl) > dl:
            q = (2 * lkl + dl) // (2 * dl) if lkl >= 0 else -((-2 * lkl + dl) // (2 * dl))
            bl = b[l]
            b[k] = [x - q * y for x, y in zip(b[k], bl)]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]
            lam[k][l] -= q * dl

    init_row(0)
    k = 1
    kmax = 0
    while k < n:
        if k > kmax:
            kmax = k
            init_row(k)
        while True:
            size_reduce(k, k - 1)
            lkk = lam[k][k - 1]
            if dd * d[k + 1] * d[k - 1] < dn * d[k] * d[k] - dd * lkk * lkk:
                # swap rows k-1, k and patch the integral GS data
                b[k - 1], b[k] = b[k], b[k - 1]
                for j in range(k - 1):
                    lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
                lbar = lam[k][k - 1]
                dnew = (d[k - 1] * d[k + 1] + lbar * lbar) // d[k]
                for i in range(k + 1, kmax + 1):
                    t = lam[i][k]
                    lam[i][k] = (d[k + 1] * lam[i][k - 1] - lbar * t) // d[k]
                    lam[i][k - 1] = (dnew * t + lbar * lam[i][k]) // d[k + 1]
                d[k] = dnew
                k = max(1, k - 1)
            else:
                break
        for l in range(k - 2, -1, -1):
            size_reduce(k, l)
        k += 1
    return b


def integer_row_basis(rows: IntegerMatrix) -> IntegerMatrix:
    """Echelon basis of the lattice generated by possibly dependent rows.

    Uses only unimodular operations (swaps, integer row additions) plus
    removal of zero rows, so the span is preserved exactly.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][c] != 0]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][c]))
            piv = mat[i0][c]
            for i in nz:
                if i == i0:
                    continue
                q = mat[i][c] // piv
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[i0])]
            mat = [row for row in mat if any(row)]
            if r >= len(mat):
                break
        nz = [i for i in range(r, len(mat)) if mat[i][c] != 0]
        if not nz:
            continue
        mat[r], mat[nz[0]] = mat[nz[0]], mat[r]
        r += 1
    return mat[:r]


def _bareiss_det_int(m: IntegerMatrix) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def gram_det(rows: IntegerMatrix) -> int:
    """Determinant of the Gram matrix B*B^T (squared lattice covolume)."""
    gram = [[sum(x * y for x, y in zip(u, v)) for v in rows] for u in rows]
    return _bareiss_det_int(gram)


def _fraction_gs(
    rows: IntegerMatrix,
) -> tuple[list[list[Fraction]], list[list[Fraction]], list[Fraction]]:
    n = len(rows)
    bstar: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms: list[Fraction] = []
    for i in range(n):
        v = [Fraction(x) for x in rows[i]]
        for j in range(i):
            if norms[j] == 0:
                raise DependentRows("rows are linearly dependent")
            mu_ij = sum(Fraction(a) * c for a, c in zip(rows[i], bstar[j])) / norms[j]
            mu[i][j] = mu_ij
            v = [a - mu_ij * c for a, c in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(sum(x * x for x in v))
    return bstar, mu, norms


def _solve_rational(a: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(a)
    m = [row[:] + [rhs[i]] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise DependentRows("singular system")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def check_reduction(
    original: IntegerMatrix,
    reduced: IntegerMatrix,
    params: ReductionParams | None = None,
) -> list[str]:
    """Re-derive every property a reduced basis must satisfy; return the list
    of violations (empty list means the output certifies).

    Checks: same lattice via an integer transform of determinant +-1, Gram
    determinant preservation, exact size reduction, exact Lovasz condition,
    and the first-vector bound ||b1|| <= alpha^((n-1)/4) * det^(1/n) with
    alpha = 4/(4*delta - 1) (alpha = 2 at the default delta = 3/4), compared
    in integers after raising to the 4n-th power.
    """
    params = params or ReductionParams()
    problems: list[str] = []
    if len(original) != len(reduced):
        return ["row count changed"]
    n = len(original)
    g_in = gram_det(original)
    g_out = gram_det(reduced)
    if g_in != g_out:
        problems.append(f"Gram determinant changed: {g_in} -> {g_out}")
    # transform: U with U * original = reduced, entries integral, det = +-1
    gram = [
        [Fraction(sum(x * y for x, y in zip(u, v))) for v in original]
        for u in original
    ]
    transform: list[list[Fraction]] = []
    try:
        for row in reduced:
            rhs = [Fraction(sum(x * y for x, y in zip(row, v))) for v in original]
            transform.append(_solve_rational(gram, rhs))
    except DependentRows:
        problems.append("original rows are dependent; transform undefined")
        transform = []
    if transform:
        if any(c.denominator != 1 for trow in transform for c in trow):
            problems.append("reduced rows are not integer combinations of input")
        else:
            u_int = [[int(c) for c in trow] for trow in transform]
            det_u = _bareiss_det_int(u_int)
            if det_u not in (1, -1):
                problems.append(f"transform determinant is {det_u}, not +-1")
    try:
        _, mu, norms = _fraction_gs(reduced)
    except DependentRows:
        problems.append("reduced rows are dependent")
        return problems
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                problems.append(f"size reduction violated at mu[{i}][{j}]")
    for k in range(1, n):
        if norms[k] < (params.delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            problems.append(f"Lovasz condition violated at row {k}")
    b1_sq = sum(x * x for x in reduced[0])
    # alpha = 4/(4*delta - 1); alpha > 0 because delta > 1/4
    a_num = 4 * params.delta.denominator
    a_den = 4 * params.delta.numerator - params.delta.denominator
    lhs = b1_sq ** (2 * n) * a_den ** (n * (n - 1))
    rhs = a_num ** (n * (n - 1)) * g_out**2
    if g_out > 0 and lhs > rhs:
        problems.append("first vector exceeds the alpha^((n-1)/4) det^(1/n) bound")
    return problems


# ---------------------------------------------------------------------------
# bivariate small roots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoppersmithResult:
    """Roots found, the bound margin of the call, and whether some pass was
    certified (short-enough independent h: the root list is provably
    complete for the box)."""

    roots: list[tuple[int, int]]
    margin_bits: float
    certified: bool


def _back_substitute_y(
    c3: int, c2: int, c1: int, c0: int, y: int, X: int
) -> tuple[int, int] | None:
    lead = c3 * y + c2
    if lead == 0:
        return None
    rhs = -(c1 * y + c0)
    x, r = divmod(rhs, lead)
    if r == 0 and abs(x) <= X:
        return (x, y)
    return None


def _back_substitute_x(
    c3: int, c2: int, c1: int, c0: int, x: int, Y: int
) -> tuple[int, int] | None:
    lead = c3 * x + c1
    if lead == 0:
        return None
    rhs = -(c2 * x + c0)
    y, r = divmod(rhs, lead)
    if r == 0 and abs(y) <= Y:
        return (x, y)
    return None


def _lattice_pass(
    c3: int,
    c2: int,
    c1: int,
    c0: int,
    X: int,
    Y: int,
    m: int,
    n_pow: int,
    params: ReductionParams,
) -> tuple[set[tuple[int, int]], bool, bool]:
    """One build-reduce-extract pass.  Returns (roots, saw_independent_h,
    certified)."""
    gm = m + 1
    mons = [(i, j) for i in range(gm + 1) for j in range(gm + 1)]
    midx = {mn: t for t, mn in enumerate(mons)}
    D = len(mons)
    scale = [X**i * Y**j for (i, j) in mons]
    W = max(abs(c3) * X * Y, abs(c2) * X, abs(c1) * Y, abs(c0))
    n_mod = max(W, 2) * (X * Y) ** n_pow
    gen: IntegerMatrix = []
    for a in range(m + 1):
        for b in range(m + 1):
            row = [0] * D
            for (di, dj, c) in ((1, 1, c3), (1, 0, c2), (0, 1, c1), (0, 0, c0)):
                t = midx[(a + di, b + dj)]
                row[t] = c * scale[t]
            gen.append(row)
    for t in range(D):
        row = [0] * D
        row[t] = n_mod * scale[t]
        gen.append(row)
    reduced = lll_reduce(integer_row_basis(gen), params)
    fx = [[c0, c1], [c2, c3]]  # f as a poly in x over Z[y]
    fy = [[c0, c2], [c1, c3]]
    roots: set[tuple[int, int]] = set()
    saw_independent = False
    for row in reduced:
        coeffs: dict[tuple[int, int], int] = {}
        exact = True
        for t, mn in enumerate(mons):
            q, r = divmod(row[t], scale[t])
            if r:
                exact = False
                break
            coeffs[mn] = q
        if not exact:
            continue
        hx: list[Poly] = [
            ptrim([coeffs.get((i, j), 0) for j in range(gm + 1)])
            for i in range(gm + 1)
        ]
        res_y = sylvester_resultant(fx, hx)
        if not res_y:
            continue  # h is a multiple of f
        saw_independent = True
        certified = sum(abs(v) for v in row) < n_mod
        for y in integer_roots(res_y, Y):
            hit = _back_substitute_y(c3, c2, c1, c0, y, X)
            if hit is not None and c3 * hit[0] * hit[1] + c2 * hit[0] + c1 * hit[1] + c0 == 0:
                roots.add(hit)
        hy: list[Poly] = [
            ptrim([coeffs.get((i, j), 0) for i in range(gm + 1)])
            for j in range(gm + 1)
        ]
        res_x = sylvester_resultant(fy, hy)
        if res_x:
            for x in integer_roots(res_x, X):
                hit = _back_substitute_x(c3, c2, c1, c0, x, Y)
                if hit is not None and c3 * hit[0] * hit[1] + c2 * hit[0] + c1 * hit[1] + c0 == 0:
                    roots.add(hit)
        if certified:
            # a short independent h vanishes at every root in the box, so the
            # extraction above is provably complete: stop here
            return roots, True, True
    return roots, saw_independent, False


def _recentered(c3: int, c2: int, c1: int, c0: int, cx: int, cy: int):
    """Coefficients of f(x + cx, y + cy)."""
    return (
        c3,
        c2 + c3 * cy,
        c1 + c3 * cx,
        c0 + c2 * cx + c1 * cy + c3 * cx * cy,
    )


def _solve_box(
    c3: int,
    c2: int,
    c1: int,
    c0: int,
    X: int,
    Y: int,
    params: ReductionParams,
    depth: int,
    top: bool,
    state: dict,
) -> tuple[set[tuple[int, int]], bool]:
    """Returns (verified roots, resolved).  resolved means a certified pass
    covered this whole box (directly or via all sub-boxes)."""
    m = params.shift_degree
    for n_pow in (m, m + 1) if top else (m,):
        roots, indep, certified = _lattice_pass(
            c3, c2, c1, c0, X, Y, m, n_pow, params
        )
        state["independent"] = state["independent"] or indep
        if certified:
            return roots, True
        if roots:
            return roots, False
    hx = (X + 1) // 2 if X > 1 else X
    hy = (Y + 1) // 2 if Y > 1 else Y
    if depth > 0 and (hx < X or hy < Y):
        centers_x = sorted({-(X - hx), X - hx})
        centers_y = sorted({-(Y - hy), Y - hy})
        union: set[tuple[int, int]] = set()
        all_resolved = True
        for cx in centers_x:
            for cy in centers_y:
                sub = _recentered(c3, c2, c1, c0, cx, cy)
                sub_roots, sub_resolved = _solve_box(
                    *sub, hx, hy, params, depth - 1, False, state
                )
                all_resolved = all_resolved and sub_resolved
                for (x, y) in sub_roots:
                    xx, yy = x + cx, y + cy
                    if (
                        abs(xx) <= X
                        and abs(yy) <= Y
                        and c3 * xx * yy + c2 * xx + c1 * yy + c0 == 0
                    ):
                        union.add((xx, yy))
        if union or all_resolved:
            return union, all_resolved
    return set(), False


def coppersmith_bivariate(
    f: BilinearPoly,
    b: RootBounds,
    params: ReductionParams | None = None,
    *,
    recenter_depth: int = 2,
) -> CoppersmithResult:
    """All integer roots of f the lattice machinery can find inside the box.

    Every returned pair satisfies f(x, y) = 0 exactly with |x| <= X and
    |y| <= Y.  When the result is certified the list is complete for the
    box; otherwise completeness follows the bound margin empirically and the
    return may be partial.  Raises ReducibleInput for reducible f and
    LatticeFailure when no pass yields roots or a certificate (callers fall
    back to sweeping).
    """
    params = params or ReductionParams()
    if is_reducible(f):
        raise ReducibleInput("f must be irreducible (c0*c3 != c1*c2)")
    margin = bound_margin(f, b)
    state = {"independent": False}
    roots, resolved = _solve_box(
        f.c3, f.c2, f.c1, f.c0, b.X, b.Y, params, recenter_depth, True, state
    )
    if roots or resolved:
        return CoppersmithResult(sorted(roots), margin, resolved)
    raise LatticeFailure(
        f"no roots and no completeness certificate at margin "
        f"{margin:+.2f} bits (independent h seen: {state['independent']})",
        margin,
    )


def exhaustive_roots(f: BilinearPoly, b: RootBounds) -> list[tuple[int, int]]:
    """Ground-truth enumeration: every (x, y) in the box with f(x, y) = 0.

    Cost is O(X) (linear solve in y per x) except for degenerate columns.
    Refuses boxes with more than 2**28 points.
    """
    if (2 * b.X + 1) * (2 * b.Y + 1) > 1 << 28:
        raise BoundsTooLarge("search box exceeds 2**28 points")
    out: list[tuple[int, int]] = []
    for x in range(-b.X, b.X + 1):
        lead = f.c3 * x + f.c1
        rhs = -(f.c2 * x + f.c0)
        if lead == 0:
            if rhs == 0:  # whole column of roots
                out.extend((x, y) for y in range(-b.Y, b.Y + 1))
            continue
        y, r = divmod(rhs, lead)
        if r == 0 and -b.Y <= y <= b.Y:
            out.append((x, y))
    return sorted(set(out))
